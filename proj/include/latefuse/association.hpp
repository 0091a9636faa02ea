#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "latefuse/types.hpp"

namespace latefuse {

/// Tuning for multi-source association. Weights follow the
/// center > orientation > dimension ordering; lambda_max is the
/// Mahalanobis distance at which the center score reaches zero.
/// gate_factor widens the hard rejection gate beyond lambda_max:
/// with additive per-axis noise the squared distance between two
/// views of the same object is chi-square with 3 dof, so gating at
/// 1.0 * lambda_max (= 6 sigma of combined noise, i.e. 9 sigma^2)
/// would still drop ~2.9% of true pairs; 2.0 leaves the miss rate
/// below 1e-7 while keeping the cost-shaping of lambda_max intact.
struct CsbaParams {
  double w_ds = 0.2;
  double w_cs = 0.5;
  double w_os = 0.3;
  double lambda_max = 3.0;
  double gate_factor = 2.0;
  std::optional<double> cost_gate;  // reject pairs whose blended cost exceeds this
};

/// Volume standard deviation from per-extent deviations:
/// sigma_V = V * sqrt((s_l/l)^2 + (s_w/w)^2 + (s_h/h)^2).
double volume_sigma(const BBox3D& box, double s_l, double s_w, double s_h);

/// Similarity of box volumes in (0, 1]; 1 means identical volumes with
/// any uncertainty. Uses the volume ratio r = V_large/V_small (oriented so
/// the score is symmetric), its deviation
/// sigma_r = r * sqrt((sigma_Va/V_a)^2 + (sigma_Vb/V_b)^2), and scores
/// exp(-min(z_r^2, z_{1/r}^2) / 2) with z = (ratio - 1) / sigma_r, the
/// inverse ratio sharing sigma_r.
double dimension_score(const Detection& a, const Detection& b);

/// Mahalanobis distance between box centers under the summed position
/// covariance of both detections.
double position_mahalanobis(const Detection& a, const Detection& b);

/// 1 - d_M / lambda_max; negative once the centers are farther apart
/// than lambda_max. Callers clamp when blending.
double center_score(const Detection& a, const Detection& b, double lambda_max);

/// (1 + cos(theta_a / sigma_a - theta_b / sigma_b)) / 2 in [0, 1],
/// with sigma the yaw standard deviation of each detection.
double orientation_score(const Detection& a, const Detection& b);

/// Blended association cost in [0, 1], or nullopt when the pair is
/// infeasible: mismatched category, center distance beyond
/// gate_factor * lambda_max, or cost above cost_gate.
std::optional<double> pair_cost(const Detection& a, const Detection& b, const CsbaParams& p);

/// Result of matching two detection lists; indices refer to the inputs.
struct PairAssociation {
  std::vector<std::pair<int, int>> pairs;  // (index in a, index in b), sorted by first
  std::vector<int> unmatched_a;
  std::vector<int> unmatched_b;
  double total_cost = 0.0;
};

/// Optimal min-cost matching of a against b under pair_cost gating.
PairAssociation associate_pairwise(const std::vector<Detection>& a,
                                   const std::vector<Detection>& b,
                                   const CsbaParams& p);

/// Detections from several agents grouped into per-object clusters.
/// Each cluster holds at most one detection per agent.
struct ClusterSet {
  std::vector<std::vector<SourceRef>> clusters;
};

/// Associates all agents of a frame in ascending agent_id order: the
/// first agent seeds the clusters, every further agent is matched
/// against the running weighted fusion of each cluster's members, and
/// unmatched detections open new clusters.
ClusterSet associate_multi(const Frame& frame, const CsbaParams& p);

/// Splits a detection stream into frames: each window is anchored at
/// the earliest unconsumed timestamp t0 and spans [t0, t0 + dt], both
/// ends inclusive. Frame timestamps are the anchors.
std::vector<Frame> window_group(const std::vector<Detection>& stream, double dt = 0.1);

}  // namespace latefuse
