#include "latefuse/association.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "latefuse/assignment.hpp"
#include "latefuse/fusion.hpp"

namespace latefuse {

double volume_sigma(const BBox3D& box, double s_l, double s_w, double s_h) {
  const double rl = s_l / box.l;
  const double rw = s_w / box.w;
  const double rh = s_h / box.h;
  return box_volume(box) * std::sqrt(rl * rl + rw * rw + rh * rh);
}

double dimension_score(const Detection& a, const Detection& b) {
  const double va = box_volume(a.box);
  const double vb = box_volume(b.box);
  const double sa = volume_sigma(a.box, std::sqrt(a.cov.var_l), std::sqrt(a.cov.var_w),
                                 std::sqrt(a.cov.var_h));
  const double sb = volume_sigma(b.box, std::sqrt(b.cov.var_l), std::sqrt(b.cov.var_w),
                                 std::sqrt(b.cov.var_h));
  // The larger volume takes the numerator: the relative deviation sum under
  // the root is orientation-free, so this is what makes the score symmetric
  // in its arguments.
  const double r = va >= vb ? va / vb : vb / va;
  const double ra = sa / va;
  const double rb = sb / vb;
  const double sigma_r = r * std::sqrt(ra * ra + rb * rb);
  const double z_fwd = (r - 1.0) / sigma_r;
  const double z_inv = (1.0 / r - 1.0) / sigma_r;  // inverse ratio shares sigma_r
  const double z2 = std::min(z_fwd * z_fwd, z_inv * z_inv);
  return std::exp(-0.5 * z2);
}

double position_mahalanobis(const Detection& a, const Detection& b) {
  const double dx = a.box.x - b.box.x;
  const double dy = a.box.y - b.box.y;
  const double dz = a.box.z - b.box.z;
  const double sx = a.cov.var_x + b.cov.var_x;
  const double sy = a.cov.var_y + b.cov.var_y;
  const double sz = a.cov.var_z + b.cov.var_z;
  return std::sqrt(dx * dx / sx + dy * dy / sy + dz * dz / sz);
}

double center_score(const Detection& a, const Detection& b, double lambda_max) {
  if (!(lambda_max > 0.0)) {
    throw std::invalid_argument("lambda_max must be positive");
  }
  return 1.0 - position_mahalanobis(a, b) / lambda_max;
}

double orientation_score(const Detection& a, const Detection& b) {
  const double arg = a.box.theta / std::sqrt(a.cov.var_theta) -
                     b.box.theta / std::sqrt(b.cov.var_theta);
  return 0.5 * (1.0 + std::cos(arg));
}

std::optional<double> pair_cost(const Detection& a, const Detection& b, const CsbaParams& p) {
  if (p.w_ds < 0.0 || p.w_cs < 0.0 || p.w_os < 0.0 || !(p.w_ds + p.w_cs + p.w_os > 0.0)) {
    throw std::invalid_argument("score weights must be >= 0 with a positive sum");
  }
  if (a.category != b.category) return std::nullopt;
  const double d_m = position_mahalanobis(a, b);
  if (d_m > p.gate_factor * p.lambda_max) return std::nullopt;
  const double ds = dimension_score(a, b);
  const double cs = std::clamp(1.0 - d_m / p.lambda_max, 0.0, 1.0);
  const double os = orientation_score(a, b);
  const double w_sum = p.w_ds + p.w_cs + p.w_os;
  const double cost =
      (p.w_ds * (1.0 - ds) + p.w_cs * (1.0 - cs) + p.w_os * (1.0 - os)) / w_sum;
  if (p.cost_gate && cost > *p.cost_gate) return std::nullopt;
  return cost;
}

namespace {

CostMatrix build_cost_matrix(const std::vector<Detection>& a, const std::vector<Detection>& b,
                             const CsbaParams& p) {
  CostMatrix m(static_cast<int>(a.size()), static_cast<int>(b.size()));
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      const auto cost = pair_cost(a[i], b[j], p);
      if (cost) {
        m.at(i, j) = *cost;
      } else {
        m.forbid(i, j);
      }
    }
  }
  return m;
}

}  // namespace

PairAssociation associate_pairwise(const std::vector<Detection>& a,
                                   const std::vector<Detection>& b, const CsbaParams& p) {
  const AssignmentResult res = solve_assignment(build_cost_matrix(a, b, p));
  PairAssociation out;
  out.pairs = res.matches;
  out.unmatched_a = res.unmatched_rows;
  out.unmatched_b = res.unmatched_cols;
  out.total_cost = res.total_cost;
  return out;
}

ClusterSet associate_multi(const Frame& frame, const CsbaParams& p) {
  std::vector<int> agent_order(frame.agents.size());
  std::iota(agent_order.begin(), agent_order.end(), 0);
  std::sort(agent_order.begin(), agent_order.end(), [&](int lhs, int rhs) {
    return frame.agents[lhs].agent_id < frame.agents[rhs].agent_id;
  });

  ClusterSet out;
  std::vector<std::vector<Detection>> members;  // parallel to out.clusters

  auto open_cluster = [&](const AgentDetections& agent, int index) {
    const Detection& det = agent.detections[index];
    out.clusters.push_back({SourceRef{agent.agent_id, index, det.gt_id}});
    members.push_back({det});
  };

  bool first = true;
  std::vector<Detection> reps;
  for (const int ai : agent_order) {
    const AgentDetections& agent = frame.agents[ai];
    if (first) {
      for (int k = 0; k < static_cast<int>(agent.detections.size()); ++k) {
        open_cluster(agent, k);
      }
      first = false;
      continue;
    }
    // Representatives are the running fusion of each cluster, so later
    // agents match against the consolidated estimate, not a single view.
    reps.clear();
    reps.reserve(members.size());
    for (const auto& m : members) {
      const FusedObject f = wls_fuse(m);
      reps.emplace_back(f.box, f.cov, f.category, m.front().agent_id, f.timestamp,
                        f.confidence, std::nullopt);
    }
    const AssignmentResult res = solve_assignment(build_cost_matrix(reps, agent.detections, p));
    for (const auto& [ci, di] : res.matches) {
      out.clusters[ci].push_back(SourceRef{agent.agent_id, di, agent.detections[di].gt_id});
      members[ci].push_back(agent.detections[di]);
    }
    for (const int di : res.unmatched_cols) {
      open_cluster(agent, di);
    }
  }
  return out;
}

std::vector<Frame> window_group(const std::vector<Detection>& stream, double dt) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("window length must be finite and non-negative");
  }
  std::vector<int> order(stream.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    if (stream[lhs].timestamp != stream[rhs].timestamp) {
      return stream[lhs].timestamp < stream[rhs].timestamp;
    }
    return stream[lhs].agent_id < stream[rhs].agent_id;
  });

  std::vector<Frame> frames;
  std::size_t i = 0;
  while (i < order.size()) {
    const double t0 = stream[order[i]].timestamp;
    std::vector<Detection> in_window;
    while (i < order.size() && stream[order[i]].timestamp <= t0 + dt) {
      in_window.push_back(stream[order[i]]);
      ++i;
    }
    frames.push_back(Frame::group_by_agent(t0, in_window));
  }
  return frames;
}

}  // namespace latefuse
