#pragma once

#include <array>
#include <map>
#include <vector>

#include "latefuse/types.hpp"

namespace latefuse {

/// Comparison late-fusion methods. All take one pooled detection list
/// (any number of agents) and return fused objects whose SourceRef
/// indices refer to positions in that input list. None of them merges
/// across categories, and with a single agent and disjoint boxes each
/// is the identity.
///
/// Candidate ordering everywhere is confidence descending with
/// (agent_id, input position) as the deterministic tie-break.

/// Greedy non-maximum suppression on 3D IoU: keep the most confident
/// box, drop every same-category box with iou_3d >= iou_thresh, repeat.
/// Kept boxes pass through with their own covariance; suppressed boxes
/// are discarded entirely.
std::vector<FusedObject> nms_std_3d(const std::vector<Detection>& dets,
                                    double iou_thresh = 0.5);

/// As nms_std_3d but suppressing on giou_3d >= giou_thresh. A negative
/// threshold also suppresses nearby non-overlapping boxes.
std::vector<FusedObject> nms_giou_3d(const std::vector<Detection>& dets,
                                     double giou_thresh = 0.0);

/// Weighted box fusion: boxes join the first cluster (creation order)
/// whose running representative they overlap with iou_3d >= iou_thresh;
/// each cluster fuses to the confidence-weighted mean of all seven
/// components (yaw rebased onto the first member's branch) and of the
/// timestamps. Confidence is the plain mean of the members; the output
/// covariance is the componentwise minimum over members (the method
/// itself models no uncertainty).
std::vector<FusedObject> wbf_3d(const std::vector<Detection>& dets,
                                double iou_thresh = 0.5);

/// Per-agent sensor mount position in the shared frame.
using SensorPositions = std::map<int, std::array<double, 3>>;

/// Cross-agent association by center Euclidean distance (optimal
/// assignment, pairs beyond dist_thresh or across categories are
/// infeasible), keeping from each associated group only the member
/// whose center is nearest its own agent's sensor. Unmatched
/// detections pass through. Throws std::invalid_argument when a
/// detection's agent has no sensor position.
std::vector<FusedObject> late_closest_to_sensor(const std::vector<Detection>& dets,
                                                double dist_thresh,
                                                const SensorPositions& sensors);

/// Same distance association, fusing each group to the unweighted
/// arithmetic mean of all seven components (yaw rebased); confidence
/// and timestamp are member means. Unmatched detections pass through.
std::vector<FusedObject> late_average(const std::vector<Detection>& dets,
                                      double dist_thresh = 3.0);

}  // namespace latefuse
