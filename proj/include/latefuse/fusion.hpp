#pragma once

#include <vector>

#include "latefuse/association.hpp"
#include "latefuse/types.hpp"

namespace latefuse {

/// Weighted least squares fusion of detections of one object. Every
/// component is averaged with inverse-variance weights, which is exact
/// for independent diagonal-covariance measurements; the fused variance
/// is the harmonic combination 1 / sum(1/var). Yaws are first rebased
/// onto the first member's branch via the minimal signed difference so
/// that averaging never crosses the -pi/pi seam. The fused timestamp
/// uses each member's total information (sum of its seven inverse
/// variances) as weight, and confidence is the maximum over members.
/// Throws std::invalid_argument on an empty list or mixed categories.
FusedObject wls_fuse(const std::vector<Detection>& members);

/// Same, with caller-provided provenance (sources.size() must equal
/// members.size()); the convenience overload derives sources from each
/// member's agent_id and list position.
FusedObject wls_fuse(const std::vector<Detection>& members,
                     const std::vector<SourceRef>& sources);

/// Full late-fusion step for one frame: cluster with associate_multi,
/// then wls_fuse each cluster. Single-member clusters pass through
/// unchanged (fusing one detection is the identity).
std::vector<FusedObject> fuse_frame(const Frame& frame, const CsbaParams& p);

}  // namespace latefuse
