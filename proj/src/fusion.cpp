#include "latefuse/fusion.hpp"

#include <cmath>
#include <stdexcept>

namespace latefuse {

namespace {

struct WlsAccumulator {
  double weighted = 0.0;
  double info = 0.0;  // sum of inverse variances

  void add(double value, double var) {
    const double w = 1.0 / var;
    weighted += w * value;
    info += w;
  }
  double mean() const { return weighted / info; }
  double variance() const { return 1.0 / info; }
};

}  // namespace

FusedObject wls_fuse(const std::vector<Detection>& members,
                     const std::vector<SourceRef>& sources) {
  if (members.empty()) {
    throw std::invalid_argument("cannot fuse an empty member list");
  }
  if (sources.size() != members.size()) {
    throw std::invalid_argument("sources must align with members");
  }
  const Category category = members.front().category;
  for (const Detection& d : members) {
    if (d.category != category) {
      throw std::invalid_argument("cannot fuse detections of different categories");
    }
  }

  WlsAccumulator x, y, z, l, w, h, theta, time;
  const double theta0 = members.front().box.theta;
  double confidence = 0.0;
  for (const Detection& d : members) {
    x.add(d.box.x, d.cov.var_x);
    y.add(d.box.y, d.cov.var_y);
    z.add(d.box.z, d.cov.var_z);
    l.add(d.box.l, d.cov.var_l);
    w.add(d.box.w, d.cov.var_w);
    h.add(d.box.h, d.cov.var_h);
    // Rebase onto the first member's branch: identical angles on opposite
    // sides of the seam (e.g. -3.1 and 3.1) average near pi, not near 0.
    theta.add(theta0 + normalize_yaw(d.box.theta - theta0), d.cov.var_theta);
    const double total_info = 1.0 / d.cov.var_x + 1.0 / d.cov.var_y + 1.0 / d.cov.var_z +
                              1.0 / d.cov.var_l + 1.0 / d.cov.var_w + 1.0 / d.cov.var_h +
                              1.0 / d.cov.var_theta;
    time.add(d.timestamp, 1.0 / total_info);  // weight = total information
    confidence = std::max(confidence, d.confidence);
  }

  const BBox3D box(x.mean(), y.mean(), z.mean(), l.mean(), w.mean(), h.mean(),
                   normalize_yaw(theta.mean()));
  const DiagCovariance7 cov(x.variance(), y.variance(), z.variance(), l.variance(),
                            w.variance(), h.variance(), theta.variance());
  return FusedObject(box, cov, category, sources, time.mean(), confidence);
}

FusedObject wls_fuse(const std::vector<Detection>& members) {
  std::vector<SourceRef> sources;
  sources.reserve(members.size());
  for (int i = 0; i < static_cast<int>(members.size()); ++i) {
    sources.push_back(SourceRef{members[i].agent_id, i, members[i].gt_id});
  }
  return wls_fuse(members, sources);
}

std::vector<FusedObject> fuse_frame(const Frame& frame, const CsbaParams& p) {
  const ClusterSet clusters = associate_multi(frame, p);

  // Map agent_id -> position in frame.agents for member lookup.
  std::vector<std::pair<int, int>> agent_index;
  for (int i = 0; i < static_cast<int>(frame.agents.size()); ++i) {
    agent_index.emplace_back(frame.agents[i].agent_id, i);
  }
  auto find_agent = [&](int agent_id) -> const AgentDetections& {
    for (const auto& [id, idx] : agent_index) {
      if (id == agent_id) return frame.agents[idx];
    }
    throw std::logic_error("cluster references unknown agent");
  };

  std::vector<FusedObject> out;
  out.reserve(clusters.clusters.size());
  for (const auto& cluster : clusters.clusters) {
    std::vector<Detection> members;
    members.reserve(cluster.size());
    for (const SourceRef& ref : cluster) {
      members.push_back(find_agent(ref.agent_id).detections[ref.index]);
    }
    out.push_back(wls_fuse(members, cluster));
  }
  return out;
}

}  // namespace latefuse
