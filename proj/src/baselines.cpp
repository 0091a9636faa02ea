#include "latefuse/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "latefuse/assignment.hpp"
#include "latefuse/geometry.hpp"

namespace latefuse {

namespace {

SourceRef ref_of(const std::vector<Detection>& dets, int i) {
  return SourceRef{dets[i].agent_id, i, dets[i].gt_id};
}

// Confidence descending; (agent_id, input position) breaks ties.
std::vector<int> confidence_order(const std::vector<Detection>& dets) {
  std::vector<int> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (dets[a].confidence != dets[b].confidence) {
      return dets[a].confidence > dets[b].confidence;
    }
    if (dets[a].agent_id != dets[b].agent_id) return dets[a].agent_id < dets[b].agent_id;
    return a < b;
  });
  return order;
}

FusedObject passthrough(const Detection& d, std::vector<SourceRef> sources) {
  return FusedObject(d.box, d.cov, d.category, std::move(sources), d.timestamp, d.confidence);
}

template <typename Overlap>
std::vector<FusedObject> nms_impl(const std::vector<Detection>& dets, double thresh,
                                  Overlap overlap) {
  const std::vector<int> order = confidence_order(dets);
  std::vector<char> suppressed(dets.size(), 0);
  std::vector<FusedObject> out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int i = order[k];
    if (suppressed[i]) continue;
    out.push_back(passthrough(dets[i], {ref_of(dets, i)}));
    for (std::size_t m = k + 1; m < order.size(); ++m) {
      const int j = order[m];
      if (suppressed[j] || dets[j].category != dets[i].category) continue;
      if (overlap(dets[i].box, dets[j].box) >= thresh) suppressed[j] = 1;
    }
  }
  return out;
}

double min_component(double DiagCovariance7::*field, const std::vector<Detection>& dets,
                     const std::vector<int>& members) {
  double m = dets[members.front()].cov.*field;
  for (const int i : members) m = std::min(m, dets[i].cov.*field);
  return m;
}

DiagCovariance7 min_covariance(const std::vector<Detection>& dets,
                               const std::vector<int>& members) {
  return DiagCovariance7(min_component(&DiagCovariance7::var_x, dets, members),
                         min_component(&DiagCovariance7::var_y, dets, members),
                         min_component(&DiagCovariance7::var_z, dets, members),
                         min_component(&DiagCovariance7::var_l, dets, members),
                         min_component(&DiagCovariance7::var_w, dets, members),
                         min_component(&DiagCovariance7::var_h, dets, members),
                         min_component(&DiagCovariance7::var_theta, dets, members));
}

// Chains agents in ascending id order through optimal distance
// assignment: clusters seed from the first agent, each further agent
// matches against rep_center of every cluster, unmatched detections
// open new clusters. Members are input indices in join order.
template <typename RepCenter>
std::vector<std::vector<int>> distance_clusters(const std::vector<Detection>& dets,
                                                double dist_thresh, RepCenter rep_center) {
  std::vector<int> agent_ids;
  for (const Detection& d : dets) agent_ids.push_back(d.agent_id);
  std::sort(agent_ids.begin(), agent_ids.end());
  agent_ids.erase(std::unique(agent_ids.begin(), agent_ids.end()), agent_ids.end());

  std::vector<std::vector<int>> clusters;
  for (const int aid : agent_ids) {
    std::vector<int> cand;
    for (int i = 0; i < static_cast<int>(dets.size()); ++i) {
      if (dets[i].agent_id == aid) cand.push_back(i);
    }
    if (clusters.empty()) {
      for (const int i : cand) clusters.push_back({i});
      continue;
    }
    CostMatrix m(static_cast<int>(clusters.size()), static_cast<int>(cand.size()));
    for (int r = 0; r < m.rows; ++r) {
      const auto [cx, cy, cz] = rep_center(clusters[r]);
      const Category cat = dets[clusters[r].front()].category;
      for (int col = 0; col < m.cols; ++col) {
        const Detection& d = dets[cand[col]];
        const double dist = std::hypot(d.box.x - cx, d.box.y - cy, d.box.z - cz);
        if (d.category != cat || dist > dist_thresh) {
          m.forbid(r, col);
        } else {
          m.at(r, col) = dist;
        }
      }
    }
    const AssignmentResult res = solve_assignment(m);
    for (const auto& [r, col] : res.matches) clusters[r].push_back(cand[col]);
    for (const int col : res.unmatched_cols) clusters.push_back({cand[col]});
  }
  return clusters;
}

}  // namespace

std::vector<FusedObject> nms_std_3d(const std::vector<Detection>& dets, double iou_thresh) {
  return nms_impl(dets, iou_thresh, iou_3d);
}

std::vector<FusedObject> nms_giou_3d(const std::vector<Detection>& dets, double giou_thresh) {
  return nms_impl(dets, giou_thresh, giou_3d);
}

std::vector<FusedObject> wbf_3d(const std::vector<Detection>& dets, double iou_thresh) {
  struct Cluster {
    std::vector<int> members;
    Category category;
    double theta0;  // yaw branch of the first member
    double conf_sum = 0.0;
    double s[7] = {0, 0, 0, 0, 0, 0, 0};  // confidence-weighted x,y,z,l,w,h,theta
    double t_sum = 0.0;

    void add(const Detection& d, int index) {
      members.push_back(index);
      const double c = d.confidence;
      conf_sum += c;
      s[0] += c * d.box.x;
      s[1] += c * d.box.y;
      s[2] += c * d.box.z;
      s[3] += c * d.box.l;
      s[4] += c * d.box.w;
      s[5] += c * d.box.h;
      s[6] += c * (theta0 + normalize_yaw(d.box.theta - theta0));
      t_sum += c * d.timestamp;
    }
    BBox3D rep() const {
      return BBox3D(s[0] / conf_sum, s[1] / conf_sum, s[2] / conf_sum, s[3] / conf_sum,
                    s[4] / conf_sum, s[5] / conf_sum, normalize_yaw(s[6] / conf_sum));
    }
  };

  std::vector<Cluster> clusters;
  for (const int i : confidence_order(dets)) {
    const Detection& d = dets[i];
    bool joined = false;
    for (Cluster& cl : clusters) {
      if (cl.category != d.category) continue;
      if (iou_3d(cl.rep(), d.box) >= iou_thresh) {
        cl.add(d, i);
        joined = true;
        break;
      }
    }
    if (!joined) {
      Cluster cl;
      cl.category = d.category;
      cl.theta0 = d.box.theta;
      cl.add(d, i);
      clusters.push_back(std::move(cl));
    }
  }

  std::vector<FusedObject> out;
  out.reserve(clusters.size());
  for (const Cluster& cl : clusters) {
    std::vector<SourceRef> sources;
    double conf = 0.0;
    for (const int i : cl.members) {
      sources.push_back(ref_of(dets, i));
      conf += dets[i].confidence;
    }
    conf /= static_cast<double>(cl.members.size());
    out.emplace_back(cl.rep(), min_covariance(dets, cl.members), cl.category,
                     std::move(sources), cl.t_sum / cl.conf_sum, conf);
  }
  return out;
}

std::vector<FusedObject> late_closest_to_sensor(const std::vector<Detection>& dets,
                                                double dist_thresh,
                                                const SensorPositions& sensors) {
  auto sensor_distance = [&](const Detection& d) {
    const auto it = sensors.find(d.agent_id);
    if (it == sensors.end()) {
      throw std::invalid_argument("no sensor position configured for agent " +
                                  std::to_string(d.agent_id));
    }
    const auto& s = it->second;
    return std::hypot(d.box.x - s[0], d.box.y - s[1], d.box.z - s[2]);
  };
  for (const Detection& d : dets) sensor_distance(d);  // fail fast on missing config

  const auto clusters = distance_clusters(
      dets, dist_thresh, [&](const std::vector<int>& members) {
        // Representative is the winner so far: the member nearest its own sensor.
        int best = members.front();
        double best_dist = sensor_distance(dets[best]);
        for (const int i : members) {
          const double dist = sensor_distance(dets[i]);
          if (dist < best_dist) {
            best = i;
            best_dist = dist;
          }
        }
        return std::make_tuple(dets[best].box.x, dets[best].box.y, dets[best].box.z);
      });

  std::vector<FusedObject> out;
  out.reserve(clusters.size());
  for (const auto& members : clusters) {
    int best = members.front();
    double best_dist = sensor_distance(dets[best]);
    for (const int i : members) {
      const double dist = sensor_distance(dets[i]);
      if (dist < best_dist) {
        best = i;
        best_dist = dist;
      }
    }
    out.push_back(passthrough(dets[best], {ref_of(dets, best)}));
  }
  return out;
}

std::vector<FusedObject> late_average(const std::vector<Detection>& dets, double dist_thresh) {
  const auto clusters = distance_clusters(dets, dist_thresh, [&](const std::vector<int>& members) {
    double cx = 0, cy = 0, cz = 0;
    for (const int i : members) {
      cx += dets[i].box.x;
      cy += dets[i].box.y;
      cz += dets[i].box.z;
    }
    const double n = static_cast<double>(members.size());
    return std::make_tuple(cx / n, cy / n, cz / n);
  });

  std::vector<FusedObject> out;
  out.reserve(clusters.size());
  for (const auto& members : clusters) {
    const double n = static_cast<double>(members.size());
    const double theta0 = dets[members.front()].box.theta;
    double acc[7] = {0, 0, 0, 0, 0, 0, 0};
    double t_sum = 0.0, conf_sum = 0.0;
    std::vector<SourceRef> sources;
    for (const int i : members) {
      const BBox3D& b = dets[i].box;
      acc[0] += b.x;
      acc[1] += b.y;
      acc[2] += b.z;
      acc[3] += b.l;
      acc[4] += b.w;
      acc[5] += b.h;
      acc[6] += theta0 + normalize_yaw(b.theta - theta0);
      t_sum += dets[i].timestamp;
      conf_sum += dets[i].confidence;
      sources.push_back(ref_of(dets, i));
    }
    const BBox3D box(acc[0] / n, acc[1] / n, acc[2] / n, acc[3] / n, acc[4] / n, acc[5] / n,
                     normalize_yaw(acc[6] / n));
    out.emplace_back(box, min_covariance(dets, members), dets[members.front()].category,
                     std::move(sources), t_sum / n, conf_sum / n);
  }
  return out;
}

}  // namespace latefuse
