#include "latefuse/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latefuse {

double normalize_yaw(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("normalize_yaw: non-finite angle");
  }
  // remainder() lands in [-pi, pi]; fold the open end onto +pi.
  double r = std::remainder(theta, 2.0 * M_PI);
  if (r <= -M_PI) r += 2.0 * M_PI;
  return r;
}

const char* to_string(Category c) noexcept {
  switch (c) {
    case Category::Car: return "car";
    case Category::Truck: return "truck";
    case Category::Bus: return "bus";
    case Category::Pedestrian: return "pedestrian";
    case Category::Bicycle: return "bicycle";
    case Category::Motorcycle: return "motorcycle";
    case Category::Other: return "other";
  }
  return "other";
}

std::optional<Category> category_from_string(std::string_view s) noexcept {
  if (s == "car") return Category::Car;
  if (s == "truck") return Category::Truck;
  if (s == "bus") return Category::Bus;
  if (s == "pedestrian") return Category::Pedestrian;
  if (s == "bicycle") return Category::Bicycle;
  if (s == "motorcycle") return Category::Motorcycle;
  if (s == "other") return Category::Other;
  return std::nullopt;
}

BBox3D::BBox3D(double x_, double y_, double z_, double l_, double w_,
               double h_, double theta_)
    : x(x_), y(y_), z(z_), l(l_), w(w_), h(h_), theta(0.0) {
  for (double v : {x, y, z, l, w, h}) {
    if (!std::isfinite(v)) throw std::invalid_argument("BBox3D: non-finite field");
  }
  if (l <= 0.0 || w <= 0.0 || h <= 0.0) {
    throw std::invalid_argument("BBox3D: extents must be > 0");
  }
  theta = normalize_yaw(theta_);
}

double box_volume(const BBox3D& b) noexcept { return b.l * b.w * b.h; }

DiagCovariance7::DiagCovariance7(double vx, double vy, double vz, double vl,
                                 double vw, double vh, double vt)
    : var_x(vx), var_y(vy), var_z(vz), var_l(vl), var_w(vw), var_h(vh),
      var_theta(vt) {
  for (double* v : {&var_x, &var_y, &var_z, &var_l, &var_w, &var_h, &var_theta}) {
    if (!std::isfinite(*v) || *v <= 0.0) {
      throw std::invalid_argument("DiagCovariance7: variances must be finite and > 0");
    }
    *v = std::max(*v, kFloor);
  }
}

Detection::Detection(BBox3D box_, DiagCovariance7 cov_, Category category_,
                     int agent_id_, double timestamp_, double confidence_,
                     std::optional<std::string> gt_id_)
    : box(box_), cov(cov_), category(category_), agent_id(agent_id_),
      timestamp(timestamp_), confidence(confidence_), gt_id(std::move(gt_id_)) {
  if (!std::isfinite(timestamp) || timestamp < 0.0) {
    throw std::invalid_argument("Detection: timestamp must be finite and >= 0");
  }
  if (!std::isfinite(confidence) || confidence < 0.0 || confidence > 1.0) {
    throw std::invalid_argument("Detection: confidence must be in [0, 1]");
  }
}

FusedObject::FusedObject(BBox3D box_, DiagCovariance7 cov_, Category category_,
                         std::vector<SourceRef> sources_, double timestamp_,
                         double confidence_)
    : box(box_), cov(cov_), category(category_), sources(std::move(sources_)),
      timestamp(timestamp_), confidence(confidence_) {
  if (sources.empty()) {
    throw std::invalid_argument("FusedObject: sources must be non-empty");
  }
}

Frame Frame::group_by_agent(double timestamp, const std::vector<Detection>& dets) {
  Frame f;
  f.timestamp = timestamp;
  for (const Detection& d : dets) {
    auto it = std::find_if(f.agents.begin(), f.agents.end(),
                           [&](const AgentDetections& a) { return a.agent_id == d.agent_id; });
    if (it == f.agents.end()) {
      f.agents.push_back({d.agent_id, {}});
      it = std::prev(f.agents.end());
    }
    it->detections.push_back(d);
  }
  std::sort(f.agents.begin(), f.agents.end(),
            [](const AgentDetections& a, const AgentDetections& b) {
              return a.agent_id < b.agent_id;
            });
  return f;
}

std::size_t Frame::total_detections() const noexcept {
  std::size_t n = 0;
  for (const auto& a : agents) n += a.detections.size();
  return n;
}

}  // namespace latefuse
