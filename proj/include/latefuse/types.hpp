#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace latefuse {

/// Wraps a finite angle into (-pi, pi]. Throws std::invalid_argument on
/// non-finite input.
double normalize_yaw(double theta);

/// Closed set of object categories. Association never crosses categories.
enum class Category : std::uint8_t {
  Car = 0,
  Truck,
  Bus,
  Pedestrian,
  Bicycle,
  Motorcycle,
  Other,
};

const char* to_string(Category c) noexcept;
std::optional<Category> category_from_string(std::string_view s) noexcept;

/// 7-DoF oriented box: center (x,y,z), extents (l,w,h), yaw about the
/// vertical axis. Extents are strictly positive; yaw is normalized to
/// (-pi, pi] at construction. All fields are in a single shared map frame.
struct BBox3D {
  double x, y, z;    // center, meters
  double l, w, h;    // length, width, height, meters
  double theta;      // yaw, radians in (-pi, pi]

  BBox3D(double x, double y, double z, double l, double w, double h,
         double theta);
};

/// Volume l*w*h in cubic meters.
double box_volume(const BBox3D& b) noexcept;

/// Per-attribute variances for the 7 box components. Diagonal storage only:
/// the generator produces independent per-attribute noise, so nothing is
/// lost. Variances at or below kFloor are clamped up to kFloor; non-positive
/// or non-finite values are rejected.
struct DiagCovariance7 {
  static constexpr double kFloor = 1e-9;

  double var_x, var_y, var_z;   // m^2
  double var_l, var_w, var_h;   // m^2
  double var_theta;             // rad^2

  DiagCovariance7(double var_x, double var_y, double var_z, double var_l,
                  double var_w, double var_h, double var_theta);
};

/// One 3D detection from one agent: box state, diagonal covariance,
/// category, and bookkeeping. gt_id is present only in synthetic or
/// benchmark data, never required for fusion itself.
struct Detection {
  BBox3D box;
  DiagCovariance7 cov;
  Category category;
  int agent_id;
  double timestamp;    // seconds, finite and >= 0
  double confidence;   // [0, 1]
  std::optional<std::string> gt_id;

  Detection(BBox3D box, DiagCovariance7 cov, Category category, int agent_id,
            double timestamp, double confidence,
            std::optional<std::string> gt_id = std::nullopt);
};

/// Provenance of one member of a fused object: which agent produced it,
/// its index in that agent's per-frame detection list, and (in benchmark
/// data) the ground-truth object it was generated from.
struct SourceRef {
  int agent_id;
  int index;
  std::optional<std::string> gt_id;
};

/// Result of merging one associated group. Invariants: sources non-empty,
/// all members share the category, and each fused component variance is
/// <= the minimum member variance of that component (inverse-variance
/// combination can only shrink variance). The variance bound is guaranteed
/// by the producers and checked by tests; the constructor enforces what is
/// visible here.
struct FusedObject {
  BBox3D box;
  DiagCovariance7 cov;
  Category category;
  std::vector<SourceRef> sources;
  double timestamp;
  double confidence;   // max of member confidences for WLS, method-defined otherwise

  FusedObject(BBox3D box, DiagCovariance7 cov, Category category,
              std::vector<SourceRef> sources, double timestamp,
              double confidence);
};

/// Detections of one agent within a frame.
struct AgentDetections {
  int agent_id = 0;
  std::vector<Detection> detections;
};

/// All detections of one fusion step, grouped per agent and sorted by
/// ascending agent_id.
struct Frame {
  double timestamp = 0.0;
  std::vector<AgentDetections> agents;

  /// Groups a flat detection list by agent_id (ascending), preserving the
  /// relative order within each agent.
  static Frame group_by_agent(double timestamp, const std::vector<Detection>& dets);

  std::size_t total_detections() const noexcept;
};

}  // namespace latefuse
