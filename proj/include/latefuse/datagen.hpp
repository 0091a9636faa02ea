#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "latefuse/baselines.hpp"
#include "latefuse/types.hpp"

namespace latefuse {

/// Stateless 64-bit seed mixer (splitmix64 finalizer). Derived streams
/// for scenes, frames, and agents all come from one master seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

/// Per-attribute Gaussian noise levels. std_yaw is stored in radians;
/// the factories take degrees, which is how configurations state it.
struct NoiseConfig {
  double std_pos = 0.0;    // meters, applied to x, y, z independently
  double std_yaw = 0.0;    // radians
  double std_scale = 0.0;  // meters, applied to l, w, h independently
  std::string label = "custom";

  static NoiseConfig mild();      // 0.5 m, 5 deg, 0.1 m
  static NoiseConfig moderate();  // 1.5 m, 20 deg, 0.5 m
  static NoiseConfig large();     // 3.0 m, 60 deg, 1.0 m
  static NoiseConfig custom(double std_pos, double std_yaw_deg, double std_scale);
  /// mild/moderate/large by name; nullopt otherwise.
  static std::optional<NoiseConfig> preset(std::string_view name);
};

/// One scripted object. Unset attributes are sampled: pose uniformly
/// in the scene area with a category-typical size (+-10%), velocity
/// with uniform heading and a category-capped speed. Vehicles face
/// their direction of travel.
struct ObjectSpec {
  Category category = Category::Car;
  std::optional<BBox3D> initial;                  // pose and size at t = 0
  std::optional<std::array<double, 2>> velocity;  // ground-plane (vx, vy), m/s
};

/// Scene layout for ground-truth synthesis. Objects move with constant
/// velocity; min_separation is enforced between all center trajectories
/// over the whole scene duration (stricter than per-frame checks, and
/// independent of the frame rate).
struct SceneSpec {
  int n_frames = 20;
  double frame_rate = 2.0;  // Hz
  std::vector<ObjectSpec> objects;
  int n_random_objects = 0;     // appended to objects, fully sampled
  double area = 200.0;          // square side length centered on the origin, meters
  double min_separation = 8.0;  // meters
};

/// Ground-truth frames at timestamps k / frame_rate, one pseudo-agent 0,
/// confidence 1, covariance at the clamp floor, stable gt_id "o<k>".
/// Deterministic in (spec, seed). Throws std::runtime_error when an
/// object cannot be placed within min_separation after bounded retries
/// (or a scripted pose violates it outright).
std::vector<Frame> generate_gt(const SceneSpec& spec, std::uint64_t seed);

/// One agent's noisy view of a ground-truth frame: independent zero-mean
/// Gaussian errors per Table-style config on position, yaw (then
/// renormalized), and each extent (clamped to >= 0.1 m); covariance set
/// to the generating variances (floored); confidence uniform in
/// [0.5, 1]; timestamps jittered uniformly within +-max_time_jitter and
/// clamped to >= 0. gt_id, category, and count are preserved. The seed
/// is mixed with agent_id, so agents sharing a seed draw independent
/// streams.
std::vector<Detection> perturb(const Frame& gt_frame, int agent_id, const NoiseConfig& nc,
                               std::uint64_t seed, double max_time_jitter = 0.05);

/// Ground truth plus per-agent noisy detection streams and sensor
/// mount positions. Agent ids are 1-based; agent 0 is ground truth.
struct Dataset {
  std::vector<Frame> gt;
  std::vector<std::vector<Detection>> agents;    // agents[k]: flat stream of agent k+1
  std::vector<std::array<double, 3>> sensors;    // sensors[k]: agent k+1 mount position

  SensorPositions sensor_positions() const;
};

/// Builds the full pseudo-collaborative dataset: one generate_gt pass,
/// one perturb stream per configured agent (independent noise draws per
/// agent and per frame), and a sampled sensor position per agent.
/// Throws std::invalid_argument when nc_per_agent is empty.
Dataset make_pseudo_collab(const SceneSpec& spec, const std::vector<NoiseConfig>& nc_per_agent,
                           std::uint64_t seed);

/// Reads ground-truth frames from a JSON-lines detection file: groups
/// rows by exact timestamp, sorts frames ascending. Throws ParseError
/// (with the line number) for malformed rows and for rows missing
/// gt_id, which a ground-truth role requires.
std::vector<Frame> load_annotations(const std::string& path);
std::vector<Frame> load_annotations(std::istream& in);

}  // namespace latefuse
