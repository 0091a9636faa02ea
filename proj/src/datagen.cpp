#include "latefuse/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <stdexcept>

#include "latefuse/jsonl.hpp"

namespace latefuse {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  auto finalize = [](std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  };
  return finalize(seed ^ finalize(salt));
}

namespace {

constexpr double kDegToRad = M_PI / 180.0;
constexpr int kPlacementRetries = 100;
constexpr double kMinExtent = 0.1;  // meters, lower clamp for noisy l/w/h

NoiseConfig checked(double std_pos, double std_yaw_deg, double std_scale, std::string label) {
  if (!(std_pos >= 0.0) || !(std_yaw_deg >= 0.0) || !(std_scale >= 0.0) ||
      !std::isfinite(std_pos) || !std::isfinite(std_yaw_deg) || !std::isfinite(std_scale)) {
    throw std::invalid_argument("noise standard deviations must be finite and >= 0");
  }
  return NoiseConfig{std_pos, std_yaw_deg * kDegToRad, std_scale, std::move(label)};
}

struct CategoryProfile {
  double l, w, h;
  double max_speed;  // m/s
};

CategoryProfile profile(Category c) {
  switch (c) {
    case Category::Car: return {4.5, 1.9, 1.7, 6.0};
    case Category::Truck: return {8.0, 2.5, 3.0, 6.0};
    case Category::Bus: return {11.0, 2.9, 3.3, 6.0};
    case Category::Pedestrian: return {0.6, 0.6, 1.75, 1.5};
    case Category::Bicycle: return {1.8, 0.6, 1.4, 4.0};
    case Category::Motorcycle: return {2.1, 0.8, 1.4, 6.0};
    case Category::Other: break;
  }
  return {3.0, 1.5, 1.5, 6.0};
}

Category sample_category(double u) {
  // Cumulative mix loosely following urban frequency.
  struct Entry {
    double upto;
    Category cat;
  };
  static constexpr Entry table[] = {
      {0.50, Category::Car},        {0.60, Category::Truck},
      {0.65, Category::Bus},        {0.85, Category::Pedestrian},
      {0.95, Category::Bicycle},    {1.00, Category::Motorcycle},
  };
  for (const Entry& e : table) {
    if (u < e.upto) return e.cat;
  }
  return Category::Motorcycle;
}

struct PlacedObject {
  Category category;
  double x, y, z;
  double vx, vy;
  double l, w, h;
  double yaw;
};

// Minimum 3D center distance between two constant-velocity objects over
// t in [0, horizon]; the squared distance is quadratic in t, so the
// minimum is at the clamped vertex.
double min_trajectory_distance(const PlacedObject& a, const PlacedObject& b, double horizon) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  const double dvx = a.vx - b.vx;
  const double dvy = a.vy - b.vy;
  const double qa = dvx * dvx + dvy * dvy;
  const double qb = dx * dvx + dy * dvy;  // f(t) = qa t^2 + 2 qb t + c
  const double qc = dx * dx + dy * dy + dz * dz;
  const double t = qa > 0.0 ? std::clamp(-qb / qa, 0.0, horizon) : 0.0;
  return std::sqrt(std::max(0.0, qa * t * t + 2.0 * qb * t + qc));
}

void validate(const SceneSpec& spec) {
  if (spec.n_frames < 0) throw std::invalid_argument("n_frames must be >= 0");
  if (!(spec.frame_rate > 0.0)) throw std::invalid_argument("frame_rate must be positive");
  if (!(spec.area > 0.0)) throw std::invalid_argument("area must be positive");
  if (!(spec.min_separation > 0.0)) {
    throw std::invalid_argument("min_separation must be positive");
  }
  if (spec.n_random_objects < 0) {
    throw std::invalid_argument("n_random_objects must be >= 0");
  }
}

}  // namespace

NoiseConfig NoiseConfig::mild() { return checked(0.5, 5.0, 0.1, "mild"); }
NoiseConfig NoiseConfig::moderate() { return checked(1.5, 20.0, 0.5, "moderate"); }
NoiseConfig NoiseConfig::large() { return checked(3.0, 60.0, 1.0, "large"); }

NoiseConfig NoiseConfig::custom(double std_pos, double std_yaw_deg, double std_scale) {
  return checked(std_pos, std_yaw_deg, std_scale, "custom");
}

std::optional<NoiseConfig> NoiseConfig::preset(std::string_view name) {
  if (name == "mild") return mild();
  if (name == "moderate") return moderate();
  if (name == "large") return large();
  return std::nullopt;
}

std::vector<Frame> generate_gt(const SceneSpec& spec, std::uint64_t seed) {
  validate(spec);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto urand = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  const double horizon = spec.n_frames > 0 ? (spec.n_frames - 1) / spec.frame_rate : 0.0;
  const double half = spec.area / 2.0;

  std::vector<ObjectSpec> specs = spec.objects;
  specs.resize(specs.size() + spec.n_random_objects);
  const std::size_t n_explicit = spec.objects.size();

  std::vector<PlacedObject> placed;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const ObjectSpec& os = specs[i];
    PlacedObject o;
    o.category = i < n_explicit ? os.category : sample_category(unit(rng));
    const CategoryProfile prof = profile(o.category);

    if (os.initial) {
      o.l = os.initial->l;
      o.w = os.initial->w;
      o.h = os.initial->h;
      o.yaw = os.initial->theta;
    } else {
      o.l = prof.l * (1.0 + 0.1 * urand(-1.0, 1.0));
      o.w = prof.w * (1.0 + 0.1 * urand(-1.0, 1.0));
      o.h = prof.h * (1.0 + 0.1 * urand(-1.0, 1.0));
    }

    double heading = 0.0;
    if (os.velocity) {
      o.vx = (*os.velocity)[0];
      o.vy = (*os.velocity)[1];
      heading = std::atan2(o.vy, o.vx);
    } else {
      const double speed = urand(0.0, prof.max_speed);
      heading = urand(-M_PI, M_PI);
      o.vx = speed * std::cos(heading);
      o.vy = speed * std::sin(heading);
    }
    if (!os.initial) o.yaw = normalize_yaw(heading);  // face the travel direction

    if (os.initial) {
      o.x = os.initial->x;
      o.y = os.initial->y;
      o.z = os.initial->z;
      for (const PlacedObject& other : placed) {
        if (min_trajectory_distance(o, other, horizon) < spec.min_separation) {
          throw std::runtime_error("scripted object " + std::to_string(i) +
                                   " violates min_separation");
        }
      }
    } else {
      bool ok = false;
      for (int attempt = 0; attempt < kPlacementRetries && !ok; ++attempt) {
        o.x = urand(-half, half);
        o.y = urand(-half, half);
        o.z = o.h / 2.0;
        ok = true;
        for (const PlacedObject& other : placed) {
          if (min_trajectory_distance(o, other, horizon) < spec.min_separation) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) {
        throw std::runtime_error("could not place object " + std::to_string(i) +
                                 " within min_separation after " +
                                 std::to_string(kPlacementRetries) + " attempts");
      }
    }
    placed.push_back(o);
  }

  const DiagCovariance7 gt_cov(DiagCovariance7::kFloor, DiagCovariance7::kFloor,
                               DiagCovariance7::kFloor, DiagCovariance7::kFloor,
                               DiagCovariance7::kFloor, DiagCovariance7::kFloor,
                               DiagCovariance7::kFloor);
  std::vector<Frame> frames;
  frames.reserve(spec.n_frames);
  for (int k = 0; k < spec.n_frames; ++k) {
    const double t = k / spec.frame_rate;
    std::vector<Detection> dets;
    dets.reserve(placed.size());
    for (std::size_t i = 0; i < placed.size(); ++i) {
      const PlacedObject& o = placed[i];
      const BBox3D box(o.x + t * o.vx, o.y + t * o.vy, o.z, o.l, o.w, o.h, o.yaw);
      dets.emplace_back(box, gt_cov, o.category, 0, t, 1.0, "o" + std::to_string(i));
    }
    frames.push_back(Frame::group_by_agent(t, dets));
  }
  return frames;
}

std::vector<Detection> perturb(const Frame& gt_frame, int agent_id, const NoiseConfig& nc,
                               std::uint64_t seed, double max_time_jitter) {
  if (!(nc.std_pos >= 0.0) || !(nc.std_yaw >= 0.0) || !(nc.std_scale >= 0.0)) {
    throw std::invalid_argument("noise standard deviations must be >= 0");
  }
  if (!(max_time_jitter >= 0.0)) {
    throw std::invalid_argument("max_time_jitter must be >= 0");
  }
  std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(agent_id)));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> conf_dist(0.5, 1.0);
  std::uniform_real_distribution<double> jitter(-max_time_jitter, max_time_jitter);

  const double var_pos = std::max(nc.std_pos * nc.std_pos, DiagCovariance7::kFloor);
  const double var_yaw = std::max(nc.std_yaw * nc.std_yaw, DiagCovariance7::kFloor);
  const double var_scale = std::max(nc.std_scale * nc.std_scale, DiagCovariance7::kFloor);
  const DiagCovariance7 cov(var_pos, var_pos, var_pos, var_scale, var_scale, var_scale,
                            var_yaw);

  std::vector<Detection> out;
  for (const AgentDetections& agent : gt_frame.agents) {
    for (const Detection& d : agent.detections) {
      const double x = d.box.x + nc.std_pos * gauss(rng);
      const double y = d.box.y + nc.std_pos * gauss(rng);
      const double z = d.box.z + nc.std_pos * gauss(rng);
      const double theta = normalize_yaw(d.box.theta + nc.std_yaw * gauss(rng));
      const double l = std::max(d.box.l + nc.std_scale * gauss(rng), kMinExtent);
      const double w = std::max(d.box.w + nc.std_scale * gauss(rng), kMinExtent);
      const double h = std::max(d.box.h + nc.std_scale * gauss(rng), kMinExtent);
      const double confidence = conf_dist(rng);
      const double t = std::max(0.0, d.timestamp + jitter(rng));
      out.emplace_back(BBox3D(x, y, z, l, w, h, theta), cov, d.category, agent_id, t,
                       confidence, d.gt_id);
    }
  }
  return out;
}

SensorPositions Dataset::sensor_positions() const {
  SensorPositions out;
  for (std::size_t k = 0; k < sensors.size(); ++k) {
    out[static_cast<int>(k) + 1] = sensors[k];
  }
  return out;
}

Dataset make_pseudo_collab(const SceneSpec& spec, const std::vector<NoiseConfig>& nc_per_agent,
                           std::uint64_t seed) {
  if (nc_per_agent.empty()) {
    throw std::invalid_argument("make_pseudo_collab needs at least one agent config");
  }
  Dataset ds;
  ds.gt = generate_gt(spec, mix_seed(seed, 1));

  std::mt19937_64 srng(mix_seed(seed, 2));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double half = spec.area / 2.0;
  for (std::size_t k = 0; k < nc_per_agent.size(); ++k) {
    const double sx = -half + spec.area * unit(srng);
    const double sy = -half + spec.area * unit(srng);
    ds.sensors.push_back({sx, sy, 1.5});
  }

  ds.agents.resize(nc_per_agent.size());
  for (std::size_t k = 0; k < nc_per_agent.size(); ++k) {
    for (std::size_t f = 0; f < ds.gt.size(); ++f) {
      const std::vector<Detection> dets = perturb(
          ds.gt[f], static_cast<int>(k) + 1, nc_per_agent[k], mix_seed(seed, 3 + f));
      ds.agents[k].insert(ds.agents[k].end(), dets.begin(), dets.end());
    }
  }
  return ds;
}

std::vector<Frame> load_annotations(std::istream& in) {
  std::vector<Detection> dets;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    Detection d = detection_from_json(line, line_number);
    if (!d.gt_id) {
      throw ParseError("ground-truth row is missing gt_id", line_number);
    }
    dets.push_back(std::move(d));
  }

  std::map<double, std::vector<Detection>> by_time;
  for (Detection& d : dets) by_time[d.timestamp].push_back(std::move(d));
  std::vector<Frame> frames;
  frames.reserve(by_time.size());
  for (const auto& [t, list] : by_time) {
    frames.push_back(Frame::group_by_agent(t, list));
  }
  return frames;
}

std::vector<Frame> load_annotations(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open annotation file: " + path);
  }
  return load_annotations(in);
}

}  // namespace latefuse
