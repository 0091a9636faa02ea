#include "latefuse/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "latefuse/fusion.hpp"
#include "latefuse/jsonl.hpp"

namespace latefuse {

using nlohmann::json;

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::NmsStd3D: return "nms_std_3d";
    case Method::NmsGiou3D: return "nms_giou_3d";
    case Method::Wbf: return "wbf";
    case Method::InfraDet3DLate: return "infradet3d_late";
    case Method::DairV2XLate: return "dair_v2x_late";
    case Method::WlsCsba: return "wls_csba";
    case Method::WlsGt: return "wls_gt";
  }
  return "unknown";
}

Method method_from_string(std::string_view name) {
  static constexpr std::pair<std::string_view, Method> kTable[] = {
      {"nms_std_3d", Method::NmsStd3D},     {"nms_giou_3d", Method::NmsGiou3D},
      {"wbf", Method::Wbf},                 {"infradet3d_late", Method::InfraDet3DLate},
      {"dair_v2x_late", Method::DairV2XLate}, {"wls_csba", Method::WlsCsba},
      {"wls_gt", Method::WlsGt},
  };
  for (const auto& [key, m] : kTable) {
    if (name == key) return m;
  }
  if (name == "psa") {
    throw std::invalid_argument("method 'psa' is out of scope for this benchmark");
  }
  throw std::invalid_argument("unknown method: " + std::string(name));
}

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig cfg;
  cfg.scene.n_frames = 20;
  cfg.scene.frame_rate = 2.0;
  cfg.scene.area = 200.0;
  cfg.scene.min_separation = 8.0;
  cfg.noise_rows = {
      {"mild", {NoiseConfig::mild(), NoiseConfig::mild()}},
      {"moderate", {NoiseConfig::moderate(), NoiseConfig::moderate()}},
      {"large", {NoiseConfig::large(), NoiseConfig::large()}},
      {"mild+large", {NoiseConfig::mild(), NoiseConfig::large()}},
  };
  cfg.methods = {Method::NmsStd3D,      Method::NmsGiou3D, Method::Wbf,
                 Method::InfraDet3DLate, Method::DairV2XLate, Method::WlsCsba,
                 Method::WlsGt};
  return cfg;
}

double ExperimentConfig::lambda_max_for(const NoiseRow& row) const {
  if (lambda_max_override) return *lambda_max_override;
  double max_std = 0.0;
  for (const NoiseConfig& nc : row.agents) max_std = std::max(max_std, nc.std_pos);
  return std::max(6.0 * max_std, 0.1);
}

CsbaParams ExperimentConfig::csba_for(const NoiseRow& row) const {
  CsbaParams p;
  p.w_ds = w_ds;
  p.w_cs = w_cs;
  p.w_os = w_os;
  p.lambda_max = lambda_max_for(row);
  p.gate_factor = gate_factor;
  p.cost_gate = cost_gate;
  return p;
}

FpPenalties ExperimentConfig::penalties_for(const NoiseRow& row) const {
  FpPenalties p;
  p.translation = fp_translation_override.value_or(lambda_max_for(row));
  p.scale = fp_scale;
  p.orientation_deg = fp_orientation_deg;
  return p;
}

namespace {

[[noreturn]] void config_error(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

void check_keys(const json& j, std::initializer_list<std::string_view> known,
                const char* where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      config_error(std::string("unknown key '") + key + "' in " + where);
    }
  }
}

NoiseConfig parse_noise(const json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    const auto preset = NoiseConfig::preset(name);
    if (!preset) config_error("invalid noise preset: " + name);
    return *preset;
  }
  if (j.is_object()) {
    check_keys(j, {"std_pos", "std_yaw_deg", "std_scale", "label"}, "noise config");
    NoiseConfig nc = NoiseConfig::custom(j.value("std_pos", 0.0), j.value("std_yaw_deg", 0.0),
                                         j.value("std_scale", 0.0));
    nc.label = j.value("label", std::string("custom"));
    return nc;
  }
  config_error("noise config must be a preset name or an object");
}

std::string derive_row_label(const std::vector<NoiseConfig>& agents) {
  std::string label = agents.front().label;
  bool uniform = true;
  for (const NoiseConfig& nc : agents) uniform = uniform && nc.label == label;
  if (uniform) return label;
  label.clear();
  for (const NoiseConfig& nc : agents) {
    if (!label.empty()) label += "+";
    label += nc.label;
  }
  return label;
}

NoiseRow parse_noise_row(const json& j) {
  NoiseRow row;
  const json* agents = nullptr;
  if (j.is_object()) {
    check_keys(j, {"label", "agents"}, "noise row");
    if (!j.contains("agents")) config_error("noise row needs an 'agents' list");
    agents = &j.at("agents");
    if (j.contains("label")) row.label = j.at("label").get<std::string>();
  } else if (j.is_array()) {
    agents = &j;
  } else {
    config_error("noise row must be an object or an agent list");
  }
  if (!agents->is_array() || agents->empty()) {
    config_error("noise row 'agents' must be a non-empty list");
  }
  for (const json& a : *agents) row.agents.push_back(parse_noise(a));
  if (row.label.empty()) row.label = derive_row_label(row.agents);
  return row;
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) config_error("top level must be a JSON object");
  check_keys(j,
             {"seed", "scenes", "frames_per_scene", "frame_rate", "objects_min",
              "objects_max", "area", "min_separation", "window_dt", "noise_rows", "methods",
              "iou_thresh", "giou_thresh", "dist_thresh", "csba", "fp_penalties", "gt_assoc",
              "out_dir", "format"},
             "config");
  ExperimentConfig cfg = ExperimentConfig::defaults();
  cfg.seed = j.value("seed", cfg.seed);
  cfg.scenes = j.value("scenes", cfg.scenes);
  cfg.scene.n_frames = j.value("frames_per_scene", cfg.scene.n_frames);
  cfg.scene.frame_rate = j.value("frame_rate", cfg.scene.frame_rate);
  cfg.objects_min = j.value("objects_min", cfg.objects_min);
  cfg.objects_max = j.value("objects_max", cfg.objects_max);
  cfg.scene.area = j.value("area", cfg.scene.area);
  cfg.scene.min_separation = j.value("min_separation", cfg.scene.min_separation);
  cfg.window_dt = j.value("window_dt", cfg.window_dt);

  if (j.contains("noise_rows")) {
    const json& rows = j.at("noise_rows");
    if (!rows.is_array() || rows.empty()) config_error("noise_rows must be a non-empty list");
    cfg.noise_rows.clear();
    for (const json& r : rows) cfg.noise_rows.push_back(parse_noise_row(r));
  }
  if (j.contains("methods")) {
    const json& methods = j.at("methods");
    if (!methods.is_array() || methods.empty()) {
      config_error("methods must be a non-empty list");
    }
    cfg.methods.clear();
    for (const json& m : methods) cfg.methods.push_back(method_from_string(m.get<std::string>()));
  }
  if (j.value("gt_assoc", false) &&
      std::find(cfg.methods.begin(), cfg.methods.end(), Method::WlsGt) == cfg.methods.end()) {
    cfg.methods.push_back(Method::WlsGt);
  }

  cfg.method_params.iou_thresh = j.value("iou_thresh", cfg.method_params.iou_thresh);
  cfg.method_params.giou_thresh = j.value("giou_thresh", cfg.method_params.giou_thresh);
  cfg.method_params.dist_thresh = j.value("dist_thresh", cfg.method_params.dist_thresh);

  if (j.contains("csba")) {
    const json& c = j.at("csba");
    check_keys(c, {"w_ds", "w_cs", "w_os", "lambda_max", "gate_factor", "cost_gate"}, "csba");
    cfg.w_ds = c.value("w_ds", cfg.w_ds);
    cfg.w_cs = c.value("w_cs", cfg.w_cs);
    cfg.w_os = c.value("w_os", cfg.w_os);
    cfg.gate_factor = c.value("gate_factor", cfg.gate_factor);
    if (c.contains("lambda_max")) cfg.lambda_max_override = c.at("lambda_max").get<double>();
    if (c.contains("cost_gate")) cfg.cost_gate = c.at("cost_gate").get<double>();
  }
  if (j.contains("fp_penalties")) {
    const json& p = j.at("fp_penalties");
    check_keys(p, {"translation_m", "scale_m", "orientation_deg"}, "fp_penalties");
    if (p.contains("translation_m")) {
      cfg.fp_translation_override = p.at("translation_m").get<double>();
    }
    cfg.fp_scale = p.value("scale_m", cfg.fp_scale);
    cfg.fp_orientation_deg = p.value("orientation_deg", cfg.fp_orientation_deg);
  }
  cfg.out_dir = j.value("out_dir", cfg.out_dir);
  cfg.format = j.value("format", cfg.format);
  if (cfg.format != "csv" && cfg.format != "md" && cfg.format != "json") {
    config_error("format must be one of csv, md, json");
  }
  if (cfg.scenes < 0) config_error("scenes must be >= 0");
  if (cfg.objects_min < 0 || cfg.objects_max < cfg.objects_min) {
    config_error("need 0 <= objects_min <= objects_max");
  }
  if (!(cfg.window_dt > 0.0)) config_error("window_dt must be positive");
  return cfg;
}

json parse_json_text(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) config_error("invalid JSON in " + what);
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format3_opt(const std::optional<double>& v) {
  if (!v) return "na";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", *v);
  return buf;
}

std::string format3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

ExperimentConfig config_from_json_string(const std::string& text) {
  return config_from_json(parse_json_text(text, "config"));
}

ExperimentConfig config_from_json_file(const std::string& path) {
  return config_from_json(parse_json_text(read_text_file(path), path));
}

std::vector<Detection> pooled_detections(const Frame& frame) {
  std::vector<int> order(frame.agents.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return frame.agents[a].agent_id < frame.agents[b].agent_id;
  });
  std::vector<Detection> out;
  out.reserve(frame.total_detections());
  for (const int i : order) {
    const auto& dets = frame.agents[i].detections;
    out.insert(out.end(), dets.begin(), dets.end());
  }
  return out;
}

std::vector<FusedObject> gt_assoc_fuse(const Frame& frame) {
  std::vector<int> order(frame.agents.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return frame.agents[a].agent_id < frame.agents[b].agent_id;
  });

  std::unordered_map<std::string, std::size_t> group_of;
  std::vector<std::vector<Detection>> members;
  std::vector<std::vector<SourceRef>> refs;
  for (const int ai : order) {
    const AgentDetections& agent = frame.agents[ai];
    for (int k = 0; k < static_cast<int>(agent.detections.size()); ++k) {
      const Detection& d = agent.detections[k];
      if (!d.gt_id) {
        throw std::invalid_argument("gt_assoc_fuse requires gt_id on every detection");
      }
      const auto [it, inserted] = group_of.try_emplace(*d.gt_id, members.size());
      if (inserted) {
        members.emplace_back();
        refs.emplace_back();
      }
      members[it->second].push_back(d);
      refs[it->second].push_back(SourceRef{agent.agent_id, k, d.gt_id});
    }
  }

  std::vector<FusedObject> out;
  out.reserve(members.size());
  for (std::size_t g = 0; g < members.size(); ++g) {
    out.push_back(wls_fuse(members[g], refs[g]));
  }
  return out;
}

std::vector<FusedObject> apply_method(Method m, const Frame& frame, const MethodContext& ctx) {
  switch (m) {
    case Method::WlsCsba: return fuse_frame(frame, ctx.csba);
    case Method::WlsGt: return gt_assoc_fuse(frame);
    case Method::NmsStd3D: return nms_std_3d(pooled_detections(frame), ctx.params.iou_thresh);
    case Method::NmsGiou3D:
      return nms_giou_3d(pooled_detections(frame), ctx.params.giou_thresh);
    case Method::Wbf: return wbf_3d(pooled_detections(frame), ctx.params.iou_thresh);
    case Method::InfraDet3DLate:
      return late_closest_to_sensor(pooled_detections(frame), ctx.params.dist_thresh,
                                    ctx.sensors);
    case Method::DairV2XLate:
      return late_average(pooled_detections(frame), ctx.params.dist_thresh);
  }
  throw std::logic_error("unreachable method");
}

int nearest_frame_index(const std::vector<Frame>& frames, double t) {
  if (frames.empty()) throw std::invalid_argument("nearest_frame_index on empty frame list");
  int best = 0;
  double best_dist = std::abs(frames[0].timestamp - t);
  for (int i = 1; i < static_cast<int>(frames.size()); ++i) {
    const double dist = std::abs(frames[i].timestamp - t);
    if (dist < best_dist) {
      best = i;
      best_dist = dist;
    }
  }
  return best;
}

namespace {

const std::vector<Detection> kNoDetections;

const std::vector<Detection>& gt_detections(const Frame& frame) {
  return frame.agents.empty() ? kNoDetections : frame.agents.front().detections;
}

ResultCell run_cell(const ExperimentConfig& cfg, const NoiseRow& row, Method method) {
  MethodContext ctx{cfg.csba_for(row), cfg.method_params, {}};
  EvalAccumulator acc(cfg.penalties_for(row));
  for (int s = 0; s < cfg.scenes; ++s) {
    const std::uint64_t scene_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(s));
    SceneSpec spec = cfg.scene;
    spec.objects.clear();
    const std::uint64_t span =
        static_cast<std::uint64_t>(cfg.objects_max - cfg.objects_min) + 1;
    spec.n_random_objects =
        cfg.objects_min + static_cast<int>(mix_seed(scene_seed, 4) % span);

    const Dataset ds = make_pseudo_collab(spec, row.agents, scene_seed);
    ctx.sensors = ds.sensor_positions();
    std::vector<Detection> stream;
    for (const auto& agent_stream : ds.agents) {
      stream.insert(stream.end(), agent_stream.begin(), agent_stream.end());
    }
    const std::vector<Frame> windows = window_group(stream, cfg.window_dt);

    // Every ground-truth frame is scored exactly once: all windows that
    // land nearest to it pool their outputs, frames with no window at
    // all still contribute their objects as misses.
    std::vector<std::vector<FusedObject>> preds_per_gt(ds.gt.size());
    for (const Frame& window : windows) {
      std::vector<FusedObject> preds = apply_method(method, window, ctx);
      auto& bucket = preds_per_gt[nearest_frame_index(ds.gt, window.timestamp)];
      bucket.insert(bucket.end(), std::make_move_iterator(preds.begin()),
                    std::make_move_iterator(preds.end()));
    }
    for (std::size_t g = 0; g < ds.gt.size(); ++g) {
      acc.add(preds_per_gt[g], gt_detections(ds.gt[g]));
    }
  }
  return ResultCell{row.label, to_string(method), acc.report()};
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.noise_rows.empty()) config_error("noise_rows must be non-empty");
  if (cfg.methods.empty()) config_error("methods must be non-empty");
  if (cfg.scenes < 0) config_error("scenes must be >= 0");
  if (cfg.objects_min < 0 || cfg.objects_max < cfg.objects_min) {
    config_error("need 0 <= objects_min <= objects_max");
  }

  std::vector<std::future<ResultCell>> futures;
  futures.reserve(cfg.noise_rows.size() * cfg.methods.size());
  for (const NoiseRow& row : cfg.noise_rows) {
    for (const Method method : cfg.methods) {
      futures.push_back(std::async(std::launch::async, run_cell, std::cref(cfg),
                                   std::cref(row), method));
    }
  }
  ExperimentResult result;
  result.cells.reserve(futures.size());
  for (auto& f : futures) result.cells.push_back(f.get());
  return result;
}

std::string results_csv(const ExperimentResult& result) {
  std::string out = eval_csv_header() + "\n";
  for (const ResultCell& cell : result.cells) {
    out += eval_csv_row(cell.method, cell.noise_label, cell.report) + "\n";
  }
  return out;
}

std::string results_markdown(const ExperimentResult& result) {
  std::string out = "# Late fusion benchmark\n";
  std::string current;
  bool first = true;
  for (const ResultCell& cell : result.cells) {
    if (first || cell.noise_label != current) {
      current = cell.noise_label;
      first = false;
      out += "\n## " + current + "\n\n";
      out += "| Method | mATE (m) | mASE (m) | mAOE (deg) | Precision | Recall |\n";
      out += "|---|---|---|---|---|---|\n";
    }
    const MetricBlock& b = cell.report.overall;
    out += "| " + cell.method + " | " + format3_opt(b.mate) + " | " + format3_opt(b.mase) +
           " | " + format3_opt(b.maoe) + " | " + format3(b.precision) + " | " +
           format3(b.recall) + " |\n";
  }
  return out;
}

std::string results_json(const ExperimentResult& result) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < result.cells.size(); ++i) {
    const ResultCell& cell = result.cells[i];
    out += eval_report_json(cell.method, cell.noise_label, cell.report);
    out += i + 1 < result.cells.size() ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

namespace {

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << text;
}

}  // namespace

void write_results(const ExperimentResult& result, const ExperimentConfig& cfg) {
  const std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  write_text_file(dir / "results.csv", results_csv(result));
  write_text_file(dir / "results.md", results_markdown(result));
  if (cfg.format == "json") {
    write_text_file(dir / "results.json", results_json(result));
  }
}

GenRequest gen_request_from_json_file(const std::string& path) {
  const json j = parse_json_text(read_text_file(path), path);
  if (!j.is_object()) config_error("scene spec must be a JSON object");
  check_keys(j,
             {"seed", "n_frames", "frame_rate", "area", "min_separation",
              "n_random_objects", "objects", "agents"},
             "scene spec");
  GenRequest req;
  req.seed = j.value("seed", req.seed);
  req.scene.n_frames = j.value("n_frames", req.scene.n_frames);
  req.scene.frame_rate = j.value("frame_rate", req.scene.frame_rate);
  req.scene.area = j.value("area", req.scene.area);
  req.scene.min_separation = j.value("min_separation", req.scene.min_separation);
  req.scene.n_random_objects = j.value("n_random_objects", req.scene.n_random_objects);
  if (j.contains("objects")) {
    for (const json& o : j.at("objects")) {
      check_keys(o, {"category", "initial", "velocity"}, "object spec");
      ObjectSpec os;
      const auto cat_name = o.value("category", std::string("car"));
      const auto cat = category_from_string(cat_name);
      if (!cat) config_error("unknown category: " + cat_name);
      os.category = *cat;
      if (o.contains("initial")) {
        const json& b = o.at("initial");
        check_keys(b, {"x", "y", "z", "l", "w", "h", "theta"}, "initial pose");
        os.initial = BBox3D(b.value("x", 0.0), b.value("y", 0.0), b.value("z", 0.0),
                            b.value("l", 1.0), b.value("w", 1.0), b.value("h", 1.0),
                            b.value("theta", 0.0));
      }
      if (o.contains("velocity")) {
        const json& v = o.at("velocity");
        if (!v.is_array() || v.size() != 2) config_error("velocity must be [vx, vy]");
        os.velocity = {{v[0].get<double>(), v[1].get<double>()}};
      }
      req.scene.objects.push_back(std::move(os));
    }
  }
  if (j.contains("agents")) {
    for (const json& a : j.at("agents")) req.agents.push_back(parse_noise(a));
  }
  if (req.agents.empty()) config_error("scene spec needs at least one agent noise config");
  return req;
}

void write_dataset_files(const GenRequest& req, const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  const Dataset ds = make_pseudo_collab(req.scene, req.agents, req.seed);

  std::vector<Detection> gt_stream;
  for (const Frame& f : ds.gt) {
    const auto& dets = gt_detections(f);
    gt_stream.insert(gt_stream.end(), dets.begin(), dets.end());
  }
  write_detections_file((dir / "gt.jsonl").string(), gt_stream);
  for (std::size_t k = 0; k < ds.agents.size(); ++k) {
    write_detections_file((dir / ("agent_" + std::to_string(k + 1) + ".jsonl")).string(),
                          ds.agents[k]);
  }

  json manifest;
  manifest["seed"] = req.seed;
  manifest["scene"] = {{"n_frames", req.scene.n_frames},
                       {"frame_rate", req.scene.frame_rate},
                       {"area", req.scene.area},
                       {"min_separation", req.scene.min_separation},
                       {"n_random_objects", req.scene.n_random_objects},
                       {"n_scripted_objects", req.scene.objects.size()}};
  json agents = json::array();
  for (const NoiseConfig& nc : req.agents) {
    agents.push_back({{"label", nc.label},
                      {"std_pos", nc.std_pos},
                      {"std_yaw_deg", nc.std_yaw * 180.0 / M_PI},
                      {"std_scale", nc.std_scale}});
  }
  manifest["agents"] = agents;
  json sensors = json::array();
  for (const auto& s : ds.sensors) sensors.push_back({s[0], s[1], s[2]});
  manifest["sensors"] = sensors;
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

namespace {

// Predictions may be fused rows or a plain detection stream (e.g. a single
// agent file from `gen`). The first data row decides: detections are lifted
// to single-source predictions, and the metrics only ever read the sources'
// gt_id, so the lifted index is just the file ordinal.
std::vector<FusedObject> read_predictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    const json row = json::parse(line, nullptr, false);
    if (!row.is_discarded() && row.is_object() && !row.contains("sources")) {
      std::vector<FusedObject> lifted;
      const std::vector<Detection> dets = read_detections_file(path);
      lifted.reserve(dets.size());
      for (std::size_t i = 0; i < dets.size(); ++i) {
        const Detection& d = dets[i];
        lifted.emplace_back(d.box, d.cov, d.category,
                            std::vector<SourceRef>{{d.agent_id, static_cast<int>(i), d.gt_id}},
                            d.timestamp, d.confidence);
      }
      return lifted;
    }
    break;
  }
  return read_fused_file(path);
}

}  // namespace

EvalReport evaluate_files(const std::string& pred_path, const std::string& gt_path,
                          const FpPenalties& penalties) {
  const std::vector<FusedObject> preds = read_predictions(pred_path);
  const std::vector<Frame> gt = load_annotations(gt_path);
  EvalAccumulator acc(penalties);
  if (gt.empty()) {
    acc.add(preds, {});
    return acc.report();
  }
  std::vector<std::vector<FusedObject>> per_frame(gt.size());
  for (const FusedObject& p : preds) {
    per_frame[nearest_frame_index(gt, p.timestamp)].push_back(p);
  }
  for (std::size_t g = 0; g < gt.size(); ++g) {
    acc.add(per_frame[g], gt_detections(gt[g]));
  }
  return acc.report();
}

}  // namespace latefuse
