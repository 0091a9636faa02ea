#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "latefuse/association.hpp"
#include "latefuse/baselines.hpp"
#include "latefuse/datagen.hpp"
#include "latefuse/metrics.hpp"

namespace latefuse {

/// Registered fusion methods of the benchmark grid.
enum class Method {
  NmsStd3D,
  NmsGiou3D,
  Wbf,
  InfraDet3DLate,
  DairV2XLate,
  WlsCsba,
  WlsGt,
};

const char* to_string(Method m) noexcept;

/// Resolves a canonical method name (e.g. "wls_csba"). Throws
/// std::invalid_argument for unknown names; "psa" gets a dedicated
/// out-of-scope message.
Method method_from_string(std::string_view name);

/// Thresholds shared by the baseline methods.
struct MethodParams {
  double iou_thresh = 0.5;    // NMS and WBF
  double giou_thresh = 0.0;   // GIoU NMS
  double dist_thresh = 3.0;   // late association distance gate
};

/// One noise row of the benchmark grid: a label plus one NoiseConfig
/// per agent.
struct NoiseRow {
  std::string label;
  std::vector<NoiseConfig> agents;
};

/// Full experiment description. Per noise row, lambda_max defaults to
/// 6 * the largest agent std_pos (floored at 0.1 m) and the false
/// positive translation penalty defaults to that lambda_max; both can
/// be pinned via the overrides.
struct ExperimentConfig {
  std::uint64_t seed = 42;
  int scenes = 150;
  int objects_min = 10;
  int objects_max = 40;
  SceneSpec scene;  // objects/n_random_objects are filled per scene
  double window_dt = 0.1;
  std::vector<NoiseRow> noise_rows;
  std::vector<Method> methods;
  MethodParams method_params;
  double w_ds = 0.2;
  double w_cs = 0.5;
  double w_os = 0.3;
  double gate_factor = 2.0;
  std::optional<double> cost_gate;
  std::optional<double> lambda_max_override;
  std::optional<double> fp_translation_override;
  double fp_scale = 1.0;
  double fp_orientation_deg = 90.0;
  std::string out_dir = ".";
  std::string format = "csv";

  /// The stock grid: 150 scenes x 20 frames at 2 Hz, 10-40 objects,
  /// rows mild / moderate / large / mild+large with two agents, all
  /// seven methods.
  static ExperimentConfig defaults();

  double lambda_max_for(const NoiseRow& row) const;
  CsbaParams csba_for(const NoiseRow& row) const;
  FpPenalties penalties_for(const NoiseRow& row) const;
};

/// Parses a config JSON object; missing keys take the defaults above.
/// Throws std::invalid_argument (or ParseError for malformed JSON) on
/// unknown keys, unknown methods, invalid noise presets, or empty
/// method/noise lists.
ExperimentConfig config_from_json_string(const std::string& text);
ExperimentConfig config_from_json_file(const std::string& path);

/// Everything a method needs beyond the frame itself.
struct MethodContext {
  CsbaParams csba;
  MethodParams params;
  SensorPositions sensors;
};

/// Detections of a frame pooled into one list, agents in ascending id
/// order. SourceRef indices from baseline methods refer to this pooled
/// order.
std::vector<Detection> pooled_detections(const Frame& frame);

/// Perfect association: groups a frame's detections by gt_id across
/// agents (first-appearance order) and wls_fuses each group. Throws
/// std::invalid_argument when a detection lacks gt_id.
std::vector<FusedObject> gt_assoc_fuse(const Frame& frame);

/// Runs one registered method on one frame.
std::vector<FusedObject> apply_method(Method m, const Frame& frame, const MethodContext& ctx);

/// Index of the frame whose timestamp is nearest to t (earlier frame
/// wins ties). frames must be sorted by timestamp and non-empty.
int nearest_frame_index(const std::vector<Frame>& frames, double t);

/// One (noise row, method) cell of the result grid.
struct ResultCell {
  std::string noise_label;
  std::string method;
  EvalReport report;
};

struct ExperimentResult {
  std::vector<ResultCell> cells;  // noise rows outer, methods inner, config order
};

/// Runs the whole grid. Each cell regenerates its datasets from seeds
/// derived per scene (ground truth is identical across noise rows), so
/// cells are independent and run in parallel; results are fully
/// deterministic in (config, seed).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes results.csv and results.md (plus results.json when the
/// configured format is json) into cfg.out_dir.
void write_results(const ExperimentResult& result, const ExperimentConfig& cfg);

/// CSV/markdown/JSON renderers used by write_results; exposed for the
/// CLI and for byte-level determinism tests.
std::string results_csv(const ExperimentResult& result);
std::string results_markdown(const ExperimentResult& result);
std::string results_json(const ExperimentResult& result);

/// Dataset synthesis request for the `gen` subcommand: a scene spec
/// plus agent noise configs and a seed.
struct GenRequest {
  SceneSpec scene;
  std::vector<NoiseConfig> agents;
  std::uint64_t seed = 0;
};

GenRequest gen_request_from_json_file(const std::string& path);

/// Generates the dataset and writes gt.jsonl, agent_<k>.jsonl, and
/// manifest.json into out_dir.
void write_dataset_files(const GenRequest& req, const std::string& out_dir);

/// Evaluates a prediction JSONL file against a ground-truth annotation
/// file: predictions are grouped to the nearest ground-truth frame by
/// timestamp. Accepts fused rows or a plain detection stream (detections
/// are treated as single-source predictions).
EvalReport evaluate_files(const std::string& pred_path, const std::string& gt_path,
                          const FpPenalties& penalties = {});

}  // namespace latefuse
