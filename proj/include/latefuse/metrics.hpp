#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latefuse/types.hpp"

namespace latefuse {

/// Fixed penalty a false positive contributes to each error mean, so
/// spurious outputs cannot improve a method's error metrics. Values are
/// recorded in every report.
struct FpPenalties {
  double translation = 3.0;       // meters; runs default this to lambda_max
  double scale = 1.0;             // meters
  double orientation_deg = 90.0;  // degrees
};

/// Counts and error means for one slice (overall or a single category).
/// Error means are taken over TP and FP (FPs contribute the fixed
/// penalties) and are absent when the slice has neither.
struct MetricBlock {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  std::optional<double> mate;  // mean translation error, meters
  std::optional<double> mase;  // mean scale error, meters
  std::optional<double> maoe;  // mean orientation error, degrees
  double precision = 1.0;      // tp / (tp + fp), defined as 1 when tp + fp = 0
  double recall = 1.0;         // tp / (tp + fn), defined as 1 when tp + fn = 0
};

struct EvalReport {
  MetricBlock overall;
  std::vector<std::pair<Category, MetricBlock>> per_category;  // ascending category
  FpPenalties penalties;
};

/// Outcome of matching one frame's predictions against its ground truth.
struct MatchResult {
  std::vector<std::pair<int, int>> tp;  // (prediction index, gt index), by prediction index
  std::vector<int> fp;                  // prediction indices, ascending
  std::vector<int> fn;                  // gt indices, ascending
};

/// Matches predictions to ground truth through gt_id provenance: every
/// prediction votes for the gt_id carried by the majority of its
/// sources (votes for ids absent from gt are discarded; ties resolve to
/// the gt whose center is nearest). Per ground-truth object the
/// nearest-center voter is the true positive, all other voters are
/// false positives; predictions without any valid vote are false
/// positives, ground truth without a voter is a false negative.
/// Throws std::invalid_argument if a gt row lacks gt_id or ids repeat.
MatchResult match_to_gt(const std::vector<FusedObject>& preds,
                        const std::vector<Detection>& gt);

/// Streaming evaluation over many frames. Per TP the errors are the 3D
/// center distance (m), the Euclidean distance between (l, w, h)
/// vectors (m), and the absolute wrapped yaw difference (deg, in
/// [0, 180]).
class EvalAccumulator {
 public:
  explicit EvalAccumulator(FpPenalties penalties = {});

  /// Matches one frame and folds the outcome in.
  void add(const std::vector<FusedObject>& preds, const std::vector<Detection>& gt);

  EvalReport report() const;

 private:
  struct Slice {
    int tp = 0, fp = 0, fn = 0;
    double trans_sum = 0.0, scale_sum = 0.0, orient_sum = 0.0;
  };
  static MetricBlock to_block(const Slice& s, const FpPenalties& p);

  Slice overall_;
  std::map<Category, Slice> per_category_;
  FpPenalties penalties_;
};

/// One-frame convenience wrapper around EvalAccumulator.
EvalReport evaluate(const std::vector<FusedObject>& preds, const std::vector<Detection>& gt,
                    const FpPenalties& penalties = {});

/// CSV with one row per (method, noise level) and the error/score
/// columns in report-table order. Not-applicable means render as "na".
std::string eval_csv_header();
std::string eval_csv_row(const std::string& method, const std::string& noise_level,
                         const EvalReport& r);

/// Full report (overall, per-category, counts, penalties) as a JSON
/// object string.
std::string eval_report_json(const std::string& method, const std::string& noise_level,
                             const EvalReport& r);

}  // namespace latefuse
