#include "latefuse/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace latefuse {

namespace {

double center_distance(const BBox3D& a, const BBox3D& b) {
  return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

double scale_error(const BBox3D& a, const BBox3D& b) {
  const double dl = a.l - b.l;
  const double dw = a.w - b.w;
  const double dh = a.h - b.h;
  return std::sqrt(dl * dl + dw * dw + dh * dh);
}

double orientation_error_deg(const BBox3D& a, const BBox3D& b) {
  return std::abs(normalize_yaw(a.theta - b.theta)) * 180.0 / M_PI;
}

std::string format6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string format_opt(const std::optional<double>& v) {
  return v ? format6(*v) : std::string("na");
}

}  // namespace

MatchResult match_to_gt(const std::vector<FusedObject>& preds,
                        const std::vector<Detection>& gt) {
  std::unordered_map<std::string, int> gt_index;
  for (int g = 0; g < static_cast<int>(gt.size()); ++g) {
    if (!gt[g].gt_id) {
      throw std::invalid_argument("ground-truth box without gt_id");
    }
    if (!gt_index.emplace(*gt[g].gt_id, g).second) {
      throw std::invalid_argument("duplicate gt_id in ground truth: " + *gt[g].gt_id);
    }
  }

  MatchResult out;
  std::vector<std::vector<int>> voters(gt.size());  // gt index -> pred indices
  for (int pi = 0; pi < static_cast<int>(preds.size()); ++pi) {
    // Tally this prediction's member votes over known ground-truth ids.
    std::unordered_map<int, int> votes;
    for (const SourceRef& s : preds[pi].sources) {
      if (!s.gt_id) continue;
      const auto it = gt_index.find(*s.gt_id);
      if (it != gt_index.end()) ++votes[it->second];
    }
    if (votes.empty()) {
      out.fp.push_back(pi);
      continue;
    }
    int best_votes = 0;
    for (const auto& [g, n] : votes) best_votes = std::max(best_votes, n);
    int target = -1;
    double target_dist = 0.0;
    for (const auto& [g, n] : votes) {
      if (n != best_votes) continue;
      const double dist = center_distance(preds[pi].box, gt[g].box);
      if (target < 0 || dist < target_dist || (dist == target_dist && g < target)) {
        target = g;
        target_dist = dist;
      }
    }
    voters[target].push_back(pi);
  }

  for (int g = 0; g < static_cast<int>(gt.size()); ++g) {
    if (voters[g].empty()) {
      out.fn.push_back(g);
      continue;
    }
    int winner = voters[g].front();
    double winner_dist = center_distance(preds[winner].box, gt[g].box);
    for (const int pi : voters[g]) {
      const double dist = center_distance(preds[pi].box, gt[g].box);
      if (dist < winner_dist) {
        winner = pi;
        winner_dist = dist;
      }
    }
    out.tp.emplace_back(winner, g);
    for (const int pi : voters[g]) {
      if (pi != winner) out.fp.push_back(pi);
    }
  }
  std::sort(out.tp.begin(), out.tp.end());
  std::sort(out.fp.begin(), out.fp.end());
  return out;
}

EvalAccumulator::EvalAccumulator(FpPenalties penalties) : penalties_(penalties) {}

void EvalAccumulator::add(const std::vector<FusedObject>& preds,
                          const std::vector<Detection>& gt) {
  const MatchResult m = match_to_gt(preds, gt);
  for (const auto& [pi, g] : m.tp) {
    const double trans = center_distance(preds[pi].box, gt[g].box);
    const double scale = scale_error(preds[pi].box, gt[g].box);
    const double orient = orientation_error_deg(preds[pi].box, gt[g].box);
    for (Slice* s : {&overall_, &per_category_[preds[pi].category]}) {
      s->tp += 1;
      s->trans_sum += trans;
      s->scale_sum += scale;
      s->orient_sum += orient;
    }
  }
  for (const int pi : m.fp) {
    overall_.fp += 1;
    per_category_[preds[pi].category].fp += 1;
  }
  for (const int g : m.fn) {
    overall_.fn += 1;
    per_category_[gt[g].category].fn += 1;
  }
}

MetricBlock EvalAccumulator::to_block(const Slice& s, const FpPenalties& p) {
  MetricBlock b;
  b.tp = s.tp;
  b.fp = s.fp;
  b.fn = s.fn;
  const int denom = s.tp + s.fp;
  if (denom > 0) {
    b.mate = (s.trans_sum + s.fp * p.translation) / denom;
    b.mase = (s.scale_sum + s.fp * p.scale) / denom;
    b.maoe = (s.orient_sum + s.fp * p.orientation_deg) / denom;
    b.precision = static_cast<double>(s.tp) / denom;
  }
  if (s.tp + s.fn > 0) {
    b.recall = static_cast<double>(s.tp) / (s.tp + s.fn);
  }
  return b;
}

EvalReport EvalAccumulator::report() const {
  EvalReport r;
  r.penalties = penalties_;
  r.overall = to_block(overall_, penalties_);
  for (const auto& [cat, slice] : per_category_) {
    r.per_category.emplace_back(cat, to_block(slice, penalties_));
  }
  return r;
}

EvalReport evaluate(const std::vector<FusedObject>& preds, const std::vector<Detection>& gt,
                    const FpPenalties& penalties) {
  EvalAccumulator acc(penalties);
  acc.add(preds, gt);
  return acc.report();
}

std::string eval_csv_header() {
  return "method,noise_level,mate_m,mase_m,maoe_deg,precision,recall";
}

std::string eval_csv_row(const std::string& method, const std::string& noise_level,
                         const EvalReport& r) {
  const MetricBlock& b = r.overall;
  return method + "," + noise_level + "," + format_opt(b.mate) + "," + format_opt(b.mase) +
         "," + format_opt(b.maoe) + "," + format6(b.precision) + "," + format6(b.recall);
}

namespace {

nlohmann::json block_json(const MetricBlock& b) {
  nlohmann::json j;
  j["tp"] = b.tp;
  j["fp"] = b.fp;
  j["fn"] = b.fn;
  j["mate_m"] = b.mate ? nlohmann::json(*b.mate) : nlohmann::json(nullptr);
  j["mase_m"] = b.mase ? nlohmann::json(*b.mase) : nlohmann::json(nullptr);
  j["maoe_deg"] = b.maoe ? nlohmann::json(*b.maoe) : nlohmann::json(nullptr);
  j["precision"] = b.precision;
  j["recall"] = b.recall;
  return j;
}

}  // namespace

std::string eval_report_json(const std::string& method, const std::string& noise_level,
                             const EvalReport& r) {
  nlohmann::json j;
  j["method"] = method;
  j["noise_level"] = noise_level;
  j["overall"] = block_json(r.overall);
  nlohmann::json cats = nlohmann::json::object();
  for (const auto& [cat, block] : r.per_category) {
    cats[to_string(cat)] = block_json(block);
  }
  j["per_category"] = cats;
  j["fp_penalties"] = {{"translation_m", r.penalties.translation},
                       {"scale_m", r.penalties.scale},
                       {"orientation_deg", r.penalties.orientation_deg}};
  return j.dump();
}

}  // namespace latefuse
