#include "latefuse/jsonl.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace latefuse {

using nlohmann::json;

namespace {

json box_fields(const BBox3D& b, const DiagCovariance7& c) {
  json j;
  j["x"] = b.x;
  j["y"] = b.y;
  j["z"] = b.z;
  j["l"] = b.l;
  j["w"] = b.w;
  j["h"] = b.h;
  j["theta"] = b.theta;
  j["var_x"] = c.var_x;
  j["var_y"] = c.var_y;
  j["var_z"] = c.var_z;
  j["var_l"] = c.var_l;
  j["var_w"] = c.var_w;
  j["var_h"] = c.var_h;
  j["var_theta"] = c.var_theta;
  return j;
}

double num(const json& j, const char* key, int line) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    throw ParseError(std::string("missing or non-numeric field '") + key + "'", line);
  }
  return it->get<double>();
}

BBox3D parse_box(const json& j, int line) {
  try {
    return BBox3D(num(j, "x", line), num(j, "y", line), num(j, "z", line),
                  num(j, "l", line), num(j, "w", line), num(j, "h", line),
                  num(j, "theta", line));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line);
  }
}

DiagCovariance7 parse_cov(const json& j, int line) {
  try {
    return DiagCovariance7(num(j, "var_x", line), num(j, "var_y", line),
                           num(j, "var_z", line), num(j, "var_l", line),
                           num(j, "var_w", line), num(j, "var_h", line),
                           num(j, "var_theta", line));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line);
  }
}

Category parse_category(const json& j, int line) {
  auto it = j.find("category");
  if (it == j.end() || !it->is_string()) {
    throw ParseError("missing or non-string field 'category'", line);
  }
  auto c = category_from_string(it->get<std::string>());
  if (!c) throw ParseError("unknown category '" + it->get<std::string>() + "'", line);
  return *c;
}

std::optional<std::string> parse_gt_id(const json& j) {
  auto it = j.find("gt_id");
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

json parse_line(const std::string& line, int line_number) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ParseError("malformed JSON object", line_number);
  }
  return j;
}

}  // namespace

std::string to_jsonl(const Detection& d) {
  json j = box_fields(d.box, d.cov);
  j["category"] = to_string(d.category);
  j["agent_id"] = d.agent_id;
  j["timestamp"] = d.timestamp;
  j["confidence"] = d.confidence;
  j["gt_id"] = d.gt_id ? json(*d.gt_id) : json(nullptr);
  return j.dump();
}

std::string to_jsonl(const FusedObject& f) {
  json j = box_fields(f.box, f.cov);
  j["category"] = to_string(f.category);
  j["agent_id"] = -1;
  j["timestamp"] = f.timestamp;
  j["confidence"] = f.confidence;
  j["gt_id"] = nullptr;
  json sources = json::array();
  for (const SourceRef& s : f.sources) {
    json sj;
    sj["agent_id"] = s.agent_id;
    sj["index"] = s.index;
    sj["gt_id"] = s.gt_id ? json(*s.gt_id) : json(nullptr);
    sources.push_back(sj);
  }
  j["sources"] = sources;
  return j.dump();
}

Detection detection_from_json(const std::string& line, int line_number) {
  json j = parse_line(line, line_number);
  try {
    return Detection(parse_box(j, line_number), parse_cov(j, line_number),
                     parse_category(j, line_number),
                     j.value("agent_id", 0), num(j, "timestamp", line_number),
                     num(j, "confidence", line_number), parse_gt_id(j));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line_number);
  }
}

FusedObject fused_from_json(const std::string& line, int line_number) {
  json j = parse_line(line, line_number);
  auto it = j.find("sources");
  if (it == j.end() || !it->is_array() || it->empty()) {
    throw ParseError("missing or empty 'sources' array", line_number);
  }
  std::vector<SourceRef> sources;
  for (const json& sj : *it) {
    SourceRef s;
    s.agent_id = sj.value("agent_id", 0);
    s.index = sj.value("index", 0);
    s.gt_id = parse_gt_id(sj);
    sources.push_back(std::move(s));
  }
  try {
    return FusedObject(parse_box(j, line_number), parse_cov(j, line_number),
                       parse_category(j, line_number), std::move(sources),
                       num(j, "timestamp", line_number),
                       num(j, "confidence", line_number));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line_number);
  }
}

namespace {

template <typename T, typename Parse>
std::vector<T> read_lines(std::istream& in, Parse parse) {
  std::vector<T> out;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    out.push_back(parse(line, line_number));
  }
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  return out;
}

}  // namespace

std::vector<Detection> read_detections(std::istream& in) {
  return read_lines<Detection>(in, [](const std::string& l, int n) {
    return detection_from_json(l, n);
  });
}

std::vector<Detection> read_detections_file(const std::string& path) {
  auto in = open_input(path);
  return read_detections(in);
}

std::vector<FusedObject> read_fused(std::istream& in) {
  return read_lines<FusedObject>(in, [](const std::string& l, int n) {
    return fused_from_json(l, n);
  });
}

std::vector<FusedObject> read_fused_file(const std::string& path) {
  auto in = open_input(path);
  return read_fused(in);
}

void write_detections(std::ostream& out, const std::vector<Detection>& dets) {
  for (const Detection& d : dets) out << to_jsonl(d) << '\n';
}

void write_detections_file(const std::string& path, const std::vector<Detection>& dets) {
  auto out = open_output(path);
  write_detections(out, dets);
}

void write_fused(std::ostream& out, const std::vector<FusedObject>& objs) {
  for (const FusedObject& f : objs) out << to_jsonl(f) << '\n';
}

void write_fused_file(const std::string& path, const std::vector<FusedObject>& objs) {
  auto out = open_output(path);
  write_fused(out, objs);
}

}  // namespace latefuse
