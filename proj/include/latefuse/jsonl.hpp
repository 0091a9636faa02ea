#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "latefuse/types.hpp"

namespace latefuse {

/// Parse or I/O failure with the offending location (1-based line number when
/// reading a stream).
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"),
        line_number(line) {}
  int line_number;
};

// Detection interchange is one JSON object per line with fields
//   x,y,z,l,w,h,theta, var_x..var_theta, category, agent_id, timestamp,
//   confidence, gt_id (nullable)
// Angles are radians in files. FusedObject uses the same schema plus a
// `sources` array; its agent_id is written as -1.

std::string to_jsonl(const Detection& d);
std::string to_jsonl(const FusedObject& f);

Detection detection_from_json(const std::string& line, int line_number = 0);
FusedObject fused_from_json(const std::string& line, int line_number = 0);

std::vector<Detection> read_detections(std::istream& in);
std::vector<Detection> read_detections_file(const std::string& path);
std::vector<FusedObject> read_fused(std::istream& in);
std::vector<FusedObject> read_fused_file(const std::string& path);

void write_detections(std::ostream& out, const std::vector<Detection>& dets);
void write_detections_file(const std::string& path, const std::vector<Detection>& dets);
void write_fused(std::ostream& out, const std::vector<FusedObject>& objs);
void write_fused_file(const std::string& path, const std::vector<FusedObject>& objs);

}  // namespace latefuse
