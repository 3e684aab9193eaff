#pragma once

#include <sstream>
#include <string>

#include "rbpebble/dag_io.hpp"
#include "rbpebble/engine.hpp"

namespace rbpebble {

inline MoveKind parse_move_kind(std::string_view op) {
  if (op == "load") return MoveKind::Load;
  if (op == "store") return MoveKind::Store;
  if (op == "compute") return MoveKind::Compute;
  if (op == "delete") return MoveKind::Delete;
  throw Error(ErrorCode::ParseError, "unknown op '" + std::string(op) + "'");
}

/// JSON Lines: one `{"op":..., "node":...}` per line. Blank lines are skipped.
inline Trace parse_trace(const std::string& text) {
  Trace trace;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      Json j = Json::parse(line);
      trace.moves.push_back(
          {parse_move_kind(j.at("op").get<std::string>()), j.at("node").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return trace;
}

inline std::string serialize_trace(const Trace& trace) {
  std::string out;
  for (const auto& m : trace.moves) {
    Json j;
    j["op"] = std::string(to_string(m.kind));
    j["node"] = m.node;
    out += j.dump();
    out += '\n';
  }
  return out;
}

inline Json cost_report_to_json(const CostReport& r) {
  Json j;
  j["loads"] = r.loads;
  j["stores"] = r.stores;
  j["computes"] = r.computes;
  j["deletes"] = r.deletes;
  j["total"] = rational_to_json(r.total);
  return j;
}

inline CostReport cost_report_from_json(const Json& j) {
  try {
    CostReport r;
    r.loads = j.at("loads").get<std::int64_t>();
    r.stores = j.at("stores").get<std::int64_t>();
    r.computes = j.at("computes").get<std::int64_t>();
    r.deletes = j.at("deletes").get<std::int64_t>();
    r.total = rational_from_json(j.at("total"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace rbpebble
