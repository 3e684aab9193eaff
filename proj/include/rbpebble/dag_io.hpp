#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "rbpebble/dag.hpp"
#include "rbpebble/error.hpp"
#include "rbpebble/rational.hpp"

namespace rbpebble {

using Json = nlohmann::ordered_json;

inline Json rational_to_json(const Rational& r) {
  return Json{{"num", r.numerator()}, {"den", r.denominator()}};
}

inline Rational rational_from_json(const Json& j) {
  try {
    auto den = j.at("den").get<std::int64_t>();
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
    return Rational(j.at("num").get<std::int64_t>(), den);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline Json dag_to_json(const Dag& dag) {
  Json j;
  j["name"] = dag.name();
  j["nodes"] = dag.node_names();
  Json edges = Json::array();
  for (auto [u, v] : dag.edges()) edges.push_back({dag.node_name(u), dag.node_name(v)});
  j["edges"] = std::move(edges);
  if (!dag.groups().empty()) {
    Json groups = Json::array();
    for (const auto& g : dag.groups())
      groups.push_back(Json{{"members", g.members}, {"targets", g.targets}});
    j["groups"] = std::move(groups);
  }
  if (!dag.meta().empty()) {
    Json meta = Json::object();
    for (const auto& [k, v] : dag.meta()) meta[k] = v;
    j["meta"] = std::move(meta);
  }
  return j;
}

inline Dag dag_from_json(const Json& j) {
  try {
    DagBuilder builder(j.value("name", std::string{}));
    for (const auto& node : j.at("nodes")) builder.add_node(node.get<std::string>());
    for (const auto& edge : j.at("edges")) {
      if (!edge.is_array() || edge.size() != 2)
        throw Error(ErrorCode::ParseError, "edge must be a [from, to] pair");
      builder.add_edge(edge[0].get<std::string>(), edge[1].get<std::string>());
    }
    if (j.contains("groups")) {
      for (const auto& g : j.at("groups"))
        builder.add_group(InputGroup{g.at("members").get<std::vector<std::string>>(),
                                     g.at("targets").get<std::vector<std::string>>()});
    }
    if (j.contains("meta")) {
      for (const auto& [k, v] : j.at("meta").items()) builder.set_meta(k, v.get<std::string>());
    }
    return std::move(builder).build();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

/// Parses the JSON DAG format and validates every Dag invariant.
inline Dag parse_dag(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return dag_from_json(j);
}

inline std::string serialize_dag(const Dag& dag) { return dag_to_json(dag).dump() + "\n"; }

}  // namespace rbpebble
