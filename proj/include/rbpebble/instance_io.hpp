#pragma once

#include <string>

#include "rbpebble/dag_io.hpp"
#include "rbpebble/engine.hpp"
#include "rbpebble/graph.hpp"
#include "rbpebble/reduction.hpp"

namespace rbpebble {

inline Json model_to_json(const ModelSpec& m) {
  Json j;
  j["variant"] = std::string(to_string(m.variant));
  j["epsilon"] = rational_to_json(m.epsilon);
  j["start"] = std::string(to_string(m.start));
  j["finish"] = std::string(to_string(m.finish));
  return j;
}

inline ModelSpec model_from_json(const Json& j) {
  try {
    ModelSpec m;
    m.variant = parse_variant(j.at("variant").get<std::string>());
    if (j.contains("epsilon")) m.epsilon = rational_from_json(j.at("epsilon"));
    if (j.contains("start")) m.start = parse_start(j.at("start").get<std::string>());
    if (j.contains("finish")) m.finish = parse_finish(j.at("finish").get<std::string>());
    m.validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

/// Everything about an instance except its DAG.
inline Json instance_sidecar(const ReductionInstance& inst) {
  Json j;
  j["kind"] = std::string(to_string(inst.kind));
  j["R"] = inst.red;
  j["threshold"] = inst.threshold ? rational_to_json(*inst.threshold) : Json(nullptr);
  j["model"] = model_to_json(inst.model);
  Json params = Json::object();
  for (const auto& [k, v] : inst.params) params[k] = v;
  j["params"] = std::move(params);
  Json meta = Json::object();
  for (const auto& [g, role] : inst.decode_meta)
    meta[std::to_string(g)] = Json{{"node", role.node}, {"level", role.level}};
  j["decode_meta"] = std::move(meta);
  j["graph"] = graph_to_json(inst.graph);
  return j;
}

inline ReductionInstance instance_from_json(const Json& dag_json, const Json& sidecar) {
  try {
    ReductionInstance inst;
    const auto kind = sidecar.at("kind").get<std::string>();
    if (kind == "hampath") inst.kind = ReductionKind::HamPath;
    else if (kind == "vertexcover") inst.kind = ReductionKind::VertexCover;
    else throw Error(ErrorCode::ParseError, "unknown instance kind '" + kind + "'");
    inst.dag = dag_from_json(dag_json);
    inst.red = sidecar.at("R").get<std::size_t>();
    if (!sidecar.at("threshold").is_null()) inst.threshold = rational_from_json(sidecar.at("threshold"));
    inst.model = model_from_json(sidecar.at("model"));
    for (const auto& [k, v] : sidecar.at("params").items()) inst.params[k] = v.get<std::string>();
    for (const auto& [g, role] : sidecar.at("decode_meta").items())
      inst.decode_meta[std::stoul(g)] = GroupRole{role.at("node").get<std::string>(), role.at("level").get<int>()};
    inst.graph = graph_from_json(sidecar.at("graph"));
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace rbpebble
