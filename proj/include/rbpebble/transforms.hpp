#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <string>
#include <vector>

#include "rbpebble/dag.hpp"
#include "rbpebble/error.hpp"

namespace rbpebble {

namespace detail {

inline std::string fresh_name(const Dag& dag, const std::string& wanted) {
  if (!dag.find(wanted)) return wanted;
  for (std::size_t i = 1;; ++i) {
    std::string candidate = wanted + "_" + std::to_string(i);
    if (!dag.find(candidate)) return candidate;
  }
}

// Copies nodes, edges, groups and meta of `dag` into a fresh builder.
inline DagBuilder copy_into_builder(const Dag& dag, const std::string& name) {
  DagBuilder b(name);
  for (const auto& node : dag.node_names()) b.add_node(node);
  for (auto [u, v] : dag.edges()) b.add_edge(u, v);
  for (const auto& g : dag.groups()) b.add_group(g);
  for (const auto& [k, v] : dag.meta()) b.set_meta(k, v);
  return b;
}

}  // namespace detail

/// Adds a fresh source feeding every original node. The new node is named `s0`
/// (suffixed if taken); meta records its name and the extra red pebble it costs.
inline Dag add_universal_source(const Dag& dag) {
  const std::string s0 = detail::fresh_name(dag, "s0");
  DagBuilder b(dag.name());
  NodeIndex root = b.add_node(s0);
  for (const auto& node : dag.node_names()) b.add_node(node);
  for (NodeIndex v = 0; v < dag.size(); ++v) b.add_edge(root, v + 1);
  for (auto [u, v] : dag.edges()) b.add_edge(u + 1, v + 1);
  for (const auto& g : dag.groups()) b.add_group(g);
  for (const auto& [k, v] : dag.meta()) b.set_meta(k, v);
  b.set_meta("universal_source", s0);
  b.set_meta("extra_red", "1");
  Dag out = std::move(b).build();
  return out;
}

/// Puts a hard-to-compute gadget in front of every source.
///
/// Each source v gets starters u1, u2, u3 (each an input of v); every starter reads
/// all R-1 nodes of a group B, and every B node reads a node s. With shared gadgets one
/// (s, B) pair serves all sources; otherwise each source owns its copy.
/// Naming: `h2c.<v>.u1..u3`, shared `h2c.s` / `h2c.b<i>`, per-source `h2c.<v>.s` / `h2c.<v>.b<i>`.
inline Dag attach_h2c(const Dag& dag, std::size_t red, bool per_source_copies) {
  if (red < 2) throw Error(ErrorCode::InvalidR, "H2C gadget needs R >= 2");
  const auto sources = dag.sources();
  if (sources.empty()) throw Error(ErrorCode::InvalidR, "DAG has no source");

  DagBuilder b = detail::copy_into_builder(dag, dag.name());
  struct Core {
    std::vector<NodeIndex> nodes;
    InputGroup annotation;
  };
  auto make_core = [&](const std::string& prefix) {
    Core core;
    NodeIndex s = b.add_node(prefix + "s");
    for (std::size_t i = 1; i < red; ++i) {
      const std::string name = prefix + "b" + std::to_string(i);
      NodeIndex bi = b.add_node(name);
      b.add_edge(s, bi);
      core.nodes.push_back(bi);
      core.annotation.members.push_back(name);
    }
    return core;
  };

  std::vector<Core> cores;
  if (!per_source_copies) cores.push_back(make_core("h2c."));
  for (NodeIndex v : sources) {
    const std::string prefix = "h2c." + dag.node_name(v) + ".";
    if (per_source_copies) cores.push_back(make_core(prefix));
    Core& core = cores.back();
    for (int i = 1; i <= 3; ++i) {
      const std::string starter = prefix + "u" + std::to_string(i);
      NodeIndex u = b.add_node(starter);
      for (NodeIndex m : core.nodes) b.add_edge(m, u);
      b.add_edge(u, v);
      core.annotation.targets.push_back(starter);
    }
  }
  for (auto& core : cores) b.add_group(std::move(core.annotation));
  b.set_meta("h2c_red", std::to_string(red));
  b.set_meta("h2c_mode", per_source_copies ? "per_source" : "shared");
  Dag out = std::move(b).build();
  if (out.feasibility_threshold() > red)
    throw Error(ErrorCode::InvalidR, "R=" + std::to_string(red) + " below feasibility threshold " +
                                         std::to_string(out.feasibility_threshold()) +
                                         " after attaching H2C");
  return out;
}

/// Replaces every annotated input group by a ladder of `h` layers of R-1 nodes.
///
/// Layer node `cd.<g>.<layer>.<col>` reads group member `col` and the node before it on a
/// path that sweeps odd layers left to right and even layers right to left; the path's
/// last node feeds every former target of the group. The
/// member -> target edges of the group are dropped, as is the group annotation itself.
/// Meta records the red-pebble count the result is meant for (R + 1).
inline Dag cd_transform(const Dag& dag, std::size_t red, std::size_t h) {
  if (dag.groups().empty()) throw Error(ErrorCode::InvalidGroup, "DAG has no input groups");
  if (h == 0) throw Error(ErrorCode::InvalidR, "ladder height must be positive");
  for (std::size_t g = 0; g < dag.groups().size(); ++g)
    if (dag.groups()[g].members.size() + 1 != red)
      throw Error(ErrorCode::GroupSizeMismatch,
                  "group " + std::to_string(g) + " has " +
                      std::to_string(dag.groups()[g].members.size()) + " members, expected " +
                      std::to_string(red - 1));

  std::set<std::pair<NodeIndex, NodeIndex>> dropped;
  for (const auto& group : dag.groups())
    for (const auto& m : group.members)
      for (const auto& t : group.targets) dropped.emplace(dag.index_of(m), dag.index_of(t));

  DagBuilder b(dag.name());
  for (const auto& node : dag.node_names()) b.add_node(node);
  for (auto [u, v] : dag.edges())
    if (!dropped.contains({u, v})) b.add_edge(u, v);

  for (std::size_t g = 0; g < dag.groups().size(); ++g) {
    const auto& group = dag.groups()[g];
    std::optional<NodeIndex> previous;
    for (std::size_t layer = 1; layer <= h; ++layer) {
      for (std::size_t step = 1; step < red; ++step) {
        const std::size_t col = (layer % 2 == 1) ? step : red - step;
        NodeIndex node = b.add_node("cd." + std::to_string(g) + "." + std::to_string(layer) + "." +
                                    std::to_string(col));
        b.add_edge(dag.index_of(group.members[col - 1]), node);
        if (previous) b.add_edge(*previous, node);
        previous = node;
      }
    }
    for (const auto& t : group.targets) b.add_edge(*previous, dag.index_of(t));
  }
  for (const auto& [k, v] : dag.meta()) b.set_meta(k, v);
  b.set_meta("cd_height", std::to_string(h));
  b.set_meta("cd_red", std::to_string(red + 1));
  return std::move(b).build();
}

}  // namespace rbpebble
