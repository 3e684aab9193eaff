#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rbpebble/dag.hpp"
#include "rbpebble/engine.hpp"
#include "rbpebble/graph.hpp"
#include "rbpebble/rational.hpp"
#include "rbpebble/schedule.hpp"

namespace rbpebble {

enum class ReductionKind { HamPath, VertexCover };

inline std::string_view to_string(ReductionKind k) {
  return k == ReductionKind::HamPath ? "hampath" : "vertexcover";
}

/// What a group of a reduction DAG stands for: a graph node, and for vertex-cover
/// instances whether it is the first- (1) or second-level (2) group. Level 0 otherwise.
struct GroupRole {
  std::string node;
  int level = 0;

  friend bool operator==(const GroupRole&, const GroupRole&) = default;
};

struct ReductionInstance {
  ReductionKind kind = ReductionKind::HamPath;
  Dag dag;
  std::size_t red = 0;
  ModelSpec model;
  /// Allowed cost; absent for vertex-cover instances (relative comparisons only).
  std::optional<Rational> threshold;
  UndirectedGraph graph;
  /// Group index in `dag.groups()` -> role. Only the reduction's own groups appear.
  std::map<std::size_t, GroupRole> decode_meta;
  std::map<std::string, std::string> params;
};

/// Order in which groups are first visited, i.e. all their members hold red pebbles at
/// the same time. Groups completing on the same move are ordered by index. Groups never
/// visited are left out. Throws on an illegal trace.
inline std::vector<std::size_t> group_visit_order(const Dag& dag, const ModelSpec& model,
                                                  std::size_t red, const Trace& trace,
                                                  const std::vector<std::size_t>& groups) {
  std::vector<std::vector<std::size_t>> member_of(dag.size());
  std::vector<std::size_t> missing(dag.groups().size(), 0);
  std::vector<bool> visited(dag.groups().size(), false);
  for (std::size_t g : groups) {
    for (const auto& m : dag.groups().at(g).members) member_of[dag.index_of(m)].push_back(g);
    missing[g] = dag.groups()[g].members.size();
  }
  std::vector<std::size_t> order;
  PebbleState state = initial_state(dag, model);
  auto settle = [&](std::vector<std::size_t> done) {
    std::sort(done.begin(), done.end());
    for (std::size_t g : done) {
      visited[g] = true;
      order.push_back(g);
    }
  };
  {
    std::vector<std::size_t> done;
    for (std::size_t g : groups)
      if (missing[g] == 0) done.push_back(g);
    settle(done);
  }
  for (std::size_t i = 0; i < trace.moves.size(); ++i) {
    const auto& named = trace.moves[i];
    auto v = dag.find(named.node);
    if (!v) throw IllegalMoveError(IllegalReason::UnknownNode, i, named.node);
    const Move move{named.kind, *v};
    if (auto why = check_move(dag, model, red, state, move)) throw IllegalMoveError(*why, i, named.node);
    const bool was_red = state.status[*v] == Pebble::Red;
    apply_unchecked(state, move);
    const bool is_red = state.status[*v] == Pebble::Red;
    if (was_red == is_red) continue;
    std::vector<std::size_t> done;
    for (std::size_t g : member_of[*v]) {
      if (is_red) {
        if (--missing[g] == 0 && !visited[g]) done.push_back(g);
      } else {
        ++missing[g];
      }
    }
    settle(done);
  }
  return order;
}

/// Pebbles the targets of `groups` group by group, with clairvoyant eviction. Non-source
/// ancestors a target still lacks are computed just before it, depth first.
inline Trace trace_from_group_order(const Dag& dag, const ModelSpec& model, std::size_t red,
                                    const std::vector<std::size_t>& groups) {
  std::vector<NodeIndex> order;
  std::vector<bool> listed(dag.size(), false);
  auto visit = [&](auto&& self, NodeIndex v) -> void {
    if (listed[v]) return;
    listed[v] = true;
    for (NodeIndex u : dag.inputs(v))
      if (!dag.is_source(u)) self(self, u);
    order.push_back(v);
  };
  for (std::size_t g : groups)
    for (const auto& t : dag.groups().at(g).targets) visit(visit, dag.index_of(t));
  // Anything the groups do not reach (other sinks and their ancestors) goes last.
  for (NodeIndex v : dag.topological_order())
    if (dag.is_sink(v)) visit(visit, v);
  return name_moves(dag, execute_order(dag, model, red, order, Eviction::FarthestNextUse));
}

}  // namespace rbpebble
