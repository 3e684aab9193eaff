#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "rbpebble/dag.hpp"
#include "rbpebble/engine.hpp"
#include "rbpebble/graph.hpp"
#include "rbpebble/reduction.hpp"

namespace rbpebble {

/// Vertex-cover instance with R = k + 1 under ONESHOT.
///
/// Graph node a (position i) owns groups V_{a,1} (index 2i) and V_{a,2} (index 2i+1), both
/// of size k. They share the k - N common nodes `c.<a>.<n>`. V_{a,1} is padded with N
/// fillers `f.<a>.1.<n>` and has targets `t.<a>.1.<b>` for every b != a; V_{a,2} holds
/// `t.<b>.1.<a>` for each neighbour b, N - deg(a) fillers `f.<a>.2.<n>`, and has target
/// `t.<a>.2`. Visiting both groups of a back to back saves storing its common nodes.
inline ReductionInstance reduce_vertex_cover(const UndirectedGraph& g, std::size_t k) {
  const std::size_t n = g.size();
  if (n == 0) throw Error(ErrorCode::InvalidR, "vertex-cover reduction needs a node");
  if (k <= n)
    throw Error(ErrorCode::KTooSmall,
                "k=" + std::to_string(k) + " must exceed N=" + std::to_string(n));
  const std::size_t kp = k - n;

  DagBuilder b("vertexcover_n" + std::to_string(n) + "_k" + std::to_string(k));
  std::vector<InputGroup> first(n), second(n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::string& name = g.node(a);
    for (std::size_t i = 1; i <= kp; ++i) {
      const std::string c = "c." + name + "." + std::to_string(i);
      b.add_node(c);
      first[a].members.push_back(c);
      second[a].members.push_back(c);
    }
    for (std::size_t i = 1; i <= n; ++i) {
      first[a].members.push_back("f." + name + ".1." + std::to_string(i));
      b.add_node(first[a].members.back());
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (c == a) continue;
      first[a].targets.push_back("t." + name + ".1." + g.node(c));
      b.add_node(first[a].targets.back());
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    const std::string& name = g.node(a);
    for (std::size_t c = 0; c < n; ++c)
      if (g.adjacent(a, c)) second[a].members.push_back("t." + g.node(c) + ".1." + name);
    for (std::size_t i = 1; i <= n - g.degree(a); ++i) {
      second[a].members.push_back("f." + name + ".2." + std::to_string(i));
      b.add_node(second[a].members.back());
    }
    second[a].targets.push_back("t." + name + ".2");
    b.add_node(second[a].targets.back());
  }

  ReductionInstance inst;
  for (std::size_t a = 0; a < n; ++a) {
    for (InputGroup* group : {&first[a], &second[a]})
      for (const auto& m : group->members)
        for (const auto& t : group->targets) b.add_edge(m, t);
    b.add_group(std::move(first[a]));
    b.add_group(std::move(second[a]));
    inst.decode_meta.emplace(2 * a, GroupRole{g.node(a), 1});
    inst.decode_meta.emplace(2 * a + 1, GroupRole{g.node(a), 2});
  }
  b.set_meta("reduction", "vertexcover");

  inst.kind = ReductionKind::VertexCover;
  inst.dag = std::move(b).build();
  inst.red = k + 1;
  inst.model = ModelSpec::of(Variant::OneShot);
  inst.graph = g;
  inst.params = {{"k", std::to_string(k)},
                 {"kprime", std::to_string(kp)},
                 {"N", std::to_string(n)},
                 {"M", std::to_string(g.edge_count())}};
  // The cost gap between good and bad orders only dominates once k >> N^2.
  if (k <= n * n) inst.params["warning"] = "k <= N^2: small-k regime";
  return inst;
}

/// Group order behind the canonical trace: first-level groups of the cover, then both
/// groups of each remaining node back to back, then second-level groups of the cover.
inline std::vector<std::size_t> canonical_vc_order(const ReductionInstance& inst,
                                                   const std::set<std::string>& cover) {
  if (inst.kind != ReductionKind::VertexCover)
    throw Error(ErrorCode::NotACover, "not a vertex-cover instance");
  for (const auto& c : cover) inst.graph.index_of(c);
  if (!inst.graph.is_vertex_cover(cover))
    throw Error(ErrorCode::NotACover, "given node set misses an edge");
  const std::size_t n = inst.graph.size();
  std::vector<std::size_t> order;
  for (std::size_t a = 0; a < n; ++a)
    if (cover.contains(inst.graph.node(a))) order.push_back(2 * a);
  for (std::size_t a = 0; a < n; ++a)
    if (!cover.contains(inst.graph.node(a))) {
      order.push_back(2 * a);
      order.push_back(2 * a + 1);
    }
  for (std::size_t a = 0; a < n; ++a)
    if (cover.contains(inst.graph.node(a))) order.push_back(2 * a + 1);
  return order;
}

inline Trace canonical_vc_trace(const ReductionInstance& inst, const std::set<std::string>& cover) {
  return trace_from_group_order(inst.dag, inst.model, inst.red, canonical_vc_order(inst, cover));
}

/// Nodes whose two groups are not visited back to back. Throws MalformedTrace if some
/// group is never visited, and the usual errors if the trace is illegal.
inline std::set<std::string> decode_vertex_cover(const ReductionInstance& inst, const Trace& trace) {
  if (inst.kind != ReductionKind::VertexCover)
    throw Error(ErrorCode::MalformedTrace, "not a vertex-cover instance");
  validate_trace(inst.dag, inst.model, inst.red, trace);
  std::vector<std::size_t> groups;
  for (const auto& [g, role] : inst.decode_meta) groups.push_back(g);
  const auto order = group_visit_order(inst.dag, inst.model, inst.red, trace, groups);
  if (order.size() != groups.size())
    throw Error(ErrorCode::MalformedTrace, "trace never visits every group");
  std::vector<std::size_t> position(inst.dag.groups().size());
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
  std::set<std::string> cover;
  for (std::size_t a = 0; a < inst.graph.size(); ++a)
    if (position[2 * a + 1] != position[2 * a] + 1) cover.insert(inst.graph.node(a));
  return cover;
}

}  // namespace rbpebble
