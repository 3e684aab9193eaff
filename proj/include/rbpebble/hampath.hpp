#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rbpebble/dag.hpp"
#include "rbpebble/engine.hpp"
#include "rbpebble/graph.hpp"
#include "rbpebble/reduction.hpp"
#include "rbpebble/transforms.hpp"

namespace rbpebble {

/// Allowed cost of a Hamiltonian-path instance on N nodes and M edges under `model`.
inline Rational hampath_threshold(const ModelSpec& model, std::size_t n, std::size_t m) {
  const auto N = static_cast<std::int64_t>(n), M = static_cast<std::int64_t>(m);
  const Rational nodel(N * (N - 1));
  const Rational oneshot = nodel + M;
  const std::int64_t missing = N * (N - 1) - M;  // contact nodes that stay sources
  const Rational base = oneshot + 4 * missing;
  switch (model.variant) {
    case Variant::NoDel: return nodel;
    case Variant::OneShot: return oneshot;
    case Variant::Base: return base;
    case Variant::CompCost:
      return base + Rational(N + 4) * model.epsilon * missing + model.epsilon * N;
  }
  return base;
}

/// Hamiltonian-path instance: target sink `t.<a>` per graph node, whose input group holds
/// one contact per other node. Adjacent a, b share the contact `v.<a>.<b>` (a listed
/// first in the graph); otherwise `v.<a>.<b>` belongs to a alone. R = N. Under BASE and
/// COMPCOST every source receives its own H2C copy so sources cannot be produced for free.
inline ReductionInstance reduce_hampath(const UndirectedGraph& g, const ModelSpec& model) {
  model.validate();
  const std::size_t n = g.size();
  if (n < 2) throw Error(ErrorCode::InvalidR, "Hamiltonian-path reduction needs N >= 2");

  DagBuilder b("hampath_n" + std::to_string(n) + "_m" + std::to_string(g.edge_count()));
  auto contact = [&](std::size_t a, std::size_t c) {
    if (g.adjacent(a, c) && c < a) return "v." + g.node(c) + "." + g.node(a);
    return "v." + g.node(a) + "." + g.node(c);
  };
  std::vector<InputGroup> groups(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = 0; c < n; ++c) {
      if (c == a) continue;
      const std::string name = contact(a, c);
      b.ensure_node(name);
      groups[a].members.push_back(name);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    const std::string target = "t." + g.node(a);
    b.add_node(target);
    for (const auto& m : groups[a].members) b.add_edge(m, target);
    groups[a].targets.push_back(target);
  }
  ReductionInstance inst;
  for (std::size_t a = 0; a < n; ++a) {
    b.add_group(std::move(groups[a]));
    inst.decode_meta.emplace(a, GroupRole{g.node(a), 0});
  }
  b.set_meta("reduction", "hampath");
  Dag dag = std::move(b).build();
  if (model.variant == Variant::Base || model.variant == Variant::CompCost)
    dag = attach_h2c(dag, n, /*per_source_copies=*/true);

  inst.kind = ReductionKind::HamPath;
  inst.dag = std::move(dag);
  inst.red = n;
  inst.model = model;
  inst.threshold = hampath_threshold(model, n, g.edge_count());
  inst.graph = g;
  inst.params = {{"N", std::to_string(n)}, {"M", std::to_string(g.edge_count())}};
  if (model.variant == Variant::CompCost) inst.params["epsilon"] = to_string(model.epsilon);
  return inst;
}

/// Reads the node order off the first COMPUTE of every target. Absent when the trace
/// costs more than the instance threshold. Throws MalformedTrace if a target is never
/// computed, and the usual errors if the trace is illegal.
inline std::optional<std::vector<std::string>> decode_hampath(const ReductionInstance& inst,
                                                              const Trace& trace) {
  if (inst.kind != ReductionKind::HamPath)
    throw Error(ErrorCode::MalformedTrace, "not a Hamiltonian-path instance");
  const CostReport report = validate_trace(inst.dag, inst.model, inst.red, trace);
  if (inst.threshold && report.total > *inst.threshold) return std::nullopt;

  std::vector<std::string> order;
  std::vector<bool> seen(inst.graph.size(), false);
  for (const auto& m : trace.moves) {
    if (m.kind != MoveKind::Compute || !m.node.starts_with("t.")) continue;
    const auto a = inst.graph.index_of(m.node.substr(2));
    if (seen[a]) continue;
    seen[a] = true;
    order.push_back(inst.graph.node(a));
  }
  if (order.size() != inst.graph.size())
    throw Error(ErrorCode::MalformedTrace, "trace never computes every target");
  return order;
}

}  // namespace rbpebble
