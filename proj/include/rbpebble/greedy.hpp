#pragma once

#include <algorithm>
#include <cstddef>
#include <string_view>
#include <vector>

#include "rbpebble/dag.hpp"
#include "rbpebble/engine.hpp"
#include "rbpebble/schedule.hpp"

namespace rbpebble {

enum class GreedyRule { MostRedInputs, FewestBlueInputs, BestRedRatio };

struct GreedyPolicy {
  GreedyRule rule = GreedyRule::MostRedInputs;
  Eviction eviction = Eviction::FarthestNextUse;
};

inline GreedyRule parse_greedy_rule(std::string_view s) {
  if (s == "most-red") return GreedyRule::MostRedInputs;
  if (s == "fewest-blue") return GreedyRule::FewestBlueInputs;
  if (s == "best-ratio") return GreedyRule::BestRedRatio;
  throw Error(ErrorCode::ParseError, "unknown greedy rule '" + std::string(s) + "'");
}

inline Eviction parse_eviction(std::string_view s) {
  if (s == "farthest") return Eviction::FarthestNextUse;
  if (s == "lowest-id") return Eviction::LowestId;
  throw Error(ErrorCode::ParseError, "unknown eviction '" + std::string(s) + "'");
}

namespace detail {

struct Candidate {
  NodeIndex node;
  std::size_t red_inputs;
  std::size_t indegree;
};

// True when `a` ranks strictly ahead of `b` under `rule`, names breaking ties.
inline bool ranks_ahead(const Dag& dag, GreedyRule rule, const Candidate& a, const Candidate& b) {
  switch (rule) {
    case GreedyRule::MostRedInputs:
      if (a.red_inputs != b.red_inputs) return a.red_inputs > b.red_inputs;
      break;
    case GreedyRule::FewestBlueInputs: {
      // An input lacking a red pebble must be brought in from slow memory.
      const std::size_t ma = a.indegree - a.red_inputs, mb = b.indegree - b.red_inputs;
      if (ma != mb) return ma < mb;
      break;
    }
    case GreedyRule::BestRedRatio: {
      const std::size_t lhs = a.red_inputs * b.indegree, rhs = b.red_inputs * a.indegree;
      if (lhs != rhs) return lhs > rhs;
      break;
    }
  }
  return dag.node_name(a.node) < dag.node_name(b.node);
}

}  // namespace detail

/// Greedy pebbling: repeatedly computes the best-ranked ready node.
///
/// A node is ready when it is uncomputed, not a source, and all its non-source inputs
/// are computed; sources are produced on demand when an input needs them. Each node is
/// computed once. Isolated nodes are computed last.
inline Trace greedy_pebble(const Dag& dag, const ModelSpec& model, std::size_t red,
                           const GreedyPolicy& policy) {
  model.validate();
  require_feasible(dag, red);
  ScheduleExecutor exec(dag, model, red, policy.eviction);

  std::vector<std::size_t> pending(dag.size(), 0);
  std::vector<NodeIndex> ready;
  for (NodeIndex v = 0; v < dag.size(); ++v) {
    if (dag.is_source(v)) continue;
    for (NodeIndex u : dag.inputs(v))
      if (!dag.is_source(u)) ++pending[v];
    if (pending[v] == 0) ready.push_back(v);
  }

  std::vector<std::size_t> rank(dag.size(), kNever);
  NextUse next_use = [&](NodeIndex u) { return rank[u]; };

  while (!ready.empty()) {
    std::vector<detail::Candidate> cands;
    cands.reserve(ready.size());
    for (NodeIndex v : ready) {
      std::size_t reds = 0;
      for (NodeIndex u : dag.inputs(v))
        if (exec.state().status[u] == Pebble::Red) ++reds;
      cands.push_back({v, reds, dag.indegree(v)});
    }
    std::sort(cands.begin(), cands.end(), [&](const auto& a, const auto& b) {
      return detail::ranks_ahead(dag, policy.rule, a, b);
    });

    // Next use of a pebble: the queue position of the first ready node reading it.
    std::fill(rank.begin(), rank.end(), kNever);
    for (std::size_t pos = 0; pos < cands.size(); ++pos)
      for (NodeIndex u : dag.inputs(cands[pos].node))
        if (rank[u] == kNever) rank[u] = pos;

    const NodeIndex chosen = cands.front().node;
    exec.compute(chosen, next_use);
    ready.erase(std::find(ready.begin(), ready.end(), chosen));
    for (NodeIndex w : dag.outputs(chosen))
      if (--pending[w] == 0) ready.push_back(w);
  }

  std::fill(rank.begin(), rank.end(), kNever);
  for (NodeIndex v = 0; v < dag.size(); ++v)
    if (dag.is_source(v) && dag.is_sink(v) && model.start == StartConvention::FreeSources)
      exec.compute(v, next_use);
  return name_moves(dag, exec.finish());
}

}  // namespace rbpebble
