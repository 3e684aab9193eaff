#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rbpebble/error.hpp"

namespace rbpebble {

using NodeIndex = std::size_t;

/// A set of nodes that all feed each of `targets`. Names refer to Dag nodes.
struct InputGroup {
  std::vector<std::string> members;
  std::vector<std::string> targets;

  friend bool operator==(const InputGroup&, const InputGroup&) = default;
};

/// Immutable, validated DAG with string-named nodes. Edge (u, v) means u is an input of v.
///
/// Nodes and edges keep their insertion order; all index-based queries use that order.
class Dag {
 public:
  Dag() = default;

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& node_names() const noexcept { return names_; }
  const std::string& node_name(NodeIndex v) const { return names_.at(v); }

  std::optional<NodeIndex> find(const std::string& node) const {
    auto it = index_.find(node);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  NodeIndex index_of(const std::string& node) const {
    auto v = find(node);
    if (!v) throw Error(ErrorCode::UnknownEndpoint, "no node named '" + node + "'");
    return *v;
  }

  const std::vector<std::pair<NodeIndex, NodeIndex>>& edges() const noexcept { return edges_; }
  std::span<const NodeIndex> inputs(NodeIndex v) const { return inputs_.at(v); }
  std::span<const NodeIndex> outputs(NodeIndex v) const { return outputs_.at(v); }
  std::size_t indegree(NodeIndex v) const { return inputs_.at(v).size(); }
  bool is_source(NodeIndex v) const { return inputs_.at(v).empty(); }
  bool is_sink(NodeIndex v) const { return outputs_.at(v).empty(); }

  const std::vector<InputGroup>& groups() const noexcept { return groups_; }
  const std::map<std::string, std::string>& meta() const noexcept { return meta_; }

  std::vector<NodeIndex> sources() const {
    std::vector<NodeIndex> out;
    for (NodeIndex v = 0; v < size(); ++v)
      if (is_source(v)) out.push_back(v);
    return out;
  }
  std::vector<NodeIndex> sinks() const {
    std::vector<NodeIndex> out;
    for (NodeIndex v = 0; v < size(); ++v)
      if (is_sink(v)) out.push_back(v);
    return out;
  }

  /// Kahn order; ties resolved by insertion index, so the result is deterministic.
  const std::vector<NodeIndex>& topological_order() const noexcept { return topo_; }

  /// Largest indegree; 0 for an edgeless DAG.
  std::size_t max_indegree() const noexcept {
    std::size_t best = 0;
    for (const auto& in : inputs_) best = std::max(best, in.size());
    return best;
  }

  /// Minimum number of red pebbles that admits any pebbling.
  std::size_t feasibility_threshold() const noexcept { return max_indegree() + 1; }

  friend bool operator==(const Dag& a, const Dag& b) {
    return a.name_ == b.name_ && a.names_ == b.names_ && a.edges_ == b.edges_ &&
           a.groups_ == b.groups_ && a.meta_ == b.meta_;
  }

 private:
  friend class DagBuilder;

  std::string name_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges_;
  std::vector<std::vector<NodeIndex>> inputs_;
  std::vector<std::vector<NodeIndex>> outputs_;
  std::vector<InputGroup> groups_;
  std::map<std::string, std::string> meta_;
  std::vector<NodeIndex> topo_;
};

/// Accumulates nodes, edges and annotations; `build()` validates and freezes them.
///
/// Errors are raised eagerly where they can be (duplicate node, unknown endpoint,
/// duplicate edge); cycles and group invariants are checked in `build()`.
class DagBuilder {
 public:
  explicit DagBuilder(std::string name = {}) { dag_.name_ = std::move(name); }

  bool has_node(const std::string& node) const { return dag_.index_.contains(node); }

  NodeIndex add_node(const std::string& node) {
    auto [it, inserted] = dag_.index_.emplace(node, dag_.names_.size());
    if (!inserted) throw Error(ErrorCode::DuplicateNode, "node '" + node + "' declared twice");
    dag_.names_.push_back(node);
    dag_.inputs_.emplace_back();
    dag_.outputs_.emplace_back();
    return it->second;
  }

  /// Adds `node` unless it already exists; returns its index either way.
  NodeIndex ensure_node(const std::string& node) {
    if (auto it = dag_.index_.find(node); it != dag_.index_.end()) return it->second;
    return add_node(node);
  }

  void add_edge(const std::string& from, const std::string& to) {
    auto u = dag_.index_.find(from);
    auto v = dag_.index_.find(to);
    if (u == dag_.index_.end() || v == dag_.index_.end())
      throw Error(ErrorCode::UnknownEndpoint,
                  "edge " + from + " -> " + to + " references an undeclared node");
    add_edge(u->second, v->second);
  }

  void add_edge(NodeIndex u, NodeIndex v) {
    if (u == v)
      throw Error(ErrorCode::CycleDetected, "self-loop on '" + dag_.names_.at(u) + "'");
    if (!edge_set_.emplace(u, v).second)
      throw Error(ErrorCode::DuplicateEdge,
                  "edge " + dag_.names_.at(u) + " -> " + dag_.names_.at(v) + " repeated");
    dag_.edges_.emplace_back(u, v);
    dag_.outputs_[u].push_back(v);
    dag_.inputs_[v].push_back(u);
  }

  bool has_edge(NodeIndex u, NodeIndex v) const { return edge_set_.contains({u, v}); }

  void add_group(InputGroup group) { dag_.groups_.push_back(std::move(group)); }
  void set_meta(const std::string& key, std::string value) { dag_.meta_[key] = std::move(value); }

  Dag build() && {
    compute_topological_order();
    check_groups();
    return std::move(dag_);
  }

 private:
  void compute_topological_order() {
    const std::size_t n = dag_.names_.size();
    std::vector<std::size_t> pending(n);
    std::set<NodeIndex> ready;
    for (NodeIndex v = 0; v < n; ++v) {
      pending[v] = dag_.inputs_[v].size();
      if (pending[v] == 0) ready.insert(v);
    }
    dag_.topo_.clear();
    while (!ready.empty()) {
      NodeIndex v = *ready.begin();
      ready.erase(ready.begin());
      dag_.topo_.push_back(v);
      for (NodeIndex w : dag_.outputs_[v])
        if (--pending[w] == 0) ready.insert(w);
    }
    if (dag_.topo_.size() != n) throw Error(ErrorCode::CycleDetected, describe_cycle(pending));
  }

  // Walks backwards through unresolved nodes until one repeats.
  std::string describe_cycle(const std::vector<std::size_t>& pending) const {
    NodeIndex start = 0;
    while (pending[start] == 0) ++start;
    std::vector<NodeIndex> walk{start};
    std::vector<std::ptrdiff_t> seen_at(pending.size(), -1);
    seen_at[start] = 0;
    NodeIndex cur = start;
    for (;;) {
      NodeIndex next = cur;
      for (NodeIndex p : dag_.inputs_[cur])
        if (pending[p] != 0) {
          next = p;
          break;
        }
      if (seen_at[next] >= 0) {
        std::vector<NodeIndex> cycle(walk.begin() + seen_at[next], walk.end());
        std::reverse(cycle.begin(), cycle.end());
        std::string s = "cycle";
        for (NodeIndex v : cycle) s += " " + dag_.names_[v] + " ->";
        return s + " " + dag_.names_[cycle.front()];
      }
      seen_at[next] = static_cast<std::ptrdiff_t>(walk.size());
      walk.push_back(next);
      cur = next;
    }
  }

  void check_groups() const {
    for (std::size_t g = 0; g < dag_.groups_.size(); ++g) {
      const auto& group = dag_.groups_[g];
      std::set<std::string> members(group.members.begin(), group.members.end());
      const std::string where = "group " + std::to_string(g);
      if (members.size() != group.members.size())
        throw Error(ErrorCode::InvalidGroup, where + " repeats a member");
      for (const auto& t : group.targets) {
        if (members.contains(t))
          throw Error(ErrorCode::InvalidGroup, where + ": '" + t + "' is both member and target");
        auto tv = dag_.index_.find(t);
        if (tv == dag_.index_.end())
          throw Error(ErrorCode::UnknownEndpoint, where + " target '" + t + "' undeclared");
        for (const auto& m : group.members) {
          auto mv = dag_.index_.find(m);
          if (mv == dag_.index_.end())
            throw Error(ErrorCode::UnknownEndpoint, where + " member '" + m + "' undeclared");
          if (!edge_set_.contains({mv->second, tv->second}))
            throw Error(ErrorCode::InvalidGroup,
                        where + ": member '" + m + "' has no edge to target '" + t + "'");
        }
      }
    }
  }

  Dag dag_;
  std::set<std::pair<NodeIndex, NodeIndex>> edge_set_;
};

}  // namespace rbpebble
