#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rbpebble/dag_io.hpp"
#include "rbpebble/error.hpp"

namespace rbpebble {

/// Simple undirected graph (no loops, no parallel edges) with ordered node names.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;

  UndirectedGraph(std::vector<std::string> nodes,
                  const std::vector<std::pair<std::string, std::string>>& edges)
      : nodes_(std::move(nodes)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (!index_.emplace(nodes_[i], i).second)
        throw Error(ErrorCode::DuplicateNode, "graph node '" + nodes_[i] + "' repeated");
    adjacent_.assign(nodes_.size(), std::vector<bool>(nodes_.size(), false));
    for (const auto& [a, b] : edges) add_edge(a, b);
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  const std::string& node(std::size_t i) const { return nodes_.at(i); }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }

  std::size_t index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error(ErrorCode::UnknownEndpoint, "no graph node '" + name + "'");
    return it->second;
  }
  bool adjacent(std::size_t a, std::size_t b) const { return adjacent_[a][b]; }
  std::size_t degree(std::size_t a) const {
    return static_cast<std::size_t>(std::count(adjacent_[a].begin(), adjacent_[a].end(), true));
  }

  bool is_vertex_cover(const std::set<std::string>& cover) const {
    return std::all_of(edges_.begin(), edges_.end(), [&](const auto& e) {
      return cover.contains(nodes_[e.first]) || cover.contains(nodes_[e.second]);
    });
  }

 private:
  void add_edge(const std::string& a, const std::string& b) {
    const std::size_t u = index_of(a), v = index_of(b);
    if (u == v) throw Error(ErrorCode::CycleDetected, "self-loop on graph node '" + a + "'");
    if (adjacent_[u][v]) throw Error(ErrorCode::DuplicateEdge, "graph edge " + a + "-" + b + " repeated");
    adjacent_[u][v] = adjacent_[v][u] = true;
    edges_.emplace_back(u, v);
  }

  std::vector<std::string> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<bool>> adjacent_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

inline Json graph_to_json(const UndirectedGraph& g) {
  Json edges = Json::array();
  for (auto [a, b] : g.edges()) edges.push_back({g.node(a), g.node(b)});
  Json j;
  j["nodes"] = g.nodes();
  j["edges"] = std::move(edges);
  return j;
}

inline UndirectedGraph graph_from_json(const Json& j) {
  try {
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::ParseError, "edge must be a pair");
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return UndirectedGraph(j.at("nodes").get<std::vector<std::string>>(), edges);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline UndirectedGraph parse_graph(const std::string& text) {
  try {
    return graph_from_json(Json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace rbpebble
