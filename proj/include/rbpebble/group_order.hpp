#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rbpebble/error.hpp"
#include "rbpebble/rational.hpp"
#include "rbpebble/reduction.hpp"

namespace rbpebble {

inline constexpr std::size_t kMaxOrderGroups = 10;

struct GroupOrder {
  std::vector<std::size_t> order;  // group indices into dag.groups()
  Rational cost;
};

namespace detail {

// Closed-form order cost of a reduction: precedence constraints plus a price per
// consecutive pair (and per group), evaluated on complete orders.
struct OrderModel {
  std::vector<std::size_t> groups;
  std::vector<std::vector<bool>> must_precede;  // [x][y]: groups[x] before groups[y]
  std::function<Rational(const std::vector<std::size_t>&)> cost;  // positions into groups
};

inline OrderModel hampath_order_model(const ReductionInstance& inst) {
  OrderModel om;
  for (const auto& [g, role] : inst.decode_meta) om.groups.push_back(g);
  const std::size_t n = om.groups.size();
  om.must_precede.assign(n, std::vector<bool>(n, false));
  // Moving on from group a to group b costs N if a and b are adjacent, N + 1 otherwise;
  // the model-specific overhead on top of (N - 1) N is order independent.
  const Rational offset = *inst.threshold - Rational(static_cast<std::int64_t>(n * (n - 1)));
  std::vector<std::size_t> node(n);
  for (std::size_t x = 0; x < n; ++x) node[x] = inst.graph.index_of(inst.decode_meta.at(om.groups[x]).node);
  om.cost = [&g = inst.graph, node, n, offset](const std::vector<std::size_t>& order) {
    Rational c = offset;
    for (std::size_t i = 1; i < order.size(); ++i)
      c += static_cast<std::int64_t>(g.adjacent(node[order[i - 1]], node[order[i]]) ? n : n + 1);
    return c;
  };
  return om;
}

inline OrderModel vertex_cover_order_model(const ReductionInstance& inst) {
  OrderModel om;
  for (const auto& [g, role] : inst.decode_meta) om.groups.push_back(g);
  const std::size_t n = om.groups.size();
  std::vector<std::size_t> position(inst.dag.groups().size());
  for (std::size_t x = 0; x < n; ++x) position[om.groups[x]] = x;
  om.must_precede.assign(n, std::vector<bool>(n, false));
  const std::size_t nodes = inst.graph.size();
  for (std::size_t a = 0; a < nodes; ++a) om.must_precede[position[2 * a]][position[2 * a + 1]] = true;
  for (auto [a, b] : inst.graph.edges()) {
    om.must_precede[position[2 * a]][position[2 * b + 1]] = true;
    om.must_precede[position[2 * b]][position[2 * a + 1]] = true;
  }
  // Every node whose groups are split pays 2k': its commons are stored and reloaded.
  const auto per_split = static_cast<std::int64_t>(2 * std::stoul(inst.params.at("kprime")));
  om.cost = [position, nodes, per_split](const std::vector<std::size_t>& order) {
    std::vector<std::size_t> at(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) at[order[i]] = i;
    Rational c(0);
    for (std::size_t a = 0; a < nodes; ++a)
      if (at[position[2 * a + 1]] != at[position[2 * a]] + 1) c += per_split;
    return c;
  };
  return om;
}

}  // namespace detail

/// Exhaustive search over precedence-respecting group orders under the instance's
/// closed-form cost model. Returns the first cheapest order in lexicographic order of
/// group indices. At most kMaxOrderGroups groups.
inline GroupOrder group_order_search(const ReductionInstance& inst) {
  if (inst.decode_meta.size() > kMaxOrderGroups)
    throw Error(ErrorCode::TooManyGroups, std::to_string(inst.decode_meta.size()) +
                                              " groups; the order oracle handles at most " +
                                              std::to_string(kMaxOrderGroups));
  const detail::OrderModel om = inst.kind == ReductionKind::HamPath
                                    ? detail::hampath_order_model(inst)
                                    : detail::vertex_cover_order_model(inst);
  const std::size_t n = om.groups.size();
  std::optional<GroupOrder> best;
  std::vector<std::size_t> order;
  std::vector<bool> used(n, false);
  auto dfs = [&](auto&& self) -> void {
    if (order.size() == n) {
      Rational c = om.cost(order);
      if (!best || c < best->cost) {
        best = GroupOrder{{}, c};
        for (std::size_t x : order) best->order.push_back(om.groups[x]);
      }
      return;
    }
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y]) continue;
      bool allowed = true;
      for (std::size_t x = 0; x < n && allowed; ++x)
        if (!used[x] && om.must_precede[x][y]) allowed = false;
      if (!allowed) continue;
      used[y] = true;
      order.push_back(y);
      self(self);
      order.pop_back();
      used[y] = false;
    }
  };
  dfs(dfs);
  return *best;
}

}  // namespace rbpebble
