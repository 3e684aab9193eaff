#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rbpebble/dag.hpp"
#include "rbpebble/error.hpp"

namespace rbpebble {

/// Overlap sizes steering the greedy rules through the grid.
struct GridOverlaps {
  /// Common nodes of diagonal i shared by the top group of column i and group (i-1, 1).
  std::size_t misguidance = 1;
  /// Common nodes of the last diagonal that S0 shares with group (l, 1).
  std::size_t entry = 2;
};

/// Group index of grid position (i, j); index 0 is the entry group S0. Groups are listed
/// column by column, bottom to top.
inline std::size_t grid_group_index(std::size_t l, std::size_t i, std::size_t j) {
  if (i < 1 || j < 1 || i + j > l + 1) throw Error(ErrorCode::InvalidGroup, "no such grid position");
  std::size_t index = 1;
  for (std::size_t col = 1; col < i; ++col) index += l + 1 - col;
  return index + (j - 1);
}

/// Grid position of a group index, (0, 0) for S0.
inline std::pair<std::size_t, std::size_t> grid_position(std::size_t l, std::size_t index) {
  if (index == 0) return {0, 0};
  std::size_t rest = index - 1;
  for (std::size_t i = 1; i <= l; ++i) {
    if (rest < l + 1 - i) return {i, rest + 1};
    rest -= l + 1 - i;
  }
  throw Error(ErrorCode::InvalidGroup, "no grid group " + std::to_string(index));
}

inline std::string grid_group_label(std::size_t l, std::size_t index) {
  auto [i, j] = grid_position(l, index);
  if (i == 0) return "S0";
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

/// Optimal-style order: S0, then diagonal by diagonal (i + j = 2, 3, ..., l + 1).
inline std::vector<std::size_t> grid_diagonal_order(std::size_t l) {
  std::vector<std::size_t> order{0};
  for (std::size_t x = 2; x <= l + 1; ++x)
    for (std::size_t j = 1; j < x; ++j) order.push_back(grid_group_index(l, x - j, j));
  return order;
}

/// Order greedy rules are lured into: S0, then columns l down to 1, each bottom to top.
inline std::vector<std::size_t> grid_column_order(std::size_t l) {
  std::vector<std::size_t> order{0};
  for (std::size_t i = l; i >= 1; --i)
    for (std::size_t j = 1; j + i <= l + 1; ++j) order.push_back(grid_group_index(l, i, j));
  return order;
}

/// Greedy-trap grid: groups (i, j) with i, j >= 1 and i + j <= l + 1, each of size k with
/// one target `t.<i>.<j>`, plus the entry group S0 (targets `t.S0.<i>`, one per column).
///
/// Group (i, j) holds the k' common nodes `c.<i+j>.<n>` of its diagonal, the target below
/// it (`t.<i>.<j-1>`, or `t.S0.<i>` in the bottom row) and fillers `f.<i>.<j>.<n>`. The
/// top group of column i >= 2 also holds the first `misguidance` commons of diagonal i,
/// and S0 holds the first `entry` commons of diagonal l + 1. R = k + 1.
inline Dag gen_greedy_grid(std::size_t l, std::size_t k, std::size_t kp, GridOverlaps overlaps = {}) {
  if (l < 2) throw Error(ErrorCode::ParamsTooTight, "grid needs l >= 2");
  if (kp == 0 || kp >= k) throw Error(ErrorCode::ParamsTooTight, "need 0 < k' < k");
  if (overlaps.misguidance > kp || overlaps.entry > kp)
    throw Error(ErrorCode::ParamsTooTight, "overlaps larger than k'");
  if (1 + overlaps.misguidance > k - kp)
    throw Error(ErrorCode::ParamsTooTight,
                "k - k' = " + std::to_string(k - kp) + " leaves no room for the misguidance overlap");

  auto common = [](std::size_t x, std::size_t n) {
    return "c." + std::to_string(x) + "." + std::to_string(n);
  };
  auto target = [](std::size_t i, std::size_t j) {
    return "t." + std::to_string(i) + "." + std::to_string(j);
  };

  DagBuilder b("grid_l" + std::to_string(l) + "_k" + std::to_string(k) + "_kp" + std::to_string(kp));
  for (std::size_t x = 2; x <= l + 1; ++x)
    for (std::size_t n = 1; n <= kp; ++n) b.add_node(common(x, n));

  std::vector<InputGroup> groups;
  InputGroup s0;
  for (std::size_t n = 1; n <= overlaps.entry; ++n) s0.members.push_back(common(l + 1, n));
  for (std::size_t n = 1; s0.members.size() < k; ++n) {
    s0.members.push_back("f.S0." + std::to_string(n));
    b.add_node(s0.members.back());
  }
  for (std::size_t i = 1; i <= l; ++i) {
    s0.targets.push_back("t.S0." + std::to_string(i));
    b.add_node(s0.targets.back());
  }
  groups.push_back(std::move(s0));

  for (std::size_t i = 1; i <= l; ++i) {
    for (std::size_t j = 1; i + j <= l + 1; ++j) {
      InputGroup group;
      for (std::size_t n = 1; n <= kp; ++n) group.members.push_back(common(i + j, n));
      group.members.push_back(j == 1 ? "t.S0." + std::to_string(i) : target(i, j - 1));
      if (i >= 2 && i + j == l + 1)
        for (std::size_t n = 1; n <= overlaps.misguidance; ++n) group.members.push_back(common(i, n));
      const std::string prefix = "f." + std::to_string(i) + "." + std::to_string(j) + ".";
      for (std::size_t n = 1; group.members.size() < k; ++n) {
        group.members.push_back(prefix + std::to_string(n));
        b.add_node(group.members.back());
      }
      group.targets.push_back(target(i, j));
      b.add_node(group.targets.back());
      groups.push_back(std::move(group));
    }
  }

  for (auto& group : groups) {
    for (const auto& m : group.members)
      for (const auto& t : group.targets) b.add_edge(m, t);
    b.add_group(std::move(group));
  }
  b.set_meta("l", std::to_string(l));
  b.set_meta("k", std::to_string(k));
  b.set_meta("kprime", std::to_string(kp));
  b.set_meta("red", std::to_string(k + 1));
  return std::move(b).build();
}

}  // namespace rbpebble
