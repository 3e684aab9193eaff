#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rbpebble/dag.hpp"
#include "rbpebble/error.hpp"

namespace rbpebble {

/// Time-memory tradeoff DAG: control groups A = a1..ad and B = b1..bd (sources) and a
/// chain c1..cm where c_i reads c_{i-1} and all of A (odd i) or all of B (even i).
/// Max indegree is d + 1; one sink (c_m).
inline Dag gen_tradeoff_dag(std::size_t d, std::size_t m) {
  if (d < 1) throw Error(ErrorCode::InvalidR, "control group size d must be >= 1");
  if (m < 2) throw Error(ErrorCode::InvalidR, "chain length m must be >= 2");
  DagBuilder b("tradeoff_d" + std::to_string(d) + "_m" + std::to_string(m));
  InputGroup group_a, group_b;
  for (std::size_t i = 1; i <= d; ++i) {
    group_a.members.push_back("a" + std::to_string(i));
    b.add_node(group_a.members.back());
  }
  for (std::size_t i = 1; i <= d; ++i) {
    group_b.members.push_back("b" + std::to_string(i));
    b.add_node(group_b.members.back());
  }
  for (std::size_t i = 1; i <= m; ++i) {
    const std::string c = "c" + std::to_string(i);
    b.add_node(c);
    if (i > 1) b.add_edge("c" + std::to_string(i - 1), c);
    InputGroup& control = (i % 2 == 1) ? group_a : group_b;
    for (const auto& member : control.members) b.add_edge(member, c);
    control.targets.push_back(c);
  }
  b.add_group(std::move(group_a));
  b.add_group(std::move(group_b));
  b.set_meta("d", std::to_string(d));
  b.set_meta("m", std::to_string(m));
  return std::move(b).build();
}

}  // namespace rbpebble
