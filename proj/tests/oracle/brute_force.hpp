#pragma once

// Independent reference for the exact solver: label-correcting enumeration of every
// configuration reachable through every legal move, with the game rules re-implemented
// here from scratch. Only suitable for a handful of nodes.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rbpebble/dag.hpp"
#include "rbpebble/engine.hpp"

namespace oracle {

using rbpebble::Rational;

struct Config {
  std::vector<std::uint8_t> pebble;  // 0 none, 1 red, 2 blue
  std::vector<bool> computed;
  auto operator<=>(const Config&) const = default;
};

inline std::optional<Rational> brute_force_opt(const rbpebble::Dag& dag,
                                               const rbpebble::ModelSpec& model, std::size_t red) {
  using rbpebble::Variant;
  const std::size_t n = dag.size();
  const bool oneshot = model.variant == Variant::OneShot;
  const bool nodel = model.variant == Variant::NoDel;
  const bool blue_start = model.start == rbpebble::StartConvention::BlueSources;
  const bool blue_finish = model.finish == rbpebble::FinishConvention::BlueOnSinks;
  const Rational eps = model.variant == Variant::CompCost ? model.epsilon : Rational(0);

  Config start{std::vector<std::uint8_t>(n, 0), std::vector<bool>(n, false)};
  for (std::size_t v = 0; v < n; ++v)
    if (blue_start && dag.inputs(v).empty()) {
      start.pebble[v] = 2;
      start.computed[v] = true;
    }
  auto reds = [&](const Config& c) {
    std::size_t r = 0;
    for (auto p : c.pebble) r += (p == 1);
    return r;
  };
  auto goal = [&](const Config& c) {
    for (std::size_t v = 0; v < n; ++v) {
      if (!dag.outputs(v).empty()) continue;
      if (blue_finish ? c.pebble[v] != 2 : c.pebble[v] == 0) return false;
    }
    return true;
  };

  std::map<Config, Rational> best;
  std::deque<Config> work;
  best[start] = 0;
  work.push_back(start);
  auto relax = [&](const Config& c, Rational cost) {
    auto it = best.find(c);
    if (it == best.end() || cost < it->second) {
      best[c] = cost;
      work.push_back(c);
    }
  };
  while (!work.empty()) {
    Config c = work.front();
    work.pop_front();
    const Rational cost = best[c];
    const std::size_t r = reds(c);
    for (std::size_t v = 0; v < n; ++v) {
      if (c.pebble[v] == 2 && r < red) {  // load
        Config d = c;
        d.pebble[v] = 1;
        relax(d, cost + 1);
      }
      if (c.pebble[v] == 1) {  // store
        Config d = c;
        d.pebble[v] = 2;
        relax(d, cost + 1);
      }
      if (c.pebble[v] != 0 && !nodel) {  // delete
        Config d = c;
        d.pebble[v] = 0;
        relax(d, cost);
      }
      bool inputs_red = true;
      for (auto u : dag.inputs(v)) inputs_red = inputs_red && c.pebble[u] == 1;
      const bool source = dag.inputs(v).empty();
      if (inputs_red && c.pebble[v] != 1 && r < red && !(oneshot && c.computed[v]) &&
          !(blue_start && source)) {  // compute
        Config d = c;
        d.pebble[v] = 1;
        d.computed[v] = true;
        relax(d, cost + eps);
      }
    }
  }
  std::optional<Rational> answer;
  for (const auto& [c, cost] : best)
    if (goal(c) && (!answer || cost < *answer)) answer = cost;
  return answer;
}

}  // namespace oracle
