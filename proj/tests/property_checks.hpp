#pragma once

// Property sweeps shared by the unit tests and the acceptance binary. Each returns a
// verdict plus a one-line summary of what was checked (or the first counterexample).

#include <cstddef>
#include <random>
#include <sstream>
#include <string>

#include "oracle/brute_force.hpp"
#include "test_util.hpp"

namespace props {

using namespace rbpebble;

struct Verdict {
  bool ok = true;
  std::string detail;
};

inline const Variant kVariants[] = {Variant::Base, Variant::OneShot, Variant::NoDel, Variant::CompCost};

inline ModelSpec model_of(Variant v, StartConvention start = StartConvention::FreeSources,
                          FinishConvention finish = FinishConvention::AnyPebbleOnSinks) {
  ModelSpec m = ModelSpec::of(v);
  m.epsilon = Rational(1, 4);
  m.start = start;
  m.finish = finish;
  return m;
}

inline std::string describe(const Dag& d, const ModelSpec& m, std::size_t red) {
  std::ostringstream s;
  s << to_string(m.variant) << " " << to_string(m.start) << "/" << to_string(m.finish) << " R=" << red
    << " " << dag_to_json(d).dump();
  return s.str();
}

/// (a) solve_exact equals the brute-force oracle on every DAG with at most 5 nodes, every
/// feasible R <= 3, all four variants and both start and finish conventions. Also checks
/// (b) the length bound and that each witness validates at the reported cost.
inline Verdict oracle_equivalence(std::size_t max_nodes = 5) {
  std::size_t cases = 0;
  for (std::size_t n = 1; n <= max_nodes; ++n)
    for (const Dag& d : testutil::all_upper_triangular(n))
      for (std::size_t red = d.feasibility_threshold(); red <= 3; ++red)
        for (Variant v : kVariants)
          for (auto start : {StartConvention::FreeSources, StartConvention::BlueSources})
            for (auto finish : {FinishConvention::AnyPebbleOnSinks, FinishConvention::BlueOnSinks}) {
              const ModelSpec m = model_of(v, start, finish);
              const auto res = solve_exact(d, m, red);
              const auto expected = oracle::brute_force_opt(d, m, red);
              ++cases;
              if (!res.exhausted || !expected || res.cost != *expected)
                return {false, "cost " + to_string(res.cost) + " vs oracle " +
                                   (expected ? to_string(*expected) : "none") + " on " + describe(d, m, red)};
              if (validate_trace(d, m, red, res.trace).total != res.cost)
                return {false, "witness cost differs on " + describe(d, m, red)};
              if (!length_bound_check(d, m, res.trace))
                return {false, "length bound violated on " + describe(d, m, red)};
            }
  return {true, std::to_string(cases) + " cases"};
}

/// (b) Every exact-solver trace on random 6- and 7-node DAGs passes length_bound_check.
inline Verdict length_bound(std::size_t instances = 40, unsigned seed = 71) {
  std::mt19937 rng(seed);
  std::size_t traces = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    Dag d = testutil::random_dag(6 + i % 2, 0.4, 2, rng);
    for (Variant v : kVariants)
      for (std::size_t red = d.feasibility_threshold(); red <= d.feasibility_threshold() + 1; ++red) {
        const ModelSpec m = model_of(v);
        const auto res = solve_exact(d, m, red);
        ++traces;
        if (!length_bound_check(d, m, res.trace))
          return {false, "length " + std::to_string(res.trace.size()) + " on " + describe(d, m, red)};
      }
  }
  return {true, std::to_string(traces) + " traces"};
}

/// (c) ONESHOT opt(R-1) <= opt(R) + 2n on random instances.
inline Verdict lipschitz(std::size_t instances = 50, unsigned seed = 73) {
  std::mt19937 rng(seed);
  const ModelSpec m = model_of(Variant::OneShot);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    Dag d = testutil::random_dag(8, 0.35, 3, rng);
    const auto curve = tradeoff_curve(d, m, d.feasibility_threshold(), d.feasibility_threshold() + 3);
    const Rational slack(2 * static_cast<std::int64_t>(d.size()));
    for (std::size_t j = 1; j < curve.size(); ++j, ++pairs)
      if (curve[j - 1].cost > curve[j].cost + slack)
        return {false, "opt(" + std::to_string(curve[j - 1].red) + ")=" + to_string(curve[j - 1].cost) +
                           " exceeds opt(" + std::to_string(curve[j].red) + ")+2n on " +
                           describe(d, m, curve[j].red)};
  }
  return {true, std::to_string(instances) + " instances, " + std::to_string(pairs) + " pairs"};
}

/// (d) naive_topological costs at most (2Δ+1)n (+εn under COMPCOST).
inline Verdict naive_bound(std::size_t instances = 50, unsigned seed = 79) {
  std::mt19937 rng(seed);
  for (std::size_t i = 0; i < instances; ++i) {
    Dag d = testutil::random_dag(10, 0.3, 3, rng);
    const ModelSpec m = model_of(kVariants[i % 4]);
    const std::size_t red = d.feasibility_threshold();
    const auto n = static_cast<std::int64_t>(d.size());
    const Rational bound = Rational(2 * static_cast<std::int64_t>(d.max_indegree()) + 1) * n + m.compute_cost() * n;
    const Rational cost = validate_trace(d, m, red, naive_topological(d, m, red)).total;
    if (cost > bound)
      return {false, "cost " + to_string(cost) + " > " + to_string(bound) + " on " + describe(d, m, red)};
  }
  return {true, std::to_string(instances) + " instances"};
}

/// (e) COMPCOST exact cost is at least ε times the number of non-source nodes.
inline Verdict compcost_floor(std::size_t instances = 30, unsigned seed = 83) {
  std::mt19937 rng(seed);
  for (std::size_t i = 0; i < instances; ++i) {
    Dag d = testutil::random_dag(7, 0.4, 2, rng);
    for (Rational eps : {Rational(1, 100), Rational(1, 4), Rational(2, 3)}) {
      ModelSpec m = ModelSpec::of(Variant::CompCost);
      m.epsilon = eps;
      const std::size_t red = d.feasibility_threshold();
      const auto non_sources = static_cast<std::int64_t>(d.size() - d.sources().size());
      const Rational cost = solve_exact(d, m, red).cost;
      if (cost < eps * non_sources)
        return {false, "cost " + to_string(cost) + " below floor on " + describe(d, m, red)};
    }
  }
  return {true, std::to_string(instances * 3) + " solves"};
}

/// (f) Repeated runs give identical bytes; DAG, trace, cost-report and instance formats
/// survive a write/read cycle.
inline Verdict determinism_and_round_trips(std::size_t instances = 20, unsigned seed = 89) {
  std::mt19937 rng(seed);
  for (std::size_t i = 0; i < instances; ++i) {
    Dag d = testutil::random_dag(7, 0.4, 2, rng);
    const ModelSpec m = model_of(kVariants[i % 4]);
    const std::size_t red = d.feasibility_threshold();
    const std::string dag_text = serialize_dag(d);
    if (parse_dag(dag_text) != d || serialize_dag(parse_dag(dag_text)) != dag_text)
      return {false, "DAG round trip on " + describe(d, m, red)};
    const auto a = solve_exact(d, m, red), b = solve_exact(d, m, red);
    if (a.trace != b.trace || a.cost != b.cost || a.states_expanded != b.states_expanded)
      return {false, "solve_exact not deterministic on " + describe(d, m, red)};
    const Trace g1 = greedy_pebble(d, m, red, {}), g2 = greedy_pebble(d, m, red, {});
    if (g1 != g2) return {false, "greedy not deterministic on " + describe(d, m, red)};
    const std::string trace_text = serialize_trace(a.trace);
    if (parse_trace(trace_text) != a.trace || serialize_trace(parse_trace(trace_text)) != trace_text)
      return {false, "trace round trip on " + describe(d, m, red)};
    const CostReport r1 = validate_trace(d, m, red, a.trace);
    const std::string report = cost_report_to_json(r1).dump();
    if (cost_report_to_json(validate_trace(d, m, red, parse_trace(trace_text))).dump() != report ||
        cost_report_from_json(Json::parse(report)) != r1 || tally(m, a.trace) != r1)
      return {false, "cost report round trip on " + describe(d, m, red)};
  }
  const UndirectedGraph g({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  for (const auto& inst : {reduce_hampath(g, model_of(Variant::NoDel)), reduce_vertex_cover(g, 6)}) {
    const std::string sidecar = instance_sidecar(inst).dump();
    const auto back = instance_from_json(Json::parse(serialize_dag(inst.dag)), Json::parse(sidecar));
    if (back.dag != inst.dag || instance_sidecar(back).dump() != sidecar)
      return {false, std::string("instance round trip for ") + std::string(to_string(inst.kind))};
  }
  const auto curve = tradeoff_curve(gen_tradeoff_dag(1, 4), model_of(Variant::OneShot), 3, 4);
  if (curve_to_csv(curve) != curve_to_csv(tradeoff_curve(gen_tradeoff_dag(1, 4), model_of(Variant::OneShot), 3, 4)))
    return {false, "tradeoff CSV not deterministic"};
  return {true, std::to_string(instances) + " instances plus reductions and curves"};
}

}  // namespace props
