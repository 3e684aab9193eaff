#pragma once

// Command-line front end, kept in a header so tests can drive it in-process.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "rbpebble/rbpebble.hpp"

namespace rbpebble::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Unreadable or unwritable file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) throw IoError("cannot write '" + path + "'");
}

/// Accepts `P/Q` with 0 < P/Q < 1 only.
inline Rational parse_epsilon(const std::string& text) {
  static const std::regex form(R"(^(\d+)/(\d+)$)");
  std::smatch m;
  if (!std::regex_match(text, m, form))
    throw CLI::ValidationError("--epsilon", "expected P/Q, got '" + text + "'");
  const std::int64_t num = std::stoll(m[1]), den = std::stoll(m[2]);
  if (den == 0 || num <= 0 || num >= den)
    throw CLI::ValidationError("--epsilon", "must lie strictly between 0 and 1");
  return Rational(num, den);
}

inline std::size_t default_max_states() {
  if (const char* env = std::getenv("RBPEBBLE_MAX_STATES")) {
    try {
      return std::stoul(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("RBPEBBLE_MAX_STATES", "not a number: '" + std::string(env) + "'");
    }
  }
  return SearchLimits{}.max_states;
}

namespace detail {

struct ModelFlags {
  std::string variant;
  std::string epsilon;
  std::string start = "free";
  std::string finish = "any";

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", variant, "base|oneshot|nodel|compcost")
        ->required()
        ->check(CLI::IsMember({"base", "oneshot", "nodel", "compcost"}));
    cmd->add_option("--epsilon", epsilon, "COMPUTE cost under compcost, as P/Q");
    cmd->add_option("--start", start, "free|blue-sources")->check(CLI::IsMember({"free", "blue-sources"}));
    cmd->add_option("--finish", finish, "any|blue-sinks")->check(CLI::IsMember({"any", "blue-sinks"}));
  }

  ModelSpec spec() const {
    ModelSpec m;
    m.variant = parse_variant(variant);
    if (!epsilon.empty()) m.epsilon = parse_epsilon(epsilon);
    m.start = parse_start(start);
    m.finish = parse_finish(finish);
    return m;
  }
};

inline Json error_json(const Error& e) {
  Json j;
  j["error"] = std::string(to_string(e.code()));
  j["message"] = e.what();
  if (const auto* illegal = dynamic_cast<const IllegalMoveError*>(&e)) {
    j["reason"] = std::string(to_string(illegal->reason()));
    j["index"] = illegal->index() ? Json(*illegal->index()) : Json(nullptr);
    j["node"] = illegal->node();
  }
  return j;
}

}  // namespace detail

/// Runs one command line (without the program name). Output goes to `out`, errors and the
/// summary line to `err`. Returns the process exit code.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Red-blue pebble games: generate, solve and check pebblings"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a gadget DAG");
  gen->require_subcommand(1);
  std::string gen_out;
  std::size_t d = 0, m = 0, l = 0, k = 0, kp = 0;
  auto* gen_tradeoff = gen->add_subcommand("tradeoff", "Time-memory tradeoff DAG");
  gen_tradeoff->add_option("--d", d, "control group size")->required();
  gen_tradeoff->add_option("--m", m, "chain length")->required();
  gen_tradeoff->add_option("--out", gen_out, "output DAG path")->required();
  auto* gen_grid = gen->add_subcommand("grid", "Greedy-trap grid DAG");
  gen_grid->add_option("--l", l, "grid side")->required();
  gen_grid->add_option("--k", k, "group size")->required();
  gen_grid->add_option("--kprime", kp, "common nodes per diagonal")->required();
  gen_grid->add_option("--out", gen_out, "output DAG path")->required();

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Build a reduction instance from a graph");
  reduce->require_subcommand(1);
  std::string graph_path, reduce_out;
  detail::ModelFlags reduce_model;
  auto* reduce_hp = reduce->add_subcommand("hampath", "Hamiltonian-path instance");
  reduce_hp->add_option("--graph", graph_path, "undirected graph JSON")->required();
  reduce_model.attach(reduce_hp);
  reduce_hp->add_option("--out", reduce_out, "output DAG path (sidecar at PATH.sidecar.json)")->required();
  auto* reduce_vc = reduce->add_subcommand("vertexcover", "Vertex-cover instance");
  reduce_vc->add_option("--graph", graph_path, "undirected graph JSON")->required();
  reduce_vc->add_option("--k", k, "group size")->required();
  reduce_vc->add_option("--out", reduce_out, "output DAG path (sidecar at PATH.sidecar.json)")->required();

  // solve / greedy / validate / tradeoff share the DAG and model flags
  std::string dag_path, trace_path, trace_out, csv_path, rule = "most-red", eviction = "farthest";
  std::size_t red = 0, r_min = 0, r_max = 0;
  std::optional<std::size_t> max_states;
  detail::ModelFlags model_flags;

  auto* solve = app.add_subcommand("solve", "Exact minimum-cost pebbling");
  solve->add_option("--dag", dag_path, "DAG JSON")->required();
  model_flags.attach(solve);
  solve->add_option("--red", red, "red pebbles R")->required();
  solve->add_option("--max-states", max_states, "state budget");
  solve->add_option("--trace-out", trace_out, "write the witness trace (JSONL)");

  auto* greedy = app.add_subcommand("greedy", "Greedy pebbling");
  greedy->add_option("--dag", dag_path, "DAG JSON")->required();
  model_flags.attach(greedy);
  greedy->add_option("--red", red, "red pebbles R")->required();
  greedy->add_option("--rule", rule, "most-red|fewest-blue|best-ratio")
      ->check(CLI::IsMember({"most-red", "fewest-blue", "best-ratio"}));
  greedy->add_option("--eviction", eviction, "farthest|lowest-id")
      ->check(CLI::IsMember({"farthest", "lowest-id"}));
  greedy->add_option("--trace-out", trace_out, "write the trace (JSONL)");

  auto* validate = app.add_subcommand("validate", "Check a trace and report its cost");
  validate->add_option("--dag", dag_path, "DAG JSON")->required();
  model_flags.attach(validate);
  validate->add_option("--red", red, "red pebbles R")->required();
  validate->add_option("--trace", trace_path, "trace (JSONL)")->required();

  auto* tradeoff = app.add_subcommand("tradeoff", "Exact cost for every R in a range");
  tradeoff->add_option("--dag", dag_path, "DAG JSON")->required();
  model_flags.attach(tradeoff);
  tradeoff->add_option("--r-min", r_min, "smallest R")->required();
  tradeoff->add_option("--r-max", r_max, "largest R")->required();
  tradeoff->add_option("--max-states", max_states, "state budget per R");
  tradeoff->add_option("--csv", csv_path, "output CSV path")->required();

  std::vector<const char*> argv{"rbpebble"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << Json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
    return kExitUsage;
  }

  auto load_dag = [&] { return parse_dag(read_file(dag_path)); };
  auto limits = [&] {
    SearchLimits lim;
    lim.max_states = max_states ? *max_states : default_max_states();
    return lim;
  };

  try {
    if (gen->parsed()) {
      Dag dag = gen_tradeoff->parsed() ? gen_tradeoff_dag(d, m) : gen_greedy_grid(l, k, kp);
      write_file(gen_out, serialize_dag(dag));
      out << Json{{"dag", dag.name()}, {"nodes", dag.size()}, {"edges", dag.edges().size()},
                  {"out", gen_out}}
                 .dump()
          << "\n";
      err << "generated " << dag.name() << " (" << dag.size() << " nodes)\n";
    } else if (reduce->parsed()) {
      UndirectedGraph g = parse_graph(read_file(graph_path));
      ReductionInstance inst =
          reduce_hp->parsed() ? reduce_hampath(g, reduce_model.spec()) : reduce_vertex_cover(g, k);
      const Json sidecar = instance_sidecar(inst);
      write_file(reduce_out, serialize_dag(inst.dag));
      write_file(reduce_out + ".sidecar.json", sidecar.dump() + "\n");
      out << sidecar.dump() << "\n";
      err << "reduced to " << inst.dag.size() << " nodes, R=" << inst.red << "\n";
    } else if (solve->parsed()) {
      const Dag dag = load_dag();
      const ModelSpec model = model_flags.spec();
      const OptimalResult res = solve_exact(dag, model, red, limits());
      if (!trace_out.empty()) write_file(trace_out, serialize_trace(res.trace));
      out << Json{{"cost", rational_to_json(res.cost)},
                  {"exhausted", res.exhausted},
                  {"states_expanded", res.states_expanded},
                  {"moves", res.trace.moves.size()}}
                 .dump()
          << "\n";
      err << "cost " << to_string(res.cost) << (res.exhausted ? " (optimal)" : " (upper bound)")
          << " after " << res.states_expanded << " expansions\n";
    } else if (greedy->parsed()) {
      const Dag dag = load_dag();
      const ModelSpec model = model_flags.spec();
      const Trace trace =
          greedy_pebble(dag, model, red, {parse_greedy_rule(rule), parse_eviction(eviction)});
      const CostReport report = validate_trace(dag, model, red, trace);
      if (!trace_out.empty()) write_file(trace_out, serialize_trace(trace));
      out << cost_report_to_json(report).dump() << "\n";
      err << "greedy cost " << to_string(report.total) << "\n";
    } else if (validate->parsed()) {
      const Dag dag = load_dag();
      const ModelSpec model = model_flags.spec();
      const CostReport report = validate_trace(dag, model, red, parse_trace(read_file(trace_path)));
      out << cost_report_to_json(report).dump() << "\n";
      err << "valid, cost " << to_string(report.total) << "\n";
    } else if (tradeoff->parsed()) {
      const Dag dag = load_dag();
      const ModelSpec model = model_flags.spec();
      const auto curve = tradeoff_curve(dag, model, r_min, r_max, limits());
      const std::string csv = curve_to_csv(curve);
      write_file(csv_path, csv);
      out << csv;
      err << curve.size() << " points\n";
    }
  } catch (const CLI::ValidationError& e) {
    err << Json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << detail::error_json(e).dump() << "\n";
    return kExitDomain;
  } catch (const IoError& e) {
    err << Json{{"error", "IoError"}, {"message", e.what()}}.dump() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace rbpebble::cli
