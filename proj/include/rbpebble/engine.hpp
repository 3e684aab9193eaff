#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rbpebble/dag.hpp"
#include "rbpebble/error.hpp"
#include "rbpebble/rational.hpp"

namespace rbpebble {

enum class Variant { Base, OneShot, NoDel, CompCost };
enum class StartConvention { FreeSources, BlueSources };
enum class FinishConvention { AnyPebbleOnSinks, BlueOnSinks };

inline std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Base: return "base";
    case Variant::OneShot: return "oneshot";
    case Variant::NoDel: return "nodel";
    case Variant::CompCost: return "compcost";
  }
  return "?";
}

inline Variant parse_variant(std::string_view s) {
  if (s == "base") return Variant::Base;
  if (s == "oneshot") return Variant::OneShot;
  if (s == "nodel") return Variant::NoDel;
  if (s == "compcost") return Variant::CompCost;
  throw Error(ErrorCode::InvalidModel, "unknown model '" + std::string(s) + "'");
}

inline std::string_view to_string(StartConvention s) {
  return s == StartConvention::FreeSources ? "free" : "blue-sources";
}

inline std::string_view to_string(FinishConvention f) {
  return f == FinishConvention::AnyPebbleOnSinks ? "any" : "blue-sinks";
}

inline StartConvention parse_start(std::string_view s) {
  if (s == "free") return StartConvention::FreeSources;
  if (s == "blue-sources") return StartConvention::BlueSources;
  throw Error(ErrorCode::InvalidModel, "unknown start convention '" + std::string(s) + "'");
}

inline FinishConvention parse_finish(std::string_view s) {
  if (s == "any") return FinishConvention::AnyPebbleOnSinks;
  if (s == "blue-sinks") return FinishConvention::BlueOnSinks;
  throw Error(ErrorCode::InvalidModel, "unknown finish convention '" + std::string(s) + "'");
}

/// Game variant plus conventions. `epsilon` only matters for CompCost.
struct ModelSpec {
  Variant variant = Variant::Base;
  Rational epsilon{1, 100};
  StartConvention start = StartConvention::FreeSources;
  FinishConvention finish = FinishConvention::AnyPebbleOnSinks;

  static ModelSpec of(Variant v) {
    ModelSpec m;
    m.variant = v;
    return m;
  }

  void validate() const {
    if (epsilon <= 0 || epsilon >= 1)
      throw Error(ErrorCode::InvalidModel, "epsilon must lie strictly between 0 and 1, got " +
                                               to_string(epsilon));
  }

  bool allows_delete() const { return variant != Variant::NoDel; }
  bool allows_recompute() const { return variant != Variant::OneShot; }
  Rational compute_cost() const { return variant == Variant::CompCost ? epsilon : Rational(0); }

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

enum class Pebble : std::uint8_t { Empty, Red, Blue };

enum class MoveKind : std::uint8_t { Load, Store, Compute, Delete };

inline std::string_view to_string(MoveKind k) {
  switch (k) {
    case MoveKind::Load: return "load";
    case MoveKind::Store: return "store";
    case MoveKind::Compute: return "compute";
    case MoveKind::Delete: return "delete";
  }
  return "?";
}

/// A move addressed by node index of a particular Dag.
struct Move {
  MoveKind kind;
  NodeIndex node;

  friend bool operator==(const Move&, const Move&) = default;
  friend auto operator<=>(const Move&, const Move&) = default;
};

/// A move addressed by node name; independent of any Dag instance.
struct NamedMove {
  MoveKind kind;
  std::string node;

  friend bool operator==(const NamedMove&, const NamedMove&) = default;
};

struct Trace {
  std::vector<NamedMove> moves;

  std::size_t size() const noexcept { return moves.size(); }
  friend bool operator==(const Trace&, const Trace&) = default;
};

inline Trace name_moves(const Dag& dag, const std::vector<Move>& moves) {
  Trace t;
  t.moves.reserve(moves.size());
  for (const auto& m : moves) t.moves.push_back({m.kind, dag.node_name(m.node)});
  return t;
}

struct PebbleState {
  std::vector<Pebble> status;
  std::vector<bool> computed;
  std::size_t red_count = 0;

  Pebble at(NodeIndex v) const { return status.at(v); }
  friend bool operator==(const PebbleState&, const PebbleState&) = default;
};

struct CostReport {
  std::int64_t loads = 0;
  std::int64_t stores = 0;
  std::int64_t computes = 0;
  std::int64_t deletes = 0;
  Rational total{0};

  std::int64_t transfers() const { return loads + stores; }
  friend bool operator==(const CostReport&, const CostReport&) = default;
};

inline PebbleState initial_state(const Dag& dag, const ModelSpec& model) {
  PebbleState s;
  s.status.assign(dag.size(), Pebble::Empty);
  s.computed.assign(dag.size(), false);
  if (model.start == StartConvention::BlueSources) {
    for (NodeIndex v : dag.sources()) {
      s.status[v] = Pebble::Blue;
      s.computed[v] = true;
    }
  }
  return s;
}

/// Returns the first rule `move` violates in `state`, or nothing if it is legal.
inline std::optional<IllegalReason> check_move(const Dag& dag, const ModelSpec& model,
                                               std::size_t red, const PebbleState& state,
                                               const Move& move) {
  if (move.node >= dag.size()) return IllegalReason::UnknownNode;
  const NodeIndex v = move.node;
  const Pebble p = state.status[v];
  switch (move.kind) {
    case MoveKind::Load:
      if (p != Pebble::Blue) return IllegalReason::NotBlue;
      if (state.red_count >= red) return IllegalReason::RedBudgetExceeded;
      return std::nullopt;
    case MoveKind::Store:
      if (p != Pebble::Red) return IllegalReason::NotRed;
      return std::nullopt;
    case MoveKind::Delete:
      if (!model.allows_delete()) return IllegalReason::DeleteForbidden;
      if (p == Pebble::Empty) return IllegalReason::NoPebble;
      return std::nullopt;
    case MoveKind::Compute:
      if (model.start == StartConvention::BlueSources && dag.is_source(v))
        return IllegalReason::SourceNotComputable;
      if (!model.allows_recompute() && state.computed[v]) return IllegalReason::RecomputeForbidden;
      if (p == Pebble::Red) return IllegalReason::AlreadyRed;
      for (NodeIndex u : dag.inputs(v))
        if (state.status[u] != Pebble::Red) return IllegalReason::InputsNotRed;
      // Both EMPTY -> RED and BLUE -> RED add one red pebble.
      if (state.red_count >= red) return IllegalReason::RedBudgetExceeded;
      return std::nullopt;
  }
  return std::nullopt;
}

inline Rational move_cost(const ModelSpec& model, MoveKind kind) {
  switch (kind) {
    case MoveKind::Load:
    case MoveKind::Store: return Rational(1);
    case MoveKind::Compute: return model.compute_cost();
    case MoveKind::Delete: return Rational(0);
  }
  return Rational(0);
}

/// Applies a move in place; the caller guarantees legality.
inline void apply_unchecked(PebbleState& state, const Move& move) {
  Pebble& p = state.status[move.node];
  switch (move.kind) {
    case MoveKind::Load:
      p = Pebble::Red;
      ++state.red_count;
      break;
    case MoveKind::Store:
      p = Pebble::Blue;
      --state.red_count;
      break;
    case MoveKind::Compute:
      p = Pebble::Red;
      ++state.red_count;
      state.computed[move.node] = true;
      break;
    case MoveKind::Delete:
      if (p == Pebble::Red) --state.red_count;
      p = Pebble::Empty;
      break;
  }
}

/// Checked move application; returns the successor state and the move's cost.
inline std::pair<PebbleState, Rational> apply_move(const Dag& dag, const ModelSpec& model,
                                                   std::size_t red, PebbleState state,
                                                   const Move& move) {
  if (auto why = check_move(dag, model, red, state, move))
    throw IllegalMoveError(*why, std::nullopt,
                           move.node < dag.size() ? dag.node_name(move.node) : "?");
  apply_unchecked(state, move);
  return {std::move(state), move_cost(model, move.kind)};
}

/// All legal moves, ordered by node then kind.
inline std::vector<Move> legal_moves(const Dag& dag, const ModelSpec& model, std::size_t red,
                                     const PebbleState& state) {
  std::vector<Move> out;
  for (NodeIndex v = 0; v < dag.size(); ++v)
    for (MoveKind k : {MoveKind::Load, MoveKind::Store, MoveKind::Compute, MoveKind::Delete})
      if (!check_move(dag, model, red, state, {k, v})) out.push_back({k, v});
  return out;
}

inline bool is_goal(const Dag& dag, const ModelSpec& model, const PebbleState& state) {
  for (NodeIndex v = 0; v < dag.size(); ++v) {
    if (!dag.is_sink(v)) continue;
    const Pebble p = state.status[v];
    if (model.finish == FinishConvention::BlueOnSinks ? p != Pebble::Blue : p == Pebble::Empty)
      return false;
  }
  return true;
}

/// Recomputes the cost of a move multiset without replaying it.
inline CostReport tally(const ModelSpec& model, const Trace& trace) {
  CostReport r;
  for (const auto& m : trace.moves) {
    switch (m.kind) {
      case MoveKind::Load: ++r.loads; break;
      case MoveKind::Store: ++r.stores; break;
      case MoveKind::Compute: ++r.computes; break;
      case MoveKind::Delete: ++r.deletes; break;
    }
  }
  r.total = Rational(r.loads + r.stores) + model.compute_cost() * r.computes;
  return r;
}

/// Replays `trace` from the initial state. Throws IllegalMoveError naming the first
/// offending index, or Error(GoalNotReached) if the final state misses a sink.
inline CostReport validate_trace(const Dag& dag, const ModelSpec& model, std::size_t red,
                                 const Trace& trace) {
  model.validate();
  PebbleState state = initial_state(dag, model);
  for (std::size_t i = 0; i < trace.moves.size(); ++i) {
    const auto& named = trace.moves[i];
    auto v = dag.find(named.node);
    if (!v) throw IllegalMoveError(IllegalReason::UnknownNode, i, named.node);
    Move move{named.kind, *v};
    if (auto why = check_move(dag, model, red, state, move))
      throw IllegalMoveError(*why, i, named.node);
    apply_unchecked(state, move);
  }
  if (!is_goal(dag, model, state))
    throw Error(ErrorCode::GoalNotReached, "trace ends before every sink is pebbled");
  return tally(model, trace);
}

/// Checks the explicit step-count bound that optimal pebblings obey. BASE has no bound.
inline bool length_bound_check(const Dag& dag, const ModelSpec& model, const Trace& trace) {
  const auto n = static_cast<std::int64_t>(dag.size());
  const auto delta = static_cast<std::int64_t>(dag.max_indegree());
  const Rational length(static_cast<std::int64_t>(trace.size()));
  const Rational transfer_budget(2 * delta + 1);
  switch (model.variant) {
    case Variant::Base: return true;
    case Variant::OneShot: return length <= Rational(2 * n) + transfer_budget * n;
    case Variant::NoDel: return length <= Rational(n) + Rational(2) * transfer_budget * n;
    case Variant::CompCost: {
      const Rational cost_cap = (transfer_budget + model.epsilon) * n;
      return length <= cost_cap + Rational(2) / model.epsilon * cost_cap;
    }
  }
  return true;
}

}  // namespace rbpebble
