#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "rbpebble/dag.hpp"
#include "rbpebble/engine.hpp"

namespace rbpebble {

enum class Eviction { FarthestNextUse, LowestId };

/// Smaller is sooner; `kNever` marks a node with no foreseeable use.
using NextUse = std::function<std::size_t(NodeIndex)>;
inline constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

/// Turns a sequence of "compute this node next" decisions into concrete moves.
///
/// Missing inputs are loaded if blue and computed on the spot if they are uncomputed
/// free sources. A red slot is freed by deleting a pebble that has no uncomputed
/// successor (storing it instead under NODEL or when it sits on a sink); otherwise the
/// eviction policy picks a pebble to store. Nodes are never recomputed.
class ScheduleExecutor {
 public:
  ScheduleExecutor(const Dag& dag, const ModelSpec& model, std::size_t red, Eviction eviction)
      : dag_(dag), model_(model), red_(red), eviction_(eviction),
        state_(initial_state(dag, model)), uses_left_(dag.size()) {
    for (NodeIndex v = 0; v < dag.size(); ++v) uses_left_[v] = dag.outputs(v).size();
  }

  const PebbleState& state() const noexcept { return state_; }
  const std::vector<Move>& moves() const noexcept { return moves_; }
  bool computed(NodeIndex v) const { return state_.computed[v]; }
  std::size_t uses_left(NodeIndex v) const { return uses_left_[v]; }

  /// Computes `v` (already-computed nodes are skipped).
  void compute(NodeIndex v, const NextUse& next_use) {
    if (state_.computed[v]) return;
    std::vector<bool> pinned(dag_.size(), false);
    for (NodeIndex u : dag_.inputs(v)) pinned[u] = true;
    for (NodeIndex u : dag_.inputs(v)) acquire(u, pinned, next_use);
    make_slot(pinned, next_use);
    emit({MoveKind::Compute, v});
    for (NodeIndex u : dag_.inputs(v)) --uses_left_[u];
  }

  /// Final touches for the finish convention. Returns the completed move list.
  std::vector<Move> finish() {
    if (model_.finish == FinishConvention::BlueOnSinks)
      for (NodeIndex v : dag_.sinks())
        if (state_.status[v] == Pebble::Red) emit({MoveKind::Store, v});
    if (!is_goal(dag_, model_, state_))
      throw Error(ErrorCode::GoalNotReached, "schedule left a sink unpebbled");
    return moves_;
  }

 private:
  void emit(const Move& m) {
    if (auto why = check_move(dag_, model_, red_, state_, m))
      throw IllegalMoveError(*why, moves_.size(), dag_.node_name(m.node));
    apply_unchecked(state_, m);
    moves_.push_back(m);
  }

  void acquire(NodeIndex u, const std::vector<bool>& pinned, const NextUse& next_use) {
    const Pebble p = state_.status[u];
    if (p == Pebble::Red) return;
    make_slot(pinned, next_use);
    if (p == Pebble::Blue) {
      emit({MoveKind::Load, u});
    } else if (!state_.computed[u]) {
      compute_source_or_fail(u);
    } else {
      throw Error(ErrorCode::Infeasible, "node '" + dag_.node_name(u) + "' was discarded early");
    }
  }

  void compute_source_or_fail(NodeIndex u) {
    if (!dag_.is_source(u))
      throw Error(ErrorCode::Infeasible,
                  "input '" + dag_.node_name(u) + "' requested before it was computed");
    emit({MoveKind::Compute, u});
  }

  void make_slot(const std::vector<bool>& pinned, const NextUse& next_use) {
    if (state_.red_count < red_) return;
    std::optional<NodeIndex> dead;
    std::optional<NodeIndex> victim;
    std::size_t victim_use = 0;
    for (NodeIndex v = 0; v < dag_.size(); ++v) {
      if (state_.status[v] != Pebble::Red || pinned[v]) continue;
      if (uses_left_[v] == 0 && !dag_.is_sink(v)) {
        if (!dead) dead = v;
        continue;
      }
      if (eviction_ == Eviction::LowestId) {
        if (!victim) victim = v;
        continue;
      }
      const std::size_t use = uses_left_[v] == 0 ? kNever : next_use(v);
      if (!victim || use > victim_use) {
        victim = v;
        victim_use = use;
      }
    }
    if (dead) {
      emit({model_.allows_delete() ? MoveKind::Delete : MoveKind::Store, *dead});
    } else if (victim) {
      emit({MoveKind::Store, *victim});
    } else {
      throw Error(ErrorCode::Infeasible, "every red pebble is pinned; R=" + std::to_string(red_));
    }
  }

  const Dag& dag_;
  ModelSpec model_;
  std::size_t red_;
  Eviction eviction_;
  PebbleState state_;
  std::vector<std::size_t> uses_left_;
  std::vector<Move> moves_;
};

/// Runs `order` through the executor with exact (clairvoyant) next-use information.
/// `order` must be topological among the nodes it lists; unlisted sources are computed
/// when first needed.
inline std::vector<Move> execute_order(const Dag& dag, const ModelSpec& model, std::size_t red,
                                       std::span<const NodeIndex> order, Eviction eviction) {
  std::vector<std::size_t> position(dag.size(), kNever);
  for (std::size_t i = 0; i < order.size(); ++i)
    if (position[order[i]] == kNever) position[order[i]] = i;
  ScheduleExecutor exec(dag, model, red, eviction);
  NextUse next_use = [&](NodeIndex u) {
    std::size_t best = kNever;
    for (NodeIndex w : dag.outputs(u))
      if (!exec.computed(w)) best = std::min(best, position[w]);
    return best;
  };
  for (NodeIndex v : order) {
    if (model.start == StartConvention::BlueSources && dag.is_source(v)) continue;
    exec.compute(v, next_use);
  }
  return exec.finish();
}

inline void require_feasible(const Dag& dag, std::size_t red) {
  if (red < dag.feasibility_threshold())
    throw Error(ErrorCode::Infeasible, "R=" + std::to_string(red) + " < max indegree + 1 = " +
                                           std::to_string(dag.feasibility_threshold()));
}

/// Topological baseline: every node in Kahn order, sources on demand.
/// Costs at most (2*maxdeg + 1) * n transfers.
inline Trace naive_topological(const Dag& dag, const ModelSpec& model, std::size_t red) {
  model.validate();
  require_feasible(dag, red);
  std::vector<NodeIndex> order;
  for (NodeIndex v : dag.topological_order())
    if (!dag.is_source(v) || dag.is_sink(v)) order.push_back(v);
  return name_moves(dag, execute_order(dag, model, red, order, Eviction::FarthestNextUse));
}

}  // namespace rbpebble
