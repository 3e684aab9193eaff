#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rbpebble/dag.hpp"
#include "rbpebble/engine.hpp"
#include "rbpebble/schedule.hpp"

namespace rbpebble {

struct SearchLimits {
  /// Cap on distinct states discovered (memory guard).
  std::size_t max_states = 5'000'000;
  /// States whose cost exceeds this are never enqueued.
  std::optional<Rational> max_cost;
};

struct OptimalResult {
  Rational cost{0};
  Trace trace;
  std::size_t states_expanded = 0;
  /// True iff the search completed, i.e. `cost` is the optimum.
  bool exhausted = false;
};

namespace detail {

template <std::size_t W>
struct Bits {
  std::array<std::uint64_t, W> w{};

  bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < W; ++i)
      if (w[i] & ~o.w[i]) return false;
    return true;
  }
  Bits operator|(const Bits& o) const {
    Bits r;
    for (std::size_t i = 0; i < W; ++i) r.w[i] = w[i] | o.w[i];
    return r;
  }
  friend bool operator==(const Bits&, const Bits&) = default;
};

template <std::size_t W>
struct SearchKey {
  Bits<W> red, blue, computed;
  friend bool operator==(const SearchKey&, const SearchKey&) = default;
};

template <std::size_t W>
struct SearchKeyHash {
  std::size_t operator()(const SearchKey<W>& k) const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    auto mix = [&h](std::uint64_t x) {
      h ^= x + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
      h *= 0xBF58476D1CE4E5B9ull;
    };
    for (auto x : k.red.w) mix(x);
    for (auto x : k.blue.w) mix(x);
    for (auto x : k.computed.w) mix(x);
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

// Cost-ordered (A*) search on pebble configurations.
//
// States are ordered by cost so far plus a consistent lower bound on the remaining cost,
// so the first goal popped is optimal. The bound counts moves no completion can avoid:
// a LOAD for every live blue pebble under ONESHOT (it cannot be recomputed), a STORE for
// every sink without a blue pebble under BLUE_ON_SINKS, and a COMPUTE for every sink
// without any pebble.
//
// Keys hold red/blue masks, plus the computed mask under ONESHOT (elsewhere legality
// never depends on it). Three reductions keep the space small without losing optima:
//  - ONESHOT: a pebble whose node is not a sink and has no uncomputed successor is
//    deleted as soon as that happens, and no other deletion is generated (deleting a
//    live pebble or a sink pebble can never reach the goal once recomputation is barred).
//  - Twin symmetry: nodes with identical input and output sets are interchangeable, so
//    statuses within each twin class are stored sorted.
//  - Blocks: search steps are whole blocks ending in one COMPUTE (see
//    for_each_successor), so intermediate configurations are never stored.
template <std::size_t W>
class ExactSearch {
 public:
  using Key = SearchKey<W>;

  ExactSearch(const Dag& dag, const ModelSpec& model, std::size_t red, const SearchLimits& limits)
      : dag_(dag), model_(model), red_(red), limits_(limits), n_(dag.size()),
        oneshot_(model.variant == Variant::OneShot),
        blue_sources_(model.start == StartConvention::BlueSources) {
    inputs_.resize(n_);
    for (NodeIndex v = 0; v < n_; ++v) {
      for (NodeIndex u : dag.inputs(v)) inputs_[v].set(u);
      if (dag.is_sink(v)) sinks_.set(v);
    }
    if (model.variant == Variant::CompCost) {
      scale_ = model.epsilon.denominator();
      compute_weight_ = model.epsilon.numerator();
    }
    std::map<std::pair<std::vector<NodeIndex>, std::vector<NodeIndex>>, std::vector<NodeIndex>> by;
    for (NodeIndex v = 0; v < n_; ++v) {
      std::vector<NodeIndex> in(dag.inputs(v).begin(), dag.inputs(v).end());
      std::vector<NodeIndex> out(dag.outputs(v).begin(), dag.outputs(v).end());
      std::sort(in.begin(), in.end());
      std::sort(out.begin(), out.end());
      by[{std::move(in), std::move(out)}].push_back(v);
    }
    for (auto& [_, members] : by)
      if (members.size() > 1) twins_.push_back(std::move(members));
  }

  OptimalResult run() {
    Key start = initial_key();
    canonicalize(start);
    std::vector<Entry> entries;
    std::unordered_map<Key, std::uint32_t, SearchKeyHash<W>> index;
    using Item = std::pair<std::int64_t, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;

    entries.push_back({start, 0, heuristic(start), kNoParent});
    index.emplace(start, 0);
    queue.push({entries[0].h, 0});
    const std::optional<std::int64_t> cap = scaled_cap();
    std::size_t expanded = 0;
    bool truncated = false;

    while (!queue.empty()) {
      const auto [priority, id] = queue.top();
      queue.pop();
      if (priority != entries[id].cost + entries[id].h) continue;
      const Key key = entries[id].key;
      const std::int64_t cost = entries[id].cost;
      if (is_goal_key(key)) {
        OptimalResult result;
        result.cost = Rational(cost, scale_);
        result.trace = reconstruct(entries, id);
        result.states_expanded = expanded;
        result.exhausted = true;
        return result;
      }
      ++expanded;
      for_each_successor(key, [&](const std::vector<Move>&, Key next, std::int64_t weight) {
        canonicalize(next);
        const std::int64_t next_cost = cost + weight;
        auto [it, inserted] = index.try_emplace(next, static_cast<std::uint32_t>(entries.size()));
        if (inserted) {
          const std::int64_t h = heuristic(next);
          if (cap && next_cost + h > *cap) {
            index.erase(it);
            return;
          }
          if (entries.size() >= limits_.max_states) {
            index.erase(it);
            truncated = true;
            return;
          }
          entries.push_back({next, next_cost, h, id});
          queue.push({next_cost + h, it->second});
        } else if (next_cost < entries[it->second].cost) {
          Entry& e = entries[it->second];
          e.cost = next_cost;
          e.parent = id;
          queue.push({next_cost + e.h, it->second});
        }
      });
    }
    if (!truncated && !cap)
      throw Error(ErrorCode::Infeasible, "no pebbling reaches the goal with R=" +
                                             std::to_string(red_));
    // Budget ran out (or the cost cap cut every goal): fall back to the baseline.
    OptimalResult fallback;
    fallback.trace = naive_topological(dag_, model_, red_);
    fallback.cost = validate_trace(dag_, model_, red_, fallback.trace).total;
    fallback.states_expanded = expanded;
    fallback.exhausted = false;
    return fallback;
  }

 private:
  static constexpr std::uint32_t kNoParent = 0xFFFFFFFFu;

  struct Entry {
    Key key;
    std::int64_t cost;  // cost so far
    std::int64_t h;     // lower bound on the remaining cost
    std::uint32_t parent;
  };

  std::optional<std::int64_t> scaled_cap() const {
    if (!limits_.max_cost) return std::nullopt;
    // floor(max_cost * scale)
    const Rational scaled = *limits_.max_cost * scale_;
    std::int64_t q = scaled.numerator() / scaled.denominator();
    if (scaled.numerator() < 0 && q * scaled.denominator() != scaled.numerator()) --q;
    return q;
  }

  Key initial_key() const {
    Key k;
    if (blue_sources_)
      for (NodeIndex v = 0; v < n_; ++v)
        if (dag_.is_source(v)) {
          k.blue.set(v);
          if (oneshot_) k.computed.set(v);
        }
    return k;
  }

  std::int64_t heuristic(const Key& k) const {
    std::int64_t h = 0;
    const bool blue_finish = model_.finish == FinishConvention::BlueOnSinks;
    for (NodeIndex v = 0; v < n_; ++v) {
      const bool is_red = k.red.test(v), is_blue = k.blue.test(v);
      if (sinks_.test(v)) {
        if (blue_finish && !is_blue) h += scale_;
        if (!is_red && !is_blue) h += compute_weight_;
      } else if (oneshot_ && is_blue) {
        for (NodeIndex w : dag_.outputs(v))
          if (!k.computed.test(w)) {
            h += scale_;
            break;
          }
      }
    }
    return h;
  }

  bool is_goal_key(const Key& k) const {
    if (model_.finish == FinishConvention::BlueOnSinks) return sinks_.subset_of(k.blue);
    return sinks_.subset_of(k.red | k.blue);
  }

  bool can_compute_eventually(const Key& k, NodeIndex v) const {
    if (blue_sources_ && dag_.is_source(v)) return false;
    return !(oneshot_ && k.computed.test(v));
  }

  // Calls f(moves, raw_successor, weight) for every useful block of moves.
  //
  // Any trace can be reordered, at no extra cost, into blocks that each end in the COMPUTE
  // of a non-source node (or an isolated source): LOADs and source COMPUTEs can be
  // delayed until the block that consumes them, and evictions until room runs out. Inside
  // a block the order of moves does not affect cost, so a block is fixed by its target,
  // the pebbles it evicts and how. Evictions never touch the target's inputs, an input
  // that is a recomputable source is recomputed rather than loaded, and exactly as many
  // pebbles are evicted as the block needs room for. Under BLUE_ON_SINKS a final block
  // stores the red sinks once every sink holds a pebble.
  template <class F>
  void for_each_successor(const Key& k, F&& f) const {
    std::vector<Move> moves;
    if (model_.finish == FinishConvention::BlueOnSinks && sinks_.subset_of(k.red | k.blue)) {
      Key next = k;
      std::int64_t weight = 0;
      for (NodeIndex v = 0; v < n_; ++v)
        if (sinks_.test(v) && k.red.test(v)) {
          next.red.reset(v);
          next.blue.set(v);
          moves.push_back({MoveKind::Store, v});
          weight += scale_;
        }
      if (!moves.empty()) f(moves, next, weight);
    }

    const std::size_t reds = k.red.count();
    std::vector<NodeIndex> victims;
    for (NodeIndex w = 0; w < n_; ++w) {
      if (k.red.test(w) || !can_compute_eventually(k, w)) continue;
      if (dag_.is_source(w) && !sinks_.test(w)) continue;
      // Acquisitions: recompute sources where allowed, load everything else.
      moves.clear();
      Key base = k;
      std::int64_t weight = compute_weight_;
      bool ok = true;
      for (NodeIndex u : dag_.inputs(w)) {
        if (k.red.test(u)) continue;
        if (dag_.is_source(u) && can_compute_eventually(k, u)) {
          moves.push_back({MoveKind::Compute, u});
          weight += compute_weight_;
          if (oneshot_) base.computed.set(u);
        } else if (k.blue.test(u)) {
          moves.push_back({MoveKind::Load, u});
          weight += scale_;
        } else {
          ok = false;
          break;
        }
        base.blue.reset(u);
        base.red.set(u);
      }
      if (!ok) continue;
      const std::size_t acquired = moves.size();
      const std::size_t need = reds + acquired + 1 > red_ ? reds + acquired + 1 - red_ : 0;
      victims.clear();
      if (need > 0)
        for (NodeIndex v = 0; v < n_; ++v)
          if (k.red.test(v) && !inputs_[w].test(v)) victims.push_back(v);
      if (victims.size() < need) continue;

      // Evictions go first in the block so the red budget is never exceeded.
      std::vector<Move> evictions;
      auto finish = [&](const Key& evicted, std::int64_t evict_weight) {
        Key next = evicted;
        next.blue.reset(w);
        next.red.set(w);
        std::vector<Move> block = evictions;
        block.insert(block.end(), moves.begin(), moves.begin() + static_cast<std::ptrdiff_t>(acquired));
        block.push_back({MoveKind::Compute, w});
        if (oneshot_) {
          next.computed.set(w);
          for (NodeIndex u : dag_.inputs(w)) {
            if (sinks_.test(u)) continue;
            bool dead = true;
            for (NodeIndex x : dag_.outputs(u))
              if (!next.computed.test(x)) {
                dead = false;
                break;
              }
            if (dead) {
              next.red.reset(u);
              next.blue.reset(u);
              block.push_back({MoveKind::Delete, u});
            }
          }
        }
        f(block, next, weight + evict_weight);
      };
      auto choose = [&](auto&& self, std::size_t from, std::size_t left, Key cur,
                        std::int64_t evict_weight) -> void {
        if (left == 0) {
          finish(cur, evict_weight);
          return;
        }
        for (std::size_t i = from; i + left <= victims.size(); ++i) {
          const NodeIndex v = victims[i];
          const bool recomputable_source = dag_.is_source(v) && !blue_sources_ && !sinks_.test(v);
          Key next = cur;
          next.red.reset(v);
          // A recomputable source is never worth storing when it may be deleted.
          if (!(recomputable_source && model_.allows_delete() && !oneshot_)) {
            next.blue.set(v);
            evictions.push_back({MoveKind::Store, v});
            self(self, i + 1, left - 1, next, evict_weight + scale_);
            evictions.pop_back();
            next.blue.reset(v);
          }
          if (model_.allows_delete() && !oneshot_) {
            evictions.push_back({MoveKind::Delete, v});
            self(self, i + 1, left - 1, next, evict_weight);
            evictions.pop_back();
          }
        }
      };
      choose(choose, 0, need, base, 0);
    }
  }

  void canonicalize(Key& k) const {
    std::vector<unsigned> codes;
    for (const auto& cls : twins_) {
      codes.clear();
      for (NodeIndex v : cls)
        codes.push_back((k.red.test(v) ? 4u : k.blue.test(v) ? 2u : 0u) |
                        (k.computed.test(v) ? 1u : 0u));
      std::sort(codes.begin(), codes.end(), std::greater<>());
      for (std::size_t i = 0; i < cls.size(); ++i) {
        const NodeIndex v = cls[i];
        const unsigned c = codes[i];
        k.red.reset(v);
        k.blue.reset(v);
        k.computed.reset(v);
        if (c & 4u) k.red.set(v);
        if (c & 2u) k.blue.set(v);
        if (c & 1u) k.computed.set(v);
      }
    }
  }

  // Replays the canonical path on concrete keys, picking at each step a move whose
  // canonical image and weight match the stored edge.
  Trace reconstruct(const std::vector<Entry>& entries, std::uint32_t goal) const {
    std::vector<std::uint32_t> path;
    for (std::uint32_t id = goal; id != kNoParent; id = entries[id].parent) path.push_back(id);
    std::reverse(path.begin(), path.end());

    std::vector<Move> moves;
    Key actual = initial_key();
    for (std::size_t step = 1; step < path.size(); ++step) {
      const Entry& from = entries[path[step - 1]];
      const Entry& to = entries[path[step]];
      bool found = false;
      for_each_successor(actual, [&](const std::vector<Move>& block, Key next, std::int64_t weight) {
        if (found || from.cost + weight != to.cost) return;
        Key image = next;
        canonicalize(image);
        if (!(image == to.key)) return;
        found = true;
        moves.insert(moves.end(), block.begin(), block.end());
        actual = next;
      });
      if (!found) throw std::logic_error("exact search: witness reconstruction failed");
    }
    return name_moves(dag_, moves);
  }

  const Dag& dag_;
  ModelSpec model_;
  std::size_t red_;
  SearchLimits limits_;
  std::size_t n_;
  bool oneshot_;
  bool blue_sources_;
  std::int64_t scale_ = 1;
  std::int64_t compute_weight_ = 0;
  std::vector<Bits<W>> inputs_;
  Bits<W> sinks_;
  std::vector<std::vector<NodeIndex>> twins_;
};

}  // namespace detail

/// Minimum-cost pebbling by cost-ordered search (exact when `exhausted`).
/// Supports up to 128 nodes. Throws Infeasible when R < max indegree + 1.
inline OptimalResult solve_exact(const Dag& dag, const ModelSpec& model, std::size_t red,
                                 const SearchLimits& limits = {}) {
  model.validate();
  require_feasible(dag, red);
  if (limits.max_states < 1) throw Error(ErrorCode::InvalidR, "max_states must be >= 1");
  if (dag.size() <= 64) return detail::ExactSearch<1>(dag, model, red, limits).run();
  if (dag.size() <= 128) return detail::ExactSearch<2>(dag, model, red, limits).run();
  throw Error(ErrorCode::TooLarge, "exact search supports at most 128 nodes, got " +
                                       std::to_string(dag.size()));
}

struct CurvePoint {
  std::size_t red = 0;
  Rational cost{0};
  bool exhausted = false;
};

/// One exact solve per R in [r_min, r_max], run concurrently; points in increasing R.
inline std::vector<CurvePoint> tradeoff_curve(const Dag& dag, const ModelSpec& model,
                                              std::size_t r_min, std::size_t r_max,
                                              const SearchLimits& limits = {}) {
  if (r_min > r_max) throw Error(ErrorCode::InvalidR, "R range is empty");
  require_feasible(dag, r_min);
  std::vector<std::future<OptimalResult>> solves;
  for (std::size_t r = r_min; r <= r_max; ++r)
    solves.push_back(std::async(std::launch::async, [&dag, &model, &limits, r] {
      return solve_exact(dag, model, r, limits);
    }));
  std::vector<CurvePoint> curve;
  for (std::size_t r = r_min; r <= r_max; ++r) {
    OptimalResult res = solves[r - r_min].get();
    curve.push_back({r, res.cost, res.exhausted});
  }
  return curve;
}

inline std::string curve_to_csv(const std::vector<CurvePoint>& curve) {
  std::string out = "R,cost_num,cost_den,exhausted\n";
  for (const auto& p : curve)
    out += std::to_string(p.red) + "," + std::to_string(p.cost.numerator()) + "," +
           std::to_string(p.cost.denominator()) + "," + (p.exhausted ? "true" : "false") + "\n";
  return out;
}

}  // namespace rbpebble
