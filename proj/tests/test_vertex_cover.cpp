#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace rbpebble;

namespace {

UndirectedGraph edge() { return UndirectedGraph({"a", "b"}, {{"a", "b"}}); }
UndirectedGraph path3() { return UndirectedGraph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }
UndirectedGraph triangle() {
  return UndirectedGraph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ParseError;
}

Rational cost_of(const ReductionInstance& inst, const Trace& t) {
  return validate_trace(inst.dag, inst.model, inst.red, t).total;
}

// Bound on the canonical trace: 2k' per cover node plus 3N^2.
Rational canonical_bound(const ReductionInstance& inst, std::size_t cover_size) {
  const auto kp = static_cast<std::int64_t>(std::stoul(inst.params.at("kprime")));
  const auto n = static_cast<std::int64_t>(inst.graph.size());
  return Rational(2 * kp * static_cast<std::int64_t>(cover_size) + 3 * n * n);
}

}  // namespace

TEST(ReduceVertexCover, SingleEdge) {
  auto inst = reduce_vertex_cover(edge(), 4);
  EXPECT_EQ(inst.red, 5u);
  EXPECT_EQ(inst.model.variant, Variant::OneShot);
  EXPECT_FALSE(inst.threshold.has_value());
  ASSERT_EQ(inst.dag.groups().size(), 4u);
  for (const auto& g : inst.dag.groups()) EXPECT_EQ(g.members.size(), 4u);
  EXPECT_EQ(inst.params.at("kprime"), "2");
  EXPECT_EQ(inst.params.count("warning"), 1u);
  EXPECT_EQ(inst.decode_meta.at(3), (GroupRole{"b", 2}));
  // t_{a,1,b} belongs to V_{b,2}.
  const auto& vb2 = inst.dag.groups()[3].members;
  EXPECT_NE(std::find(vb2.begin(), vb2.end(), "t.a.1.b"), vb2.end());
}

TEST(ReduceVertexCover, Triangle) {
  auto inst = reduce_vertex_cover(triangle(), 10);
  EXPECT_EQ(inst.dag.groups().size(), 6u);
  EXPECT_EQ(inst.params.count("warning"), 0u);
  for (const auto& g : inst.dag.groups()) EXPECT_EQ(g.members.size(), 10u);
  // Every first-level target feeds a second-level group: no bare sinks besides t.<a>.2.
  EXPECT_EQ(inst.dag.sinks().size(), 3u);
}

TEST(ReduceVertexCover, PathHasBareSinkForNonEdge) {
  auto inst = reduce_vertex_cover(path3(), 10);
  const NodeIndex t = inst.dag.index_of("t.a.1.c");
  EXPECT_TRUE(inst.dag.is_sink(t));
  EXPECT_FALSE(inst.dag.is_sink(inst.dag.index_of("t.a.1.b")));
}

TEST(ReduceVertexCover, KTooSmall) {
  EXPECT_EQ(code_of([] { reduce_vertex_cover(edge(), 2); }), ErrorCode::KTooSmall);
  EXPECT_EQ(code_of([] { reduce_vertex_cover(triangle(), 3); }), ErrorCode::KTooSmall);
}

TEST(CanonicalTrace, SingleEdge) {
  auto inst = reduce_vertex_cover(edge(), 4);
  Trace t = canonical_vc_trace(inst, {"a"});
  EXPECT_LE(cost_of(inst, t), canonical_bound(inst, 1));
  auto decoded = decode_vertex_cover(inst, t);
  EXPECT_TRUE(std::includes(std::set<std::string>{"a"}.begin(), std::set<std::string>{"a"}.end(),
                            decoded.begin(), decoded.end()));
  EXPECT_TRUE(inst.graph.is_vertex_cover(decoded));
}

TEST(CanonicalTrace, Triangle) {
  auto inst = reduce_vertex_cover(triangle(), 10);
  Trace t = canonical_vc_trace(inst, {"a", "b"});
  EXPECT_LE(cost_of(inst, t), canonical_bound(inst, 2));
  EXPECT_TRUE(inst.graph.is_vertex_cover(decode_vertex_cover(inst, t)));
}

TEST(CanonicalTrace, EmptyGraphCostsNoCommonTransfers) {
  auto inst = reduce_vertex_cover(UndirectedGraph({"a", "b", "c"}, {}), 6);
  Trace t = canonical_vc_trace(inst, {});
  for (const auto& m : t.moves)
    if (m.kind == MoveKind::Store || m.kind == MoveKind::Load) EXPECT_FALSE(m.node.starts_with("c."));
  EXPECT_TRUE(decode_vertex_cover(inst, t).empty());
}

TEST(CanonicalTrace, NotACover) {
  auto inst = reduce_vertex_cover(path3(), 6);
  EXPECT_EQ(code_of([&] { canonical_vc_trace(inst, {"a"}); }), ErrorCode::NotACover);
  EXPECT_EQ(code_of([&] { canonical_vc_trace(inst, {"zz"}); }), ErrorCode::UnknownEndpoint);
}

TEST(CanonicalTrace, RoundTripOnSmallGraphs) {
  for (const auto& g : testutil::all_graphs({"a", "b", "c", "d"})) {
    auto inst = reduce_vertex_cover(g, 6);
    // Cover: every node with an edge to a later node.
    std::set<std::string> cover;
    for (auto [u, v] : g.edges()) cover.insert(g.node(std::min(u, v)));
    Trace t = canonical_vc_trace(inst, cover);
    EXPECT_LE(cost_of(inst, t), canonical_bound(inst, cover.size()));
    auto decoded = decode_vertex_cover(inst, t);
    EXPECT_TRUE(g.is_vertex_cover(decoded));
    EXPECT_TRUE(std::includes(cover.begin(), cover.end(), decoded.begin(), decoded.end()));
  }
}

TEST(CanonicalTrace, SmallerCoverIsCheaper) {
  auto inst = reduce_vertex_cover(path3(), 12);
  EXPECT_LT(cost_of(inst, canonical_vc_trace(inst, {"b"})),
            cost_of(inst, canonical_vc_trace(inst, {"a", "b", "c"})));
}

TEST(DecodeVertexCover, AllFirstLevelThenAllSecond) {
  auto inst = reduce_vertex_cover(path3(), 6);
  Trace t = trace_from_group_order(inst.dag, inst.model, inst.red, {0, 2, 4, 1, 3, 5});
  EXPECT_EQ(decode_vertex_cover(inst, t), (std::set<std::string>{"a", "b", "c"}));
}

TEST(DecodeVertexCover, AlwaysACover) {
  std::mt19937 rng(61);
  for (int i = 0; i < 10; ++i) {
    auto g = testutil::random_graph(4, 0.5, rng);
    auto inst = reduce_vertex_cover(g, 6);
    for (GreedyRule rule : {GreedyRule::MostRedInputs, GreedyRule::FewestBlueInputs}) {
      Trace t = greedy_pebble(inst.dag, inst.model, inst.red, {rule, Eviction::FarthestNextUse});
      EXPECT_TRUE(g.is_vertex_cover(decode_vertex_cover(inst, t)));
    }
  }
}

TEST(DecodeVertexCover, Errors) {
  auto hp = reduce_hampath(edge(), ModelSpec::of(Variant::NoDel));
  EXPECT_EQ(code_of([&] { decode_vertex_cover(hp, Trace{}); }), ErrorCode::MalformedTrace);
  auto inst = reduce_vertex_cover(edge(), 4);
  EXPECT_EQ(code_of([&] { decode_vertex_cover(inst, Trace{}); }), ErrorCode::GoalNotReached);
}

TEST(GroupOrderSearch, SingleEdgeGivesCoverOfOne) {
  auto inst = reduce_vertex_cover(edge(), 4);
  auto best = group_order_search(inst);
  EXPECT_EQ(best.cost, Rational(2 * 2));
  Trace t = trace_from_group_order(inst.dag, inst.model, inst.red, best.order);
  auto cover = decode_vertex_cover(inst, t);
  EXPECT_EQ(cover.size(), 1u);
  EXPECT_TRUE(inst.graph.is_vertex_cover(cover));
}

TEST(GroupOrderSearch, MinimumCoverOnSmallGraphs) {
  for (const auto& g : {path3(), triangle(), UndirectedGraph({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}})}) {
    auto inst = reduce_vertex_cover(g, 8);
    auto best = group_order_search(inst);
    Trace t = trace_from_group_order(inst.dag, inst.model, inst.red, best.order);
    auto cover = decode_vertex_cover(inst, t);
    EXPECT_TRUE(g.is_vertex_cover(cover));
    EXPECT_EQ(cover.size(), testutil::min_vertex_cover_size(g));
  }
}
