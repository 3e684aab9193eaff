#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace rbpebble;

namespace {

std::vector<std::size_t> all_groups(const Dag& d) {
  std::vector<std::size_t> g(d.groups().size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = i;
  return g;
}

std::vector<std::string> labels(std::size_t l, const std::vector<std::size_t>& order) {
  std::vector<std::string> out;
  for (std::size_t g : order) out.push_back(grid_group_label(l, g));
  return out;
}

const GreedyRule kRules[] = {GreedyRule::MostRedInputs, GreedyRule::FewestBlueInputs,
                             GreedyRule::BestRedRatio};

}  // namespace

TEST(GridIndex, RoundTrip) {
  for (std::size_t l : {2u, 3u, 5u}) {
    std::size_t count = 1;
    for (std::size_t i = 1; i <= l; ++i)
      for (std::size_t j = 1; i + j <= l + 1; ++j, ++count) {
        const std::size_t g = grid_group_index(l, i, j);
        EXPECT_EQ(grid_position(l, g), std::make_pair(i, j));
      }
    EXPECT_EQ(count, 1 + l * (l + 1) / 2);
  }
  EXPECT_THROW(grid_group_index(3, 3, 2), Error);
  EXPECT_THROW(grid_position(2, 4), Error);
  EXPECT_EQ(grid_group_label(3, 0), "S0");
  EXPECT_EQ(grid_group_label(3, grid_group_index(3, 2, 1)), "(2,1)");
}

TEST(GreedyGrid, SmallGridStructure) {
  Dag d = gen_greedy_grid(2, 6, 3);
  ASSERT_EQ(d.groups().size(), 4u);
  for (const auto& g : d.groups()) EXPECT_EQ(g.members.size(), 6u);
  const auto& g21 = d.groups()[grid_group_index(2, 2, 1)].members;
  const auto& g12 = d.groups()[grid_group_index(2, 1, 2)].members;
  std::size_t shared = 0;
  for (const auto& m : g21) shared += std::count(g12.begin(), g12.end(), m);
  EXPECT_EQ(shared, 3u);
  for (int n = 1; n <= 3; ++n) {
    const std::string c = "c.3." + std::to_string(n);
    EXPECT_NE(std::find(g21.begin(), g21.end(), c), g21.end());
    EXPECT_NE(std::find(g12.begin(), g12.end(), c), g12.end());
  }
  EXPECT_EQ(d.meta().at("red"), "7");
}

TEST(GreedyGrid, TargetChainsUpEachColumn) {
  Dag d = gen_greedy_grid(4, 8, 5);
  for (std::size_t i = 1; i <= 4; ++i)
    for (std::size_t j = 2; i + j <= 5; ++j) {
      const auto& members = d.groups()[grid_group_index(4, i, j)].members;
      const std::string below = "t." + std::to_string(i) + "." + std::to_string(j - 1);
      EXPECT_NE(std::find(members.begin(), members.end(), below), members.end());
    }
  for (std::size_t i = 1; i <= 4; ++i) {
    const auto& members = d.groups()[grid_group_index(4, i, 1)].members;
    EXPECT_NE(std::find(members.begin(), members.end(), "t.S0." + std::to_string(i)), members.end());
  }
}

TEST(GreedyGrid, Overlaps) {
  const std::size_t l = 3;
  Dag d = gen_greedy_grid(l, 6, 4);
  auto shared = [&](std::size_t g1, std::size_t g2) {
    const auto& a = d.groups()[g1].members;
    const auto& b = d.groups()[g2].members;
    std::size_t n = 0;
    for (const auto& m : a) n += std::count(b.begin(), b.end(), m);
    return n;
  };
  // Top of column j meets the bottom of column j - 1 in `misguidance` nodes.
  for (std::size_t j = 2; j <= l; ++j)
    EXPECT_EQ(shared(grid_group_index(l, j, l + 1 - j), grid_group_index(l, j - 1, 1)), 1u);
  EXPECT_EQ(shared(0, grid_group_index(l, l, 1)), 2u);
  EXPECT_EQ(shared(0, grid_group_index(l, 1, 1)), 0u);
}

TEST(GreedyGrid, ParamsTooTight) {
  auto code = [](std::size_t l, std::size_t k, std::size_t kp) {
    try {
      gen_greedy_grid(l, k, kp);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code(1, 6, 4), ErrorCode::ParamsTooTight);
  EXPECT_EQ(code(3, 6, 6), ErrorCode::ParamsTooTight);
  EXPECT_EQ(code(3, 6, 5), ErrorCode::ParamsTooTight);
  EXPECT_EQ(code(3, 6, 0), ErrorCode::ParamsTooTight);
  EXPECT_EQ(code(3, 6, 1), ErrorCode::ParamsTooTight);  // entry overlap larger than k'
}

TEST(GreedyGrid, GreedyVisitsColumnsRightToLeft) {
  const std::size_t l = 3;
  Dag d = gen_greedy_grid(l, 6, 4);
  const ModelSpec m = ModelSpec::of(Variant::OneShot);
  for (GreedyRule rule : kRules) {
    Trace t = greedy_pebble(d, m, 7, {rule, Eviction::FarthestNextUse});
    auto order = group_visit_order(d, m, 7, t, all_groups(d));
    EXPECT_EQ(labels(l, order),
              (std::vector<std::string>{"S0", "(3,1)", "(2,1)", "(2,2)", "(1,1)", "(1,2)", "(1,3)"}));
  }
}

TEST(GreedyGrid, GreedyCostsMoreThanOptimal) {
  Dag d = gen_greedy_grid(3, 6, 4);
  const ModelSpec m = ModelSpec::of(Variant::OneShot);
  const auto opt = solve_exact(d, m, 7);
  ASSERT_TRUE(opt.exhausted);
  EXPECT_EQ(opt.cost, Rational(16));
  for (GreedyRule rule : kRules) {
    const Rational greedy = validate_trace(d, m, 7, greedy_pebble(d, m, 7, {rule, Eviction::FarthestNextUse})).total;
    EXPECT_EQ(greedy, Rational(30));
    EXPECT_GT(greedy, opt.cost);
  }
}

TEST(GreedyGrid, DiagonalTraceFollowsDiagonals) {
  const std::size_t l = 3;
  Dag d = gen_greedy_grid(l, 6, 4);
  const ModelSpec m = ModelSpec::of(Variant::OneShot);
  Trace t = trace_from_group_order(d, m, 7, grid_diagonal_order(l));
  EXPECT_EQ(validate_trace(d, m, 7, t).total, Rational(20));
  EXPECT_EQ(labels(l, group_visit_order(d, m, 7, t, all_groups(d))),
            (std::vector<std::string>{"S0", "(1,1)", "(2,1)", "(1,2)", "(3,1)", "(2,2)", "(1,3)"}));
}

TEST(GreedyGrid, OrdersCoverEveryGroup) {
  for (std::size_t l : {2u, 4u, 6u}) {
    auto diag = grid_diagonal_order(l), cols = grid_column_order(l);
    EXPECT_EQ(diag.size(), 1 + l * (l + 1) / 2);
    std::sort(diag.begin(), diag.end());
    std::sort(cols.begin(), cols.end());
    EXPECT_EQ(diag, cols);
  }
}

TEST(GreedyGrid, GapGrowsWithSide) {
  const ModelSpec m = ModelSpec::of(Variant::OneShot);
  auto ratio = [&](std::size_t l, std::size_t k, std::size_t kp) {
    Dag d = gen_greedy_grid(l, k, kp);
    const Rational greedy = validate_trace(d, m, k + 1, greedy_pebble(d, m, k + 1, {})).total;
    const Rational best = validate_trace(d, m, k + 1, trace_from_group_order(d, m, k + 1, grid_diagonal_order(l))).total;
    return greedy / best;
  };
  EXPECT_LT(ratio(3, 6, 4), ratio(5, 20, 16));
}
