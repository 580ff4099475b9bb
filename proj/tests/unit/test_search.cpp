#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace pinball;
using oracle::config;
using oracle::state;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> pairs(const std::vector<Edge>& es) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& e : es) out.emplace_back(e.i, e.j);
  return out;
}

}  // namespace

TEST(Exhaustive, TwoBalls) {
  const auto c = config(1, {{0}, {2}});
  const auto r = exhaustive_max_collisions(c, state(1, {{1}, {-1}}));
  EXPECT_EQ(r.best, 1u);
  EXPECT_EQ(r.witness, (std::vector<Edge>{{0, 1}}));
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(exhaustive_max_collisions(c, state(1, {{-1}, {1}})).best, 0u);
}

TEST(Exhaustive, CollinearTriple) {
  const auto c = config(1, {{0}, {2}, {4}});
  const auto s = state(1, {{1}, {0}, {-1}});
  const auto r = exhaustive_max_collisions(c, s);
  EXPECT_EQ(r.best, 3u);
  EXPECT_EQ(replay_count(c, s, r.witness), 3u);
}

TEST(Exhaustive, MatchesBruteForce) {
  Rng rng(51);
  SearchOptions opts;
  opts.depth_cap = 8;
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 2 + k % 3, d = 1 + k % 2;
    const auto c = random_contact_configuration(n, d, rng);
    const auto s = random_state(n, d, rng);
    std::vector<oracle::Vec> x, v;
    for (std::size_t b = 0; b < n; ++b) {
      x.emplace_back(c.center(b).data(), c.center(b).data() + d);
      v.emplace_back(s.block(b).data(), s.block(b).data() + d);
    }
    const auto r = exhaustive_max_collisions(c, s, opts);
    EXPECT_EQ(r.best, oracle::brute_force_max_collisions(x, v, pairs(c.touching_pairs()), 8));
    EXPECT_EQ(replay_count(c, s, r.witness), r.best);
    EXPECT_LE(greedy_schedule(c, s).best, r.best);
  }
}

TEST(Exhaustive, Guards) {
  // Seven touching balls in a ring-with-centre have 12 contacts.
  const LatticeConfiguration lc({{0, 0}, {2, 0}, {-2, 0}, {1, 1}, {-1, 1}, {1, -1}, {-1, -1}});
  Rng rng(1);
  const auto s = random_state(7, 2, rng);
  EXPECT_THROW(exhaustive_max_collisions(lc.to_configuration(), s), TooManyEdges);
  SearchOptions tiny;
  tiny.max_branching = 20;
  tiny.node_budget = 3;
  try {
    exhaustive_max_collisions(lc.to_configuration(), s, tiny);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_FALSE(e.partial().complete);
  }
}

TEST(Sweep, RunningMaximumIsMonotone) {
  const auto c = config(1, {{0}, {2}, {4}});
  const auto r = velocity_sweep(c, 50, 7);
  ASSERT_EQ(r.rows.size(), 50u);
  for (std::size_t k = 1; k < r.rows.size(); ++k) EXPECT_GE(r.rows[k].running_max, r.rows[k - 1].running_max);
  EXPECT_EQ(r.rows.back().running_max, r.best.best);
  ASSERT_TRUE(r.best_state);
  EXPECT_EQ(replay_count(c, *r.best_state, r.best.witness), r.best.best);
  EXPECT_EQ(r.best.best, 3u);
}
