#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pinball;

TEST(Kissing, Intervals) {
  const auto one = kissing_number(1);
  EXPECT_EQ(*one.exact, 2);
  EXPECT_EQ(*one.exact_source, KissingSource::forced);
  const auto two = kissing_number(2);
  EXPECT_EQ(two.lower, 4);
  EXPECT_EQ(two.upper, 8);
  EXPECT_EQ(*two.exact, 6);
  EXPECT_EQ(*kissing_number(24).exact, 196560);
  const auto five = kissing_number(5);
  EXPECT_FALSE(five.exact);
  EXPECT_EQ(five.upper, 242);
  EXPECT_THROW(kissing_number(0), std::invalid_argument);
}

TEST(Tau, Selection) {
  EXPECT_EQ(select_tau(2, TauMode::exact).tau, 6);
  EXPECT_EQ(select_tau(2, TauMode::exact).source, "external-table");
  EXPECT_EQ(select_tau(5, TauMode::exact).source, "paper-upper");
  EXPECT_EQ(select_tau(3, TauMode::lower).tau, 6);
  EXPECT_EQ(select_tau(3, TauMode::value, 9).tau, 9);
  EXPECT_THROW(select_tau(3, TauMode::value), std::invalid_argument);
}

TEST(Exponent, HalfIntegers) {
  const auto e = graph_exponent(3, 3);  // (9 - 2)/2
  EXPECT_DOUBLE_EQ(e.value(), 3.5);
  EXPECT_EQ(e.conservative(), 4);
  EXPECT_FALSE(e.is_integer());
  EXPECT_TRUE(graph_exponent(2, 2).is_integer());
}

TEST(MaxCollisions, TwoBallsOnALine) {
  const auto r = max_collisions_bound(2, 1, 1.0, select_tau(1, TauMode::value, 2));
  EXPECT_DOUBLE_EQ(r.exponent, 1.0);
  EXPECT_NEAR(r.log2_base, 15.5, 1e-12);
  EXPECT_NEAR(r.log2_bound, 15.5, 1e-12);
  ASSERT_TRUE(r.decimal);
  EXPECT_EQ(r.decimal->substr(0, 5), "46340");  // 2^15.5 = 46340.95
  EXPECT_THROW(max_collisions_bound(2, 1, 0.0, select_tau(1, TauMode::exact)), InvalidAlpha);
}

TEST(MaxCollisions, ExponentZeroGivesOne) {
  const auto r = max_collisions_bound(1, 1, 0.5, select_tau(1, TauMode::value, 2));
  EXPECT_DOUBLE_EQ(r.exponent, 0.0);
  EXPECT_DOUBLE_EQ(r.log2_bound, 0.0);
}

TEST(PerEdge, SingleEdgeIsOne) {
  EXPECT_DOUBLE_EQ(per_edge_bound(1, 4, 2, 0.3).log2_bound, 0.0);
  EXPECT_NEAR(per_edge_bound(3, 2, 1, 1.0).log2_bound, 31.0, 1e-12);
}

TEST(Tree, Bases) {
  const auto tau = select_tau(2, TauMode::exact);
  const auto paper = tree_bound(3, 2, TreeConstant::paper, tau);
  const auto corrected = tree_bound(3, 2, TreeConstant::corrected, tau);
  EXPECT_NEAR(paper.log2_base, 8.5 + 1 + 6 * std::log2(3.0), 1e-12);
  EXPECT_NEAR(corrected.log2_base, 10 + 1 + 6 * std::log2(3.0), 1e-12);
  // The tree base equals the general base with alpha replaced by the tree constant.
  EXPECT_NEAR(corrected.log2_base, max_collisions_bound(3, 2, std::sqrt(2.0) / 3, tau).log2_base, 1e-9);
}

TEST(Lattice, ExactBelowRounded) {
  for (std::size_t n = 1; n <= 30; ++n) {
    const auto r = lattice_bound(n);
    EXPECT_TRUE(r.exact_below_rounded) << n;
    EXPECT_LT(r.exact.log2_base, r.rounded.log2_base);
    EXPECT_DOUBLE_EQ(r.exact.exponent, static_cast<double>(3 * n - 1));
    // The exact base is the general one at d = 2 with the lattice floor.
    EXPECT_NEAR(r.exact.log2_base, 10.5 + 1 + 5 * std::log2(static_cast<double>(n)) - lattice_alpha_lower_bound(n).log2,
                1e-9);
  }
}

TEST(Reference, Values) {
  EXPECT_DOUBLE_EQ(lower_bound_reference(3), 1.0);
  EXPECT_DOUBLE_EQ(lower_bound_reference(6), 8.0);
  EXPECT_THROW(lower_bound_reference(2), TooFewBalls);
  const auto r = reference_bounds(1, 1, 1);
  EXPECT_DOUBLE_EQ(r.log2_first, 5.0);
  EXPECT_NEAR(r.log2_second, 2 * std::log2(400.0), 1e-12);
}

TEST(Superadditivity, AllPartitionsUpToEight) {
  EXPECT_EQ(integer_partitions(4).size(), 5u);
  EXPECT_EQ(integer_partitions(8).size(), 22u);
  for (std::size_t d : {1u, 2u, 3u})
    for (std::size_t n = 1; n <= 8; ++n)
      for (const auto& p : integer_partitions(n))
        EXPECT_TRUE(superadditivity_check(p, d, 0.25, select_tau(d, TauMode::exact)));
}

TEST(PowerProduct, Identities) {
  using PP = PowerProduct;
  EXPECT_EQ(PP::integer(432), PP::atom("2", 4) * PP::atom("3", 3));
  EXPECT_EQ(PP::integer(4) * PP::atom("2", -2), PP());
  EXPECT_EQ(PP::atom("2", {1, 2}).pow(2), PP::integer(2));
  // Tree base: 2^{21/2} d n^5 / (sqrt2/n) = 2^{10} d n^6.
  EXPECT_EQ(symbolic_general_base(PP::atom("d"), symbolic_tree_alpha(TreeConstant::corrected)),
            PP::atom("2", 10) * PP::atom("d") * PP::atom("n", 6));
  EXPECT_EQ(symbolic_general_base(PP::atom("d"), symbolic_tree_alpha(TreeConstant::paper)),
            PP::atom("2", {17, 2}) * PP::atom("d") * PP::atom("n", 6));
  const auto lat = symbolic_general_base(PP::integer(2), symbolic_lattice_alpha());
  EXPECT_EQ(lat, PP::atom("2", {31, 2}) * PP::atom("3", {5, 2}) * PP::atom("n", {11, 2}) * PP::atom("2^n", 8));
  EXPECT_NEAR(lat.log2({{"n", 3.0}, {"2^n", 8.0}}), lattice_bound(3).exact.log2_base, 1e-9);
  EXPECT_EQ(PP::atom("3", {5, 2}).to_string(), "3^(5/2)");
}
