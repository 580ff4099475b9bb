#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace pinball;
using oracle::config;
using oracle::vec;

namespace {

std::vector<oracle::Vec> plain(const BallConfiguration& c) {
  std::vector<oracle::Vec> x;
  for (const auto& p : c.centers()) x.emplace_back(p.data(), p.data() + p.size());
  return x;
}

std::vector<std::pair<std::size_t, std::size_t>> pairs(const std::vector<Edge>& es) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& e : es) out.emplace_back(e.i, e.j);
  return out;
}

BallConfiguration hexagon() {
  std::vector<std::vector<double>> pts{{0, 0}};
  for (int k = 0; k < 6; ++k) pts.push_back({2 * std::cos(k * std::numbers::pi / 3), 2 * std::sin(k * std::numbers::pi / 3)});
  return config(2, pts);
}

}  // namespace

TEST(Fold, ReflectsOutsideOnly) {
  const auto h = HalfSpace(vec({1, 0}));
  EXPECT_EQ(fold(vec({-3, 2}), h), vec({3, 2}));
  EXPECT_EQ(fold(vec({3, 2}), h), vec({3, 2}));
  EXPECT_EQ(fold(vec({0, 5}), h), vec({0, 5}));
  EXPECT_THROW(HalfSpace(vec({1, 1})), DimensionMismatch);
}

TEST(Fold, NonExpansiveAndNormPreserving) {
  Rng rng(2);
  for (int k = 0; k < 500; ++k) {
    const auto h = HalfSpace(random_unit_vector(4, rng));
    const Vector a = random_gaussian(4, rng), b = random_gaussian(4, rng);
    EXPECT_LE((fold(a, h) - fold(b, h)).norm(), (a - b).norm() + 1e-12);
    EXPECT_NEAR(fold(a, h).norm(), a.norm(), 1e-12);
    EXPECT_TRUE(h.contains(fold(a, h), 1e-12));
  }
}

TEST(Orbit, RightAngle) {
  const std::vector<HalfSpace> hs{HalfSpace(vec({1, 0})), HalfSpace(vec({0, 1}))};
  const auto r = orbit(vec({-1, -1}), hs, FoldingPolicy::round_robin(), vec({1, 1}));
  EXPECT_TRUE(r.stabilized());
  EXPECT_LE(r.size, 4u);
  EXPECT_EQ(r.final_point, vec({1, 1}));
}

TEST(Orbit, StartInsideIsFixed) {
  const std::vector<HalfSpace> hs{HalfSpace(vec({1, 0}))};
  const auto r = orbit(vec({2, 0}), hs, FoldingPolicy::round_robin(), vec({1, 0}));
  EXPECT_EQ(r.size, 1u);
  EXPECT_EQ(*r.stabilization_index, 0u);
}

TEST(Orbit, RequiresInteriorWitness) {
  const std::vector<HalfSpace> hs{HalfSpace(vec({1, 0})), HalfSpace(vec({-1, 0}))};
  EXPECT_THROW(orbit(vec({1, 1}), hs, FoldingPolicy::round_robin(), vec({0, 1})), NoInteriorWitness);
}

TEST(Orbit, RandomFamiliesStabilizeUnderEveryPolicy) {
  Rng rng(12);
  for (int k = 0; k < 200; ++k) {
    const auto fam = random_halfspace_family(1 + k % 6, 2 + k % 4, rng);
    const Vector start = random_gaussian(static_cast<Eigen::Index>(2 + k % 4), rng);
    for (const auto& p : {FoldingPolicy::round_robin(), FoldingPolicy::seeded_random(static_cast<std::uint64_t>(k)),
                          FoldingPolicy::periodic({0})}) {
      const auto r = orbit(start, fam.halfspaces, p, fam.witness);
      EXPECT_TRUE(r.stabilized());
      EXPECT_NEAR(r.final_point.norm(), start.norm(), 1e-9);
    }
  }
}

TEST(Orbit, AdversarialGrowth) {
  for (std::size_t m : {1u, 20u, 200u}) {
    const auto adv = adversarial_two_halfplanes(m);
    EXPECT_GT(adv.orbit.size, m);
    EXPECT_TRUE(adv.orbit.stabilized());
  }
}

TEST(AlphaStar, CollinearTripleMiddleEdge) {
  const auto c = config(1, {{0}, {2}, {4}});
  EXPECT_NEAR(alpha_star(c, {{0, 1}, {1, 2}}, {0, 1}), std::sqrt(3.0) / 2, 1e-12);
  EXPECT_NEAR(alpha_star(c, {{0, 1}}, {0, 1}), 1.0, 1e-12);
  EXPECT_THROW(alpha_star(c, {{1, 2}}, {0, 1}), std::invalid_argument);
}

TEST(AlphaStar, TriangleAgainstOracle) {
  const auto c = config(2, {{0, 0}, {2, 0}, {1, std::sqrt(3.0)}});
  const auto rep = alpha(c);
  EXPECT_NEAR(rep.alpha, oracle::alpha(plain(c), pairs(c.touching_pairs())), 1e-9);
  EXPECT_NEAR(alpha_star(c, {{0, 1}, {0, 2}, {1, 2}}, {0, 1}), std::sqrt(0.9), 1e-12);
}

TEST(Alpha, TwoBallsIsOne) {
  EXPECT_NEAR(alpha(config(1, {{0}, {2}})).alpha, 1.0, 2 * std::numeric_limits<double>::epsilon());
}

TEST(Alpha, RandomAgainstBruteForce) {
  Rng rng(31);
  for (int k = 0; k < 60; ++k) {
    const auto c = random_contact_configuration(2 + k % 4, 1 + k % 3, rng);
    EXPECT_NEAR(alpha(c).alpha, oracle::alpha(plain(c), pairs(c.touching_pairs())), 1e-9);
  }
}

TEST(Alpha, Guards) {
  EXPECT_THROW(alpha(config(1, {{0}, {3}})), AllZero);
  AlphaOptions tight;
  tight.max_edges = 1;
  EXPECT_THROW(alpha(config(1, {{0}, {2}, {4}}), tight), TooManyEdges);
}

TEST(Alpha, TreeBoundCorrected) {
  Rng rng(6);
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = 2 + k % 6;
    const auto c = random_tree_configuration(n, 1 + k % 3, rng);
    EXPECT_GE(alpha(c).alpha, tree_alpha_bound_corrected(n) - 1e-9);
  }
  // The 4/n constant already fails on three collinear balls.
  EXPECT_LT(alpha(config(1, {{0}, {2}, {4}})).alpha, tree_alpha_bound_paper(3));
}

TEST(Stress, SingleEdge) {
  const auto c = config(2, {{0, 0}, {2, 0}});
  const auto s = stress_certificate(c, {{0, 1}}, {0, 1});
  ASSERT_EQ(s.residual_norms.size(), 2u);
  EXPECT_NEAR(s.residual_norms[0], 2.0, 1e-12);
  EXPECT_NEAR(s.residual_norms[1], 2.0, 1e-12);
  EXPECT_FALSE(s.certifies_rigid(1e-9));
}

TEST(Stress, CollinearTripleHasPositiveResidual) {
  const auto s = stress_certificate(config(1, {{0}, {2}, {4}}), {{0, 1}, {1, 2}}, {0, 1});
  EXPECT_GT(s.total_residual, 1e-6);
}

TEST(Stress, HexagonIsBalanced) {
  const auto c = hexagon();
  const auto s = stress_certificate(c, c.touching_pairs(), c.touching_pairs()[0]);
  EXPECT_LE(s.total_residual, 1e-9);
  EXPECT_TRUE(s.certifies_rigid(1e-9));
}

TEST(ExtendBasis, Examples) {
  EXPECT_EQ(extend_basis({}, vec({1, 0}), 2), (std::vector<std::size_t>{1}));
  EXPECT_EQ(extend_basis({vec({1, 0, 0})}, vec({0, 1, 0}), 3), (std::vector<std::size_t>{2}));
  EXPECT_THROW(extend_basis({vec({1, 0})}, vec({2, 0}), 2), DependentInput);
}

TEST(ExtendBasis, ExcludesTarget) {
  Rng rng(9);
  for (int k = 0; k < 100; ++k) {
    const std::size_t m = 2 + k % 5;
    std::vector<Vector> w;
    for (std::size_t t = 0; t + 2 < m && t < static_cast<std::size_t>(k % 3); ++t)
      w.push_back(random_gaussian(static_cast<Eigen::Index>(m), rng));
    const Vector target = random_gaussian(static_cast<Eigen::Index>(m), rng);
    const auto ext = extend_basis(w, target, m);
    EXPECT_EQ(w.size() + ext.size(), m - 1);
    auto cols = w;
    for (auto e : ext) cols.push_back(Vector::Unit(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(e)));
    std::vector<oracle::Vec> plain_cols;
    for (const auto& c : cols) plain_cols.emplace_back(c.data(), c.data() + c.size());
    EXPECT_GT(oracle::distance_to_span(plain_cols, oracle::Vec(target.data(), target.data() + target.size())), 1e-9);
  }
}

TEST(SphericalVertex, HexagonSpanningTree) {
  const auto c = hexagon();
  const auto g = full_contact_graph(c);
  const std::vector<Edge> star{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}};
  const auto rep = spherical_vertex_check(c, g, star, {200, 4, 1e-9, std::nullopt});
  EXPECT_TRUE(rep.vertices_ok);
  EXPECT_TRUE(rep.samples_ok);
  EXPECT_EQ(rep.vertices.size(), 6u);
}

TEST(WitnessPath, DistanceWithinBound) {
  Rng rng(14);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 + k % 5, d = 1 + k % 3;
    const auto c = random_contact_configuration(n, d, rng);
    const auto g = full_contact_graph(c);
    const auto dirs = collision_directions(c, g.edges());
    const Matrix span = columns_to_matrix(dirs, static_cast<Eigen::Index>(n * d));
    const Vector y = interior_witness(c, g).w;
    Vector u = project_onto_columns(y, span);
    u /= u.norm();
    u += 1e-3 * project_onto_columns(random_gaussian(static_cast<Eigen::Index>(n * d), rng), span);
    const auto p = witness_path(c, g, u);
    EXPECT_NEAR(p.y4.norm(), 1.0, 1e-12);
    EXPECT_LE(p.distance, p.bound + std::abs(1.0 - u.norm()) + 1e-9);
  }
}
