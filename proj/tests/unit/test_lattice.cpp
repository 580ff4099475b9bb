#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pinball;

namespace {

QuadMatrix from_rows(const std::vector<std::vector<QuadraticInteger>>& rows) {
  QuadMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

const QuadraticInteger s3 = QuadraticInteger::sqrt3();

}  // namespace

TEST(QuadraticInteger, RingLaws) {
  const QuadraticInteger a(1, 1);
  EXPECT_EQ(a * a, QuadraticInteger(4, 2));
  EXPECT_EQ(s3 * s3, QuadraticInteger(3));
  EXPECT_EQ(a.norm(), -2);
  EXPECT_EQ((a * a).exact_divide(a), a);
  EXPECT_THROW(QuadraticInteger(1).exact_divide(QuadraticInteger(2)), std::domain_error);
  EXPECT_EQ(QuadraticInteger(2, -1).sign(), 1);   // 2 - 1.732
  EXPECT_EQ(QuadraticInteger(-2, 1).sign(), -1);
  EXPECT_EQ(QuadraticInteger(1, -1).sign(), -1);
  EXPECT_EQ(QuadraticInteger(0).sign(), 0);
  EXPECT_EQ(QuadraticInteger(3, -2).to_string(), "3 - 2*sqrt3");
  EXPECT_NEAR(a.to_double(), 1 + std::sqrt(3.0), 1e-15);
}

TEST(LatticePoints, RadiusAndMembership) {
  EXPECT_EQ(lattice_points_in_radius(2.1).size(), 7u);
  EXPECT_EQ(lattice_points_in_radius(0.5).size(), 1u);
  EXPECT_TRUE((LatticePoint{1, 1}).is_member());
  EXPECT_FALSE((LatticePoint{1, 0}).is_member());
  for (const auto& p : kLatticeNeighbors) EXPECT_EQ(p.squared_norm(), 4);
}

TEST(LatticeConfiguration, ExactContacts) {
  const LatticeConfiguration lc({{0, 0}, {2, 0}, {1, 1}, {6, 0}});
  EXPECT_EQ(lc.touching_pairs(), (std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(lc.to_configuration().touching_pairs(), lc.touching_pairs());
  EXPECT_THROW(LatticeConfiguration({{0, 0}, {1, 0}}), DimensionMismatch);
  EXPECT_THROW(LatticeConfiguration({{0, 0}, {0, 0}}), OverlapError);
  const auto z = lc.unnormalized_direction({0, 2});
  EXPECT_EQ(z[0], QuadraticInteger(-1));
  EXPECT_EQ(z[1], -s3);
  EXPECT_EQ(z[4], QuadraticInteger(1));
  EXPECT_EQ(z[5], s3);
}

TEST(Determinant, SmallExamples) {
  EXPECT_EQ(exact_determinant(from_rows({{1, 0}, {0, 1}})), QuadraticInteger(1));
  EXPECT_EQ(exact_determinant(from_rows({{1, s3}, {s3, 1}})), QuadraticInteger(-2));
  EXPECT_EQ(exact_determinant(from_rows({{2, 0}, {-2, 1}})), QuadraticInteger(2));
  EXPECT_EQ(exact_determinant(from_rows({{1, 2}, {2, 4}})), QuadraticInteger(0));
  EXPECT_THROW(exact_determinant(QuadMatrix(2, 3)), DimensionMismatch);
}

TEST(Determinant, BothPathsAgreeWithLeibniz) {
  Rng rng(41);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int k = 0; k < 300; ++k) {
    const std::size_t m = 1 + k % 7;
    QuadMatrix a(m, m);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) a(r, c) = QuadraticInteger(coef(rng), coef(rng));
    const auto expect = oracle::leibniz(a);
    EXPECT_EQ(determinant_cofactor(a), expect);
    EXPECT_EQ(determinant_bareiss(a), expect);
  }
}

TEST(Determinant, CofactorsGiveDeterminant) {
  Rng rng(43);
  for (int k = 0; k < 50; ++k) {
    const auto a = random_conforming_matrix(2 + k % 6, rng);
    const auto c = first_column_cofactors(a);
    QuadraticInteger dot(0);
    for (std::size_t r = 0; r < a.rows(); ++r) dot += a(r, 0) * c[r];
    EXPECT_EQ(dot, exact_determinant(a));
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(exact_rank(from_rows({{1, s3}, {s3, 3}})), 1u);
  EXPECT_EQ(exact_rank(from_rows({{1, 0}, {0, s3}})), 2u);
  EXPECT_EQ(exact_rank(QuadMatrix(3, 3)), 0u);
}

TEST(ColumnConditions, Classes) {
  EXPECT_EQ(classify_column({0, 1, 0}), ColumnCondition::unit);
  EXPECT_EQ(classify_column({2, 0, -2}), ColumnCondition::opposite_twos);
  EXPECT_EQ(classify_column({1, s3, -1, -s3}), ColumnCondition::lattice_contact);
  EXPECT_EQ(classify_column({1, 1, 0}), ColumnCondition::nonconforming);
  EXPECT_EQ(classify_column({-1, 0, 0}), ColumnCondition::nonconforming);
  EXPECT_EQ(to_string(ColumnCondition::lattice_contact), "c");
}

TEST(DetBound, HoldsAndRejects) {
  const auto rep = verify_det_bound(from_rows({{1, 2}, {0, -2}}));
  EXPECT_EQ(rep.determinant, QuadraticInteger(-2));
  EXPECT_TRUE(rep.holds());
  EXPECT_THROW(verify_det_bound(from_rows({{3, 0}, {0, 1}})), NonconformingColumn);
  Rng rng(44);
  for (int k = 0; k < 200; ++k) EXPECT_TRUE(verify_det_bound(random_conforming_matrix(1 + k % 9, rng)).holds());
}

TEST(Convergents, Sqrt3) {
  const auto c = sqrt3_convergents(5);
  EXPECT_EQ(c[0].h, 1);
  EXPECT_EQ(c[0].g, 1);
  EXPECT_EQ(c[1].h, 2);
  EXPECT_EQ(c[1].g, 1);
  EXPECT_EQ(c[2].h, 5);
  EXPECT_EQ(c[2].g, 3);
  EXPECT_EQ(c[3].h, 7);
  EXPECT_EQ(c[3].g, 4);
  for (const auto& p : c) EXPECT_EQ(boost::multiprecision::abs(p.h * p.h - 3 * p.g * p.g) <= 2, true);
}

TEST(QuadraticBound, SmallBAndBruteForce) {
  const auto q = quadratic_lower_bound(1);
  EXPECT_NEAR(q.value, 1.0 / 18, 1e-15);
  EXPECT_LE(q.value, 2 - std::sqrt(3.0));
  for (long long b = 1; b <= 200; ++b) {
    double best = 1e9;
    for (long long r2 = 1; r2 <= b; ++r2) {
      const double x = static_cast<double>(r2) * std::sqrt(3.0);
      best = std::min(best, std::abs(x - std::round(x)));
    }
    EXPECT_LE(quadratic_lower_bound(b).value, best);
  }
}

TEST(LatticeFloor, Values) {
  EXPECT_NEAR(lattice_alpha_lower_bound(1).value(), std::sqrt(3.0) / 432 / 256, 1e-12 * 1.6e-5);
  EXPECT_NEAR(lattice_alpha_lower_bound(1).value(), 1.566e-5, 1e-8);
  EXPECT_NEAR(quadratic_lower_bound_closed_form(1).value(), std::sqrt(3.0) / 54 / 16, 1e-12 * 2e-3);
}

TEST(Certificate, TwoDiscs) {
  const LatticeConfiguration lc({{0, 0}, {2, 0}});
  const auto c = exact_alpha_certificate(lc, {{0, 1}}, {0, 1});
  EXPECT_FALSE(c.zero);
  EXPECT_NEAR(c.lower_bound, 1 / std::sqrt(2.0), 1e-12);
  EXPECT_LE(c.lower_bound, alpha_star(lc.to_configuration(), {{0, 1}}, {0, 1}) + 1e-12);
}

TEST(Certificate, CollinearAndTriangle) {
  const LatticeConfiguration line({{0, 0}, {2, 0}, {4, 0}});
  const auto c = exact_alpha_certificate(line, {{0, 1}, {1, 2}}, {0, 1});
  EXPECT_LE(c.lower_bound, std::sqrt(3.0) / 2 + 1e-12);
  EXPECT_GE(c.lower_bound, lattice_alpha_lower_bound(3).value());
  const LatticeConfiguration tri({{0, 0}, {2, 0}, {1, 1}});
  const auto t = exact_alpha_certificate(tri, tri.touching_pairs(), {0, 1});
  EXPECT_FALSE(t.zero);
  EXPECT_LE(t.lower_bound, std::sqrt(0.9) + 1e-12);
}

TEST(Certificate, ZeroMatchesFloat) {
  // Six discs around a centre: every z of the ring lies in the span of the rest.
  std::vector<LatticePoint> pts{{0, 0}};
  for (const auto& p : kLatticeNeighbors) pts.push_back(p);
  const LatticeConfiguration lc(pts);
  const auto bc = lc.to_configuration();
  for (const auto& e : lc.touching_pairs()) {
    const auto c = exact_alpha_certificate(lc, lc.touching_pairs(), e);
    EXPECT_EQ(c.zero, alpha_star(bc, lc.touching_pairs(), e) <= kAlphaZeroTolerance);
  }
}

TEST(Animals, CountsMatchPolyhexes) {
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(enumerate_lattice_animals(n).size(), oracle::polyhex_count(n)) << n;
  EXPECT_EQ(oracle::polyhex_count(4), 7u);
}
