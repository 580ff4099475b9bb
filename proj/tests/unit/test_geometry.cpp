#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pinball;
using oracle::config;
using oracle::state;
using oracle::vec;

TEST(Configuration, TwoTouchingBallsOnALine) {
  const auto c = config(1, {{0}, {2}});
  ASSERT_EQ(c.touching_pairs().size(), 1u);
  EXPECT_EQ(c.touching_pairs()[0], (Edge{0, 1}));
}

TEST(Configuration, OverlapNamesThePairOneBased) {
  try {
    config(2, {{0, 0}, {1, 0}});
    FAIL() << "expected OverlapError";
  } catch (const OverlapError& e) {
    EXPECT_EQ(e.first, 0u);
    EXPECT_EQ(e.second, 1u);
    EXPECT_NEAR(e.distance, 1.0, 1e-15);
    EXPECT_NE(std::string(e.what()).find("balls 1 and 2"), std::string::npos);
  }
}

TEST(Configuration, TriangleHasThreeContacts) {
  const auto c = config(2, {{0, 0}, {2, 0}, {1, std::sqrt(3.0)}});
  EXPECT_EQ(full_contact_graph(c).edges(), (std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}));
}

TEST(Configuration, ToleranceDecidesNearContacts) {
  const std::vector<Vector> centers{vec({0}), vec({2.0 + 1e-10})};
  EXPECT_TRUE(BallConfiguration(1, centers).touching(0, 1));
  EXPECT_FALSE(BallConfiguration(1, centers, 1e-12).touching(0, 1));
  EXPECT_THROW(BallConfiguration(2, centers), DimensionMismatch);
}

TEST(ContactGraph, FullGraphExamples) {
  EXPECT_EQ(full_contact_graph(config(1, {{0}, {2}, {4}})).edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_EQ(full_contact_graph(config(1, {{0}, {2}, {5}})).edges(), (std::vector<Edge>{{0, 1}}));
}

TEST(ContactGraph, AssociatedRejectsNonContacts) {
  const auto c = config(1, {{0}, {2}, {5}});
  EXPECT_THROW(ContactGraph::associated(c, {{1, 2}}), NotTouching);
  const auto g = ContactGraph::associated(c, {{0, 1}});
  EXPECT_EQ(g.component_count(), 2u);
  EXPECT_FALSE(g.is_connected());
}

TEST(ContactGraph, TreeDetection) {
  EXPECT_TRUE(full_contact_graph(config(1, {{0}, {2}, {4}})).is_tree());
  EXPECT_FALSE(full_contact_graph(config(2, {{0, 0}, {2, 0}, {1, std::sqrt(3.0)}})).is_tree());
}

TEST(CollisionDirection, TwoBalls) {
  const auto c = config(1, {{0}, {2}});
  const auto z = collision_direction(c, 0, 1).z;
  EXPECT_NEAR(z[0], -1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(z[1], 1 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(z, collision_direction(c, 1, 0).z);
}

TEST(CollisionDirection, MiddleEdgeOfCollinearTriple) {
  const auto z = collision_direction(config(1, {{0}, {2}, {4}}), Edge{1, 2}).z;
  EXPECT_EQ(z[0], 0.0);
  EXPECT_NEAR(z[1], -1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(z[2], 1 / std::sqrt(2.0), 1e-15);
}

TEST(CollisionDirection, NormsAndNotTouching) {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const auto c = random_contact_configuration(2 + k % 5, 1 + k % 3, rng);
    for (const auto& e : c.touching_pairs()) {
      EXPECT_NEAR(unnormalized_direction(c, e.i, e.j).norm(), std::pow(2.0, 1.5), 1e-12);
      EXPECT_NEAR(collision_direction(c, e).z.norm(), 1.0, 1e-12);
      EXPECT_EQ(collision_direction(c, e.i, e.j).z, collision_direction(c, e.j, e.i).z);
    }
  }
  EXPECT_THROW(collision_direction(config(1, {{0}, {3}}), 0, 1), NotTouching);
}

TEST(Normalize, TwoBallsByHand) {
  const auto sys = normalize_system(config(1, {{0}, {2}}), state(1, {{1}, {-1}}));
  EXPECT_NEAR(sys.config.center(0)[0], -1.0, 1e-15);
  EXPECT_NEAR(sys.config.center(1)[0], 1.0, 1e-15);
  EXPECT_NEAR(sys.state.vector()[0], 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(sys.state.vector()[1], -1 / std::sqrt(2.0), 1e-15);
}

TEST(Normalize, IdempotentAndZeroEnergy) {
  const auto once = normalize_system(config(1, {{0}, {2}}), state(1, {{1}, {-1}}));
  const auto twice = normalize_system(once.config, once.state);
  EXPECT_LE(max_abs_difference(once.state.vector(), twice.state.vector()), 1e-15);
  EXPECT_THROW(normalize_system(config(1, {{0}, {2}}), state(1, {{3}, {3}})), ZeroEnergyError);
}

TEST(Normalize, RandomInvariants) {
  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 + k % 5, d = 1 + k % 3;
    const auto sys = normalize_system(random_contact_configuration(n, d, rng), random_state(n, d, rng));
    Vector sum = Vector::Zero(static_cast<Eigen::Index>(d));
    for (const auto& c : sys.config.centers()) sum += c;
    EXPECT_LE(sum.norm(), 1e-12);
    EXPECT_LE(sys.state.momentum().norm(), 1e-12);
    EXPECT_NEAR(sys.state.energy(), 1.0, 1e-12);
  }
}

TEST(InteriorWitness, TwoBalls) {
  const auto c = config(1, {{0}, {2}});
  const auto w = interior_witness(c, full_contact_graph(c));
  EXPECT_NEAR(w.w[0], 0.0, 1e-15);
  EXPECT_NEAR(w.w[1], 1.0, 1e-15);
  EXPECT_NEAR(w.margin, 1 / std::sqrt(2.0), 1e-15);
}

TEST(InteriorWitness, MarginBound) {
  const auto c = config(1, {{0}, {2}, {4}});
  EXPECT_GE(interior_witness(c, full_contact_graph(c)).margin, std::pow(2.0, -1.5) / 12 - 1e-12);
  Rng rng(8);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + k % 7;
    const auto r = random_contact_configuration(n, 1 + k % 3, rng);
    EXPECT_GE(interior_witness(r, full_contact_graph(r)).margin, interior_witness_margin_bound(n) - 1e-12);
  }
}

TEST(InteriorWitness, DisconnectedIsRejected) {
  const auto c = config(1, {{0}, {2}, {10}, {12}});
  EXPECT_THROW(interior_witness(c, full_contact_graph(c)), DisconnectedError);
}

TEST(StateVector, BlocksEnergyMomentum) {
  const auto s = state(2, {{1, 2}, {3, 4}});
  EXPECT_EQ(s.balls(), 2u);
  EXPECT_EQ(s.block(1)[0], 3.0);
  EXPECT_DOUBLE_EQ(s.energy(), 30.0);
  EXPECT_EQ(s.momentum(), vec({4, 6}));
  EXPECT_THROW(StateVector(2, 2, vec({1, 2, 3})), DimensionMismatch);
}
