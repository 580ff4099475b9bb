#pragma once

// Seeded generators for configurations, states, half-space families and
// conforming Z[sqrt3] matrices.

#include "pinball/foldings.hpp"
#include "pinball/geometry.hpp"
#include "pinball/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <vector>

namespace pinball {

using Rng = std::mt19937_64;

inline Vector random_gaussian(Eigen::Index size, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v[i] = g(rng);
  return v;
}

inline Vector random_unit_vector(Eigen::Index size, Rng& rng) {
  for (;;) {
    Vector v = random_gaussian(size, rng);
    const double norm = v.norm();
    if (norm > 1e-6) return v / norm;
  }
}

inline StateVector random_state(std::size_t n, std::size_t d, Rng& rng) {
  return StateVector(n, d, random_gaussian(static_cast<Eigen::Index>(n * d), rng));
}

/// Connected configuration grown by attaching each new ball at distance 2
/// from a random earlier one. Off a lattice the contact graph is a tree
/// almost surely; in d = 1 it is a path.
inline BallConfiguration random_contact_configuration(std::size_t n, std::size_t d, Rng& rng,
                                                      std::size_t max_attempts = 10000) {
  if (n < 1 || d < 1) throw std::invalid_argument("n and d must be at least 1");
  std::vector<Vector> centers{Vector::Zero(static_cast<Eigen::Index>(d))};
  std::size_t attempts = 0;
  while (centers.size() < n) {
    if (++attempts > max_attempts) throw std::runtime_error("could not place a ball without overlap");
    const std::size_t parent = std::uniform_int_distribution<std::size_t>(0, centers.size() - 1)(rng);
    Vector dir = random_unit_vector(static_cast<Eigen::Index>(d), rng);
    if (d == 1) dir[0] = dir[0] < 0 ? -1.0 : 1.0;
    Vector c = centers[parent] + 2.0 * dir;
    bool ok = true;
    for (const auto& other : centers)
      if ((other - c).norm() < 2.0 - 1e-6 || (d > 1 && (other - c).norm() < 2.0 + 1e-6 && &other != &centers[parent]))
        ok = false;
    if (ok) centers.push_back(std::move(c));
  }
  return BallConfiguration(d, std::move(centers));
}

/// Configuration whose full contact graph is a spanning tree.
inline BallConfiguration random_tree_configuration(std::size_t n, std::size_t d, Rng& rng) {
  for (;;) {
    auto config = random_contact_configuration(n, d, rng);
    if (full_contact_graph(config).is_tree()) return config;
  }
}

/// Connected set of n triangular-lattice points grown from the origin.
inline LatticeConfiguration random_lattice_configuration(std::size_t n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  std::vector<LatticePoint> pts{{0, 0}};
  while (pts.size() < n) {
    const auto& p = pts[std::uniform_int_distribution<std::size_t>(0, pts.size() - 1)(rng)];
    const LatticePoint q = p + kLatticeNeighbors[std::uniform_int_distribution<std::size_t>(0, 5)(rng)];
    if (std::find(pts.begin(), pts.end(), q) == pts.end()) pts.push_back(q);
  }
  return LatticeConfiguration(std::move(pts));
}

/// Random normals h with h.w >= min_margin for a hidden unit witness w.
struct HalfSpaceFamily {
  std::vector<HalfSpace> halfspaces;
  Vector witness;
};

inline HalfSpaceFamily random_halfspace_family(std::size_t count, std::size_t dim, Rng& rng,
                                               double min_margin = 1e-3) {
  if (count < 1 || dim < 1) throw std::invalid_argument("need at least one normal in dimension >= 1");
  HalfSpaceFamily fam;
  fam.witness = random_unit_vector(static_cast<Eigen::Index>(dim), rng);
  while (fam.halfspaces.size() < count) {
    Vector h = random_unit_vector(static_cast<Eigen::Index>(dim), rng);
    double s = h.dot(fam.witness);
    if (s < 0) {
      h = -h;
      s = -s;
    }
    if (s >= min_margin) fam.halfspaces.emplace_back(h);
  }
  return fam;
}

/// Square matrix over Z[sqrt3] whose columns each match one of the three
/// column patterns, with random rows and signs.
inline QuadMatrix random_conforming_matrix(std::size_t m, Rng& rng) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  QuadMatrix a(m, m);
  std::vector<std::size_t> rows(m);
  std::iota(rows.begin(), rows.end(), 0);
  std::uniform_int_distribution<int> coin(0, 1);
  auto sign = [&] { return coin(rng) ? 1 : -1; };
  for (std::size_t c = 0; c < m; ++c) {
    std::shuffle(rows.begin(), rows.end(), rng);
    const int kinds = m >= 4 ? 3 : (m >= 2 ? 2 : 1);
    switch (std::uniform_int_distribution<int>(0, kinds - 1)(rng)) {
      case 0: a(rows[0], c) = QuadraticInteger(1); break;
      case 1: {
        const int s = sign();
        a(rows[0], c) = QuadraticInteger(2 * s);
        a(rows[1], c) = QuadraticInteger(-2 * s);
        break;
      }
      default:
        a(rows[0], c) = QuadraticInteger(sign());
        a(rows[1], c) = QuadraticInteger(sign());
        a(rows[2], c) = QuadraticInteger(0, sign());
        a(rows[3], c) = QuadraticInteger(0, sign());
        break;
    }
  }
  return a;
}

}  // namespace pinball
