#pragma once

// Ball configurations, contact graphs and collision directions.

#include "pinball/errors.hpp"
#include "pinball/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pinball {

inline constexpr double kDefaultContactTolerance = 1e-9;

/// Unordered pair of ball indices, stored as (min, max), 0-based.
struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;

  auto operator<=>(const Edge&) const = default;
};

inline Edge make_edge(std::size_t a, std::size_t b) {
  if (a == b) throw std::invalid_argument("an edge needs two distinct balls");
  return a < b ? Edge{a, b} : Edge{b, a};
}

/// Unit balls with fixed centers. Construction validates that no two open
/// interiors intersect.
class BallConfiguration {
 public:
  BallConfiguration(std::size_t dimension, std::vector<Vector> centers,
                    double contact_tolerance = kDefaultContactTolerance)
      : dimension_(dimension), centers_(std::move(centers)), tolerance_(contact_tolerance) {
    if (dimension_ == 0) throw DimensionMismatch("dimension must be positive");
    if (centers_.empty()) throw DimensionMismatch("a configuration needs at least one ball");
    if (!(tolerance_ >= 0.0)) throw DimensionMismatch("contact tolerance must be non-negative");
    for (std::size_t k = 0; k < centers_.size(); ++k) {
      if (static_cast<std::size_t>(centers_[k].size()) != dimension_) {
        throw DimensionMismatch("center " + std::to_string(k + 1) + " has dimension " +
                                std::to_string(centers_[k].size()) + ", expected " +
                                std::to_string(dimension_));
      }
    }
    for (std::size_t a = 0; a < centers_.size(); ++a) {
      for (std::size_t b = a + 1; b < centers_.size(); ++b) {
        const double dist = (centers_[a] - centers_[b]).norm();
        if (dist < 2.0 - tolerance_) throw OverlapError(a, b, dist);
        if (std::abs(dist - 2.0) <= tolerance_) touching_.push_back(Edge{a, b});
      }
    }
  }

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return centers_.size(); }
  const Vector& center(std::size_t k) const { return centers_.at(k); }
  const std::vector<Vector>& centers() const { return centers_; }
  double contact_tolerance() const { return tolerance_; }

  /// Touching pairs in lexicographic order.
  const std::vector<Edge>& touching_pairs() const { return touching_; }

  bool touching(std::size_t a, std::size_t b) const {
    if (a == b) return false;
    return std::binary_search(touching_.begin(), touching_.end(), make_edge(a, b));
  }

  double distance(std::size_t a, std::size_t b) const {
    return (centers_.at(a) - centers_.at(b)).norm();
  }

  /// All centers stacked into one vector of length n*d.
  Vector stacked_centers() const {
    Vector x(static_cast<Eigen::Index>(size() * dimension_));
    for (std::size_t k = 0; k < size(); ++k)
      x.segment(static_cast<Eigen::Index>(k * dimension_), static_cast<Eigen::Index>(dimension_)) =
          centers_[k];
    return x;
  }

 private:
  std::size_t dimension_;
  std::vector<Vector> centers_;
  double tolerance_;
  std::vector<Edge> touching_;
};

inline BallConfiguration validate_configuration(std::vector<Vector> centers, std::size_t dimension,
                                                double contact_tolerance = kDefaultContactTolerance) {
  return BallConfiguration(dimension, std::move(centers), contact_tolerance);
}

/// Stacked pseudo-velocities (v_1, ..., v_n), each block of length d.
class StateVector {
 public:
  StateVector(std::size_t n, std::size_t d) : n_(n), d_(d), v_(Vector::Zero(static_cast<Eigen::Index>(n * d))) {}
  StateVector(std::size_t n, std::size_t d, Vector v) : n_(n), d_(d), v_(std::move(v)) {
    if (static_cast<std::size_t>(v_.size()) != n_ * d_)
      throw DimensionMismatch("state has length " + std::to_string(v_.size()) + ", expected " +
                              std::to_string(n_ * d_));
  }

  static StateVector from_blocks(const std::vector<Vector>& blocks) {
    if (blocks.empty()) throw DimensionMismatch("state needs at least one block");
    const auto d = static_cast<std::size_t>(blocks.front().size());
    StateVector s(blocks.size(), d);
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      if (static_cast<std::size_t>(blocks[k].size()) != d)
        throw DimensionMismatch("velocity " + std::to_string(k + 1) + " has wrong dimension");
      s.block(k) = blocks[k];
    }
    return s;
  }

  std::size_t balls() const { return n_; }
  std::size_t dimension() const { return d_; }
  const Vector& vector() const { return v_; }
  Vector& vector() { return v_; }

  Eigen::VectorBlock<const Vector> block(std::size_t k) const {
    return v_.segment(static_cast<Eigen::Index>(k * d_), static_cast<Eigen::Index>(d_));
  }
  Eigen::VectorBlock<Vector> block(std::size_t k) {
    return v_.segment(static_cast<Eigen::Index>(k * d_), static_cast<Eigen::Index>(d_));
  }

  double energy() const { return v_.squaredNorm(); }

  Vector momentum() const {
    Vector p = Vector::Zero(static_cast<Eigen::Index>(d_));
    for (std::size_t k = 0; k < n_; ++k) p += block(k);
    return p;
  }

  bool operator==(const StateVector& o) const { return n_ == o.n_ && d_ == o.d_ && v_ == o.v_; }

 private:
  std::size_t n_;
  std::size_t d_;
  Vector v_;
};

inline void require_compatible(const BallConfiguration& config, const StateVector& state) {
  if (state.balls() != config.size() || state.dimension() != config.dimension())
    throw DimensionMismatch("state shape does not match the configuration");
}

/// Subgraph of the full contact graph. Edges are kept sorted and unique.
class ContactGraph {
 public:
  ContactGraph(std::size_t vertices, std::vector<Edge> edges) : n_(vertices), edges_(std::move(edges)) {
    for (const auto& e : edges_) {
      if (e.i >= e.j || e.j >= n_) throw std::invalid_argument("edge out of range or not canonical");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  }

  /// Builds a graph associated with `config`; every edge must be a contact.
  static ContactGraph associated(const BallConfiguration& config, std::vector<Edge> edges) {
    for (auto& e : edges) {
      e = make_edge(e.i, e.j);
      if (e.j >= config.size() || !config.touching(e.i, e.j)) throw NotTouching(e.i, e.j);
    }
    return ContactGraph(config.size(), std::move(edges));
  }

  std::size_t vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  bool contains(const Edge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

  /// Component label for every vertex; labels are 0..count-1 in order of
  /// first appearance.
  std::vector<std::size_t> component_labels() const {
    std::vector<std::size_t> parent(n_);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (const auto& e : edges_) parent[find(e.i)] = find(e.j);
    std::vector<std::size_t> label(n_, n_);
    std::vector<std::size_t> root_label(n_, n_);
    std::size_t next = 0;
    for (std::size_t v = 0; v < n_; ++v) {
      const auto r = find(v);
      if (root_label[r] == n_) root_label[r] = next++;
      label[v] = root_label[r];
    }
    return label;
  }

  std::size_t component_count() const {
    const auto labels = component_labels();
    return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  }

  bool is_connected() const { return component_count() <= 1; }
  bool is_tree() const { return is_connected() && edges_.size() + 1 == n_; }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
};

inline ContactGraph full_contact_graph(const BallConfiguration& config) {
  return ContactGraph(config.size(), config.touching_pairs());
}

/// Unit collision direction z_jk in R^{nd} for a touching pair.
struct CollisionDirection {
  Edge edge;
  Vector z;
};

/// (x_j - x_k) in block j and (x_k - x_j) in block k; zero elsewhere.
inline Vector unnormalized_direction(const BallConfiguration& config, std::size_t a, std::size_t b) {
  const auto d = static_cast<Eigen::Index>(config.dimension());
  Vector z = Vector::Zero(static_cast<Eigen::Index>(config.size()) * d);
  const Vector diff = config.center(a) - config.center(b);
  z.segment(static_cast<Eigen::Index>(a) * d, d) = diff;
  z.segment(static_cast<Eigen::Index>(b) * d, d) = -diff;
  return z;
}

inline CollisionDirection collision_direction(const BallConfiguration& config, std::size_t a, std::size_t b) {
  const Edge e = make_edge(a, b);
  if (e.j >= config.size() || !config.touching(e.i, e.j)) throw NotTouching(e.i, e.j);
  // Built from the canonical order so that z_jk and z_kj are bit-identical.
  Vector z = unnormalized_direction(config, e.i, e.j);
  z /= z.norm();
  return {e, std::move(z)};
}

inline CollisionDirection collision_direction(const BallConfiguration& config, const Edge& e) {
  return collision_direction(config, e.i, e.j);
}

inline std::vector<Vector> collision_directions(const BallConfiguration& config, const std::vector<Edge>& edges) {
  std::vector<Vector> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.push_back(collision_direction(config, e).z);
  return out;
}

struct NormalizedSystem {
  BallConfiguration config;
  StateVector state;
};

/// Recenters the balls, removes total momentum and scales the energy to 1.
/// None of these operations change the number of collisions.
inline NormalizedSystem normalize_system(const BallConfiguration& config, const StateVector& state) {
  require_compatible(config, state);
  const auto n = config.size();
  const auto d = config.dimension();

  Vector mean = Vector::Zero(static_cast<Eigen::Index>(d));
  for (const auto& c : config.centers()) mean += c;
  mean /= static_cast<double>(n);
  std::vector<Vector> centers;
  centers.reserve(n);
  for (const auto& c : config.centers()) centers.push_back(c - mean);

  const Vector p = state.momentum() / static_cast<double>(n);
  StateVector out(n, d);
  for (std::size_t k = 0; k < n; ++k) out.block(k) = state.block(k) - p;
  const double energy = out.energy();
  if (!(energy > 0.0)) throw ZeroEnergyError();
  out.vector() /= std::sqrt(energy);

  return {BallConfiguration(d, std::move(centers), config.contact_tolerance()), std::move(out)};
}

struct InteriorWitness {
  Vector w;
  double margin = 0.0;
};

/// The state w_k = c (x_k - x_1) scaled to unit norm. Every edge of a
/// connected full graph sees w . z_jk = 2^{-3/2} c |x_j - x_k|^2.
inline InteriorWitness interior_witness(const BallConfiguration& config, const ContactGraph& graph) {
  if (!full_contact_graph(config).is_connected()) throw DisconnectedError();
  const auto n = config.size();
  const auto d = static_cast<Eigen::Index>(config.dimension());
  Vector w(static_cast<Eigen::Index>(n) * d);
  for (std::size_t k = 0; k < n; ++k)
    w.segment(static_cast<Eigen::Index>(k) * d, d) = config.center(k) - config.center(0);
  const double norm = w.norm();
  if (norm > 0.0) w /= norm;

  double margin = std::numeric_limits<double>::infinity();
  for (const auto& e : graph.edges()) margin = std::min(margin, w.dot(collision_direction(config, e).z));
  return {std::move(w), margin};
}

/// Lower bound 2^{-3/2} / (n (n-1)^2) on the witness margin of a connected
/// configuration with n >= 2 balls.
inline double interior_witness_margin_bound(std::size_t n) {
  const double nn = static_cast<double>(n);
  return std::pow(2.0, -1.5) / (nn * (nn - 1.0) * (nn - 1.0));
}

}  // namespace pinball
