#pragma once

// Index of approximate rigidity, stress certificates and the spherical
// convexity checks built on collision directions.

#include "pinball/dynamics.hpp"
#include "pinball/errors.hpp"
#include "pinball/geometry.hpp"
#include "pinball/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace pinball {

inline constexpr double kAlphaZeroTolerance = 1e-8;
inline constexpr std::size_t kAlphaEdgeGuard = 22;

inline void require_member(const std::vector<Edge>& edge_set, const Edge& chosen) {
  if (std::find(edge_set.begin(), edge_set.end(), chosen) == edge_set.end())
    throw std::invalid_argument("chosen edge is not in the edge set");
}

/// alpha_*(G_1, (i1,i2)): distance from z_{i1 i2} to span{z_e : e in E_1 \ {(i1,i2)}}.
inline double alpha_star(const BallConfiguration& config, const std::vector<Edge>& edge_set, Edge chosen) {
  chosen = make_edge(chosen.i, chosen.j);
  require_member(edge_set, chosen);
  const Vector z = collision_direction(config, chosen).z;
  std::vector<Vector> others;
  for (const auto& e : edge_set) {
    const Edge c = make_edge(e.i, e.j);
    if (c != chosen) others.push_back(collision_direction(config, c).z);
  }
  return distance_to_span(z, columns_to_matrix(others, z.size()));
}

struct AlphaCandidate {
  Edge chosen;
  std::vector<Edge> others;  // E_1 \ {chosen}
  double value = 0.0;
  bool zero = false;
};

struct AlphaReport {
  double alpha = 0.0;
  Edge chosen;
  std::vector<Edge> edge_set;  // argmin E_1, including `chosen`
  double zero_tolerance = kAlphaZeroTolerance;
  std::size_t candidate_count = 0;
  std::size_t zero_count = 0;
  std::vector<AlphaCandidate> candidates;  // filled when requested
};

struct AlphaOptions {
  double zero_tolerance = kAlphaZeroTolerance;
  std::size_t max_edges = kAlphaEdgeGuard;
  bool keep_candidates = false;
};

/// alpha(F): minimum strictly positive alpha_* over every chosen edge and
/// every subset of the remaining contacts. Spans are grown incrementally
/// along a depth-first walk over subsets.
inline AlphaReport alpha(const BallConfiguration& config, AlphaOptions options = {}) {
  const auto& edges = config.touching_pairs();
  if (edges.size() > options.max_edges) throw TooManyEdges(edges.size(), options.max_edges);
  const auto dirs = collision_directions(config, edges);
  const auto dim = static_cast<Eigen::Index>(config.size() * config.dimension());

  AlphaReport report;
  report.zero_tolerance = options.zero_tolerance;
  report.alpha = std::numeric_limits<double>::infinity();

  for (std::size_t c = 0; c < edges.size(); ++c) {
    std::vector<std::size_t> others;
    for (std::size_t k = 0; k < edges.size(); ++k)
      if (k != c) others.push_back(k);
    std::vector<std::size_t> subset;

    auto visit = [&](auto&& self, std::size_t start, const IncrementalBasis& basis, const Vector& residual) -> void {
      const double value = residual.norm();
      const bool zero = value <= options.zero_tolerance;
      ++report.candidate_count;
      if (zero) ++report.zero_count;
      if (!zero && value < report.alpha) {
        report.alpha = value;
        report.chosen = edges[c];
        report.edge_set.clear();
        for (auto k : subset) report.edge_set.push_back(edges[k]);
        report.edge_set.push_back(edges[c]);
        std::sort(report.edge_set.begin(), report.edge_set.end());
      }
      if (options.keep_candidates) {
        AlphaCandidate cand{edges[c], {}, value, zero};
        for (auto k : subset) cand.others.push_back(edges[k]);
        report.candidates.push_back(std::move(cand));
      }
      for (std::size_t t = start; t < others.size(); ++t) {
        IncrementalBasis child = basis;
        Vector r = residual;
        if (auto q = child.add(dirs[others[t]])) r -= q->dot(r) * *q;
        subset.push_back(others[t]);
        self(self, t + 1, child, r);
        subset.pop_back();
      }
    };
    visit(visit, 0, IncrementalBasis(dim), dirs[c]);
  }
  if (!std::isfinite(report.alpha)) throw AllZero();
  return report;
}

/// Tree lower bound obtained with unit collision directions: sqrt(2)/n.
inline double tree_alpha_bound_corrected(std::size_t n) { return std::sqrt(2.0) / static_cast<double>(n); }
/// The constant 4/n, which ignores the 2^{-3/2} normalization of z.
inline double tree_alpha_bound_paper(std::size_t n) { return 4.0 / static_cast<double>(n); }

/// Symmetric edge coefficients a_e with a_{i1 i2} = 1 that minimize the
/// force imbalance sum_j a_jk (x_j - x_k) at every vertex.
struct StressCertificate {
  Edge chosen;
  std::vector<Edge> edges;           // E_1, sorted
  std::vector<double> coefficients;  // parallel to `edges`
  std::vector<std::size_t> vertices;
  std::vector<double> residual_norms;  // parallel to `vertices`
  double total_residual = 0.0;         // Euclidean norm over all vertices

  bool certifies_rigid(double tolerance) const { return total_residual <= tolerance; }
};

inline StressCertificate stress_certificate(const BallConfiguration& config, std::vector<Edge> edge_set, Edge chosen) {
  chosen = make_edge(chosen.i, chosen.j);
  for (auto& e : edge_set) {
    e = make_edge(e.i, e.j);
    if (e.j >= config.size() || !config.touching(e.i, e.j)) throw NotTouching(e.i, e.j);
  }
  std::sort(edge_set.begin(), edge_set.end());
  edge_set.erase(std::unique(edge_set.begin(), edge_set.end()), edge_set.end());
  require_member(edge_set, chosen);

  StressCertificate cert;
  cert.chosen = chosen;
  cert.edges = edge_set;
  for (const auto& e : edge_set) {
    cert.vertices.push_back(e.i);
    cert.vertices.push_back(e.j);
  }
  std::sort(cert.vertices.begin(), cert.vertices.end());
  cert.vertices.erase(std::unique(cert.vertices.begin(), cert.vertices.end()), cert.vertices.end());

  const auto d = static_cast<Eigen::Index>(config.dimension());
  const auto rows = static_cast<Eigen::Index>(cert.vertices.size()) * d;
  auto row_of = [&](std::size_t v) {
    return static_cast<Eigen::Index>(std::lower_bound(cert.vertices.begin(), cert.vertices.end(), v) -
                                     cert.vertices.begin()) * d;
  };

  // Force of edge (j,k) on vertex k is a_jk (x_j - x_k), and on j it is a_jk (x_k - x_j).
  auto add_edge_column = [&](Eigen::Ref<Vector> col, const Edge& e) {
    col.segment(row_of(e.j), d) += config.center(e.i) - config.center(e.j);
    col.segment(row_of(e.i), d) += config.center(e.j) - config.center(e.i);
  };

  Vector fixed = Vector::Zero(rows);
  add_edge_column(fixed, chosen);
  std::vector<Edge> free_edges;
  for (const auto& e : edge_set)
    if (e != chosen) free_edges.push_back(e);
  Matrix a = Matrix::Zero(rows, static_cast<Eigen::Index>(free_edges.size()));
  for (std::size_t c = 0; c < free_edges.size(); ++c) add_edge_column(a.col(static_cast<Eigen::Index>(c)), free_edges[c]);

  Vector coeffs = Vector::Zero(static_cast<Eigen::Index>(free_edges.size()));
  if (!free_edges.empty()) coeffs = a.completeOrthogonalDecomposition().solve(-fixed);
  const Vector residual = fixed + a * coeffs;

  std::size_t next_free = 0;
  for (const auto& e : edge_set)
    cert.coefficients.push_back(e == chosen ? 1.0 : coeffs(static_cast<Eigen::Index>(next_free++)));
  for (std::size_t v = 0; v < cert.vertices.size(); ++v)
    cert.residual_norms.push_back(residual.segment(static_cast<Eigen::Index>(v) * d, d).norm());
  cert.total_residual = residual.norm();
  return cert;
}

/// Picks standard basis vectors, lowest index first, so that span(W, f_1..f_r)
/// is (m-1)-dimensional and still excludes w. Returns 0-based indices.
inline std::vector<std::size_t> extend_basis(const std::vector<Vector>& independent, const Vector& excluded,
                                             std::size_t m) {
  const auto dim = static_cast<Eigen::Index>(m);
  if (excluded.size() != dim) throw DimensionMismatch("excluded vector has wrong dimension");
  for (const auto& w : independent)
    if (w.size() != dim) throw DimensionMismatch("basis vector has wrong dimension");
  if (independent.size() + 1 > m) throw DependentInput("too many vectors for the ambient dimension");

  std::vector<Vector> current = independent;
  current.push_back(excluded);
  if (static_cast<std::size_t>(numerical_rank(columns_to_matrix(current, dim))) != current.size())
    throw DependentInput("input vectors are dependent or the excluded vector lies in their span");

  std::vector<std::size_t> chosen;
  for (std::size_t k = 0; k < m && independent.size() + chosen.size() + 1 < m; ++k) {
    current.push_back(Vector::Unit(dim, static_cast<Eigen::Index>(k)));
    if (static_cast<std::size_t>(numerical_rank(columns_to_matrix(current, dim))) == current.size()) {
      chosen.push_back(k);
    } else {
      current.pop_back();
    }
  }
  return chosen;
}

/// Report of the spherical "vertex" construction on an independent edge set.
struct SphericalVertexReport {
  std::vector<Vector> vertices;           // w_k
  std::vector<double> vertex_distances;   // dist(w_k, boundary of H_{e_k}) = w_k . z_{e_k}
  double alpha = 0.0;
  double min_vertex_distance = 0.0;
  bool vertices_ok = false;               // every vertex distance >= alpha - tol
  std::size_t samples = 0;
  double min_sample_best = 0.0;           // min over samples of max_e v . z_e
  double sample_threshold = 0.0;          // alpha / (n d)
  bool samples_ok = false;
};

struct SphericalVertexOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  std::optional<double> alpha;  // computed exhaustively when empty
};

/// Builds w_k = normalized residual of z_{e_k} against the other z's of
/// E_2, checks their facet distances against alpha, and samples points of
/// S intersected with the cone {v in span : v . z_e >= 0} to check that
/// some facet is at distance >= alpha/(nd).
inline SphericalVertexReport spherical_vertex_check(const BallConfiguration& config, const ContactGraph& graph,
                                                    const std::vector<Edge>& independent_edges,
                                                    SphericalVertexOptions options = {}) {
  for (const auto& e : independent_edges)
    if (!graph.contains(e)) throw std::invalid_argument("edge is not part of the graph");
  const auto dirs = collision_directions(config, independent_edges);
  const auto dim = static_cast<Eigen::Index>(config.size() * config.dimension());
  const Matrix all = columns_to_matrix(dirs, dim);
  if (static_cast<std::size_t>(numerical_rank(all)) != dirs.size())
    throw DependentEdges("collision directions of the edge subset are linearly dependent");

  SphericalVertexReport rep;
  rep.alpha = options.alpha ? *options.alpha : alpha(config).alpha;
  rep.sample_threshold = rep.alpha / static_cast<double>(config.size() * config.dimension());
  rep.min_vertex_distance = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < dirs.size(); ++k) {
    std::vector<Vector> rest;
    for (std::size_t l = 0; l < dirs.size(); ++l)
      if (l != k) rest.push_back(dirs[l]);
    Vector w = dirs[k] - project_onto_columns(dirs[k], columns_to_matrix(rest, dim));
    w /= w.norm();
    // w is orthogonal to every other z, so its only non-trivial facet is k.
    const double dist = w.dot(dirs[k]);
    rep.vertex_distances.push_back(dist);
    rep.min_vertex_distance = std::min(rep.min_vertex_distance, dist);
    rep.vertices.push_back(std::move(w));
  }
  rep.vertices_ok = rep.min_vertex_distance >= rep.alpha - options.tolerance;

  std::mt19937_64 rng(options.seed);
  std::exponential_distribution<double> expo(1.0);
  rep.min_sample_best = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < options.samples; ++s) {
    Vector v = Vector::Zero(dim);
    for (const auto& w : rep.vertices) v += expo(rng) * w;
    v /= v.norm();
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& z : dirs) best = std::max(best, v.dot(z));
    rep.min_sample_best = std::min(rep.min_sample_best, best);
    ++rep.samples;
  }
  rep.samples_ok = rep.samples == 0 || rep.min_sample_best >= rep.sample_threshold - options.tolerance;
  return rep;
}

/// Constructive path from a nearly admissible state u to S intersected
/// with H^G_*: y_1 is where the segment from u to the projected interior
/// witness enters the cone, y_4 = y_1 / |y_1|.
struct WitnessPath {
  double delta = 0.0;     // max(0, -min_e u . z_e)
  double distance = 0.0;  // |u - y_4|
  double bound = 0.0;     // 2^{7/2} delta n (n-1)^2
  Vector y1;
  Vector y4;
};

inline WitnessPath witness_path(const BallConfiguration& config, const ContactGraph& graph, const Vector& u) {
  const auto n = config.size();
  const auto dirs = collision_directions(config, graph.edges());
  const InteriorWitness iw = interior_witness(config, graph);
  const Matrix span = columns_to_matrix(dirs, u.size());
  const Vector v = project_onto_columns(iw.w, span);

  WitnessPath path;
  double min_dot = std::numeric_limits<double>::infinity();
  for (const auto& z : dirs) min_dot = std::min(min_dot, u.dot(z));
  path.delta = std::max(0.0, -min_dot);
  const double nn = static_cast<double>(n);
  path.bound = std::pow(2.0, 3.5) * path.delta * nn * (nn - 1.0) * (nn - 1.0);

  double t_enter = 0.0;
  const Vector dir = v - u;
  for (const auto& z : dirs) {
    const double a = u.dot(z);
    if (a < 0.0) t_enter = std::max(t_enter, -a / dir.dot(z));
  }
  path.y1 = u + t_enter * dir;
  path.y4 = path.y1 / path.y1.norm();
  path.distance = (u - path.y4).norm();
  return path;
}

}  // namespace pinball
