#pragma once

// Triangular-lattice configurations and exact determinant machinery over
// Z[sqrt(3)]: column-pattern checks, determinant bounds, continued-fraction
// bounds for sqrt(3) and exact lower-bound certificates for alpha_*.

#include "pinball/errors.hpp"
#include "pinball/geometry.hpp"
#include "pinball/log_value.hpp"
#include "pinball/quadratic_integer.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pinball {

/// The point (a, b sqrt(3)). Lattice members have a and b of equal parity.
struct LatticePoint {
  long long a = 0;
  long long b = 0;

  bool is_member() const { return ((a - b) % 2) == 0; }
  /// Squared Euclidean norm a^2 + 3 b^2, exact.
  long long squared_norm() const { return a * a + 3 * b * b; }
  Vector to_vector() const {
    Vector v(2);
    v << static_cast<double>(a), static_cast<double>(b) * std::sqrt(3.0);
    return v;
  }

  auto operator<=>(const LatticePoint&) const = default;
};

inline LatticePoint operator-(const LatticePoint& p, const LatticePoint& q) { return {p.a - q.a, p.b - q.b}; }
inline LatticePoint operator+(const LatticePoint& p, const LatticePoint& q) { return {p.a + q.a, p.b + q.b}; }

inline constexpr std::array<LatticePoint, 6> kLatticeNeighbors{
    {{2, 0}, {-2, 0}, {1, 1}, {-1, 1}, {1, -1}, {-1, -1}}};

/// Every lattice point with Euclidean norm at most R, sorted by (b, a).
inline std::vector<LatticePoint> lattice_points_in_radius(double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("radius must be non-negative");
  const double r2 = radius * radius;
  const auto amax = static_cast<long long>(std::floor(radius));
  const auto bmax = static_cast<long long>(std::floor(radius / std::sqrt(3.0)));
  std::vector<LatticePoint> out;
  for (long long b = -bmax; b <= bmax; ++b)
    for (long long a = -amax; a <= amax; ++a) {
      const LatticePoint p{a, b};
      if (p.is_member() && static_cast<double>(p.squared_norm()) <= r2) out.push_back(p);
    }
  return out;
}

/// Discs centered on lattice points. Contacts are decided exactly.
class LatticeConfiguration {
 public:
  explicit LatticeConfiguration(std::vector<LatticePoint> points) : points_(std::move(points)) {
    if (points_.empty()) throw DimensionMismatch("a configuration needs at least one disc");
    for (std::size_t k = 0; k < points_.size(); ++k)
      if (!points_[k].is_member())
        throw DimensionMismatch("point " + std::to_string(k + 1) + " is not on the triangular lattice");
    for (std::size_t i = 0; i < points_.size(); ++i)
      for (std::size_t j = i + 1; j < points_.size(); ++j) {
        const long long d2 = (points_[i] - points_[j]).squared_norm();
        if (d2 < 4) throw OverlapError(i, j, std::sqrt(static_cast<double>(d2)));
        if (d2 == 4) touching_.push_back(Edge{i, j});
      }
  }

  std::size_t size() const { return points_.size(); }
  const std::vector<LatticePoint>& points() const { return points_; }
  const std::vector<Edge>& touching_pairs() const { return touching_; }
  bool touching(const Edge& e) const { return std::binary_search(touching_.begin(), touching_.end(), e); }

  BallConfiguration to_configuration(double tolerance = kDefaultContactTolerance) const {
    std::vector<Vector> centers;
    for (const auto& p : points_) centers.push_back(p.to_vector());
    return BallConfiguration(2, std::move(centers), tolerance);
  }

  /// z~_jk with entries in Z[sqrt3]: the x components are integers, the y
  /// components integer multiples of sqrt3.
  std::vector<QuadraticInteger> unnormalized_direction(const Edge& e) const {
    if (!touching(e)) throw NotTouching(e.i, e.j);
    std::vector<QuadraticInteger> z(2 * points_.size());
    const LatticePoint diff = points_[e.i] - points_[e.j];
    z[2 * e.i] = QuadraticInteger(diff.a);
    z[2 * e.i + 1] = QuadraticInteger(0, diff.b);
    z[2 * e.j] = QuadraticInteger(-diff.a);
    z[2 * e.j + 1] = QuadraticInteger(0, -diff.b);
    return z;
  }

 private:
  std::vector<LatticePoint> points_;
  std::vector<Edge> touching_;
};

/// Dense square or rectangular matrix over Z[sqrt3], row-major.
class QuadMatrix {
 public:
  QuadMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QuadMatrix from_columns(const std::vector<std::vector<QuadraticInteger>>& columns, std::size_t rows) {
    QuadMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].size() != rows) throw DimensionMismatch("column has wrong length");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  QuadraticInteger& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const QuadraticInteger& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<QuadraticInteger> column(std::size_t c) const {
    std::vector<QuadraticInteger> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<QuadraticInteger> data_;
};

namespace detail {

/// Laplace expansion along columns [first_col, cols) with memoized minors:
/// minors[mask] = det(rows in mask x the first popcount(mask) of those columns).
inline std::vector<QuadraticInteger> laplace_minors(const QuadMatrix& a, std::size_t first_col) {
  const std::size_t m = a.rows();
  if (m > 24) throw std::invalid_argument("cofactor expansion is limited to 24 rows");
  const std::size_t width = a.cols() - first_col;
  std::vector<QuadraticInteger> minors(std::size_t{1} << m);
  minors[0] = QuadraticInteger(1);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k > width) continue;
    const std::size_t col = first_col + k - 1;
    QuadraticInteger acc;
    std::size_t pos = 0;
    for (std::size_t r = 0; r < m; ++r) {
      if (!(mask & (std::uint32_t{1} << r))) continue;
      const auto& entry = a(r, col);
      const auto& sub = minors[mask & ~(std::uint32_t{1} << r)];
      if (!entry.is_zero() && !sub.is_zero()) {
        // Row r sits at position `pos` of the k-row minor, column at k-1.
        if (((pos + k - 1) & 1U) == 0) acc += entry * sub;
        else acc -= entry * sub;
      }
      ++pos;
    }
    minors[mask] = std::move(acc);
  }
  return minors;
}

inline void require_square(const QuadMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("matrix must be square");
  if (a.rows() == 0) throw DimensionMismatch("matrix must be at least 1x1");
}

}  // namespace detail

/// Cofactor expansion with memoized minors; exact in Z[sqrt3].
inline QuadraticInteger determinant_cofactor(const QuadMatrix& a) {
  detail::require_square(a);
  const auto minors = detail::laplace_minors(a, 0);
  return minors.back();
}

/// Fraction-free (Bareiss) elimination; every division is exact in Z[sqrt3].
inline QuadraticInteger determinant_bareiss(QuadMatrix a) {
  detail::require_square(a);
  const std::size_t m = a.rows();
  bool negate = false;
  QuadraticInteger prev(1);
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < m && a(p, k).is_zero()) ++p;
      if (p == m) return QuadraticInteger(0);
      a.swap_rows(k, p);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < m; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)).exact_divide(prev);
      a(i, k) = QuadraticInteger(0);
    }
    prev = a(k, k);
  }
  return negate ? -a(m - 1, m - 1) : a(m - 1, m - 1);
}

inline constexpr std::size_t kCofactorLimit = 10;

/// Exact determinant: cofactor expansion up to 10x10, Bareiss above.
inline QuadraticInteger exact_determinant(const QuadMatrix& a) {
  detail::require_square(a);
  return a.rows() <= kCofactorLimit ? determinant_cofactor(a) : determinant_bareiss(a);
}

/// Cofactors C_i of the first column: det(A) = sum_i A(i,0) C_i.
inline std::vector<QuadraticInteger> first_column_cofactors(const QuadMatrix& a) {
  detail::require_square(a);
  const std::size_t m = a.rows();
  std::vector<QuadraticInteger> c(m);
  if (m == 1) {
    c[0] = QuadraticInteger(1);
    return c;
  }
  if (m <= kCofactorLimit) {
    const auto minors = detail::laplace_minors(a, 1);
    const std::uint32_t full = (std::uint32_t{1} << m) - 1;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& minor = minors[full & ~(std::uint32_t{1} << i)];
      c[i] = (i % 2 == 0) ? minor : -minor;
    }
    return c;
  }
  for (std::size_t i = 0; i < m; ++i) {
    QuadMatrix sub(m - 1, m - 1);
    for (std::size_t r = 0, rr = 0; r < m; ++r) {
      if (r == i) continue;
      for (std::size_t col = 1; col < m; ++col) sub(rr, col - 1) = a(r, col);
      ++rr;
    }
    const auto minor = exact_determinant(sub);
    c[i] = (i % 2 == 0) ? minor : -minor;
  }
  return c;
}

/// Exact rank by fraction-free row echelon reduction.
inline std::size_t exact_rank(QuadMatrix a) {
  std::size_t rank = 0;
  QuadraticInteger prev(1);
  for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    std::size_t p = rank;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(rank, p);
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j)
        a(i, j) = (a(i, j) * a(rank, c) - a(i, c) * a(rank, j)).exact_divide(prev);
      a(i, c) = QuadraticInteger(0);
    }
    prev = a(rank, c);
    ++rank;
  }
  return rank;
}

inline std::size_t exact_rank(const std::vector<std::vector<QuadraticInteger>>& columns, std::size_t rows) {
  return exact_rank(QuadMatrix::from_columns(columns, rows));
}

enum class ColumnCondition {
  unit,             // (a): one non-zero entry, equal to 1
  opposite_twos,    // (b): two non-zero entries, 2 and -2
  lattice_contact,  // (c): four non-zero entries, two of modulus 1 and two of modulus sqrt3
  nonconforming,
};

inline std::string to_string(ColumnCondition c) {
  switch (c) {
    case ColumnCondition::unit: return "a";
    case ColumnCondition::opposite_twos: return "b";
    case ColumnCondition::lattice_contact: return "c";
    case ColumnCondition::nonconforming: return "nonconforming";
  }
  return "nonconforming";
}

inline ColumnCondition classify_column(const std::vector<QuadraticInteger>& column) {
  std::vector<const QuadraticInteger*> nz;
  for (const auto& e : column)
    if (!e.is_zero()) nz.push_back(&e);
  const QuadraticInteger one(1), two(2), s3 = QuadraticInteger::sqrt3();
  if (nz.size() == 1 && *nz[0] == one) return ColumnCondition::unit;
  if (nz.size() == 2 && ((*nz[0] == two && *nz[1] == -two) || (*nz[0] == -two && *nz[1] == two)))
    return ColumnCondition::opposite_twos;
  if (nz.size() == 4) {
    int units = 0, roots = 0;
    for (const auto* e : nz) {
      if (*e == one || *e == -one) ++units;
      else if (*e == s3 || *e == -s3) ++roots;
    }
    if (units == 2 && roots == 2) return ColumnCondition::lattice_contact;
  }
  return ColumnCondition::nonconforming;
}

inline std::vector<ColumnCondition> check_column_conditions(const QuadMatrix& a) {
  detail::require_square(a);
  std::vector<ColumnCondition> out;
  for (std::size_t c = 0; c < a.cols(); ++c) out.push_back(classify_column(a.column(c)));
  return out;
}

struct DetBoundReport {
  QuadraticInteger determinant;
  std::size_t m = 0;
  bool rational_part_within = false;  // |r1| <= 4^m
  bool sqrt3_part_within = false;     // |r2| <= 4^m / sqrt3
  bool magnitude_within = false;      // |det| <= 2 * 4^m
  bool holds() const { return rational_part_within && sqrt3_part_within && magnitude_within; }
};

/// Exact determinant of a matrix whose columns all follow patterns (a)-(c),
/// with the resulting bounds on both integer parts checked exactly.
inline DetBoundReport verify_det_bound(const QuadMatrix& a) {
  const auto conditions = check_column_conditions(a);
  for (std::size_t c = 0; c < conditions.size(); ++c)
    if (conditions[c] == ColumnCondition::nonconforming) throw NonconformingColumn(c);
  DetBoundReport rep;
  rep.m = a.rows();
  rep.determinant = exact_determinant(a);
  const BigInt four_m = boost::multiprecision::pow(BigInt(4), static_cast<unsigned>(rep.m));
  const BigInt& r1 = rep.determinant.rational_part();
  const BigInt& r2 = rep.determinant.sqrt3_part();
  rep.rational_part_within = boost::multiprecision::abs(r1) <= four_m;
  rep.sqrt3_part_within = 3 * r2 * r2 <= four_m * four_m;
  rep.magnitude_within = boost::multiprecision::abs(rep.determinant.to_high()) <= 2 * HighFloat(four_m);
  return rep;
}

/// Convergent h_k / g_k of sqrt(3) = [1; 1, 2, 1, 2, ...].
struct ConvergentPair {
  std::size_t k = 0;
  BigInt h;
  BigInt g;
};

inline unsigned sqrt3_partial_quotient(std::size_t k) { return (k == 0 || k % 2 == 1) ? 1U : 2U; }

/// Convergents k = 0..k_max from the seeds h_{-2}=0, h_{-1}=1, g_{-2}=1, g_{-1}=0.
inline std::vector<ConvergentPair> sqrt3_convergents(std::size_t k_max) {
  std::vector<ConvergentPair> out;
  BigInt h2 = 0, h1 = 1, g2 = 1, g1 = 0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    const unsigned a = sqrt3_partial_quotient(k);
    BigInt h = a * h1 + h2;
    BigInt g = a * g1 + g2;
    out.push_back({k, h, g});
    h2 = std::move(h1);
    h1 = std::move(h);
    g2 = std::move(g1);
    g1 = std::move(g);
  }
  return out;
}

/// Certified lower bound on |r1 + r2 sqrt3| over all integers r1 and
/// 1 <= |r2| <= B, via the bracket g_{k-1} <= B <= g_k: the bound 1/(6 g_{k+1}).
struct QuadraticLowerBound {
  double value = 0.0;
  std::size_t k = 0;
  BigInt g_prev;  // g_{k-1}
  BigInt g_k;
  BigInt g_next;  // g_{k+1}
};

inline QuadraticLowerBound quadratic_lower_bound(const BigInt& bound) {
  if (bound < 1) throw std::invalid_argument("r2 bound must be at least 1");
  // Convergents are generated until the bracket closes; k >= 1 keeps g_k <= 3 g_{k-1}.
  std::vector<ConvergentPair> conv = sqrt3_convergents(2);
  std::size_t k = 1;
  for (;;) {
    while (conv.size() < k + 2) conv = sqrt3_convergents(conv.size() * 2);
    if (conv[k].g >= bound) break;
    ++k;
  }
  QuadraticLowerBound out;
  out.k = k;
  out.g_prev = conv[k - 1].g;
  out.g_k = conv[k].g;
  out.g_next = conv[k + 1].g;
  out.value = static_cast<double>(HighFloat(1) / (6 * HighFloat(out.g_next)));
  return out;
}

/// sqrt3 / (54 * 4^{2n}), the closed form reached with B = 4^{2n} / sqrt3.
inline LogValue quadratic_lower_bound_closed_form(std::size_t n) {
  return {0.5 * std::log2(3.0) - std::log2(54.0) - 4.0 * static_cast<double>(n)};
}

/// (sqrt3 / 432) * 4^{-4n} * n^{-1/2}: lower bound on alpha for lattice discs.
inline LogValue lattice_alpha_lower_bound(std::size_t n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const double nn = static_cast<double>(n);
  return {0.5 * std::log2(3.0) - std::log2(432.0) - 8.0 * nn - 0.5 * std::log2(nn)};
}

/// Exact normal-vector certificate for alpha_*(E_1, chosen) on lattice
/// discs: dist(z, V) >= dist(z, W) = |z . c| / |c| with W a hyperplane
/// containing V and c its cofactor normal.
struct AlphaCertificate {
  double lower_bound = 0.0;
  bool zero = false;
  std::size_t span_dimension = 0;             // p = dim V
  std::vector<Edge> basis_edges;              // edges whose z~ form the chosen basis of V
  std::vector<std::size_t> extension;         // standard basis indices e_{m_j}, 0-based
  std::vector<QuadraticInteger> normal;       // c
  QuadraticInteger determinant;               // det M(z~) = z~ . c
};

inline AlphaCertificate exact_alpha_certificate(const LatticeConfiguration& config, std::vector<Edge> edge_set,
                                                Edge chosen) {
  chosen = make_edge(chosen.i, chosen.j);
  for (auto& e : edge_set) {
    e = make_edge(e.i, e.j);
    if (!config.touching(e)) throw NotTouching(e.i, e.j);
  }
  std::sort(edge_set.begin(), edge_set.end());
  edge_set.erase(std::unique(edge_set.begin(), edge_set.end()), edge_set.end());
  if (!std::binary_search(edge_set.begin(), edge_set.end(), chosen))
    throw std::invalid_argument("chosen edge is not in the edge set");

  const std::size_t m = 2 * config.size();
  const auto target = config.unnormalized_direction(chosen);

  AlphaCertificate cert;
  std::vector<std::vector<QuadraticInteger>> basis;
  for (const auto& e : edge_set) {
    if (e == chosen) continue;
    basis.push_back(config.unnormalized_direction(e));
    if (exact_rank(basis, m) == basis.size()) cert.basis_edges.push_back(e);
    else basis.pop_back();
  }
  cert.span_dimension = basis.size();

  std::vector<std::vector<QuadraticInteger>> probe = basis;
  probe.push_back(target);
  if (exact_rank(probe, m) == basis.size()) {
    cert.zero = true;
    return cert;
  }

  std::vector<std::vector<QuadraticInteger>> extended = basis;
  for (std::size_t k = 0; k < m && extended.size() + 1 < m; ++k) {
    std::vector<QuadraticInteger> unit(m);
    unit[k] = QuadraticInteger(1);
    probe = extended;
    probe.push_back(unit);
    probe.push_back(target);
    if (exact_rank(probe, m) == probe.size()) {
      extended.push_back(std::move(unit));
      cert.extension.push_back(k);
    }
  }

  std::vector<std::vector<QuadraticInteger>> cols;
  cols.push_back(target);
  cols.insert(cols.end(), extended.begin(), extended.end());
  const QuadMatrix mz = QuadMatrix::from_columns(cols, m);
  cert.normal = first_column_cofactors(mz);
  cert.determinant = exact_determinant(mz);

  HighFloat norm2 = 0;
  for (const auto& c : cert.normal) {
    const HighFloat v = c.to_high();
    norm2 += v * v;
  }
  const HighFloat dot = boost::multiprecision::abs(cert.determinant.to_high()) / boost::multiprecision::sqrt(HighFloat(8));
  cert.lower_bound = static_cast<double>(dot / boost::multiprecision::sqrt(norm2));
  return cert;
}

namespace detail {

/// 60 degree rotation (a, b) -> ((a - 3b)/2, (a + b)/2) and the mirror b -> -b.
inline std::vector<LatticePoint> canonical_animal(const std::vector<LatticePoint>& pts) {
  std::vector<LatticePoint> best;
  std::vector<LatticePoint> cur = pts;
  for (int mirror = 0; mirror < 2; ++mirror) {
    for (int rot = 0; rot < 6; ++rot) {
      std::vector<LatticePoint> t = cur;
      std::sort(t.begin(), t.end());
      const LatticePoint origin = t.front();
      for (auto& p : t) p = p - origin;
      if (best.empty() || t < best) best = t;
      for (auto& p : cur) p = LatticePoint{(p.a - 3 * p.b) / 2, (p.a + p.b) / 2};
    }
    for (auto& p : cur) p.b = -p.b;
  }
  return best;
}

}  // namespace detail

/// Connected lattice configurations of n discs up to translation, rotation
/// and reflection.
inline std::vector<LatticeConfiguration> enumerate_lattice_animals(std::size_t n) {
  if (n == 0) return {};
  std::set<std::vector<LatticePoint>> level{{LatticePoint{0, 0}}};
  for (std::size_t size = 1; size < n; ++size) {
    std::set<std::vector<LatticePoint>> next;
    for (const auto& animal : level) {
      for (const auto& p : animal)
        for (const auto& step : kLatticeNeighbors) {
          const LatticePoint q = p + step;
          if (std::find(animal.begin(), animal.end(), q) != animal.end()) continue;
          auto grown = animal;
          grown.push_back(q);
          next.insert(detail::canonical_animal(grown));
        }
    }
    level = std::move(next);
  }
  std::vector<LatticeConfiguration> out;
  for (const auto& animal : level) out.emplace_back(animal);
  return out;
}

}  // namespace pinball
