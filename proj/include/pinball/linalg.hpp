#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace pinball {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Relative singular-value threshold used for every rank decision.
inline constexpr double kRankTolerance = 1e-10;

inline Matrix columns_to_matrix(const std::vector<Vector>& columns, Eigen::Index rows) {
  Matrix out(rows, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = columns[c];
  return out;
}

/// Orthonormal basis of the column space of `a`; singular values at or
/// below `rel_tol * sigma_max` are treated as zero.
inline Matrix orthonormal_column_basis(const Matrix& a, double rel_tol = kRankTolerance) {
  if (a.cols() == 0 || a.rows() == 0) return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  Eigen::Index rank = 0;
  if (sigma_max > 0.0) {
    while (rank < sigma.size() && sigma(rank) > rel_tol * sigma_max) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

inline Eigen::Index numerical_rank(const Matrix& a, double rel_tol = kRankTolerance) {
  return orthonormal_column_basis(a, rel_tol).cols();
}

inline Vector project_onto_columns(const Vector& v, const Matrix& a) {
  const Matrix q = orthonormal_column_basis(a);
  if (q.cols() == 0) return Vector::Zero(v.size());
  return q * (q.transpose() * v);
}

/// Euclidean distance from `v` to the column span of `a`.
inline double distance_to_span(const Vector& v, const Matrix& a) {
  return (v - project_onto_columns(v, a)).norm();
}

inline double max_abs_difference(const Vector& a, const Vector& b) {
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

/// Orthonormal basis grown one vector at a time by twice-iterated
/// Gram-Schmidt. Used for enumerations where each child span extends its
/// parent by one vector.
class IncrementalBasis {
 public:
  explicit IncrementalBasis(Eigen::Index dim) : dim_(dim) {}

  Eigen::Index dimension() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<Vector>& vectors() const { return basis_; }

  Vector residual(const Vector& v) const {
    Vector r = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis_) r -= q.dot(r) * q;
    }
    return r;
  }

  /// Adds `v` if its residual exceeds `rel_tol * |v|`; returns the new unit
  /// direction (empty when `v` was dependent).
  std::optional<Vector> add(const Vector& v, double rel_tol = kRankTolerance) {
    const double scale = v.norm();
    Vector r = residual(v);
    const double rn = r.norm();
    if (scale == 0.0 || rn <= rel_tol * scale) return std::nullopt;
    r /= rn;
    basis_.push_back(r);
    return r;
  }

 private:
  Eigen::Index dim_;
  std::vector<Vector> basis_;
};

}  // namespace pinball
