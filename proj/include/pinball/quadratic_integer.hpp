#pragma once

// Exact arithmetic in the ring Z[sqrt(3)].

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace pinball {

using BigInt = boost::multiprecision::cpp_int;
/// 200-bit binary floating point used for every high-precision check.
using HighFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<200, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

inline HighFloat high_sqrt3() {
  static const HighFloat value = boost::multiprecision::sqrt(HighFloat(3));
  return value;
}

/// r1 + r2 sqrt(3) with arbitrary-precision integer parts.
class QuadraticInteger {
 public:
  QuadraticInteger() = default;
  QuadraticInteger(long long r1) : r1_(r1) {}  // NOLINT(google-explicit-constructor)
  QuadraticInteger(BigInt r1, BigInt r2) : r1_(std::move(r1)), r2_(std::move(r2)) {}

  static QuadraticInteger sqrt3() { return {0, 1}; }

  const BigInt& rational_part() const { return r1_; }
  const BigInt& sqrt3_part() const { return r2_; }

  bool is_zero() const { return r1_ == 0 && r2_ == 0; }

  QuadraticInteger conjugate() const { return {r1_, -r2_}; }
  /// Field norm r1^2 - 3 r2^2; zero only for zero.
  BigInt norm() const { return r1_ * r1_ - 3 * r2_ * r2_; }

  QuadraticInteger operator-() const { return {-r1_, -r2_}; }

  QuadraticInteger& operator+=(const QuadraticInteger& o) {
    r1_ += o.r1_;
    r2_ += o.r2_;
    return *this;
  }
  QuadraticInteger& operator-=(const QuadraticInteger& o) {
    r1_ -= o.r1_;
    r2_ -= o.r2_;
    return *this;
  }
  QuadraticInteger& operator*=(const QuadraticInteger& o) {
    BigInt a = r1_ * o.r1_ + 3 * r2_ * o.r2_;
    BigInt b = r1_ * o.r2_ + r2_ * o.r1_;
    r1_ = std::move(a);
    r2_ = std::move(b);
    return *this;
  }

  friend QuadraticInteger operator+(QuadraticInteger a, const QuadraticInteger& b) { return a += b; }
  friend QuadraticInteger operator-(QuadraticInteger a, const QuadraticInteger& b) { return a -= b; }
  friend QuadraticInteger operator*(QuadraticInteger a, const QuadraticInteger& b) { return a *= b; }
  friend bool operator==(const QuadraticInteger& a, const QuadraticInteger& b) {
    return a.r1_ == b.r1_ && a.r2_ == b.r2_;
  }

  /// Exact quotient; throws std::domain_error when the divisor does not
  /// divide this element in Z[sqrt(3)].
  QuadraticInteger exact_divide(const QuadraticInteger& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("division by zero in Z[sqrt3]");
    const BigInt n = divisor.norm();
    const QuadraticInteger num = *this * divisor.conjugate();
    BigInt q1, rem1, q2, rem2;
    boost::multiprecision::divide_qr(num.r1_, n, q1, rem1);
    boost::multiprecision::divide_qr(num.r2_, n, q2, rem2);
    if (rem1 != 0 || rem2 != 0) throw std::domain_error("inexact division in Z[sqrt3]");
    return {std::move(q1), std::move(q2)};
  }

  HighFloat to_high() const { return HighFloat(r1_) + HighFloat(r2_) * high_sqrt3(); }
  double to_double() const { return static_cast<double>(to_high()); }

  /// Sign of the real number r1 + r2 sqrt(3), decided exactly.
  int sign() const {
    const int s1 = r1_.sign();
    const int s2 = r2_.sign();
    if (s1 == 0) return s2;
    if (s2 == 0 || s1 == s2) return s1;
    // Opposite signs: compare r1^2 with 3 r2^2.
    const BigInt lhs = r1_ * r1_;
    const BigInt rhs = 3 * r2_ * r2_;
    if (lhs == rhs) return 0;
    return lhs > rhs ? s1 : s2;
  }

  std::string to_string() const { return r1_.str() + (r2_ < 0 ? " - " : " + ") + BigInt(boost::multiprecision::abs(r2_)).str() + "*sqrt3"; }

  friend std::ostream& operator<<(std::ostream& os, const QuadraticInteger& q) { return os << q.to_string(); }

 private:
  BigInt r1_ = 0;
  BigInt r2_ = 0;
};

}  // namespace pinball
