#pragma once

// Kissing numbers and the collision-count bounds, evaluated in log2 with a
// 200-bit direct evaluation alongside when the value is representable.

#include "pinball/errors.hpp"
#include "pinball/lattice.hpp"
#include "pinball/log_value.hpp"
#include "pinball/quadratic_integer.hpp"
#include "pinball/rigidity.hpp"

#include <boost/rational.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pinball {

enum class KissingSource { forced, external_table };

inline std::string to_string(KissingSource s) { return s == KissingSource::forced ? "forced" : "external-table"; }

struct KissingNumberInfo {
  std::size_t d = 1;
  BigInt lower;  // 2d
  BigInt upper;  // 3^d - 1
  std::optional<BigInt> exact;
  std::optional<KissingSource> exact_source;
};

inline KissingNumberInfo kissing_number(std::size_t d) {
  if (d < 1) throw std::invalid_argument("dimension must be at least 1");
  KissingNumberInfo info;
  info.d = d;
  info.lower = 2 * BigInt(d);
  info.upper = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(d)) - 1;
  static const std::map<std::size_t, long long> table{{2, 6}, {3, 12}, {4, 24}, {8, 240}, {24, 196560}};
  if (d == 1) {
    info.exact = BigInt(2);
    info.exact_source = KissingSource::forced;
  } else if (auto it = table.find(d); it != table.end()) {
    info.exact = BigInt(it->second);
    info.exact_source = KissingSource::external_table;
  }
  return info;
}

enum class TauMode { exact, upper, lower, value };

struct TauChoice {
  BigInt tau;
  std::string source;  // external-table | forced | paper-upper | paper-lower | user-value
};

/// `exact` falls back to the elementary upper bound 3^d - 1 when no exact value is known.
inline TauChoice select_tau(std::size_t d, TauMode mode, std::optional<long long> value = std::nullopt) {
  const auto info = kissing_number(d);
  switch (mode) {
    case TauMode::exact:
      if (info.exact) return {*info.exact, to_string(*info.exact_source)};
      return {info.upper, "paper-upper"};
    case TauMode::upper: return {info.upper, "paper-upper"};
    case TauMode::lower: return {info.lower, "paper-lower"};
    case TauMode::value:
      if (!value || *value < 2) throw std::invalid_argument("tau value must be at least 2");
      return {BigInt(*value), "user-value"};
  }
  return {info.upper, "paper-upper"};
}

/// Rational exponent tau*n/2 - 1, with its numerator over 2 kept exact.
struct BoundExponent {
  BigInt twice;  // 2 * exponent = tau*n - 2
  double value() const { return static_cast<double>(twice) / 2.0; }
  /// ceil(tau n / 2) - 1
  BigInt conservative() const { return (twice + 1) / 2; }
  bool is_integer() const { return twice % 2 == 0; }
};

inline BoundExponent graph_exponent(const BigInt& tau, std::size_t n) { return {tau * BigInt(n) - 2}; }

struct BoundReport {
  std::string kind;  // general | per-edge | tree-paper | tree-corrected | lattice-exact | lattice-rounded
  std::size_t n = 0;
  std::size_t d = 0;
  std::optional<double> alpha;
  std::string alpha_source;
  std::optional<BigInt> tau;
  std::string tau_source;
  double exponent = 0.0;
  std::optional<BigInt> conservative_exponent;
  double log2_base = 0.0;
  double log2_bound = 0.0;
  std::optional<double> log2_conservative;
  std::optional<std::string> decimal;  // present only below 1e300
};

inline constexpr double kDecimalLog2Limit = 996.5784284662087;  // log2(1e300)

inline HighFloat high_pow(const HighFloat& base, double exponent) {
  if (exponent == 0.0) return HighFloat(1);
  return boost::multiprecision::pow(base, HighFloat(exponent));
}

inline std::string high_to_decimal(const HighFloat& v, int digits = 17) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

namespace detail {

/// 2^{21/2} d n^5 / alpha at 200 bits.
inline HighFloat general_base_high(std::size_t n, std::size_t d, const HighFloat& alpha) {
  return boost::multiprecision::pow(HighFloat(2), HighFloat(10.5)) * HighFloat(d) *
         boost::multiprecision::pow(HighFloat(n), 5) / alpha;
}

inline double general_log2_base(std::size_t n, std::size_t d, double alpha) {
  return 10.5 + std::log2(static_cast<double>(d)) + 5.0 * std::log2(static_cast<double>(n)) - std::log2(alpha);
}

inline void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidAlpha(alpha);
}

inline void finish(BoundReport& r, const HighFloat& base_high) {
  r.log2_bound = r.exponent == 0.0 ? 0.0 : r.exponent * r.log2_base;
  if (r.conservative_exponent)
    r.log2_conservative = static_cast<double>(*r.conservative_exponent) * r.log2_base;
  if (r.log2_bound < kDecimalLog2Limit) r.decimal = high_to_decimal(high_pow(base_high, r.exponent));
}

}  // namespace detail

/// (2^{21/2} d n^5 / alpha)^{tau n/2 - 1}
inline BoundReport max_collisions_bound(std::size_t n, std::size_t d, double alpha, const TauChoice& tau,
                                        const std::string& alpha_source = "user-value") {
  if (n < 1 || d < 1) throw std::invalid_argument("n and d must be at least 1");
  detail::require_alpha(alpha);
  if (tau.tau < 2) throw std::invalid_argument("tau must be at least 2");
  BoundReport r;
  r.kind = "general";
  r.n = n;
  r.d = d;
  r.alpha = alpha;
  r.alpha_source = alpha_source;
  r.tau = tau.tau;
  r.tau_source = tau.source;
  const auto ex = graph_exponent(tau.tau, n);
  r.exponent = ex.value();
  r.conservative_exponent = ex.conservative();
  r.log2_base = detail::general_log2_base(n, d, alpha);
  detail::finish(r, detail::general_base_high(n, d, HighFloat(alpha)));
  return r;
}

/// Same base with exponent m - 1 for an m-edge graph.
inline BoundReport per_edge_bound(std::size_t m, std::size_t n, std::size_t d, double alpha) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (n < 1 || d < 1) throw std::invalid_argument("n and d must be at least 1");
  detail::require_alpha(alpha);
  BoundReport r;
  r.kind = "per-edge";
  r.n = n;
  r.d = d;
  r.alpha = alpha;
  r.alpha_source = "user-value";
  r.exponent = static_cast<double>(m - 1);
  r.conservative_exponent = BigInt(m - 1);
  r.log2_base = detail::general_log2_base(n, d, alpha);
  detail::finish(r, detail::general_base_high(n, d, HighFloat(alpha)));
  return r;
}

enum class TreeConstant { paper, corrected };

/// Tree configurations: alpha >= 4/n (as originally stated) or sqrt2/n (corrected), giving
/// bases 2^{17/2} d n^6 and 2^{10} d n^6.
inline BoundReport tree_bound(std::size_t n, std::size_t d, TreeConstant mode, const TauChoice& tau) {
  if (n < 1 || d < 1) throw std::invalid_argument("n and d must be at least 1");
  BoundReport r;
  r.kind = mode == TreeConstant::paper ? "tree-paper" : "tree-corrected";
  r.n = n;
  r.d = d;
  r.alpha = mode == TreeConstant::paper ? tree_alpha_bound_paper(n) : tree_alpha_bound_corrected(n);
  r.alpha_source = mode == TreeConstant::paper ? "tree-bound-paper" : "tree-bound-corrected";
  r.tau = tau.tau;
  r.tau_source = tau.source;
  const auto ex = graph_exponent(tau.tau, n);
  r.exponent = ex.value();
  r.conservative_exponent = ex.conservative();
  const double c = mode == TreeConstant::paper ? 8.5 : 10.0;
  r.log2_base = c + std::log2(static_cast<double>(d)) + 6.0 * std::log2(static_cast<double>(n));
  const HighFloat base = boost::multiprecision::pow(HighFloat(2), HighFloat(c)) * HighFloat(d) *
                         boost::multiprecision::pow(HighFloat(n), 6);
  detail::finish(r, base);
  return r;
}

struct LatticeBoundReport {
  BoundReport exact;    // (2^{21/2} 2 n^5 (432/sqrt3) 4^{4n} sqrt n)^{3n-1}
  BoundReport rounded;  // (10^6 n^{11/2} 4^{4n})^{3n-1}
  bool exact_below_rounded = false;
};

inline LatticeBoundReport lattice_bound(std::size_t n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const double nn = static_cast<double>(n);
  LatticeBoundReport out;
  for (BoundReport* r : {&out.exact, &out.rounded}) {
    r->n = n;
    r->d = 2;
    r->tau = BigInt(6);
    r->tau_source = "external-table";
    r->exponent = static_cast<double>(3 * n - 1);
    r->conservative_exponent = BigInt(3 * n - 1);
  }
  out.exact.kind = "lattice-exact";
  out.exact.alpha = lattice_alpha_lower_bound(n).value();
  out.exact.alpha_source = "lattice-bound";
  out.exact.log2_base = 15.5 + 2.5 * std::log2(3.0) + 5.5 * std::log2(nn) + 8.0 * nn;
  const HighFloat hn(n);
  const HighFloat exact_base = boost::multiprecision::pow(HighFloat(2), HighFloat(10.5)) * 2 *
                               boost::multiprecision::pow(hn, 5) * (HighFloat(432) / high_sqrt3()) *
                               boost::multiprecision::pow(HighFloat(4), HighFloat(4 * n)) *
                               boost::multiprecision::sqrt(hn);
  detail::finish(out.exact, exact_base);

  out.rounded.kind = "lattice-rounded";
  out.rounded.alpha_source = "lattice-bound";
  out.rounded.log2_base = 6.0 * std::log2(10.0) + 5.5 * std::log2(nn) + 8.0 * nn;
  const HighFloat rounded_base = HighFloat(1000000) * boost::multiprecision::pow(hn, HighFloat(5.5)) *
                                 boost::multiprecision::pow(HighFloat(4), HighFloat(4 * n));
  detail::finish(out.rounded, rounded_base);
  out.exact_below_rounded = exact_base < rounded_base;
  return out;
}

/// log2 of (32 sqrt(m) r n^{3/2})^{n^2} and (400 m n^2)^{2 n^4}.
struct ReferenceBounds {
  double log2_first = 0.0;
  double log2_second = 0.0;
};

inline ReferenceBounds reference_bounds(std::size_t n, double mass_ratio, double radius_ratio) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (!(mass_ratio >= 1.0) || !(radius_ratio >= 1.0)) throw std::invalid_argument("ratios must be at least 1");
  const double nn = static_cast<double>(n);
  ReferenceBounds r;
  r.log2_first = nn * nn * (5.0 + 0.5 * std::log2(mass_ratio) + std::log2(radius_ratio) + 1.5 * std::log2(nn));
  r.log2_second = 2.0 * nn * nn * nn * nn * (std::log2(400.0) + std::log2(mass_ratio) + 2.0 * std::log2(nn));
  return r;
}

/// n^3 / 27, a lower envelope on the worst-case collision count.
inline double lower_bound_reference(std::size_t n) {
  if (n < 3) throw TooFewBalls("the n^3/27 reference needs n >= 3 (got " + std::to_string(n) + ")");
  const double nn = static_cast<double>(n);
  return nn * nn * nn / 27.0;
}

/// log2(2^a + 2^b)
inline double log2_add(double a, double b) {
  if (a < b) std::swap(a, b);
  return a + std::log2(1.0 + std::exp2(b - a));
}

/// f(n) >= f(n_1) + ... + f(n_k) for f(k) = max_collisions_bound(k, d, alpha, tau).
inline bool superadditivity_check(const std::vector<std::size_t>& parts, std::size_t d, double alpha,
                                  const TauChoice& tau) {
  if (parts.empty()) throw std::invalid_argument("partition must be non-empty");
  std::size_t n = 0;
  for (auto p : parts) {
    if (p < 1) throw std::invalid_argument("partition parts must be positive");
    n += p;
  }
  const double whole = max_collisions_bound(n, d, alpha, tau).log2_bound;
  double sum = max_collisions_bound(parts.front(), d, alpha, tau).log2_bound;
  for (std::size_t k = 1; k < parts.size(); ++k) sum = log2_add(sum, max_collisions_bound(parts[k], d, alpha, tau).log2_bound);
  return whole >= sum - 1e-9 * std::max(1.0, std::abs(whole));
}

/// Every partition of n into positive parts, non-increasing order.
inline std::vector<std::vector<std::size_t>> integer_partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t rest, std::size_t cap) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t p = std::min(rest, cap); p >= 1; --p) {
      cur.push_back(p);
      self(self, rest - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// Product of atoms raised to rational powers; atoms are primes ("2", "3", "5", ...)
/// or symbols ("d", "n", "2^n"). Used for exact substitution identities.
class PowerProduct {
 public:
  using Exponent = boost::rational<long long>;

  PowerProduct() = default;

  static PowerProduct atom(const std::string& name, Exponent e = 1) {
    PowerProduct p;
    p.set(name, e);
    return p;
  }

  /// Prime factorization of a positive integer.
  static PowerProduct integer(long long value) {
    if (value < 1) throw std::invalid_argument("only positive integers factor into a power product");
    PowerProduct p;
    for (long long q = 2; q * q <= value; ++q)
      while (value % q == 0) {
        p.set(std::to_string(q), p.exponent(std::to_string(q)) + 1);
        value /= q;
      }
    if (value > 1) p.set(std::to_string(value), p.exponent(std::to_string(value)) + 1);
    return p;
  }

  Exponent exponent(const std::string& name) const {
    auto it = terms_.find(name);
    return it == terms_.end() ? Exponent(0) : it->second;
  }

  PowerProduct pow(Exponent e) const {
    PowerProduct p;
    for (const auto& [k, v] : terms_) p.set(k, v * e);
    return p;
  }

  PowerProduct inverse() const { return pow(-1); }

  friend PowerProduct operator*(const PowerProduct& a, const PowerProduct& b) {
    PowerProduct p = a;
    for (const auto& [k, v] : b.terms_) p.set(k, p.exponent(k) + v);
    return p;
  }
  friend PowerProduct operator/(const PowerProduct& a, const PowerProduct& b) { return a * b.inverse(); }
  friend bool operator==(const PowerProduct& a, const PowerProduct& b) { return a.terms_ == b.terms_; }

  const std::map<std::string, Exponent>& terms() const { return terms_; }

  /// Numeric log2 given values for the symbolic atoms.
  double log2(const std::map<std::string, double>& symbols) const {
    double s = 0.0;
    for (const auto& [k, v] : terms_) {
      double atom_value;
      if (auto it = symbols.find(k); it != symbols.end()) atom_value = it->second;
      else atom_value = std::stod(k);
      s += boost::rational_cast<double>(v) * std::log2(atom_value);
    }
    return s;
  }

  std::string to_string() const {
    if (terms_.empty()) return "1";
    std::string s;
    for (const auto& [k, v] : terms_) {
      if (!s.empty()) s += " * ";
      s += k;
      if (v != Exponent(1)) {
        s += "^";
        s += v.denominator() == 1 ? std::to_string(v.numerator())
                                  : "(" + std::to_string(v.numerator()) + "/" + std::to_string(v.denominator()) + ")";
      }
    }
    return s;
  }

 private:
  void set(const std::string& name, Exponent e) {
    if (e == Exponent(0)) terms_.erase(name);
    else terms_[name] = e;
  }
  std::map<std::string, Exponent> terms_;
};

/// 2^{21/2} d n^5 alpha^{-1}, the general base as a power product.
inline PowerProduct symbolic_general_base(const PowerProduct& d, const PowerProduct& alpha) {
  return PowerProduct::atom("2", {21, 2}) * d * PowerProduct::atom("n", 5) * alpha.inverse();
}

/// 4/n and sqrt2/n.
inline PowerProduct symbolic_tree_alpha(TreeConstant mode) {
  return mode == TreeConstant::paper ? PowerProduct::integer(4) * PowerProduct::atom("n", -1)
                                     : PowerProduct::atom("2", {1, 2}) * PowerProduct::atom("n", -1);
}

/// (sqrt3/432) 4^{-4n} n^{-1/2}, with 4^n written (2^n)^2.
inline PowerProduct symbolic_lattice_alpha() {
  return PowerProduct::atom("3", {1, 2}) / PowerProduct::integer(432) * PowerProduct::atom("2^n", -8) *
         PowerProduct::atom("n", {-1, 2});
}

}  // namespace pinball
