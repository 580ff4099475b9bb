#pragma once

// Folding maps of R^m and their orbits.

#include "pinball/errors.hpp"
#include "pinball/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace pinball {

/// Closed half-space {v : v . h >= 0} with unit normal h.
class HalfSpace {
 public:
  explicit HalfSpace(Vector unit_normal) : normal_(std::move(unit_normal)) {
    if (std::abs(normal_.norm() - 1.0) > 1e-12)
      throw DimensionMismatch("half-space normal must have unit length");
  }

  /// Normalizes an arbitrary non-zero direction.
  static HalfSpace from_direction(const Vector& direction) {
    const double n = direction.norm();
    if (!(n > 0.0)) throw DimensionMismatch("half-space normal must be non-zero");
    return HalfSpace(direction / n);
  }

  const Vector& normal() const { return normal_; }
  Eigen::Index dimension() const { return normal_.size(); }

  /// Signed distance to the boundary hyperplane.
  double signed_distance(const Vector& v) const { return v.dot(normal_); }
  bool contains(const Vector& v, double margin = 0.0) const { return signed_distance(v) >= -margin; }

 private:
  Vector normal_;
};

/// Identity on H, reflection in the boundary hyperplane outside H.
inline Vector fold(const Vector& v, const HalfSpace& h) {
  const double s = v.dot(h.normal());
  if (s >= 0.0) return v;
  return v - 2.0 * s * h.normal();
}

/// Finite stand-in for an infinite index sequence (i_j).
struct FoldingPolicy {
  enum class Kind { round_robin, periodic, seeded_random };

  Kind kind = Kind::round_robin;
  std::vector<std::size_t> word;  // used by Kind::periodic
  std::uint64_t seed = 0;         // used by Kind::seeded_random

  static FoldingPolicy round_robin() { return {}; }
  static FoldingPolicy periodic(std::vector<std::size_t> w) { return {Kind::periodic, std::move(w), 0}; }
  static FoldingPolicy seeded_random(std::uint64_t s) { return {Kind::seeded_random, {}, s}; }
};

inline std::string to_string(FoldingPolicy::Kind k) {
  switch (k) {
    case FoldingPolicy::Kind::round_robin: return "round-robin";
    case FoldingPolicy::Kind::periodic: return "periodic";
    case FoldingPolicy::Kind::seeded_random: return "seeded-random";
  }
  return "unknown";
}

struct OrbitResult {
  /// Distinct points in visiting order; points.front() is the start.
  std::vector<Vector> points;
  /// Number of distinct points (kept even when points are not recorded).
  std::size_t size = 0;
  /// Index k with v_j = v_k for all j >= k; empty if the budget ran out.
  std::optional<std::size_t> stabilization_index;
  Vector final_point;
  std::size_t steps = 0;

  bool stabilized() const { return stabilization_index.has_value(); }
};

/// Raised when the step budget runs out before the stabilization
/// certificate holds. Carries the partial orbit.
class BudgetExhausted : public DomainError {
 public:
  explicit BudgetExhausted(OrbitResult partial_orbit)
      : DomainError("orbit did not stabilize within " + std::to_string(partial_orbit.steps) + " steps"),
        partial(std::move(partial_orbit)) {}

  OrbitResult partial;
};

inline constexpr double kStabilizationMargin = 1e-12;
inline constexpr double kWitnessMinMargin = 1e-12;

/// Smallest signed distance of `witness` to the boundaries. Throws
/// NoInteriorWitness unless the witness is strictly inside every half-space.
inline double validate_interior_witness(const std::vector<HalfSpace>& halfspaces, const Vector& witness,
                                        double min_margin = kWitnessMinMargin) {
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& h : halfspaces) {
    if (h.dimension() != witness.size()) throw DimensionMismatch("witness dimension mismatch");
    margin = std::min(margin, h.signed_distance(witness));
  }
  if (!(margin > min_margin))
    throw NoInteriorWitness("witness margin " + std::to_string(margin) + " does not exceed " +
                            std::to_string(min_margin));
  return margin;
}

struct OrbitOptions {
  std::size_t budget = 1'000'000;
  bool record_points = true;
  bool throw_on_budget = true;
};

/// Iterates v_j = F_{H_{i_j}}(v_{j-1}) until v lies in every half-space the
/// policy can still apply (all later foldings are then identities).
inline OrbitResult orbit(const Vector& start, const std::vector<HalfSpace>& halfspaces, const FoldingPolicy& policy,
                         const Vector& witness, OrbitOptions options = {}) {
  if (halfspaces.empty()) throw DimensionMismatch("orbit needs at least one half-space");
  validate_interior_witness(halfspaces, witness);
  for (const auto& h : halfspaces)
    if (h.dimension() != start.size()) throw DimensionMismatch("start point dimension mismatch");

  std::vector<std::size_t> active;
  if (policy.kind == FoldingPolicy::Kind::periodic) {
    if (policy.word.empty()) throw DimensionMismatch("periodic policy needs a non-empty word");
    for (auto idx : policy.word) {
      if (idx >= halfspaces.size()) throw DimensionMismatch("policy word references a missing half-space");
      if (std::find(active.begin(), active.end(), idx) == active.end()) active.push_back(idx);
    }
  } else {
    for (std::size_t k = 0; k < halfspaces.size(); ++k) active.push_back(k);
  }

  auto settled = [&](const Vector& v) {
    for (auto k : active)
      if (!halfspaces[k].contains(v, kStabilizationMargin)) return false;
    return true;
  };

  std::mt19937_64 rng(policy.seed);
  std::uniform_int_distribution<std::size_t> pick(0, halfspaces.size() - 1);

  OrbitResult out;
  Vector v = start;
  if (options.record_points) out.points.push_back(v);
  out.size = 1;
  std::size_t last_change = 0;

  for (std::size_t step = 0;; ++step) {
    if (settled(v)) {
      out.stabilization_index = last_change;
      break;
    }
    if (step >= options.budget) break;
    std::size_t idx = 0;
    switch (policy.kind) {
      case FoldingPolicy::Kind::round_robin: idx = step % halfspaces.size(); break;
      case FoldingPolicy::Kind::periodic: idx = policy.word[step % policy.word.size()]; break;
      case FoldingPolicy::Kind::seeded_random: idx = pick(rng); break;
    }
    Vector next = fold(v, halfspaces[idx]);
    out.steps = step + 1;
    if (next != v) {
      v = std::move(next);
      last_change = step + 1;
      ++out.size;
      if (options.record_points) out.points.push_back(v);
    }
  }
  out.final_point = v;
  if (!out.stabilized() && options.throw_on_budget) throw BudgetExhausted(std::move(out));
  return out;
}

struct AdversarialOrbit {
  std::vector<HalfSpace> halfspaces;
  Vector start;
  FoldingPolicy schedule;
  Vector witness;
  double epsilon = 0.0;
  OrbitResult orbit;
};

/// Two half-planes with normals at angles 0 and pi - eps. The alternating
/// schedule rotates the start point by 2 eps per round trip, so the orbit
/// grows like pi / eps. eps starts at pi / (2m) and is halved until the
/// orbit has more than m points.
inline AdversarialOrbit adversarial_two_halfplanes(std::size_t m) {
  if (m < 1) throw DimensionMismatch("target orbit size must be at least 1");
  using std::numbers::pi;
  double eps = pi / (2.0 * static_cast<double>(m));
  for (;;) {
    Vector n1(2), n2(2);
    n1 << 1.0, 0.0;
    n2 << std::cos(pi - eps), std::sin(pi - eps);
    std::vector<HalfSpace> hs{HalfSpace::from_direction(n1), HalfSpace::from_direction(n2)};
    // The wedge H1 and H2 spans polar angles [pi/2 - eps, pi/2].
    Vector witness(2);
    witness << std::cos(pi / 2 - eps / 2), std::sin(pi / 2 - eps / 2);
    Vector start(2);
    start << std::cos(-pi / 2 + eps / 4), std::sin(-pi / 2 + eps / 4);
    auto policy = FoldingPolicy::periodic({0, 1});
    OrbitOptions opts;
    opts.budget = 64 * m + 1024;
    opts.throw_on_budget = false;
    auto result = orbit(start, hs, policy, witness, opts);
    if (result.stabilized() && result.size > m)
      return {std::move(hs), std::move(start), std::move(policy), std::move(witness), eps, std::move(result)};
    eps /= 2.0;
  }
}

}  // namespace pinball
