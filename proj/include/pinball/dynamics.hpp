#pragma once

// Pseudo-collisions of pinned balls, schedule execution and the monotone
// functional F(t).

#include "pinball/errors.hpp"
#include "pinball/foldings.hpp"
#include "pinball/geometry.hpp"
#include "pinball/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace pinball {

struct CollisionOptions {
  /// A touching pair collides when (v_i - v_j).(x_i - x_j) < -approach_epsilon.
  double approach_epsilon = 0.0;
};

inline double approach_rate(const BallConfiguration& config, const StateVector& state, std::size_t i,
                            std::size_t j) {
  return (state.block(i) - state.block(j)).dot(config.center(i) - config.center(j));
}

inline bool approaching(const BallConfiguration& config, const StateVector& state, std::size_t i, std::size_t j,
                        double approach_epsilon = 0.0) {
  return config.touching(i, j) && approach_rate(config, state, i, j) < -approach_epsilon;
}

/// T_ij: touching and approaching balls exchange the velocity components
/// parallel to the line of centers; everything else is left alone.
inline StateVector collide(const BallConfiguration& config, const StateVector& state, std::size_t i, std::size_t j,
                           CollisionOptions options = {}) {
  require_compatible(config, state);
  if (i == j) throw std::invalid_argument("a collision needs two distinct balls");
  if (!approaching(config, state, i, j, options.approach_epsilon)) return state;
  const Vector diff = config.center(i) - config.center(j);
  const Vector u = diff / diff.norm();
  const Vector vi = state.block(i);
  const Vector vj = state.block(j);
  const double ui = vi.dot(u);
  const double uj = vj.dot(u);
  StateVector out = state;
  out.block(i) = vi + (uj - ui) * u;
  out.block(j) = vj + (ui - uj) * u;
  return out;
}

inline StateVector collide(const BallConfiguration& config, const StateVector& state, const Edge& e,
                           CollisionOptions options = {}) {
  return collide(config, state, e.i, e.j, options);
}

/// The same map computed as the folding of R^{nd} along H_ij = {w : w.z_ij >= 0}.
inline StateVector collide_as_folding(const BallConfiguration& config, const StateVector& state, std::size_t i,
                                      std::size_t j, CollisionOptions options = {}) {
  require_compatible(config, state);
  if (i == j) throw std::invalid_argument("a collision needs two distinct balls");
  if (!config.touching(i, j)) return state;
  const HalfSpace h(collision_direction(config, i, j).z);
  if (options.approach_epsilon == 0.0) return StateVector(state.balls(), state.dimension(), fold(state.vector(), h));
  // The approach rate equals |z~| (v . z).
  const double scale = unnormalized_direction(config, i, j).norm();
  const double s = h.signed_distance(state.vector());
  if (s >= -options.approach_epsilon / scale) return state;
  return StateVector(state.balls(), state.dimension(), state.vector() - 2.0 * s * h.normal());
}

inline StateVector collide_as_folding(const BallConfiguration& config, const StateVector& state, const Edge& e,
                                      CollisionOptions options = {}) {
  return collide_as_folding(config, state, e.i, e.j, options);
}

/// Exogenous collision order: an explicit finite list, or a policy that
/// generates steps from a governing edge set.
struct Schedule {
  enum class Policy { explicit_steps, round_robin, lexicographic_greedy, seeded_random };

  Policy policy = Policy::explicit_steps;
  std::vector<Edge> steps;
  std::vector<Edge> edges;
  std::uint64_t seed = 0;

  static Schedule explicit_list(std::vector<Edge> s) { return {Policy::explicit_steps, std::move(s), {}, 0}; }
  static Schedule round_robin(const ContactGraph& g) { return {Policy::round_robin, {}, g.edges(), 0}; }
  static Schedule lexicographic_greedy(const ContactGraph& g) {
    return {Policy::lexicographic_greedy, {}, g.edges(), 0};
  }
  static Schedule seeded_random(const ContactGraph& g, std::uint64_t seed) {
    return {Policy::seeded_random, {}, g.edges(), seed};
  }
};

inline std::string to_string(Schedule::Policy p) {
  switch (p) {
    case Schedule::Policy::explicit_steps: return "explicit";
    case Schedule::Policy::round_robin: return "round-robin";
    case Schedule::Policy::lexicographic_greedy: return "lexicographic-greedy";
    case Schedule::Policy::seeded_random: return "seeded-random";
  }
  return "unknown";
}

struct TraceStep {
  std::size_t t = 0;
  Edge edge;
  bool changed = false;
  double functional = 0.0;
  double energy = 0.0;
};

struct SimulationTrace {
  std::vector<StateVector> states;  // v(0..T), when recorded
  std::vector<TraceStep> steps;     // t = 1..T, when recorded
  std::vector<double> functional;   // F(0..T), when recorded
  std::size_t length = 0;           // T
  std::size_t collisions = 0;       // Lambda
  bool stabilized = false;
  std::optional<StateVector> final_state;
};

struct TraceOptions {
  std::size_t max_steps = 1'000'000;
  bool record_states = true;
  bool record_steps = true;
  double approach_epsilon = 0.0;
  /// v(t) != v(t-1) is decided on the max-norm against this tolerance.
  double change_tolerance = 1e-14;
};

/// F = 2n x.v for normalized positions (sum of centers = 0).
inline double monotone_functional(const BallConfiguration& config, const StateVector& state) {
  require_compatible(config, state);
  Vector sum = Vector::Zero(static_cast<Eigen::Index>(config.dimension()));
  double scale = 1.0;
  for (const auto& c : config.centers()) {
    sum += c;
    scale = std::max(scale, c.cwiseAbs().maxCoeff());
  }
  if (sum.norm() > 1e-9 * scale * static_cast<double>(config.size()))
    throw NotNormalized("centers must sum to zero (|sum| = " + std::to_string(sum.norm()) + ")");
  return 2.0 * static_cast<double>(config.size()) * config.stacked_centers().dot(state.vector());
}

/// Direct evaluation of sum_{i,j} (v_j - v_i).(x_j - x_i); no normalization needed.
inline double monotone_functional_double_sum(const BallConfiguration& config, const StateVector& state) {
  require_compatible(config, state);
  double f = 0.0;
  for (std::size_t i = 0; i < config.size(); ++i)
    for (std::size_t j = 0; j < config.size(); ++j)
      f += (state.block(j) - state.block(i)).dot(config.center(j) - config.center(i));
  return f;
}

namespace detail {

/// 2n sum_k v_k.(x_k - mean); equals the double sum for any placement.
inline double centered_functional(const BallConfiguration& config, const StateVector& state) {
  Vector mean = Vector::Zero(static_cast<Eigen::Index>(config.dimension()));
  for (const auto& c : config.centers()) mean += c;
  mean /= static_cast<double>(config.size());
  double f = 0.0;
  for (std::size_t k = 0; k < config.size(); ++k) f += state.block(k).dot(config.center(k) - mean);
  return 2.0 * static_cast<double>(config.size()) * f;
}

}  // namespace detail

/// True when no edge of `edges` has an approaching pair; every further
/// collision along these edges is then the identity.
inline bool is_stable(const BallConfiguration& config, const StateVector& state, const std::vector<Edge>& edges,
                      double approach_epsilon = 0.0) {
  for (const auto& e : edges)
    if (approaching(config, state, e.i, e.j, approach_epsilon)) return false;
  return true;
}

inline void validate_schedule(const BallConfiguration& config, const Schedule& schedule) {
  auto check = [&](const Edge& e) {
    if (e.i == e.j || e.j >= config.size() || !config.touching(e.i, e.j))
      throw InvalidSchedule("schedule references (" + std::to_string(e.i + 1) + "," + std::to_string(e.j + 1) +
                            "), which is not an edge of the contact graph");
  };
  for (const auto& e : schedule.steps) check(e);
  for (const auto& e : schedule.edges) check(e);
}

/// v(t) = T_{gamma_t}(v(t-1)). Policy schedules stop as soon as the state
/// is stable for the governing edge set.
inline SimulationTrace run_schedule(const BallConfiguration& config, const StateVector& state0,
                                    const Schedule& schedule, TraceOptions options = {}) {
  require_compatible(config, state0);
  validate_schedule(config, schedule);
  const CollisionOptions copts{options.approach_epsilon};

  SimulationTrace trace;
  StateVector v = state0;
  if (options.record_states) trace.states.push_back(v);
  if (options.record_steps) trace.functional.push_back(detail::centered_functional(config, v));

  std::mt19937_64 rng(schedule.seed);
  const bool is_policy = schedule.policy != Schedule::Policy::explicit_steps;
  if (is_policy && schedule.edges.empty()) {
    trace.stabilized = true;
    trace.final_state = v;
    return trace;
  }
  std::uniform_int_distribution<std::size_t> pick(0, is_policy ? schedule.edges.size() - 1 : 0);

  const std::size_t limit =
      is_policy ? options.max_steps : std::min(options.max_steps, schedule.steps.size());
  for (std::size_t t = 1; t <= limit; ++t) {
    Edge e;
    switch (schedule.policy) {
      case Schedule::Policy::explicit_steps: e = schedule.steps[t - 1]; break;
      case Schedule::Policy::round_robin: e = schedule.edges[(t - 1) % schedule.edges.size()]; break;
      case Schedule::Policy::seeded_random: e = schedule.edges[pick(rng)]; break;
      case Schedule::Policy::lexicographic_greedy: {
        bool found = false;
        for (const auto& cand : schedule.edges) {
          if (approaching(config, v, cand.i, cand.j, options.approach_epsilon)) {
            e = cand;
            found = true;
            break;
          }
        }
        if (!found) {
          trace.stabilized = true;
          trace.final_state = v;
          return trace;
        }
        break;
      }
    }
    StateVector next = collide(config, v, e, copts);
    const bool changed = max_abs_difference(next.vector(), v.vector()) > options.change_tolerance;
    v = std::move(next);
    trace.length = t;
    if (changed) ++trace.collisions;
    if (options.record_states) trace.states.push_back(v);
    if (options.record_steps) {
      const double f = detail::centered_functional(config, v);
      trace.functional.push_back(f);
      trace.steps.push_back({t, e, changed, f, v.energy()});
    }
    if (is_policy && !changed && schedule.policy != Schedule::Policy::lexicographic_greedy &&
        is_stable(config, v, schedule.edges, options.approach_epsilon)) {
      trace.stabilized = true;
      trace.final_state = v;
      return trace;
    }
  }

  if (is_policy) {
    trace.stabilized = is_stable(config, v, schedule.edges, options.approach_epsilon);
  } else {
    std::vector<Edge> visited(schedule.steps.begin(), schedule.steps.begin() + static_cast<std::ptrdiff_t>(limit));
    std::sort(visited.begin(), visited.end());
    visited.erase(std::unique(visited.begin(), visited.end()), visited.end());
    trace.stabilized = is_stable(config, v, visited, options.approach_epsilon);
  }
  trace.final_state = v;
  return trace;
}

/// v = v^{capG} + v^G with v^G the orthogonal projection onto
/// span{z_jk : (j,k) in the graph}.
struct StateDecomposition {
  Vector intersection_part;  // v^{capG}
  Vector graph_part;         // v^G
};

inline StateDecomposition decompose_state(const BallConfiguration& config, const ContactGraph& graph,
                                          const StateVector& state) {
  require_compatible(config, state);
  const auto dirs = collision_directions(config, graph.edges());
  const Matrix span = columns_to_matrix(dirs, state.vector().size());
  Vector g = project_onto_columns(state.vector(), span);
  return {state.vector() - g, std::move(g)};
}

}  // namespace pinball
