#pragma once

// Greedy and exhaustive exploration of collision schedules. Every witness is
// an explicit schedule that replays through run_schedule to the same count.

#include "pinball/dynamics.hpp"
#include "pinball/errors.hpp"
#include "pinball/geometry.hpp"

#include <boost/container_hash/hash.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

namespace pinball {

struct SearchResult {
  std::size_t best = 0;         // Lambda_best
  std::vector<Edge> witness;    // schedule reaching it, only state-changing steps
  std::size_t nodes = 0;
  std::string method;           // exhaustive | greedy | random-restart
  bool complete = true;         // false when a cap cut the search short
  std::optional<double> log2_bound;
  bool within_bound() const { return !log2_bound || std::log2(static_cast<double>(std::max<std::size_t>(best, 1))) <= *log2_bound; }
};

class BudgetExceeded : public DomainError {
 public:
  explicit BudgetExceeded(SearchResult partial)
      : DomainError("search node budget exceeded after " + std::to_string(partial.nodes) + " nodes (best so far " +
                    std::to_string(partial.best) + ")"),
        partial_(std::move(partial)) {}
  const SearchResult& partial() const { return partial_; }

 private:
  SearchResult partial_;
};

struct SearchOptions {
  std::size_t depth_cap = 20;
  std::size_t max_branching = 6;
  std::size_t node_budget = 50'000'000;
  double quantum = 1e-12;
  double change_tolerance = 1e-14;
};

namespace detail {

/// A candidate step: collide along e and keep it only if the state moves.
inline std::optional<StateVector> changing_step(const BallConfiguration& config, const StateVector& v, const Edge& e,
                                                double change_tolerance) {
  if (!approaching(config, v, e.i, e.j)) return std::nullopt;
  StateVector next = collide(config, v, e);
  if (max_abs_difference(next.vector(), v.vector()) <= change_tolerance) return std::nullopt;
  return next;
}

struct MemoKey {
  std::vector<long long> cells;
  std::size_t depth = 0;
  bool operator==(const MemoKey&) const = default;
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const {
    std::size_t h = boost::hash_range(k.cells.begin(), k.cells.end());
    boost::hash_combine(h, k.depth);
    return h;
  }
};

inline MemoKey quantize(const StateVector& v, std::size_t depth, double quantum) {
  MemoKey k;
  k.depth = depth;
  k.cells.reserve(static_cast<std::size_t>(v.vector().size()));
  for (Eigen::Index i = 0; i < v.vector().size(); ++i) k.cells.push_back(std::llround(v.vector()[i] / quantum));
  return k;
}

}  // namespace detail

enum class GreedyPolicy { lexicographic, seeded_random };

/// Repeatedly applies the first (or a random) approaching pair until no pair approaches.
inline SearchResult greedy_schedule(const BallConfiguration& config, const StateVector& state0,
                                    GreedyPolicy policy = GreedyPolicy::lexicographic, std::uint64_t seed = 0,
                                    std::size_t max_steps = 1'000'000, double change_tolerance = 1e-14) {
  require_compatible(config, state0);
  SearchResult r;
  r.method = "greedy";
  std::mt19937_64 rng(seed);
  StateVector v = state0;
  const auto& edges = config.touching_pairs();
  while (r.best < max_steps) {
    std::vector<std::pair<Edge, StateVector>> moves;
    for (const auto& e : edges) {
      auto next = detail::changing_step(config, v, e, change_tolerance);
      if (!next) continue;
      moves.emplace_back(e, std::move(*next));
      if (policy == GreedyPolicy::lexicographic) break;
    }
    ++r.nodes;
    if (moves.empty()) return r;
    std::size_t pick = 0;
    if (policy == GreedyPolicy::seeded_random) pick = std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng);
    r.witness.push_back(moves[pick].first);
    v = std::move(moves[pick].second);
    ++r.best;
  }
  r.complete = false;
  return r;
}

/// Maximum number of state-changing collisions over all schedules of length
/// at most depth_cap, by depth-first search with a memo on quantized states.
inline SearchResult exhaustive_max_collisions(const BallConfiguration& config, const StateVector& state0,
                                              SearchOptions options = {}) {
  require_compatible(config, state0);
  const auto& edges = config.touching_pairs();
  if (edges.size() > options.max_branching) throw TooManyEdges(edges.size(), options.max_branching);

  struct Entry {
    std::size_t value = 0;
    std::optional<std::size_t> move;  // index into edges
  };
  std::unordered_map<detail::MemoKey, Entry, detail::MemoKeyHash> memo;

  SearchResult r;
  r.method = "exhaustive";
  std::vector<Edge> path;
  bool capped = false;

  auto dfs = [&](auto&& self, const StateVector& v, std::size_t depth_left) -> std::size_t {
    if (++r.nodes > options.node_budget) {
      r.complete = false;
      throw BudgetExceeded(r);
    }
    if (depth_left == 0) {
      for (const auto& e : edges)
        if (detail::changing_step(config, v, e, options.change_tolerance)) {
          capped = true;
          break;
        }
      return 0;
    }
    auto key = detail::quantize(v, depth_left, options.quantum);
    if (auto it = memo.find(key); it != memo.end()) return it->second.value;
    Entry best;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      auto next = detail::changing_step(config, v, edges[k], options.change_tolerance);
      if (!next) continue;
      path.push_back(edges[k]);
      if (path.size() > r.best) {
        r.best = path.size();
        r.witness = path;
      }
      const std::size_t value = 1 + self(self, *next, depth_left - 1);
      path.pop_back();
      if (value > best.value) best = {value, k};
    }
    memo.emplace(std::move(key), best);
    return best.value;
  };

  const std::size_t best = dfs(dfs, state0, options.depth_cap);

  // Rebuild the witness by following the memoized choices.
  r.witness.clear();
  StateVector v = state0;
  for (std::size_t depth = options.depth_cap; depth > 0; --depth) {
    auto it = memo.find(detail::quantize(v, depth, options.quantum));
    if (it == memo.end() || !it->second.move) break;
    const Edge e = edges[*it->second.move];
    r.witness.push_back(e);
    v = collide(config, v, e);
  }
  r.best = best;
  r.complete = !capped;
  return r;
}

/// Replays a witness and returns the collision count.
inline std::size_t replay_count(const BallConfiguration& config, const StateVector& state0,
                                const std::vector<Edge>& witness) {
  TraceOptions opts;
  opts.record_states = false;
  opts.record_steps = false;
  return run_schedule(config, state0, Schedule::explicit_list(witness), opts).collisions;
}

/// Uniformly distributed unit vector in R^{nd}, read as a unit-energy state.
inline StateVector random_unit_state(std::size_t n, std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(n * d));
  do {
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = g(rng);
  } while (v.norm() == 0.0);
  return StateVector(n, d, v / v.norm());
}

struct SweepRow {
  std::size_t sample = 0;
  std::size_t collisions = 0;
  std::size_t running_max = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SearchResult best;  // the overall best, with its starting state
  std::optional<StateVector> best_state;
};

enum class SweepMethod { exhaustive, greedy };

/// Search from `samples` random unit-energy velocities; reports the running maximum.
inline SweepResult velocity_sweep(const BallConfiguration& config, std::size_t samples, std::uint64_t seed,
                                  SweepMethod method = SweepMethod::exhaustive, SearchOptions options = {}) {
  if (samples < 1) throw std::invalid_argument("samples must be at least 1");
  std::mt19937_64 rng(seed);
  SweepResult out;
  out.best.method = method == SweepMethod::exhaustive ? "exhaustive" : "greedy";
  for (std::size_t s = 0; s < samples; ++s) {
    const StateVector v = random_unit_state(config.size(), config.dimension(), rng);
    SearchResult r = method == SweepMethod::exhaustive ? exhaustive_max_collisions(config, v, options)
                                                       : greedy_schedule(config, v);
    if (s == 0 || r.best > out.best.best) {
      out.best = r;
      out.best_state = v;
    }
    out.rows.push_back({s + 1, r.best, out.best.best});
  }
  out.best.method = "random-restart";
  return out;
}

}  // namespace pinball
