#pragma once

// The acceptance checks, one function per criterion. Each returns a result
// line with the observed worst case, so failures are diagnosable from the
// summary alone.

#include "pinball/bounds.hpp"
#include "pinball/dynamics.hpp"
#include "pinball/foldings.hpp"
#include "pinball/geometry.hpp"
#include "pinball/lattice.hpp"
#include "pinball/rigidity.hpp"
#include "pinball/sampling.hpp"
#include "pinball/search.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace pinball {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

namespace detail {

template <class Body>
CriterionResult timed(int id, std::string title, double limit, Body&& body) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  r.limit_seconds = limit;
  const auto start = std::chrono::steady_clock::now();
  try {
    std::ostringstream detail;
    r.passed = body(detail);
    r.detail = detail.str();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.seconds > limit) {
    r.passed = false;
    r.detail += " [over time limit]";
  }
  return r;
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Contact configuration for the randomized checks: lattice patches in
/// d = 2 half of the time (cycles and rigid pieces), grown trees otherwise.
inline BallConfiguration mixed_configuration(std::size_t n, std::size_t d, Rng& rng) {
  if (d == 2 && uniform(rng, 0, 1) == 0) return random_lattice_configuration(n, rng).to_configuration();
  return random_contact_configuration(n, d, rng);
}

}  // namespace detail

inline constexpr double kFoldingTolerance = 1e-12;
inline constexpr double kConservationTolerance = 1e-12;
inline constexpr double kJumpTolerance = 1e-9;
inline constexpr double kCertificateTolerance = 1e-9;
inline constexpr double kCollinearAlphaTolerance = 1e-12;
inline constexpr double kTreeTolerance = 1e-9;
inline constexpr double kLogAgreement = 1e-9;
inline constexpr double kDecompositionTolerance = 1e-12;

/// collide and collide_as_folding agree on random (config, state, edge) triples.
inline CriterionResult check_folding_equivalence(std::uint64_t seed, std::size_t trials = 10'000) {
  return detail::timed(1, "folding-collision equivalence", 10.0, [&](std::ostream& out) {
    Rng rng(seed);
    double worst = 0.0;
    std::size_t approaching_count = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t n = detail::uniform(rng, 2, 6);
      const std::size_t d = detail::uniform(rng, 1, 3);
      const auto config = detail::mixed_configuration(n, d, rng);
      const auto state = random_state(n, d, rng);
      const auto& edges = config.touching_pairs();
      const Edge e = edges[detail::uniform(rng, 0, edges.size() - 1)];
      if (approaching(config, state, e.i, e.j)) ++approaching_count;
      const auto a = collide(config, state, e);
      const auto b = collide_as_folding(config, state, e);
      worst = std::max(worst, max_abs_difference(a.vector(), b.vector()));
    }
    out << trials << " triples (" << approaching_count << " approaching), max |diff| = " << worst;
    return worst <= kFoldingTolerance && approaching_count > 0 && approaching_count < trials;
  });
}

/// Energy and momentum conservation, monotone F and both jump identities.
inline CriterionResult check_conservation(std::uint64_t seed, std::size_t traces = 1000, std::size_t max_length = 1000) {
  return detail::timed(2, "conservation and monotonicity", 30.0, [&](std::ostream& out) {
    Rng rng(seed);
    double energy_err = 0, momentum_err = 0, jump_abs_err = 0, jump_dot_err = 0, worst_drop = 0;
    std::size_t steps = 0, collisions = 0;
    for (std::size_t k = 0; k < traces; ++k) {
      const std::size_t n = detail::uniform(rng, 2, 6);
      const std::size_t d = detail::uniform(rng, 1, 3);
      const auto raw = detail::mixed_configuration(n, d, rng);
      const auto sys = normalize_system(raw, random_state(n, d, rng));
      const auto& config = sys.config;
      const auto& edges = config.touching_pairs();
      std::vector<Edge> list(detail::uniform(rng, 1, max_length));
      for (auto& e : list) e = edges[detail::uniform(rng, 0, edges.size() - 1)];
      const auto trace = run_schedule(config, sys.state, Schedule::explicit_list(list));
      const double e0 = sys.state.energy();
      const Vector p0 = sys.state.momentum();
      const double nn = static_cast<double>(n);
      for (std::size_t t = 1; t < trace.states.size(); ++t) {
        const auto& prev = trace.states[t - 1];
        const auto& cur = trace.states[t];
        const Edge e = trace.steps[t - 1].edge;
        energy_err = std::max(energy_err, std::abs(cur.energy() - e0));
        momentum_err = std::max(momentum_err, (cur.momentum() - p0).lpNorm<Eigen::Infinity>());
        const double f_prev = monotone_functional(config, prev);
        const double f_cur = monotone_functional(config, cur);
        worst_drop = std::max(worst_drop, f_prev - f_cur);
        const double jump = f_cur - f_prev;
        jump_abs_err = std::max(jump_abs_err, std::abs(jump - 4.0 * nn * (cur.block(e.i) - prev.block(e.i)).norm()));
        if (trace.steps[t - 1].changed) {
          ++collisions;
          const double predicted =
              2.0 * nn * (prev.block(e.j) - prev.block(e.i)).dot(config.center(e.i) - config.center(e.j));
          jump_dot_err = std::max(jump_dot_err, std::abs(jump - predicted));
        }
        ++steps;
      }
    }
    out << traces << " traces, " << steps << " steps, " << collisions << " collisions; energy err " << energy_err
        << ", momentum err " << momentum_err << ", worst F drop " << worst_drop << ", jump errs " << jump_abs_err
        << " / " << jump_dot_err;
    return energy_err <= kConservationTolerance && momentum_err <= kConservationTolerance &&
           worst_drop <= kConservationTolerance && jump_abs_err <= kJumpTolerance && jump_dot_err <= kJumpTolerance;
  });
}

/// Round-robin orbits of random families with an interior witness stabilize.
inline CriterionResult check_orbit_finiteness(std::uint64_t seed, std::size_t families = 1000) {
  return detail::timed(3, "orbit finiteness", 60.0, [&](std::ostream& out) {
    Rng rng(seed);
    std::size_t stabilized = 0, longest = 0, largest = 0;
    for (std::size_t k = 0; k < families; ++k) {
      const std::size_t m = detail::uniform(rng, 1, 5);
      const std::size_t d = detail::uniform(rng, 1, 4);
      const auto fam = random_halfspace_family(m, d, rng);
      validate_interior_witness(fam.halfspaces, fam.witness);
      OrbitOptions opts;
      opts.record_points = false;
      opts.throw_on_budget = false;
      const auto r = orbit(random_unit_vector(static_cast<Eigen::Index>(d), rng), fam.halfspaces,
                           FoldingPolicy::round_robin(), fam.witness, opts);
      if (r.stabilized()) ++stabilized;
      longest = std::max(longest, r.steps);
      largest = std::max(largest, r.size);
    }
    out << stabilized << "/" << families << " stabilized; max steps " << longest << ", max orbit size " << largest;
    return stabilized == families;
  });
}

/// Two half-planes with a thin wedge give orbits longer than any target.
inline CriterionResult check_unbounded_orbits() {
  return detail::timed(4, "unbounded orbits", 5.0, [&](std::ostream& out) {
    bool ok = true;
    for (std::size_t m : {10U, 100U, 1000U}) {
      const auto adv = adversarial_two_halfplanes(m);
      validate_interior_witness(adv.halfspaces, adv.witness);
      // Recompute independently: every recorded point is the fold of its predecessor by one half-plane.
      bool chain = adv.orbit.points.size() == adv.orbit.size;
      for (std::size_t k = 1; k < adv.orbit.points.size() && chain; ++k) {
        const auto& p = adv.orbit.points[k - 1];
        const auto& q = adv.orbit.points[k];
        const bool by0 = max_abs_difference(fold(p, adv.halfspaces[0]), q) <= 1e-12;
        const bool by1 = max_abs_difference(fold(p, adv.halfspaces[1]), q) <= 1e-12;
        chain = by0 || by1;
      }
      const bool settled = adv.halfspaces[0].contains(adv.orbit.final_point, kStabilizationMargin) &&
                           adv.halfspaces[1].contains(adv.orbit.final_point, kStabilizationMargin);
      out << "m=" << m << ": " << adv.orbit.size << " points (eps " << adv.epsilon << ") ";
      ok = ok && chain && settled && adv.orbit.stabilized() && adv.orbit.size > m;
    }
    return ok;
  });
}

/// alpha on hand-solved cases, then exact certificates against alpha_* on
/// every lattice configuration with n <= max_n.
inline CriterionResult check_alpha_exhaustive(std::size_t max_n = 5) {
  return detail::timed(5, "alpha exhaustive correctness", 60.0, [&](std::ostream& out) {
    // Two touching balls: z alone, alpha = |z| = 1.
    Vector a(1), b(1);
    a << -1.0;
    b << 1.0;
    const double two = alpha(BallConfiguration(1, {a, b})).alpha;
    // Collinear triple: distance from z_12 to span{z_23} is sqrt(1 - 1/4).
    Vector c(1);
    c << 3.0;
    const double three = alpha(BallConfiguration(1, {a, b, c})).alpha;
    const double three_err = std::abs(three - std::sqrt(3.0) / 2.0);
    out << "two-ball alpha " << std::setprecision(17) << two << ", collinear err " << std::setprecision(3)
        << three_err;
    bool ok = std::abs(two - 1.0) <= 2.0 * std::numeric_limits<double>::epsilon() && three_err <= kCollinearAlphaTolerance;

    std::size_t checked = 0, zero_agree = 0, tight = 0;
    double worst_excess = 0.0, worst_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t n = 2; n <= max_n; ++n) {
      const double floor_bound = lattice_alpha_lower_bound(n).value();
      for (const auto& lc : enumerate_lattice_animals(n)) {
        const auto config = lc.to_configuration();
        const auto& edges = lc.touching_pairs();
        for (std::size_t ci = 0; ci < edges.size(); ++ci) {
          std::vector<Edge> others;
          for (std::size_t k = 0; k < edges.size(); ++k)
            if (k != ci) others.push_back(edges[k]);
          for (std::uint32_t mask = 0; mask < (1U << others.size()); ++mask) {
            std::vector<Edge> set{edges[ci]};
            for (std::size_t k = 0; k < others.size(); ++k)
              if (mask & (1U << k)) set.push_back(others[k]);
            const double star = alpha_star(config, set, edges[ci]);
            const auto cert = exact_alpha_certificate(lc, set, edges[ci]);
            ++checked;
            const bool star_zero = star <= kAlphaZeroTolerance;
            if (star_zero == cert.zero) ++zero_agree;
            else ok = false;
            if (!cert.zero) {
              worst_excess = std::max(worst_excess, cert.lower_bound - star);
              worst_ratio = std::min(worst_ratio, cert.lower_bound / floor_bound);
              if (std::abs(cert.lower_bound - star) <= kCertificateTolerance) ++tight;
              if (cert.extension.empty() && std::abs(cert.lower_bound - star) > kCertificateTolerance) ok = false;
            }
          }
        }
      }
    }
    out << "; " << checked << " lattice certificates, zero pattern agrees on " << zero_agree << ", " << tight
        << " tight, max cert - alpha_* = " << worst_excess << ", min cert / floor = " << worst_ratio;
    return ok && worst_excess <= kCertificateTolerance && worst_ratio >= 1.0 && checked > 0;
  });
}

struct TreeAuditEntry {
  std::size_t n = 0;
  std::size_t d = 0;
  double alpha = 0.0;
};

/// alpha >= sqrt2/n on random trees; records where 4/n fails.
inline CriterionResult check_tree_bound(std::uint64_t seed, std::size_t trees = 200, std::size_t max_n = 8,
                                        std::vector<TreeAuditEntry>* paper_failures = nullptr) {
  return detail::timed(6, "tree-bound audit", 120.0, [&](std::ostream& out) {
    Rng rng(seed);
    std::vector<TreeAuditEntry> fails;
    double worst_slack = std::numeric_limits<double>::infinity();
    std::vector<BallConfiguration> configs;
    // The collinear triple is always included; it must show up as a 4/n failure.
    Vector x0(1), x1(1), x2(1);
    x0 << 0.0;
    x1 << 2.0;
    x2 << 4.0;
    configs.emplace_back(1, std::vector<Vector>{x0, x1, x2});
    while (configs.size() < trees)
      configs.push_back(random_tree_configuration(detail::uniform(rng, 2, max_n), detail::uniform(rng, 1, 3), rng));
    bool collinear_flagged = false;
    for (std::size_t k = 0; k < configs.size(); ++k) {
      const auto& config = configs[k];
      const std::size_t n = config.size();
      const double a = alpha(config).alpha;
      worst_slack = std::min(worst_slack, a - tree_alpha_bound_corrected(n));
      if (a < tree_alpha_bound_paper(n)) {
        fails.push_back({n, config.dimension(), a});
        if (k == 0) collinear_flagged = true;
      }
    }
    if (paper_failures) *paper_failures = fails;
    out << configs.size() << " trees, min alpha - sqrt2/n = " << worst_slack << "; 4/n fails on " << fails.size()
        << (collinear_flagged ? " (collinear n=3 flagged)" : " (collinear n=3 NOT flagged)");
    return worst_slack >= -kTreeTolerance && collinear_flagged;
  });
}

/// Determinant bounds, convergent inequalities and the quadratic lower bound.
inline CriterionResult check_lattice_machinery(std::uint64_t seed, std::size_t matrices = 1000,
                                               std::size_t scan_limit = 10'000) {
  return detail::timed(7, "lattice machinery", 60.0, [&](std::ostream& out) {
    Rng rng(seed);
    std::size_t bound_ok = 0, paths_agree = 0;
    for (std::size_t k = 0; k < matrices; ++k) {
      const auto mtx = random_conforming_matrix(detail::uniform(rng, 1, 8), rng);
      const auto rep = verify_det_bound(mtx);
      if (rep.rational_part_within && rep.sqrt3_part_within) ++bound_ok;
      if (determinant_cofactor(mtx) == determinant_bareiss(mtx)) ++paths_agree;
    }

    const auto conv = sqrt3_convergents(51);
    bool conv_ok = true;
    for (std::size_t k = 0; k <= 50; ++k) {
      const HighFloat gap = boost::multiprecision::abs(high_sqrt3() - HighFloat(conv[k].h) / HighFloat(conv[k].g));
      const HighFloat floor = HighFloat(1) / (HighFloat(conv[k].g) * (HighFloat(conv[k + 1].g) + HighFloat(conv[k].g)));
      if (!(gap > floor)) conv_ok = false;
      if (k >= 1 && conv[k].g > 3 * conv[k - 1].g) conv_ok = false;
    }

    // Exhaustive minimum of |r1 + r2 sqrt3| over 1 <= |r2| <= B: the best r1 is the nearest integer to r2 sqrt3.
    bool scan_ok = true;
    HighFloat running = std::numeric_limits<double>::infinity();
    double worst_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t bnd = 1; bnd <= scan_limit; ++bnd) {
      const HighFloat x = HighFloat(bnd) * high_sqrt3();
      const HighFloat near = boost::multiprecision::round(x);
      running = std::min(running, HighFloat(boost::multiprecision::abs(x - near)));
      const double lb = quadratic_lower_bound(BigInt(bnd)).value;
      const double exact_min = static_cast<double>(running);
      if (!(lb <= exact_min)) scan_ok = false;
      worst_ratio = std::min(worst_ratio, exact_min / lb);
    }
    out << bound_ok << "/" << matrices << " within bounds, " << paths_agree << "/" << matrices
        << " cofactor == Bareiss; convergents k<=50 " << (conv_ok ? "ok" : "FAILED") << "; lower bound vs scan B<="
        << scan_limit << " " << (scan_ok ? "ok" : "FAILED") << " (min ratio " << worst_ratio << ")";
    return bound_ok == matrices && paths_agree == matrices && conv_ok && scan_ok;
  });
}

/// Symbolic substitutions, exact-vs-rounded lattice bound and log-space accuracy.
inline CriterionResult check_bound_consistency() {
  return detail::timed(8, "bound consistency", 5.0, [&](std::ostream& out) {
    const auto d = PowerProduct::atom("d");
    const auto n = PowerProduct::atom("n");
    const bool tree_ok = symbolic_general_base(d, symbolic_tree_alpha(TreeConstant::paper)) ==
                         PowerProduct::atom("2", {17, 2}) * d * n.pow(6);
    const bool corrected_ok = symbolic_general_base(d, symbolic_tree_alpha(TreeConstant::corrected)) ==
                              PowerProduct::atom("2", 10) * d * n.pow(6);
    const auto displayed = PowerProduct::atom("2", {21, 2}) * PowerProduct::integer(2) * n.pow(5) *
                           (PowerProduct::integer(432) / PowerProduct::atom("3", {1, 2})) *
                           PowerProduct::atom("2^n", 8) * n.pow({1, 2});  // 4^{4n} = (2^n)^8
    const bool lattice_ok = symbolic_general_base(PowerProduct::integer(2), symbolic_lattice_alpha()) == displayed;

    bool below = true;
    double worst_log_err = 0.0;
    for (std::size_t k = 1; k <= 100; ++k) {
      const auto lb = lattice_bound(k);
      below = below && lb.exact_below_rounded && lb.exact.log2_bound < lb.rounded.log2_bound;
    }
    for (std::size_t nn = 1; nn <= 6; ++nn)
      for (std::size_t dd = 1; dd <= 3; ++dd)
        for (double al : {1.0, 0.5, 0.1, 1e-3})
          for (long long tau : {2LL, 3LL, 6LL, 12LL}) {
            const auto rep = max_collisions_bound(nn, dd, al, select_tau(dd, TauMode::value, tau));
            if (rep.log2_bound >= kDecimalLog2Limit) continue;
            const HighFloat direct = high_pow(detail::general_base_high(nn, dd, HighFloat(al)), rep.exponent);
            const double direct_log2 = static_cast<double>(boost::multiprecision::log2(direct));
            worst_log_err = std::max(worst_log_err, std::abs(direct_log2 - rep.log2_bound) * std::log(2.0));
          }
    out << "tree paper base " << (tree_ok ? "ok" : "FAILED") << ", corrected " << (corrected_ok ? "ok" : "FAILED")
        << ", lattice base " << (lattice_ok ? "ok" : "FAILED") << ", exact < rounded n<=100 "
        << (below ? "ok" : "FAILED") << ", max relative log-space error " << worst_log_err;
    return tree_ok && corrected_ok && lattice_ok && below && worst_log_err <= kLogAgreement;
  });
}

/// Small configurations for the end-to-end check: every contact pattern of
/// up to four collinear balls, every lattice patch of up to four discs and
/// a few non-lattice planar trees.
inline std::vector<BallConfiguration> small_configurations(std::uint64_t seed, std::size_t max_n = 4,
                                                           std::size_t planar_trees_per_n = 4) {
  std::vector<BallConfiguration> out;
  for (std::size_t n = 2; n <= max_n; ++n)
    for (std::uint32_t gaps = 0; gaps < (1U << (n - 1)); ++gaps) {
      std::vector<Vector> centers;
      double x = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        Vector c(1);
        c << x;
        centers.push_back(c);
        x += (gaps & (1U << k)) ? 3.0 : 2.0;
      }
      out.emplace_back(1, std::move(centers));
    }
  for (std::size_t n = 2; n <= max_n; ++n)
    for (const auto& lc : enumerate_lattice_animals(n)) out.push_back(lc.to_configuration());
  Rng rng(seed);
  for (std::size_t n = 3; n <= max_n; ++n)
    for (std::size_t k = 0; k < planar_trees_per_n; ++k) out.push_back(random_tree_configuration(n, 2, rng));
  return out;
}

struct EndToEndStats {
  std::size_t configurations = 0;
  std::size_t searches = 0;
  std::size_t best = 0;
  double min_margin_log2 = std::numeric_limits<double>::infinity();
  std::size_t incomplete = 0;
  std::size_t replay_mismatches = 0;
};

/// Empirical maximum collision counts stay below the evaluated bound.
inline CriterionResult check_end_to_end(std::uint64_t seed, std::size_t states_per_config = 200,
                                        std::size_t depth_cap = 20, EndToEndStats* stats_out = nullptr) {
  return detail::timed(9, "end-to-end inequality", 600.0, [&](std::ostream& out) {
    Rng rng(seed);
    EndToEndStats st;
    bool ok = true;
    SearchOptions opts;
    opts.depth_cap = depth_cap;
    for (const auto& raw : small_configurations(seed)) {
      ++st.configurations;
      const std::size_t n = raw.size(), d = raw.dimension();
      if (raw.touching_pairs().empty()) continue;  // no contacts, no collisions
      const double a = alpha(raw).alpha;
      const auto bound = max_collisions_bound(n, d, a, select_tau(d, TauMode::exact), "exhaustive");
      std::vector<StateVector> starts;
      // Every ball heading toward the centroid, then random states.
      StateVector inward(n, d);
      Vector mean = Vector::Zero(static_cast<Eigen::Index>(d));
      for (const auto& c : raw.centers()) mean += c;
      mean /= static_cast<double>(n);
      for (std::size_t k = 0; k < n; ++k) inward.block(k) = mean - raw.center(k);
      if (inward.energy() > 0) starts.push_back(inward);
      while (starts.size() < states_per_config) starts.push_back(random_state(n, d, rng));
      for (const auto& s0 : starts) {
        const auto sys = normalize_system(raw, s0);
        auto r = exhaustive_max_collisions(sys.config, sys.state, opts);
        r.log2_bound = bound.log2_bound;
        ++st.searches;
        st.best = std::max(st.best, r.best);
        if (!r.complete) ++st.incomplete;
        if (replay_count(sys.config, sys.state, r.witness) != r.best) {
          ++st.replay_mismatches;
          ok = false;
        }
        if (r.best > 0)
          st.min_margin_log2 = std::min(st.min_margin_log2, bound.log2_bound - std::log2(static_cast<double>(r.best)));
        if (!r.within_bound()) ok = false;
      }
    }
    if (stats_out) *stats_out = st;
    out << st.configurations << " configurations, " << st.searches << " searches (depth <= " << depth_cap
        << ", " << st.incomplete << " hit the cap), max Lambda " << st.best << ", min log2(bound / Lambda) "
        << st.min_margin_log2 << ", replay mismatches " << st.replay_mismatches;
    return ok;
  });
}

/// A collision along an edge of G leaves v^{capG} and |v^G| unchanged.
inline CriterionResult check_decomposition(std::uint64_t seed, std::size_t cases = 1000) {
  return detail::timed(10, "H^G decomposition invariants", 10.0, [&](std::ostream& out) {
    Rng rng(seed);
    double worst_cap = 0.0, worst_norm = 0.0;
    std::size_t changed = 0;
    for (std::size_t k = 0; k < cases; ++k) {
      const std::size_t n = detail::uniform(rng, 2, 6);
      const std::size_t d = detail::uniform(rng, 1, 3);
      const auto config = detail::mixed_configuration(n, d, rng);
      const auto& all = config.touching_pairs();
      std::vector<Edge> sub;
      for (const auto& e : all)
        if (detail::uniform(rng, 0, 1) == 1) sub.push_back(e);
      if (sub.empty()) sub.push_back(all[detail::uniform(rng, 0, all.size() - 1)]);
      const ContactGraph g(n, sub);
      const auto state = random_state(n, d, rng);
      const Edge e = sub[detail::uniform(rng, 0, sub.size() - 1)];
      const auto next = collide(config, state, e);
      if (!(next == state)) ++changed;
      const auto before = decompose_state(config, g, state);
      const auto after = decompose_state(config, g, next);
      worst_cap = std::max(worst_cap, max_abs_difference(before.intersection_part, after.intersection_part));
      worst_norm = std::max(worst_norm, std::abs(before.graph_part.norm() - after.graph_part.norm()));
    }
    out << cases << " cases (" << changed << " collisions), max |dv^capG| = " << worst_cap
        << ", max ||v^G| change| = " << worst_norm;
    return worst_cap <= kDecompositionTolerance && worst_norm <= kDecompositionTolerance && changed > 0;
  });
}

inline std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  return {check_folding_equivalence(seed + 1), check_conservation(seed + 2),    check_orbit_finiteness(seed + 3),
          check_unbounded_orbits(),            check_alpha_exhaustive(),        check_tree_bound(seed + 6),
          check_lattice_machinery(seed + 7),   check_bound_consistency(),       check_end_to_end(seed + 9),
          check_decomposition(seed + 10)};
}

}  // namespace pinball
