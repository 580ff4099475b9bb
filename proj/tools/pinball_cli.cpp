// pinball: command-line front end.
// Exit codes: 0 success, 1 domain error, 2 usage or input-format error.

#include "pinball/pinball.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace pinball;

constexpr const char* kConfigSchema = R"(configuration file:
  {"dimension": d, "centers": [[x1..xd], ...], "velocities": [[v1..vd], ...] (optional),
   "contact_tolerance": t (optional, default 1e-9)}
  or {"lattice": [[a, b], ...]} for discs at (a, b*sqrt3), a and b of equal parity)";
constexpr const char* kScheduleSchema = R"(schedule file:
  [[i, j], ...] with 1-based ball indices, or
  {"policy": "round-robin" | "lexicographic-greedy" | "seeded-random" | "explicit",
   "seed": s, "edges": [[i, j], ...] (optional), "steps": [[i, j], ...] (explicit only)})";
constexpr const char* kHalfSpaceSchema = R"(half-space family file:
  {"dimension": m, "normals": [[h1..hm], ...], "witness": [...] (optional), "start": [...] (optional)})";

struct UsageError : std::invalid_argument {
  UsageError(const std::string& what, const char* schema)
      : std::invalid_argument(what), schema_help(schema ? schema : "") {}
  std::string schema_help;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

template <class F>
auto with_schema(const char* schema, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SchemaError& e) {
    throw UsageError(e.what(), schema);
  }
}

void emit(const Json& report, RunManifest manifest, std::chrono::steady_clock::time_point start) {
  manifest.wall_clock_seconds = seconds_since(start);
  Json out = report;
  out["manifest"] = manifest_json(manifest);
  std::cout << out.dump(2) << '\n';
}

struct ConfigInput {
  ConfigFile file;
  BallConfiguration config;
};

ConfigInput load_config(const std::string& path) {
  return with_schema(kConfigSchema, [&] {
    auto file = parse_config(read_json_file(path));
    auto config = build_configuration(file);
    return ConfigInput{std::move(file), std::move(config)};
  });
}

StateVector require_velocities(const ConfigInput& in, const std::string& path) {
  if (!in.file.velocities) throw UsageError(path + " has no \"velocities\" field", kConfigSchema);
  return *in.file.velocities;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pinned-ball collision dynamics, rigidity index and collision-count bounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  const auto start = std::chrono::steady_clock::now();
  int status = 0;

  // validate
  auto* validate = app.add_subcommand("validate", "Check a configuration file and describe its contact graph");
  std::string validate_path;
  validate->add_option("config", validate_path, "configuration JSON")->required();
  validate->callback([&] {
    const auto in = load_config(validate_path);
    const auto g = full_contact_graph(in.config);
    Json r;
    r["valid"] = true;
    r["n"] = in.config.size();
    r["d"] = in.config.dimension();
    r["contacts"] = edges_json(g.edges());
    r["connected"] = g.is_connected();
    r["tree"] = g.is_tree();
    r["components"] = g.component_count();
    emit(r, {"validate", {validate_path}, {}, {{"contact_tolerance", in.config.contact_tolerance()}}}, start);
  });

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run a collision schedule and write the step trace");
  std::string sim_config, sim_schedule, sim_trace;
  std::size_t sim_max_steps = 1'000'000;
  bool sim_normalize = false;
  double sim_epsilon = 0.0;
  simulate->add_option("config", sim_config, "configuration JSON with velocities")->required();
  simulate->add_option("schedule", sim_schedule, "schedule JSON")->required();
  simulate->add_option("--trace", sim_trace, "write the JSON-lines trace here (default: <schedule>.trace.jsonl)");
  simulate->add_option("--max-steps", sim_max_steps, "step budget for policy schedules");
  simulate->add_option("--approach-epsilon", sim_epsilon, "collide only when the approach rate is below -epsilon");
  simulate->add_flag("--normalize", sim_normalize, "recenter, remove momentum and scale energy to 1 first");
  simulate->callback([&] {
    const auto in = load_config(sim_config);
    StateVector v0 = require_velocities(in, sim_config);
    BallConfiguration config = in.config;
    if (sim_normalize) {
      auto sys = normalize_system(config, v0);
      config = std::move(sys.config);
      v0 = std::move(sys.state);
    }
    const Schedule schedule = with_schema(kScheduleSchema, [&] { return parse_schedule(read_json_file(sim_schedule), config); });
    TraceOptions opts;
    opts.max_steps = sim_max_steps;
    opts.record_states = false;
    opts.approach_epsilon = sim_epsilon;
    const auto trace = run_schedule(config, v0, schedule, opts);
    const std::string trace_path = sim_trace.empty() ? sim_schedule + ".trace.jsonl" : sim_trace;
    std::ofstream os(trace_path);
    if (!os) throw UsageError("cannot write " + trace_path, nullptr);
    write_trace_jsonl(os, trace);
    Json r = trace_summary_json(trace);
    r["policy"] = to_string(schedule.policy);
    r["trace_file"] = trace_path;
    std::cerr << "Lambda = " << trace.collisions << '\n';
    Json seeds = Json::object();
    if (schedule.policy == Schedule::Policy::seeded_random) seeds["schedule"] = schedule.seed;
    emit(r, {"simulate", {sim_config, sim_schedule}, seeds, {{"approach_epsilon", sim_epsilon}, {"change_tolerance", opts.change_tolerance}}},
         start);
  });

  // alpha
  auto* alpha_cmd = app.add_subcommand("alpha", "Exhaustive index of approximate rigidity");
  std::string alpha_path;
  bool alpha_verbose = false;
  std::size_t alpha_max_edges = kAlphaEdgeGuard;
  double alpha_zero_tol = kAlphaZeroTolerance;
  alpha_cmd->add_option("config", alpha_path, "configuration JSON")->required();
  alpha_cmd->add_flag("--verbose", alpha_verbose, "include every (edge, subset) candidate");
  alpha_cmd->add_option("--max-edges", alpha_max_edges, "enumeration guard on the number of contacts");
  alpha_cmd->add_option("--zero-tolerance", alpha_zero_tol, "distances at or below this count as zero");
  alpha_cmd->callback([&] {
    const auto in = load_config(alpha_path);
    AlphaOptions opts;
    opts.keep_candidates = alpha_verbose;
    opts.max_edges = alpha_max_edges;
    opts.zero_tolerance = alpha_zero_tol;
    const auto rep = alpha(in.config, opts);
    Json r = alpha_json(rep, alpha_verbose);
    const auto g = full_contact_graph(in.config);
    if (g.is_tree()) {
      r["tree_bound_corrected"] = tree_alpha_bound_corrected(in.config.size());
      r["tree_bound_paper"] = tree_alpha_bound_paper(in.config.size());
      r["paper_tree_bound_fails"] = rep.alpha < tree_alpha_bound_paper(in.config.size());
    }
    emit(r, {"alpha", {alpha_path}, {}, {{"zero_tolerance", alpha_zero_tol}}}, start);
  });

  // bound
  auto* bound = app.add_subcommand("bound", "Evaluate the collision-count bound in log2");
  std::size_t bound_n = 0, bound_d = 1;
  std::optional<double> bound_alpha;
  std::string bound_alpha_from, bound_tau = "exact", bound_mode = "general", bound_tree = "corrected";
  bound->add_option("--n", bound_n, "number of balls")->required();
  bound->add_option("--d", bound_d, "dimension");
  auto* alpha_opt = bound->add_option("--alpha", bound_alpha, "index of approximate rigidity in (0, 1]");
  bound->add_option("--alpha-from", bound_alpha_from, "compute alpha exhaustively from this configuration")
      ->excludes(alpha_opt);
  bound->add_option("--tau", bound_tau, "exact | upper | lower | value:K");
  bound->add_option("--mode", bound_mode, "general | tree | lattice")
      ->check(CLI::IsMember({"general", "tree", "lattice"}));
  bound->add_option("--tree-constant", bound_tree, "paper (4/n) | corrected (sqrt2/n)")
      ->check(CLI::IsMember({"paper", "corrected"}));
  bound->callback([&] {
    TauMode mode = TauMode::exact;
    std::optional<long long> tau_value;
    if (bound_tau == "exact") mode = TauMode::exact;
    else if (bound_tau == "upper") mode = TauMode::upper;
    else if (bound_tau == "lower") mode = TauMode::lower;
    else if (bound_tau.rfind("value:", 0) == 0) {
      mode = TauMode::value;
      try {
        tau_value = std::stoll(bound_tau.substr(6));
      } catch (const std::exception&) {
        throw UsageError("--tau value:K needs an integer K", nullptr);
      }
    } else {
      throw UsageError("--tau must be exact, upper, lower or value:K", nullptr);
    }
    Json r;
    std::vector<std::string> inputs;
    if (bound_mode == "lattice") {
      const auto lb = lattice_bound(bound_n);
      r["exact_form"] = bound_json(lb.exact);
      r["rounded_form"] = bound_json(lb.rounded);
      r["exact_below_rounded"] = lb.exact_below_rounded;
      r["log2_bound"] = lb.exact.log2_bound;
    } else {
      const TauChoice tau = select_tau(bound_d, mode, tau_value);
      BoundReport rep;
      if (bound_mode == "tree") {
        rep = tree_bound(bound_n, bound_d, bound_tree == "paper" ? TreeConstant::paper : TreeConstant::corrected, tau);
      } else {
        double a = 0.0;
        std::string source = "user-value";
        if (!bound_alpha_from.empty()) {
          const auto in = load_config(bound_alpha_from);
          a = alpha(in.config).alpha;
          source = "exhaustive";
          inputs.push_back(bound_alpha_from);
        } else if (bound_alpha) {
          a = *bound_alpha;
        } else {
          throw UsageError("general mode needs --alpha or --alpha-from", nullptr);
        }
        rep = max_collisions_bound(bound_n, bound_d, a, tau, source);
      }
      r = bound_json(rep);
      const auto info = kissing_number(bound_d);
      r["kissing_interval"] = {info.lower.str(), info.upper.str()};
    }
    std::cerr << "log2(bound) = " << r["log2_bound"].get<double>() << '\n';
    emit(r, {"bound", inputs, {}, {}}, start);
  });

  // orbit
  auto* orbit_cmd = app.add_subcommand("orbit", "Folding orbit of a half-space family");
  std::string orbit_path, orbit_policy = "round-robin";
  std::optional<std::uint64_t> orbit_seed;
  std::size_t orbit_budget = 1'000'000, orbit_adversarial = 0;
  bool orbit_points = false;
  orbit_cmd->add_option("family", orbit_path, "half-space family JSON");
  orbit_cmd->add_option("--policy", orbit_policy, "round-robin | random | periodic:i,j,... (1-based)");
  orbit_cmd->add_option("--seed", orbit_seed, "seed for the random policy");
  orbit_cmd->add_option("--budget", orbit_budget, "maximum number of folding steps");
  orbit_cmd->add_option("--adversarial", orbit_adversarial, "two half-planes whose orbit exceeds this many points");
  orbit_cmd->add_flag("--points", orbit_points, "include every orbit point");
  orbit_cmd->callback([&] {
    if (orbit_adversarial > 0) {
      const auto adv = adversarial_two_halfplanes(orbit_adversarial);
      Json r = orbit_json(adv.orbit, orbit_points);
      r["epsilon"] = adv.epsilon;
      Json normals = Json::array();
      for (const auto& h : adv.halfspaces) normals.push_back({h.normal()[0], h.normal()[1]});
      r["family"] = {{"dimension", 2}, {"normals", normals}, {"witness", {adv.witness[0], adv.witness[1]}},
                     {"start", {adv.start[0], adv.start[1]}}};
      emit(r, {"orbit", {}, {}, {{"stabilization_margin", kStabilizationMargin}}}, start);
      return;
    }
    if (orbit_path.empty()) throw UsageError("orbit needs a family file or --adversarial m", kHalfSpaceSchema);
    const auto fam = with_schema(kHalfSpaceSchema, [&] { return parse_halfspaces(read_json_file(orbit_path)); });
    if (!fam.witness) throw UsageError(orbit_path + " has no \"witness\" field", kHalfSpaceSchema);
    FoldingPolicy policy = FoldingPolicy::round_robin();
    Json seeds = Json::object();
    if (orbit_policy == "random") {
      const auto seed = resolve_seed(orbit_seed);
      policy = FoldingPolicy::seeded_random(seed);
      seeds["policy"] = seed;
    } else if (orbit_policy.rfind("periodic:", 0) == 0) {
      std::vector<std::size_t> word;
      std::stringstream ss(orbit_policy.substr(9));
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        const long long k = std::stoll(tok);
        if (k < 1) throw UsageError("periodic indices are 1-based", nullptr);
        word.push_back(static_cast<std::size_t>(k - 1));
      }
      policy = FoldingPolicy::periodic(std::move(word));
    } else if (orbit_policy != "round-robin") {
      throw UsageError("--policy must be round-robin, random or periodic:i,j,...", nullptr);
    }
    Vector start_point = fam.start ? *fam.start : Vector(-*fam.witness);
    OrbitOptions opts;
    opts.budget = orbit_budget;
    opts.record_points = orbit_points;
    const auto r = orbit(start_point, fam.halfspaces, policy, *fam.witness, opts);
    Json j = orbit_json(r, orbit_points);
    j["policy"] = to_string(policy.kind);
    emit(j, {"orbit", {orbit_path}, seeds, {{"stabilization_margin", kStabilizationMargin}}}, start);
  });

  // lattice
  auto* lattice = app.add_subcommand("lattice", "Generate triangular-lattice configurations");
  std::size_t lat_animals = 0, lat_random = 0;
  std::optional<double> lat_radius;
  std::optional<std::uint64_t> lat_seed;
  bool lat_certify = false;
  auto* animals_opt = lattice->add_option("--animals", lat_animals, "every connected configuration of n discs up to symmetry");
  auto* random_opt = lattice->add_option("--random", lat_random, "one random connected configuration of n discs");
  auto* radius_opt = lattice->add_option("--radius", lat_radius, "all lattice points within this radius");
  animals_opt->excludes(random_opt)->excludes(radius_opt);
  random_opt->excludes(radius_opt);
  lattice->add_option("--seed", lat_seed, "seed for --random");
  lattice->add_flag("--certify", lat_certify, "attach exact alpha_* certificates for the full contact set");
  lattice->callback([&] {
    std::vector<LatticeConfiguration> configs;
    Json seeds = Json::object();
    if (lat_animals > 0) configs = enumerate_lattice_animals(lat_animals);
    else if (lat_random > 0) {
      const auto seed = resolve_seed(lat_seed);
      seeds["random"] = seed;
      Rng rng(seed);
      configs.push_back(random_lattice_configuration(lat_random, rng));
    } else if (lat_radius) {
      configs.emplace_back(lattice_points_in_radius(*lat_radius));
    } else {
      throw UsageError("lattice needs --animals n, --random n or --radius R", nullptr);
    }
    Json list = Json::array();
    for (const auto& lc : configs) {
      Json j = lattice_json(lc);
      if (lat_certify && !lc.touching_pairs().empty()) {
        Json certs = Json::array();
        const auto cfg = lc.to_configuration();
        for (const auto& e : lc.touching_pairs()) {
          Json c = certificate_json(exact_alpha_certificate(lc, lc.touching_pairs(), e));
          c["chosen"] = edge_json(e);
          c["alpha_star"] = alpha_star(cfg, lc.touching_pairs(), e);
          certs.push_back(c);
        }
        j["certificates"] = certs;
        j["alpha_floor"] = lattice_alpha_lower_bound(lc.size()).value();
      }
      list.push_back(j);
    }
    Json r;
    r["count"] = configs.size();
    r["configurations"] = list;
    emit(r, {"lattice", {}, seeds, {}}, start);
  });

  // search
  auto* search = app.add_subcommand("search", "Empirical maximum collision counts");
  std::string search_path, search_method = "exhaustive";
  std::size_t search_depth = 20, search_samples = 1;
  std::optional<std::uint64_t> search_seed;
  search->add_option("config", search_path, "configuration JSON (velocities needed except for sweep)")->required();
  search->add_option("--method", search_method, "exhaustive | greedy | sweep")
      ->check(CLI::IsMember({"exhaustive", "greedy", "sweep"}));
  search->add_option("--depth", search_depth, "depth cap for exhaustive search");
  search->add_option("--samples", search_samples, "random velocities for sweep");
  search->add_option("--seed", search_seed, "seed for sweep");
  search->callback([&] {
    const auto in = load_config(search_path);
    SearchOptions opts;
    opts.depth_cap = search_depth;
    Json seeds = Json::object();
    SearchResult r;
    std::optional<StateVector> start_state;
    Json rows = Json::array();
    if (search_method == "sweep") {
      const auto seed = resolve_seed(search_seed);
      seeds["sweep"] = seed;
      auto sweep = velocity_sweep(in.config, search_samples, seed, SweepMethod::exhaustive, opts);
      for (const auto& row : sweep.rows)
        rows.push_back({{"sample", row.sample}, {"collisions", row.collisions}, {"running_max", row.running_max}});
      r = std::move(sweep.best);
      start_state = sweep.best_state;
    } else {
      start_state = require_velocities(in, search_path);
      r = search_method == "exhaustive" ? exhaustive_max_collisions(in.config, *start_state, opts)
                                        : greedy_schedule(in.config, *start_state);
    }
    if (!in.config.touching_pairs().empty()) {
      const double a = alpha(in.config).alpha;
      r.log2_bound = max_collisions_bound(in.config.size(), in.config.dimension(), a,
                                          select_tau(in.config.dimension(), TauMode::exact), "exhaustive")
                         .log2_bound;
    }
    Json j = search_json(r);
    if (start_state) j["start_velocities"] = config_json(in.config, start_state)["velocities"];
    if (!rows.empty()) j["sweep"] = rows;
    if (in.config.size() >= 3) j["cubic_reference"] = lower_bound_reference(in.config.size());
    emit(j, {"search", {search_path}, seeds, {{"quantum", opts.quantum}, {"change_tolerance", opts.change_tolerance}}},
         start);
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
  std::uint64_t verify_seed = 20240601;
  verify->add_option("--seed", verify_seed, "base seed for the randomized checks");
  verify->callback([&] {
    Json list = Json::array();
    bool all = true;
    for (const auto& c : run_acceptance(verify_seed)) {
      std::cerr << "[" << c.id << "] " << (c.passed ? "PASS" : "FAIL") << "  " << c.title << " (" << c.seconds
                << " s): " << c.detail << '\n';
      list.push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"seconds", c.seconds},
                      {"limit_seconds", c.limit_seconds}, {"detail", c.detail}});
      all = all && c.passed;
    }
    emit({{"passed", all}, {"criteria", list}}, {"verify", {}, {{"base", verify_seed}}, {}}, start);
    if (!all) status = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    if (!e.schema_help.empty()) std::cerr << e.schema_help << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return status;
}
