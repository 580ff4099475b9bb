#pragma once

// JSON reading and writing. Ball indices are 1-based in every file and
// 0-based in memory.

#include "pinball/bounds.hpp"
#include "pinball/dynamics.hpp"
#include "pinball/foldings.hpp"
#include "pinball/geometry.hpp"
#include "pinball/lattice.hpp"
#include "pinball/rigidity.hpp"
#include "pinball/search.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pinball {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

/// Malformed input: wrong shape, wrong types or missing fields.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

namespace detail {

inline const Json& require_field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(what + " needs a \"" + key + "\" field");
  return j.at(key);
}

inline Vector parse_vector(const Json& j, std::size_t expected, const std::string& what) {
  if (!j.is_array()) throw SchemaError(what + " must be an array of numbers");
  if (expected != 0 && j.size() != expected)
    throw SchemaError(what + " has " + std::to_string(j.size()) + " entries, expected " + std::to_string(expected));
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) throw SchemaError(what + " must contain only numbers");
    v[static_cast<Eigen::Index>(k)] = j[k].get<double>();
  }
  return v;
}

inline Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline Json blocks_json(const StateVector& s) {
  Json a = Json::array();
  for (std::size_t k = 0; k < s.balls(); ++k) a.push_back(vector_json(s.block(k)));
  return a;
}

}  // namespace detail

inline Json edge_json(const Edge& e) { return Json::array({e.i + 1, e.j + 1}); }

inline Json edges_json(const std::vector<Edge>& edges) {
  Json a = Json::array();
  for (const auto& e : edges) a.push_back(edge_json(e));
  return a;
}

/// [i, j] with 1 <= i, j <= n and i != j.
inline Edge parse_edge(const Json& j, std::size_t n) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw SchemaError("an edge is a pair [i, j] of 1-based ball indices");
  const auto a = j[0].get<long long>();
  const auto b = j[1].get<long long>();
  if (a < 1 || b < 1 || static_cast<std::size_t>(a) > n || static_cast<std::size_t>(b) > n)
    throw SchemaError("edge [" + std::to_string(a) + ", " + std::to_string(b) + "] is out of range 1.." +
                      std::to_string(n));
  if (a == b) throw SchemaError("edge [" + std::to_string(a) + ", " + std::to_string(b) + "] repeats a ball");
  return make_edge(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1));
}

struct ConfigFile {
  std::size_t dimension = 0;
  std::vector<Vector> centers;
  std::optional<StateVector> velocities;
  double contact_tolerance = kDefaultContactTolerance;
  std::optional<std::vector<LatticePoint>> lattice_points;  // when given as lattice pairs
};

/// {"dimension", "centers", "velocities"?, "contact_tolerance"?} or
/// {"lattice": [[a, b], ...], "velocities"?} for points (a, b sqrt3).
inline ConfigFile parse_config(const Json& j) {
  if (!j.is_object()) throw SchemaError("a configuration is a JSON object");
  ConfigFile c;
  if (j.contains("lattice")) {
    const Json& pts = j.at("lattice");
    if (!pts.is_array() || pts.empty()) throw SchemaError("\"lattice\" must be a non-empty array of [a, b] pairs");
    std::vector<LatticePoint> lp;
    for (const auto& p : pts) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
        throw SchemaError("lattice points are integer pairs [a, b]");
      lp.push_back({p[0].get<long long>(), p[1].get<long long>()});
    }
    c.dimension = 2;
    for (const auto& p : lp) c.centers.push_back(p.to_vector());
    c.lattice_points = std::move(lp);
  } else {
    const Json& dim = detail::require_field(j, "dimension", "configuration");
    if (!dim.is_number_integer() || dim.get<long long>() < 1) throw SchemaError("\"dimension\" must be a positive integer");
    c.dimension = dim.get<std::size_t>();
    const Json& centers = detail::require_field(j, "centers", "configuration");
    if (!centers.is_array() || centers.empty()) throw SchemaError("\"centers\" must be a non-empty array");
    for (std::size_t k = 0; k < centers.size(); ++k)
      c.centers.push_back(detail::parse_vector(centers[k], c.dimension, "center " + std::to_string(k + 1)));
  }
  if (j.contains("contact_tolerance")) {
    if (!j.at("contact_tolerance").is_number() || j.at("contact_tolerance").get<double>() < 0)
      throw SchemaError("\"contact_tolerance\" must be a non-negative number");
    c.contact_tolerance = j.at("contact_tolerance").get<double>();
  }
  if (j.contains("velocities")) {
    const Json& vs = j.at("velocities");
    if (!vs.is_array() || vs.size() != c.centers.size())
      throw SchemaError("\"velocities\" needs one entry per center");
    std::vector<Vector> blocks;
    for (std::size_t k = 0; k < vs.size(); ++k)
      blocks.push_back(detail::parse_vector(vs[k], c.dimension, "velocity " + std::to_string(k + 1)));
    c.velocities = StateVector::from_blocks(blocks);
  }
  return c;
}

inline BallConfiguration build_configuration(const ConfigFile& c) {
  return BallConfiguration(c.dimension, c.centers, c.contact_tolerance);
}

inline Json config_json(const BallConfiguration& config, const std::optional<StateVector>& velocities = std::nullopt) {
  Json j;
  j["dimension"] = config.dimension();
  Json centers = Json::array();
  for (const auto& c : config.centers()) centers.push_back(detail::vector_json(c));
  j["centers"] = centers;
  if (velocities) j["velocities"] = detail::blocks_json(*velocities);
  j["contact_tolerance"] = config.contact_tolerance();
  return j;
}

inline Json lattice_json(const LatticeConfiguration& lc) {
  Json j;
  Json exact = Json::array();
  for (const auto& p : lc.points()) exact.push_back(Json::array({p.a, p.b}));
  j["lattice"] = exact;
  Json centers = Json::array();
  for (const auto& p : lc.points()) centers.push_back(detail::vector_json(p.to_vector()));
  j["dimension"] = 2;
  j["centers"] = centers;
  j["contacts"] = edges_json(lc.touching_pairs());
  return j;
}

/// Either an array of [i, j] steps or {"policy": ..., "seed"?, "edges"?}.
inline Schedule parse_schedule(const Json& j, const BallConfiguration& config) {
  const std::size_t n = config.size();
  Schedule s;
  if (j.is_array()) {
    for (const auto& step : j) s.steps.push_back(parse_edge(step, n));
  } else if (j.is_object()) {
    const Json& policy = detail::require_field(j, "policy", "schedule");
    if (!policy.is_string()) throw SchemaError("\"policy\" must be a string");
    const auto name = policy.get<std::string>();
    ContactGraph g = full_contact_graph(config);
    if (j.contains("edges")) {
      std::vector<Edge> edges;
      for (const auto& e : j.at("edges")) edges.push_back(parse_edge(e, n));
      g = ContactGraph(n, std::move(edges));
    }
    if (name == "round-robin") s = Schedule::round_robin(g);
    else if (name == "lexicographic-greedy") s = Schedule::lexicographic_greedy(g);
    else if (name == "seeded-random") {
      if (!j.contains("seed") || !j.at("seed").is_number_unsigned())
        throw SchemaError("the seeded-random policy needs a non-negative integer \"seed\"");
      s = Schedule::seeded_random(g, j.at("seed").get<std::uint64_t>());
    } else if (name == "explicit") {
      for (const auto& step : detail::require_field(j, "steps", "explicit schedule")) s.steps.push_back(parse_edge(step, n));
    } else {
      throw SchemaError("unknown policy \"" + name + "\"");
    }
  } else {
    throw SchemaError("a schedule is an array of [i, j] pairs or a policy object");
  }
  validate_schedule(config, s);
  return s;
}

struct HalfSpaceFile {
  std::size_t dimension = 0;
  std::vector<HalfSpace> halfspaces;
  std::optional<Vector> witness;
  std::optional<Vector> start;
};

/// {"dimension", "normals", "witness"?, "start"?}; normals are normalized on read.
inline HalfSpaceFile parse_halfspaces(const Json& j) {
  HalfSpaceFile f;
  const Json& dim = detail::require_field(j, "dimension", "half-space family");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) throw SchemaError("\"dimension\" must be a positive integer");
  f.dimension = dim.get<std::size_t>();
  const Json& normals = detail::require_field(j, "normals", "half-space family");
  if (!normals.is_array() || normals.empty()) throw SchemaError("\"normals\" must be a non-empty array");
  for (std::size_t k = 0; k < normals.size(); ++k) {
    const Vector h = detail::parse_vector(normals[k], f.dimension, "normal " + std::to_string(k + 1));
    if (h.norm() == 0.0) throw SchemaError("normal " + std::to_string(k + 1) + " is zero");
    f.halfspaces.push_back(HalfSpace::from_direction(h));
  }
  if (j.contains("witness")) f.witness = detail::parse_vector(j.at("witness"), f.dimension, "witness");
  if (j.contains("start")) f.start = detail::parse_vector(j.at("start"), f.dimension, "start");
  return f;
}

/// One JSON line per step: {t, edge, changed, F, energy}.
inline void write_trace_jsonl(std::ostream& os, const SimulationTrace& trace) {
  for (const auto& s : trace.steps) {
    Json j;
    j["t"] = s.t;
    j["edge"] = edge_json(s.edge);
    j["changed"] = s.changed;
    j["F"] = s.functional;
    j["energy"] = s.energy;
    os << j.dump() << '\n';
  }
}

struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  Json seeds = Json::object();
  Json tolerances = Json::object();
  double wall_clock_seconds = 0.0;
};

inline Json manifest_json(const RunManifest& m) {
  Json j;
  j["command"] = m.command;
  j["inputs"] = m.inputs;
  j["seeds"] = m.seeds;
  j["tolerances"] = m.tolerances;
  j["versions"] = {{"pinball", kVersion}};
  j["wall_clock_seconds"] = m.wall_clock_seconds;
  return j;
}

inline Json trace_summary_json(const SimulationTrace& t) {
  Json j;
  j["length"] = t.length;
  j["collisions"] = t.collisions;
  j["stabilized"] = t.stabilized;
  if (t.final_state) j["final_velocities"] = detail::blocks_json(*t.final_state);
  if (!t.functional.empty()) {
    j["F_initial"] = t.functional.front();
    j["F_final"] = t.functional.back();
  }
  return j;
}

inline Json alpha_json(const AlphaReport& r, bool verbose) {
  Json j;
  j["alpha"] = r.alpha;
  j["chosen"] = edge_json(r.chosen);
  j["edge_set"] = edges_json(r.edge_set);
  j["zero_tolerance"] = r.zero_tolerance;
  j["candidate_count"] = r.candidate_count;
  j["zero_count"] = r.zero_count;
  if (verbose) {
    Json cands = Json::array();
    for (const auto& c : r.candidates)
      cands.push_back({{"chosen", edge_json(c.chosen)}, {"others", edges_json(c.others)}, {"value", c.value}, {"zero", c.zero}});
    j["candidates"] = cands;
  }
  return j;
}

inline Json bound_json(const BoundReport& r) {
  Json j;
  j["kind"] = r.kind;
  j["n"] = r.n;
  j["d"] = r.d;
  if (r.alpha) j["alpha"] = *r.alpha;
  j["alpha_source"] = r.alpha_source;
  if (r.tau) j["tau"] = r.tau->str();
  j["tau_source"] = r.tau_source;
  j["exponent"] = r.exponent;
  if (r.conservative_exponent) j["conservative_exponent"] = r.conservative_exponent->str();
  j["log2_base"] = r.log2_base;
  j["log2_bound"] = r.log2_bound;
  if (r.log2_conservative) j["log2_conservative"] = *r.log2_conservative;
  j["decimal"] = r.decimal ? Json(*r.decimal) : Json(nullptr);
  return j;
}

inline Json search_json(const SearchResult& r) {
  Json j;
  j["method"] = r.method;
  j["best"] = r.best;
  j["witness"] = edges_json(r.witness);
  j["nodes"] = r.nodes;
  j["complete"] = r.complete;
  if (r.log2_bound) {
    j["log2_best"] = r.best == 0 ? Json(nullptr) : Json(std::log2(static_cast<double>(r.best)));
    j["log2_bound"] = *r.log2_bound;
    j["within_bound"] = r.within_bound();
  }
  return j;
}

inline Json orbit_json(const OrbitResult& r, bool with_points) {
  Json j;
  j["size"] = r.size;
  j["steps"] = r.steps;
  j["stabilized"] = r.stabilized();
  j["stabilization_index"] = r.stabilization_index ? Json(*r.stabilization_index) : Json(nullptr);
  j["final_point"] = detail::vector_json(r.final_point);
  if (with_points) {
    Json pts = Json::array();
    for (const auto& p : r.points) pts.push_back(detail::vector_json(p));
    j["points"] = pts;
  }
  return j;
}

inline Json quadratic_json(const QuadraticInteger& q) {
  return {{"r1", q.rational_part().str()}, {"r2", q.sqrt3_part().str()}, {"value", q.to_double()}};
}

inline Json certificate_json(const AlphaCertificate& c) {
  Json j;
  j["lower_bound"] = c.lower_bound;
  j["zero"] = c.zero;
  j["span_dimension"] = c.span_dimension;
  j["basis_edges"] = edges_json(c.basis_edges);
  Json ext = Json::array();
  for (auto k : c.extension) ext.push_back(k + 1);
  j["extension"] = ext;
  if (!c.zero) {
    j["determinant"] = quadratic_json(c.determinant);
    Json normal = Json::array();
    for (const auto& q : c.normal) normal.push_back(quadratic_json(q));
    j["normal"] = normal;
  }
  return j;
}

/// Seconds since `start`, for manifests.
inline double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace pinball
