#include "oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace pinball;

TEST(Io, ConfigRoundTrip) {
  const auto j = Json::parse(R"({"dimension": 2, "centers": [[0, 0], [2, 0]], "velocities": [[1, 0], [0, 0]]})");
  const auto file = parse_config(j);
  const auto c = build_configuration(file);
  ASSERT_TRUE(file.velocities);
  const auto back = parse_config(config_json(c, file.velocities));
  EXPECT_EQ(build_configuration(back).centers(), c.centers());
  EXPECT_EQ(back.velocities->vector(), file.velocities->vector());
}

TEST(Io, LatticeForm) {
  const auto file = parse_config(Json::parse(R"({"lattice": [[0, 0], [1, 1]]})"));
  ASSERT_TRUE(file.lattice_points);
  EXPECT_EQ(build_configuration(file).touching_pairs().size(), 1u);
  EXPECT_THROW(parse_config(Json::parse(R"({"lattice": [[0, 0], [0.5, 1]]})")), SchemaError);
}

TEST(Io, SchemaErrors) {
  EXPECT_THROW(parse_config(Json::parse(R"({"centers": [[0]]})")), SchemaError);
  EXPECT_THROW(parse_config(Json::parse(R"({"dimension": 2, "centers": [[0]]})")), SchemaError);
  EXPECT_THROW(parse_config(Json::parse(R"({"dimension": 1, "centers": [[0], [2]], "velocities": [[1]]})")),
               SchemaError);
  EXPECT_THROW(parse_config(Json::parse("[1, 2]")), SchemaError);
}

TEST(Io, EdgesAreOneBased) {
  EXPECT_EQ(parse_edge(Json::parse("[2, 1]"), 2), (Edge{0, 1}));
  EXPECT_EQ(edge_json(Edge{0, 1}).dump(), "[1,2]");
  EXPECT_THROW(parse_edge(Json::parse("[0, 1]"), 2), SchemaError);
  EXPECT_THROW(parse_edge(Json::parse("[1, 3]"), 2), SchemaError);
  EXPECT_THROW(parse_edge(Json::parse("[1, 1]"), 2), SchemaError);
}

TEST(Io, Schedules) {
  const auto c = oracle::config(1, {{0}, {2}, {5}});
  EXPECT_EQ(parse_schedule(Json::parse("[[1, 2], [2, 1]]"), c).steps.size(), 2u);
  EXPECT_THROW(parse_schedule(Json::parse("[[2, 3]]"), c), InvalidSchedule);
  EXPECT_THROW(parse_schedule(Json::parse(R"({"policy": "seeded-random"})"), c), SchemaError);
  EXPECT_THROW(parse_schedule(Json::parse(R"({"policy": "bogus"})"), c), SchemaError);
  EXPECT_NO_THROW(parse_schedule(Json::parse(R"({"policy": "seeded-random", "seed": 3})"), c));
}

TEST(Io, HalfSpaces) {
  const auto f = parse_halfspaces(Json::parse(R"({"dimension": 2, "normals": [[2, 0], [0, 1]], "witness": [1, 1]})"));
  EXPECT_EQ(f.halfspaces[0].normal(), oracle::vec({1, 0}));
  ASSERT_TRUE(f.witness);
  EXPECT_THROW(parse_halfspaces(Json::parse(R"({"dimension": 2, "normals": [[0, 0]]})")), SchemaError);
}

TEST(Io, TraceLines) {
  const auto c = oracle::config(1, {{0}, {2}});
  const auto t = run_schedule(c, oracle::state(1, {{1}, {-1}}), Schedule::explicit_list({{0, 1}, {0, 1}}));
  std::ostringstream os;
  write_trace_jsonl(os, t);
  std::istringstream is(os.str());
  std::string line;
  std::size_t lines = 0;
  while (std::getline(is, line)) {
    const auto j = Json::parse(line);
    EXPECT_TRUE(j.contains("edge"));
    ++lines;
  }
  EXPECT_EQ(lines, 2u);
}
