#include <gtest/gtest.h>

#include "torictower/io.hpp"

using namespace torictower;
using namespace torictower::io;

TEST(ParseTower, SingleNode) {
  const auto s = parse_tower(R"({"base_dim":1,"moves":[{"type":"node","alpha_exponents":[],"t_exponents":[2]}]})");
  EXPECT_EQ(s.base_dim, 1u);
  ASSERT_EQ(s.moves.size(), 1u);
  EXPECT_EQ(std::get<NodeMove>(s.moves[0]).t_exponents, (std::vector<Integer>{2}));
}

TEST(ParseTower, EmptyMoves) {
  const auto s = parse_tower(R"({"format_version":1,"base_dim":3,"moves":[]})");
  EXPECT_EQ(s.levels(), 1u);
  EXPECT_EQ(s.base_dim, 3u);
}

TEST(ParseTower, DecimalStringsAndBigIntegers) {
  const auto s = parse_tower(
      R"({"base_dim":1,"moves":[{"type":"node","alpha_exponents":[],"t_exponents":["-123456789012345678901234567890"]}]})");
  EXPECT_EQ(std::get<NodeMove>(s.moves[0]).t_exponents[0], Integer("-123456789012345678901234567890"));
}

TEST(ParseTower, WrongAlphaArityNamesTheMove) {
  try {
    parse_tower(R"({"base_dim":1,"moves":[{"type":"product"},{"type":"node","alpha_exponents":[],"t_exponents":[1]}]})");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.field(), "moves[1]");
    EXPECT_NE(std::string(e.what()).find("moves[1]"), std::string::npos);
  }
}

TEST(ParseTower, SyntaxErrorCarriesPosition) {
  try {
    parse_tower("{\n  \"base_dim\": 1,\n  \"moves\": [,]\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 13u);
    EXPECT_EQ(std::string(e.what()).rfind("line 3, column 13", 0), 0u);
  }
}

TEST(ParseTower, SchemaErrors) {
  EXPECT_THROW(parse_tower(R"([1,2])"), SchemaError);
  EXPECT_THROW(parse_tower(R"({"moves":[]})"), SchemaError);
  EXPECT_THROW(parse_tower(R"({"base_dim":1,"extra":0})"), SchemaError);
  EXPECT_THROW(parse_tower(R"({"base_dim":1,"moves":[{"type":"flip"}]})"), SchemaError);
  EXPECT_THROW(parse_tower(R"({"base_dim":1,"format_version":2})"), SchemaError);
  try {
    parse_tower(R"({"base_dim":1,"moves":[{"type":"node","alpha_exponents":[],"t_exponents":[1.5]}]})");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.field(), "moves[0].t_exponents[0]");
  }
  try {
    parse_tower(R"({"base_dim":1,"moves":[{"type":"node","alpha_exponents":[],"t_exponents":["1e3"]}]})");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.field(), "moves[0].t_exponents[0]");
  }
}

TEST(EmitTower, RoundTripOnRandomSpecs) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const TowerSpec s = random_tower(1 + seed % 4, 1 + seed % 6, 1 + static_cast<std::int64_t>(seed % 5), seed);
    const std::string text = emit_tower(s);
    EXPECT_EQ(parse_tower(text), s) << text;
    EXPECT_EQ(emit_tower(parse_tower(text)), text);
  }
}

TEST(RandomTower, Deterministic) {
  EXPECT_EQ(random_tower(3, 5, 3, 17), random_tower(3, 5, 3, 17));
  EXPECT_EQ(emit_tower(random_tower(3, 5, 3, 17)), emit_tower(random_tower(3, 5, 3, 17)));
}

TEST(RandomTower, SingleLevelHasNoMoves) { EXPECT_TRUE(random_tower(1, 1, 3, 9).moves.empty()); }

TEST(RandomTower, AlwaysValidAndBounded) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const TowerSpec s = random_tower(1 + seed % 3, 1 + seed % 5, 3, seed);
    EXPECT_TRUE(validate_tower(s).ok());
    for (const auto& m : s.moves)
      if (const auto* nm = std::get_if<NodeMove>(&m)) {
        for (const auto& x : nm->t_exponents) EXPECT_LE(abs(x), 3);
        for (const auto& x : nm->alpha_exponents) EXPECT_LE(abs(x), 3);
      }
  }
}

TEST(RandomTower, UsesBothMoveKinds) {
  std::size_t products = 0, nodes = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed)
    for (const auto& m : random_tower(2, 5, 2, seed).moves) (std::holds_alternative<ProductMove>(m) ? products : nodes)++;
  EXPECT_GT(products, 50u);
  EXPECT_GT(nodes, 50u);
}

TEST(RandomTower, RejectsBadParameters) {
  EXPECT_THROW(random_tower(0, 1, 1, 0), std::invalid_argument);
  EXPECT_THROW(random_tower(1, 0, 1, 0), std::invalid_argument);
  EXPECT_THROW(random_tower(1, 1, 0, 0), std::invalid_argument);
}

TEST(Report, StatusAndExitCodes) {
  EXPECT_EQ(exit_code(Status::ok), 0);
  EXPECT_EQ(exit_code(Status::violations), 1);
  EXPECT_EQ(exit_code(Status::usage_error), 2);
  EXPECT_EQ(exit_code(Status::resource_exhausted), 3);
  Report r;
  r.violations.push_back({"k", "m", "w"});
  r.finish();
  EXPECT_EQ(r.status, Status::violations);
}

TEST(Commands, LcCheckEmbedsSeed) {
  const auto r = command_lc_check(random_tower(2, 4, 3, 5), 10, 1234);
  EXPECT_EQ(r.status, Status::ok);
  const std::string text = to_json(r);
  EXPECT_NE(text.find("\"seed\": \"1234\""), std::string::npos);
  EXPECT_EQ(text, to_json(command_lc_check(random_tower(2, 4, 3, 5), 10, 1234)));
}

TEST(Commands, ResourceCapIsAStatus) {
  const auto saved = current_limits();
  set_limits({saved.max_dim, 2});
  const auto r = command_build(TowerSpec{1, {ProductMove{}, ProductMove{}, ProductMove{}}});
  set_limits(saved);
  EXPECT_EQ(r.status, Status::resource_exhausted);
  EXPECT_EQ(exit_code(r.status), 3);
}

TEST(Commands, VolumeAndDegree) {
  EXPECT_EQ(command_volume(3, 2).status, Status::ok);
  EXPECT_NE(to_json(command_volume(2, 2)).find("\"normalized_volume\": \"4\""), std::string::npos);
  EXPECT_NE(to_json(command_degree({2, {1}, false, 2})).find("\"relative_degree\": \"2\""), std::string::npos);
}

TEST(Commands, BaseChangeEmitsTower) {
  const TowerSpec s = parse_tower(R"({"base_dim":2,"moves":[{"type":"node","alpha_exponents":[],"t_exponents":[1,1]}]})");
  const auto r = command_base_change(s, {{1, 1}, true});
  EXPECT_NE(r.result_json.find("\"t_exponents\":[\"2\"]"), std::string::npos);
}

TEST(Verify, EverySuiteIsClean) {
  for (const char* suite : {"kernel", "toric", "tower", "lc", "basechange", "volume"}) {
    VerifyParams p;
    p.suite = suite;
    p.cases = 30;
    p.samples = 10;
    p.seed = 3;
    const auto r = run_verify(p);
    EXPECT_EQ(r.status, Status::ok) << suite << to_json(r);
    EXPECT_GT(r.checked, 0u) << suite;
  }
}

TEST(Verify, ByteIdenticalForSameSeed) {
  VerifyParams p;
  p.cases = 20;
  p.samples = 5;
  p.seed = 77;
  EXPECT_EQ(to_json(run_verify(p)), to_json(run_verify(p)));
}

TEST(Verify, UnknownSuite) {
  VerifyParams p;
  p.suite = "everything";
  EXPECT_THROW(run_verify(p), std::invalid_argument);
}
