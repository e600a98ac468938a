#include "dcop/problem_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>

#include "builders.hpp"
#include "dcop/generator.hpp"

namespace dcop {
namespace {

TEST(ProblemIo, ParsesDocument) {
  const auto p = parse_problem(R"({
    "variables": [{"id": 0, "domain_size": 2, "agent": 4}, {"id": 1, "domain_size": 3, "agent": 4}],
    "functions": [{"id": 9, "scope": [0, 1], "shape": [2, 3], "values": [1, 2, 3, 4, 5, 6.5]}],
    "meta": {"note": "x"}
  })");
  ASSERT_EQ(p.variables.size(), 2u);
  EXPECT_EQ(p.variables[1].domain_size, 3u);
  EXPECT_EQ(p.agents, std::vector<int>{4});
  ASSERT_EQ(p.functions.size(), 1u);
  EXPECT_EQ(p.functions[0].id, 9);
  EXPECT_EQ(p.functions[0].table.values.back(), 6.5);
  EXPECT_NE(p.meta.find("note"), std::string::npos);
}

TEST(ProblemIo, GeneratedProblemRoundTrips) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GenConfig c;
    c.num_functions = 6;
    c.max_arity = 4;
    c.domain_max = 3;
    c.seed = seed;
    const Problem p = generate(c);
    const std::string text = serialize_problem(p);
    const Problem back = parse_problem(text);
    EXPECT_EQ(serialize_problem(back), text);
    ASSERT_EQ(back.functions.size(), p.functions.size());
    for (std::size_t k = 0; k < p.functions.size(); ++k) {
      EXPECT_EQ(back.functions[k].scope, p.functions[k].scope);
      EXPECT_EQ(back.functions[k].table.values, p.functions[k].table.values);
    }
  }
}

TEST(ProblemIo, RejectsMalformedJson) {
  try {
    parse_problem("{ not json");
    FAIL() << "expected ProblemFormatError";
  } catch (const ProblemFormatError& e) {
    ASSERT_EQ(e.violations().size(), 1u);
  }
}

TEST(ProblemIo, RejectsMissingKeys) {
  EXPECT_THROW(parse_problem(R"({"variables": []})"), ProblemFormatError);
  EXPECT_THROW(parse_problem(R"({"variables": [{"id": 0}], "functions": []})"), ProblemFormatError);
  EXPECT_THROW(parse_problem("[]"), ProblemFormatError);
}

TEST(ProblemIo, RejectsInvalidProblemWithReport) {
  try {
    parse_problem(R"({
      "variables": [{"id": 0, "domain_size": 2}, {"id": 1, "domain_size": 2}],
      "functions": [{"id": 0, "scope": [1, 0], "shape": [2, 2], "values": [1, 2, 3]}]
    })");
    FAIL() << "expected ProblemFormatError";
  } catch (const ProblemFormatError& e) {
    EXPECT_FALSE(e.violations().empty());
  }
}

TEST(ProblemIo, SaveAndLoad) {
  const auto p = testing::make_problem({2}, {{{0}, {5, 7}}});
  const auto path = std::filesystem::temp_directory_path() / "dcop_problem_io_test.json";
  save_problem(p, path);
  const auto back = load_problem(path);
  EXPECT_EQ(back.functions[0].table.values, (std::vector<double>{5, 7}));
  std::filesystem::remove(path);
  EXPECT_THROW(load_problem(path), ProblemFormatError);
}

}  // namespace
}  // namespace dcop
