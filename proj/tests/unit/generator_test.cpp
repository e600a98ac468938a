#include "dcop/generator.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "builders.hpp"
#include "dcop/problem_io.hpp"

namespace dcop {
namespace {

TEST(Rng, IntegersStayInRange) {
  Rng rng(1);
  std::vector<int> seen(5, 0);
  for (int i = 0; i < 5000; ++i) {
    const auto x = rng.uniform_int(3, 7);
    ASSERT_GE(x, 3);
    ASSERT_LE(x, 7);
    ++seen[static_cast<std::size_t>(x - 3)];
  }
  for (int count : seen) EXPECT_GT(count, 800);
  EXPECT_EQ(rng.uniform_int(4, 4), 4);
}

TEST(Rng, RealsStayInRange) {
  Rng rng(2);
  for (int i = 0; i < 5000; ++i) {
    const double x = rng.uniform_real(-1.5, 2.5);
    ASSERT_GE(x, -1.5);
    ASSERT_LT(x, 2.5);
  }
}

TEST(Rng, SameSeedSameStream) {
  Rng a(99), b(99), c(100);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs = differs || x != c.next();
  }
  EXPECT_TRUE(differs);
  EXPECT_NE(mix_seed(1), mix_seed(2));
}

TEST(Generate, ForcedBinaryStructure) {
  GenConfig c;
  c.num_functions = 1;
  c.min_arity = c.max_arity = 2;
  c.var_t = 0.5;
  const Problem p = generate(c);
  ASSERT_EQ(p.variables.size(), 2u);
  ASSERT_EQ(p.functions.size(), 1u);
  EXPECT_EQ(p.functions[0].scope, (std::vector<int>{0, 1}));
}

TEST(Generate, ProblemsAreValidAndUtilitiesIntegral) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GenConfig c;
    c.num_functions = 12;
    c.min_arity = 1;
    c.max_arity = 4;
    c.domain_min = 2;
    c.domain_max = 4;
    c.cost_min = 3;
    c.cost_max = 17;
    c.var_t = 0.1 + 0.02 * static_cast<double>(seed);
    c.seed = seed;
    const Problem p = generate(c);
    ASSERT_TRUE(validate_problem(p).empty()) << "seed " << seed;
    const auto d = p.variables.front().domain_size;
    EXPECT_GE(d, 2u);
    EXPECT_LE(d, 4u);
    for (const auto& v : p.variables) EXPECT_EQ(v.domain_size, d);
    for (const auto& f : p.functions) {
      EXPECT_GE(f.arity(), 1u);
      EXPECT_LE(f.arity(), 4u);
      for (const double u : f.table.values) {
        EXPECT_EQ(u, std::floor(u));
        EXPECT_GE(u, 3.0);
        EXPECT_LE(u, 17.0);
      }
    }
  }
}

TEST(Generate, DeterministicBytes) {
  GenConfig c;
  c.num_functions = 20;
  c.max_arity = 5;
  c.domain_max = 4;
  c.seed = 1234;
  EXPECT_EQ(serialize_problem(generate(c)), serialize_problem(generate(c)));
  GenConfig other = c;
  other.seed = 1235;
  EXPECT_NE(serialize_problem(generate(c)), serialize_problem(generate(other)));
}

TEST(Generate, TightnessTracksRequest) {
  for (int k = 1; k <= 9; ++k) {
    const double target = 0.1 * k;
    double deviation = 0.0;
    for (std::uint64_t s = 0; s < 25; ++s) {
      GenConfig c;
      c.num_functions = 100;
      c.min_arity = 2;
      c.max_arity = 7;
      c.var_t = target;
      c.seed = 1000 * static_cast<std::uint64_t>(k) + s;
      deviation += std::abs(var_tightness(generate(c)) - target);
    }
    EXPECT_LE(deviation / 25.0, 0.02) << "var_t " << target;
  }
}

TEST(Generate, HigherTightnessMeansFewerVariables) {
  GenConfig c;
  c.num_functions = 30;
  c.min_arity = c.max_arity = 4;
  c.var_t = 0.2;
  const auto sparse = generate(c).variables.size();
  c.var_t = 0.8;
  EXPECT_LT(generate(c).variables.size(), sparse);
}

TEST(VarTightness, FormulaEdges) {
  const auto one = testing::make_problem({2, 2, 2}, {{{0, 1, 2}, std::vector<double>(8, 0.0)}});
  EXPECT_EQ(var_tightness(one), 0.0);
  const auto two = testing::make_problem({2, 2}, {{{0, 1}, {1, 2, 3, 4}}, {{0, 1}, {1, 2, 3, 4}}});
  EXPECT_EQ(var_tightness(two), 0.5);
}

TEST(ValidateConfig, RejectsBadConfigs) {
  const auto bad = [](auto mutate) {
    GenConfig c;
    mutate(c);
    return c;
  };
  EXPECT_THROW(validate_config(bad([](GenConfig& c) { c.min_arity = 0; })), ConfigError);
  EXPECT_THROW(validate_config(bad([](GenConfig& c) { c.max_arity = 1; })), ConfigError);
  EXPECT_THROW(validate_config(bad([](GenConfig& c) { c.domain_min = 3; })), ConfigError);
  EXPECT_THROW(validate_config(bad([](GenConfig& c) { c.domain_min = 0; })), ConfigError);
  EXPECT_THROW(validate_config(bad([](GenConfig& c) { c.cost_min = 200; })), ConfigError);
  EXPECT_THROW(validate_config(bad([](GenConfig& c) { c.var_t = 0.0; })), ConfigError);
  EXPECT_THROW(validate_config(bad([](GenConfig& c) { c.var_t = 1.0; })), ConfigError);
  EXPECT_THROW(validate_config(bad([](GenConfig& c) { c.num_functions = 0; })), ConfigError);
  EXPECT_NO_THROW(validate_config(GenConfig{}));
  EXPECT_THROW(generate(bad([](GenConfig& c) { c.var_t = 1.5; })), ConfigError);
}

TEST(GenConfigJson, RoundTrips) {
  GenConfig c;
  c.num_functions = 7;
  c.min_arity = 1;
  c.max_arity = 5;
  c.domain_min = 2;
  c.domain_max = 6;
  c.cost_min = 1;
  c.cost_max = 50;
  c.var_t = 0.35;
  c.seed = 77;
  const GenConfig back = parse_gen_config(gen_config_to_json(c));
  EXPECT_EQ(back.num_functions, 7u);
  EXPECT_EQ(back.max_arity, 5u);
  EXPECT_EQ(back.domain_max, 6u);
  EXPECT_EQ(back.cost_max, 50.0);
  EXPECT_EQ(back.var_t, 0.35);
  EXPECT_EQ(back.seed, 77u);
  EXPECT_THROW(parse_gen_config("{"), ConfigError);
  EXPECT_THROW(parse_gen_config(R"({"domain_size_range": [3]})"), ConfigError);
}

}  // namespace
}  // namespace dcop
