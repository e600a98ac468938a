#include "dcop/factor_graph.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "builders.hpp"
#include "oracles.hpp"

namespace dcop {
namespace {

using testing::make_problem;

TEST(TableLookup, ZeroTable) {
  const auto t = UtilityTable::filled({2, 2, 2, 2});
  const JointAssignment a{0, 0, 0, 0};
  EXPECT_EQ(table_lookup(t, a), 0.0);
}

TEST(TableLookup, OneDimensional) {
  const UtilityTable t({2}, {5, 7});
  const JointAssignment a{1};
  EXPECT_EQ(table_lookup(t, a), 7.0);
}

TEST(TableLookup, TwoByTwoMatchesNestedLoops) {
  const UtilityTable t({2, 2}, {11, 12, 13, 14});
  std::size_t k = 0;
  for (ValueIndex r = 0; r < 2; ++r) {
    for (ValueIndex c = 0; c < 2; ++c) {
      const JointAssignment a{r, c};
      EXPECT_EQ(table_lookup(t, a), t.values[k++]);
    }
  }
  EXPECT_EQ(table_lookup(t, JointAssignment{1, 0}), 13.0);
}

TEST(TableLookup, RejectsBadAssignments) {
  const UtilityTable t({2, 3}, {1, 2, 3, 4, 5, 6});
  EXPECT_THROW(table_lookup(t, JointAssignment{0, 3}), UsageError);
  EXPECT_THROW(table_lookup(t, JointAssignment{kUnassigned, 0}), UsageError);
  EXPECT_THROW(table_lookup(t, JointAssignment{0}), UsageError);
}

TEST(UtilityTable, ConstructorChecksSize) { EXPECT_THROW(UtilityTable({2, 2}, {1, 2, 3}), UsageError); }

TEST(UtilityTable, RowMajorRoundTrip) {
  Rng rng(3);
  for (const auto& shape : testing::all_shapes(3, 3)) {
    const auto f = testing::random_function(rng, shape);
    for (std::size_t i = 0; i < f.table.values.size(); ++i) {
      const auto a = f.table.assignment_of(i);
      EXPECT_EQ(f.table.index_of(a), i);
      EXPECT_EQ(table_lookup(f.table, a), f.table.values[i]);
    }
  }
}

TEST(GlobalUtility, ZeroTables) {
  const auto p = make_problem({2, 2}, {{{0, 1}, {0, 0, 0, 0}}});
  EXPECT_EQ(global_utility(p, JointAssignment{1, 1}), 0.0);
}

TEST(GlobalUtility, SingleUnary) {
  const auto p = make_problem({2}, {{{0}, {3, 9}}});
  EXPECT_EQ(global_utility(p, JointAssignment{1}), 9.0);
}

TEST(GlobalUtility, SharedVariableSumsBothLookups) {
  const auto p = make_problem({2, 2, 2}, {{{0, 1}, {1, 2, 3, 4}}, {{1, 2}, {10, 20, 30, 40}}});
  // hand enumeration of x = (1, 0, 1): F0(1,0) = 3, F1(0,1) = 20
  EXPECT_EQ(global_utility(p, JointAssignment{1, 0, 1}), 23.0);
  testing::enumerate({2, 2, 2}, [&](const std::vector<std::size_t>& a) {
    const std::vector<ValueIndex> x(a.begin(), a.end());
    EXPECT_EQ(global_utility(p, x), testing::brute_global_utility(p, x));
  });
}

TEST(GlobalUtility, MissingValueIsUsageError) {
  const auto p = make_problem({2, 2}, {{{0, 1}, {1, 2, 3, 4}}});
  EXPECT_THROW(global_utility(p, JointAssignment{1}), UsageError);
}

// Exhaustive over scope choices: up to 3 functions, each on a nonempty
// subset of 3 variables, with d <= 3.
TEST(GlobalUtility, MatchesNestedLoopOracleExhaustively) {
  std::vector<std::vector<int>> subsets;
  for (int mask = 1; mask < 8; ++mask) {
    std::vector<int> s;
    for (int v = 0; v < 3; ++v) {
      if (mask & (1 << v)) s.push_back(v);
    }
    subsets.push_back(s);
  }
  Rng rng(11);
  for (std::size_t d = 1; d <= 3; ++d) {
    const std::vector<std::size_t> domains(3, d);
    testing::enumerate({7, 7, 7}, [&](const std::vector<std::size_t>& pick) {
      for (std::size_t num_functions = 1; num_functions <= 3; ++num_functions) {
        std::vector<std::pair<std::vector<int>, std::vector<double>>> fns;
        for (std::size_t k = 0; k < num_functions; ++k) {
          const auto& scope = subsets[pick[k]];
          std::vector<double> vals(static_cast<std::size_t>(std::pow(d, scope.size())));
          for (auto& v : vals) v = static_cast<double>(rng.uniform_int(-50, 50));
          fns.emplace_back(scope, vals);
        }
        const auto p = make_problem(domains, fns);
        testing::enumerate(domains, [&](const std::vector<std::size_t>& a) {
          const std::vector<ValueIndex> x(a.begin(), a.end());
          ASSERT_EQ(global_utility(p, x), testing::brute_global_utility(p, x));
        });
      }
    });
  }
}

TEST(ValidateProblem, WellFormed) {
  const auto p = make_problem({2, 2, 3}, {{{0, 1}, {1, 2, 3, 4}}, {{1, 2}, {1, 2, 3, 4, 5, 6}}});
  EXPECT_TRUE(validate_problem(p).empty());
}

TEST(ValidateProblem, ScopeNotIncreasing) {
  auto p = make_problem({2, 2, 2, 2}, {{{0, 1, 2, 3}, std::vector<double>(16, 1.0)}});
  FunctionDecl bad;
  bad.id = 7;
  bad.scope = {3, 1};
  bad.table = UtilityTable::filled({2, 2});
  p.functions.push_back(bad);
  const auto v = validate_problem(p);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("function 7"), std::string::npos);
}

TEST(ValidateProblem, ValueCountMismatch) {
  auto p = make_problem({2, 2}, {{{0, 1}, {1, 2, 3, 4}}});
  p.functions[0].table.values.pop_back();
  EXPECT_EQ(validate_problem(p).size(), 1u);
}

TEST(ValidateProblem, ReportsEachRule) {
  auto p = make_problem({2, 2, 2}, {{{0, 1}, {1, 2, 3, 4}}});
  // variable 2 is orphaned
  auto v = validate_problem(p);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("no scope"), std::string::npos);

  p = make_problem({2, 2}, {{{0, 5}, {1, 2, 3, 4}}});
  EXPECT_FALSE(validate_problem(p).empty());

  p = make_problem({2, 2}, {{{0, 1}, {1, 2, 3, 4}}});
  p.functions[0].table.values[2] = std::numeric_limits<double>::infinity();
  EXPECT_EQ(validate_problem(p).size(), 1u);

  p = make_problem({2, 2}, {{{0, 1}, {1, 2, 3, 4}}});
  p.functions[0].table.shape = {2, 3};
  EXPECT_EQ(validate_problem(p).size(), 1u);

  p = make_problem({2, 2}, {{{0, 1}, {1, 2, 3, 4}}});
  p.functions[0].scope.clear();
  EXPECT_FALSE(validate_problem(p).empty());

  p = make_problem({2, 2}, {{{0, 1}, {1, 2, 3, 4}}});
  p.variables[1].domain_size = 0;
  EXPECT_FALSE(validate_problem(p).empty());

  p = make_problem({2, 2}, {{{0, 1}, {1, 2, 3, 4}}, {{0, 1}, {1, 2, 3, 4}}});
  p.functions[1].id = p.functions[0].id;
  EXPECT_EQ(validate_problem(p).size(), 1u);
}

// Anything validate_problem accepts evaluates without range errors.
TEST(ValidateProblem, SoundForGlobalUtility) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GenConfig c;
    c.num_functions = 4;
    c.max_arity = 3;
    c.domain_max = 3;
    c.seed = seed;
    const auto p = generate(c);
    ASSERT_TRUE(validate_problem(p).empty());
    std::vector<std::size_t> domains;
    for (const auto& v : p.variables) domains.push_back(v.domain_size);
    Rng rng(seed);
    for (int trial = 0; trial < 20; ++trial) {
      JointAssignment x;
      for (auto d : domains) x.push_back(static_cast<ValueIndex>(rng.uniform_int(0, static_cast<std::int64_t>(d) - 1)));
      EXPECT_NO_THROW(global_utility(p, x));
    }
  }
}

}  // namespace
}  // namespace dcop
