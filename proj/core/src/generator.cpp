#include "dcop/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "json.hpp"

namespace dcop {

using nlohmann::json;

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw ConfigError("empty integer range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return lo + static_cast<std::int64_t>(next());  // full 64-bit range
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

double Rng::uniform_real(double lo, double hi) {
  const double unit = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void validate_config(const GenConfig& c) {
  if (c.num_functions < 1) throw ConfigError("num_functions must be at least 1");
  if (c.min_arity < 1) throw ConfigError("min_arity must be at least 1");
  if (c.max_arity < c.min_arity) throw ConfigError("max_arity must be >= min_arity");
  if (c.domain_min < 1 || c.domain_max < c.domain_min) throw ConfigError("invalid domain size range");
  if (!(c.cost_min <= c.cost_max) || std::ceil(c.cost_min) > std::floor(c.cost_max)) {
    throw ConfigError("cost range contains no integer");
  }
  if (!(c.var_t > 0.0 && c.var_t < 1.0)) throw ConfigError("var_t must lie in (0, 1)");
}

Problem generate(const GenConfig& config) {
  validate_config(config);
  Rng rng(config.seed);

  std::vector<std::size_t> arities(config.num_functions);
  for (auto& a : arities) {
    a = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(config.min_arity),
                                                 static_cast<std::int64_t>(config.max_arity)));
  }
  const std::size_t total = std::accumulate(arities.begin(), arities.end(), std::size_t{0});
  const std::size_t widest = *std::max_element(arities.begin(), arities.end());
  const auto wanted = static_cast<std::size_t>(std::llround((1.0 - config.var_t) * static_cast<double>(total)));
  const std::size_t num_vars = std::max(widest, wanted);
  if (num_vars > total) throw ConfigError("var_t leaves more variables than scope slots");

  const auto domain = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(config.domain_min),
                                                               static_cast<std::int64_t>(config.domain_max)));

  std::vector<std::vector<int>> scopes(config.num_functions);
  std::vector<int> pool(num_vars);
  for (std::size_t k = 0; k < config.num_functions; ++k) {
    std::iota(pool.begin(), pool.end(), 0);
    // partial Fisher-Yates
    for (std::size_t i = 0; i < arities[k]; ++i) {
      const auto j = static_cast<std::size_t>(
          rng.uniform_int(static_cast<std::int64_t>(i), static_cast<std::int64_t>(num_vars - 1)));
      std::swap(pool[i], pool[j]);
    }
    scopes[k].assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(arities[k]));
    std::sort(scopes[k].begin(), scopes[k].end());
  }

  // orphan repair: move each unused variable into a slot whose variable is used twice or more
  std::vector<std::size_t> uses(num_vars, 0);
  for (const auto& s : scopes) {
    for (const int v : s) ++uses[static_cast<std::size_t>(v)];
  }
  for (std::size_t orphan = 0; orphan < num_vars; ++orphan) {
    if (uses[orphan] != 0) continue;
    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    for (std::size_t k = 0; k < scopes.size(); ++k) {
      for (std::size_t p = 0; p < scopes[k].size(); ++p) {
        if (uses[static_cast<std::size_t>(scopes[k][p])] >= 2) candidates.emplace_back(k, p);
      }
    }
    const auto pick = candidates[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(candidates.size()) - 1))];
    auto& scope = scopes[pick.first];
    --uses[static_cast<std::size_t>(scope[pick.second])];
    scope[pick.second] = static_cast<int>(orphan);
    ++uses[orphan];
    std::sort(scope.begin(), scope.end());
  }

  Problem problem;
  for (std::size_t x = 0; x < num_vars; ++x) {
    problem.variables.push_back(VariableDecl{static_cast<int>(x), domain, static_cast<int>(x)});
    problem.agents.push_back(static_cast<int>(x));
  }
  const auto cost_lo = static_cast<std::int64_t>(std::ceil(config.cost_min));
  const auto cost_hi = static_cast<std::int64_t>(std::floor(config.cost_max));
  for (std::size_t k = 0; k < scopes.size(); ++k) {
    FunctionDecl f;
    f.id = static_cast<int>(k);
    f.scope = scopes[k];
    auto table = UtilityTable::filled(std::vector<std::size_t>(f.scope.size(), domain));
    for (auto& u : table.values) u = static_cast<Utility>(rng.uniform_int(cost_lo, cost_hi));
    f.table = std::move(table);
    problem.functions.push_back(std::move(f));
  }

  json meta;
  meta["generator"] = json::parse(gen_config_to_json(config));
  meta["domain_size"] = domain;
  meta["var_tightness"] = var_tightness(problem);
  problem.meta = meta.dump();
  return problem;
}

double var_tightness(const Problem& problem) {
  const std::size_t total = total_arity(problem);
  if (total == 0) return 0.0;
  return 1.0 - static_cast<double>(problem.variables.size()) / static_cast<double>(total);
}

GenConfig parse_gen_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed generator config: ") + e.what());
  }
  GenConfig c;
  try {
    c.num_functions = doc.value("num_functions", c.num_functions);
    c.min_arity = doc.value("min_arity", c.min_arity);
    c.max_arity = doc.value("max_arity", c.max_arity);
    if (doc.contains("domain_size_range")) {
      const auto r = doc["domain_size_range"].get<std::vector<std::size_t>>();
      if (r.size() != 2) throw ConfigError("domain_size_range needs [lo, hi]");
      c.domain_min = r[0];
      c.domain_max = r[1];
    }
    if (doc.contains("cost_range")) {
      const auto r = doc["cost_range"].get<std::vector<double>>();
      if (r.size() != 2) throw ConfigError("cost_range needs [lo, hi]");
      c.cost_min = r[0];
      c.cost_max = r[1];
    }
    c.var_t = doc.value("var_t", c.var_t);
    c.seed = doc.value("seed", c.seed);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("generator config: ") + e.what());
  }
  validate_config(c);
  return c;
}

std::string gen_config_to_json(const GenConfig& c) {
  json doc;
  doc["num_functions"] = c.num_functions;
  doc["min_arity"] = c.min_arity;
  doc["max_arity"] = c.max_arity;
  doc["domain_size_range"] = {c.domain_min, c.domain_max};
  doc["cost_range"] = {c.cost_min, c.cost_max};
  doc["var_t"] = c.var_t;
  doc["seed"] = c.seed;
  return doc.dump();
}

}  // namespace dcop
