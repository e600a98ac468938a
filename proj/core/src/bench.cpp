#include "dcop/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "dcop/maxsum_engine.hpp"
#include "json.hpp"

namespace dcop {

using nlohmann::json;

namespace {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_seconds(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string format_setting_value(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

SweepParameter parse_parameter(const std::string& name) {
  if (name == "none") return SweepParameter::none;
  if (name == "var_t") return SweepParameter::var_t;
  if (name == "max_arity") return SweepParameter::max_arity;
  if (name == "num_functions") return SweepParameter::num_functions;
  if (name == "domain_size") return SweepParameter::domain_size;
  throw ConfigError("unknown sweep parameter '" + name + "'");
}

std::size_t as_count(double x, const char* what) {
  if (!(x >= 1.0) || std::floor(x) != x) throw ConfigError(std::string(what) + " must be a positive integer");
  return static_cast<std::size_t>(x);
}

std::size_t largest_table(const Problem& problem) {
  std::size_t widest = 0;
  for (const auto& f : problem.functions) widest = std::max(widest, f.table.values.size());
  return widest;
}

}  // namespace

std::string_view to_string(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::none: return "none";
    case SweepParameter::var_t: return "var_t";
    case SweepParameter::max_arity: return "max_arity";
    case SweepParameter::num_functions: return "num_functions";
    case SweepParameter::domain_size: return "domain_size";
  }
  return "unknown";
}

SweepConfig parse_sweep_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed sweep config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("sweep config must be a JSON object");

  SweepConfig c;
  try {
    c.name = doc.value("name", c.name);
    if (doc.contains("generator")) c.base = parse_gen_config(doc["generator"].dump());
    if (doc.contains("var_t_range")) {
      const auto r = doc["var_t_range"].get<std::vector<double>>();
      if (r.size() != 2 || !(r[0] > 0.0 && r[0] <= r[1] && r[1] < 1.0)) {
        throw ConfigError("var_t_range needs [lo, hi] inside (0, 1)");
      }
      c.var_t_range = std::make_pair(r[0], r[1]);
    }
    if (doc.contains("axis")) {
      const auto& axis = doc["axis"];
      c.parameter = parse_parameter(axis.value("parameter", std::string("none")));
      c.values = axis.value("values", std::vector<double>{});
    }
    c.instances = doc.value("instances", c.instances);
    c.iterations = doc.value("iterations", c.iterations);
    if (doc.contains("backends")) {
      c.backends.clear();
      for (const auto& tag : doc["backends"]) c.backends.push_back(parse_backend_kind(tag.get<std::string>()));
    }
    c.seed = doc.value("seed", c.seed);
    c.naive_max_cells = doc.value("naive_max_cells", c.naive_max_cells);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("sweep config: ") + e.what());
  } catch (const UsageError& e) {
    throw ConfigError(e.what());
  }

  if (c.parameter != SweepParameter::none && c.values.empty()) throw ConfigError("sweep axis has no values");
  if (c.instances < 1) throw ConfigError("instances must be at least 1");
  if (c.backends.empty()) throw ConfigError("no backends selected");
  for (std::size_t s = 0; s < setting_count(c); ++s) validate_config(instance_config(c, s, 0));
  return c;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_sweep_config(buffer.str());
}

std::size_t setting_count(const SweepConfig& config) {
  return config.parameter == SweepParameter::none ? 1 : config.values.size();
}

std::string setting_id(const SweepConfig& config, std::size_t setting) {
  if (config.parameter == SweepParameter::none) return config.name;
  return std::string(to_string(config.parameter)) + "=" + format_setting_value(config.values.at(setting));
}

GenConfig instance_config(const SweepConfig& config, std::size_t setting, std::size_t instance) {
  GenConfig g = config.base;
  g.seed = mix_seed(config.seed ^ mix_seed((static_cast<std::uint64_t>(setting) << 32) | instance));
  if (config.var_t_range && config.parameter != SweepParameter::var_t) {
    Rng rng(mix_seed(g.seed));
    g.var_t = rng.uniform_real(config.var_t_range->first, config.var_t_range->second);
    if (!(g.var_t > 0.0)) g.var_t = config.var_t_range->second;
  }
  if (config.parameter == SweepParameter::none) return g;
  const double value = config.values.at(setting);
  switch (config.parameter) {
    case SweepParameter::var_t: g.var_t = value; break;
    case SweepParameter::max_arity:
      g.max_arity = as_count(value, "max_arity");
      g.min_arity = std::min(g.min_arity, g.max_arity);
      break;
    case SweepParameter::num_functions: g.num_functions = as_count(value, "num_functions"); break;
    case SweepParameter::domain_size:
      g.domain_min = g.domain_max = as_count(value, "domain_size");
      break;
    case SweepParameter::none: break;
  }
  return g;
}

SweepResult sweep(const SweepConfig& config, const SweepProgress& progress) {
  SweepResult result;
  const RunOptions base_options{config.iterations, 0};
  for (std::size_t s = 0; s < setting_count(config); ++s) {
    const std::string id = setting_id(config, s);
    for (std::size_t i = 0; i < config.instances; ++i) {
      const GenConfig gen = instance_config(config, s, i);
      const Problem problem = generate(gen);
      for (const BackendKind kind : config.backends) {
        if (kind == BackendKind::naive && largest_table(problem) > config.naive_max_cells) {
          result.skipped.push_back(SkippedRun{id, kind, gen.seed,
                                              "largest table has " + std::to_string(largest_table(problem)) +
                                                  " cells, above naive_max_cells"});
          continue;
        }
        RunOptions options = base_options;
        options.seed = gen.seed;
        const RunResult run_result = run(problem, kind, options);

        BenchRow row;
        row.config_id = id;
        row.backend = kind;
        row.instance_seed = gen.seed;
        row.iterations = config.iterations;
        row.leaves_evaluated = run_result.stats.leaves_evaluated;
        row.total_leaves = run_result.stats.total_leaves;
        row.pruned_fraction = run_result.stats.pruned_fraction();
        row.preprocess_time = run_result.preprocess_seconds;
        row.solve_time = run_result.solve_seconds;
        row.best_global_utility = run_result.best_utility;
        result.max_abs_query_sum = std::max(result.max_abs_query_sum, run_result.max_abs_query_sum);
        if (progress) progress(row);
        result.rows.push_back(std::move(row));
      }
    }
  }
  return result;
}

std::string csv_header() {
  return "config_id,backend,instance_seed,iterations,pruned_fraction,preprocess_time,solve_time,"
         "best_global_utility,leaves_evaluated,total_leaves";
}

std::string csv_line(const BenchRow& row) {
  std::string out;
  out += row.config_id;
  out += ',';
  out += to_string(row.backend);
  out += ',' + std::to_string(row.instance_seed);
  out += ',' + std::to_string(row.iterations);
  out += ',' + format_real(row.pruned_fraction);
  out += ',' + format_seconds(row.preprocess_time);
  out += ',' + format_seconds(row.solve_time);
  out += ',' + format_real(row.best_global_utility);
  out += ',' + std::to_string(row.leaves_evaluated);
  out += ',' + std::to_string(row.total_leaves);
  return out;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << csv_header() << '\n';
  for (const auto& row : rows) out << csv_line(row) << '\n';
}

std::string summary_json(const SweepConfig& config, const SweepResult& result) {
  struct Accumulator {
    std::size_t count = 0;
    double pruned = 0.0, preprocess = 0.0, solve = 0.0, utility = 0.0;
  };
  json settings = json::array();
  for (std::size_t s = 0; s < setting_count(config); ++s) {
    const std::string id = setting_id(config, s);
    std::map<std::string, Accumulator> by_backend;
    for (const auto& row : result.rows) {
      if (row.config_id != id) continue;
      auto& acc = by_backend[std::string(to_string(row.backend))];
      ++acc.count;
      acc.pruned += row.pruned_fraction;
      acc.preprocess += row.preprocess_time;
      acc.solve += row.solve_time;
      acc.utility += row.best_global_utility;
    }
    json backends = json::object();
    for (const auto& [name, acc] : by_backend) {
      const double n = static_cast<double>(acc.count);
      backends[name] = {{"instances", acc.count},
                        {"mean_pruned_fraction", acc.pruned / n},
                        {"mean_preprocess_time", acc.preprocess / n},
                        {"mean_solve_time", acc.solve / n},
                        {"mean_solve_plus_preprocess_time", (acc.solve + acc.preprocess) / n},
                        {"mean_best_global_utility", acc.utility / n}};
    }
    json entry = {{"config_id", id}, {"backends", backends}};
    if (config.parameter != SweepParameter::none) entry["value"] = config.values[s];
    settings.push_back(std::move(entry));
  }
  json skipped = json::array();
  for (const auto& skip : result.skipped) {
    skipped.push_back({{"config_id", skip.config_id},
                       {"backend", std::string(to_string(skip.backend))},
                       {"instance_seed", skip.instance_seed},
                       {"reason", skip.reason}});
  }
  json doc = {{"name", config.name},
              {"parameter", std::string(to_string(config.parameter))},
              {"instances", config.instances},
              {"iterations", config.iterations},
              {"settings", settings},
              {"skipped", skipped},
              {"max_abs_query_sum", result.max_abs_query_sum}};
  return doc.dump(2) + "\n";
}

}  // namespace dcop
