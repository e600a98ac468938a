// Command-line front end: generate instances, solve one, or run a sweep.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dcop/bench.hpp"
#include "dcop/generator.hpp"
#include "dcop/maxsum_engine.hpp"
#include "dcop/problem_io.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dcop::ConfigError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dcop::ConfigError("cannot write " + path);
  out << text;
  if (!out) throw dcop::ConfigError("write failed for " + path);
}

int cmd_generate(const std::string& config_path, const std::string& out_path, std::optional<std::uint64_t> seed) {
  dcop::GenConfig config = dcop::parse_gen_config(read_file(config_path));
  if (seed) config.seed = *seed;
  const dcop::Problem problem = dcop::generate(config);
  write_file(out_path, dcop::serialize_problem(problem));
  std::printf("wrote %s: %zu variables, %zu functions, requested var_t %.4f, measured %.4f\n", out_path.c_str(),
              problem.variables.size(), problem.functions.size(), config.var_t, dcop::var_tightness(problem));
  return 0;
}

int cmd_solve(const std::string& problem_path, const std::string& backend, std::size_t iterations,
              std::uint64_t seed) {
  const dcop::Problem problem = dcop::load_problem(problem_path);
  const auto kind = dcop::parse_backend_kind(backend);
  const dcop::RunResult r = dcop::run(problem, kind, dcop::RunOptions{iterations, seed});
  json doc = {{"backend", backend},
              {"iterations", iterations},
              {"seed", seed},
              {"best_assignment", r.best_assignment},
              {"best_global_utility", r.best_utility},
              {"final_assignment", r.assignments.back()},
              {"final_global_utility", r.utilities.back()},
              {"stats",
               {{"leaves_evaluated", r.stats.leaves_evaluated},
                {"total_leaves", r.stats.total_leaves},
                {"expansions", r.stats.expansions},
                {"prunes", r.stats.prunes},
                {"pruned_fraction", r.stats.pruned_fraction()}}},
              {"preprocess_time", r.preprocess_seconds},
              {"solve_time", r.solve_seconds}};
  std::cout << doc.dump(2) << '\n';
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path, const std::string& summary_path,
              std::optional<std::uint64_t> seed, bool quiet) {
  dcop::SweepConfig config = dcop::load_sweep_config(config_path);
  if (seed) config.seed = *seed;
  std::ofstream csv(out_path, std::ios::binary);
  if (!csv) throw dcop::ConfigError("cannot write " + out_path);
  csv << dcop::csv_header() << '\n';
  // rows are streamed so a long sweep leaves partial results behind
  const auto result = dcop::sweep(config, [&](const dcop::BenchRow& row) {
    csv << dcop::csv_line(row) << '\n';
    csv.flush();
    if (!quiet) {
      std::fprintf(stderr, "%s %s seed=%llu pruned=%.4f\n", row.config_id.c_str(),
                   std::string(dcop::to_string(row.backend)).c_str(),
                   static_cast<unsigned long long>(row.instance_seed), row.pruned_fraction);
    }
  });
  for (const auto& skip : result.skipped) {
    std::fprintf(stderr, "skipped %s %s seed=%llu: %s\n", skip.config_id.c_str(),
                 std::string(dcop::to_string(skip.backend)).c_str(),
                 static_cast<unsigned long long>(skip.instance_seed), skip.reason.c_str());
  }
  const std::string summary = dcop::summary_json(config, result);
  if (!summary_path.empty()) write_file(summary_path, summary);
  std::printf("%zu rows written to %s\n", result.rows.size(), out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-Sum DCOP toolkit with exact pruned response computation"};
  app.require_subcommand(1);

  std::string config_path, out_path, problem_path, summary_path;
  std::string backend = "fdsp";
  std::size_t iterations = 200;
  std::uint64_t seed_value = 0;
  bool quiet = false;

  auto* gen = app.add_subcommand("generate", "Generate a random problem file");
  gen->add_option("--config", config_path, "Generator config (JSON)")->required();
  gen->add_option("--out", out_path, "Output problem file")->required();
  auto* gen_seed = gen->add_option("--seed", seed_value, "Override the config seed");

  auto* solve = app.add_subcommand("solve", "Run Max-Sum on a problem file");
  solve->add_option("--problem", problem_path, "Problem file (JSON)")->required();
  solve->add_option("--backend", backend, "Response maximizer")
      ->check(CLI::IsMember({"naive", "fdsp", "gdp"}));
  solve->add_option("--iters", iterations, "Iterations");
  solve->add_option("--seed", seed_value, "Seed recorded in the result");

  auto* sw = app.add_subcommand("sweep", "Run a benchmark sweep");
  sw->add_option("--config", config_path, "Sweep config (JSON)")->required();
  sw->add_option("--out", out_path, "CSV output")->required();
  sw->add_option("--summary", summary_path, "JSON summary output");
  auto* sw_seed = sw->add_option("--seed", seed_value, "Override the sweep seed");
  sw->add_flag("--quiet", quiet, "No per-row progress on stderr");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return cmd_generate(config_path, out_path,
                          gen_seed->count() ? std::optional<std::uint64_t>(seed_value) : std::nullopt);
    }
    if (solve->parsed()) return cmd_solve(problem_path, backend, iterations, seed_value);
    if (sw->parsed()) {
      return cmd_sweep(config_path, out_path, summary_path,
                       sw_seed->count() ? std::optional<std::uint64_t>(seed_value) : std::nullopt, quiet);
    }
  } catch (const dcop::ProblemFormatError& e) {
    std::cerr << "invalid problem:\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
