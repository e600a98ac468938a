#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dcop/generator.hpp"
#include "dcop/maximizer.hpp"

namespace dcop {

/// Parameter varied across the settings of a sweep.
enum class SweepParameter { none, var_t, max_arity, num_functions, domain_size };

struct SweepConfig {
  std::string name = "sweep";
  GenConfig base;
  /// When set, every instance draws its own var_t uniformly from this range
  /// (sparse / dense factor graphs) unless the axis is var_t itself.
  std::optional<std::pair<double, double>> var_t_range;
  SweepParameter parameter = SweepParameter::none;
  std::vector<double> values;
  std::size_t instances = 5;
  std::size_t iterations = 200;
  std::vector<BackendKind> backends{BackendKind::fdsp, BackendKind::gdp};
  std::uint64_t seed = 1;
  /// Naive runs are skipped for instances whose largest table exceeds this.
  std::size_t naive_max_cells = 100000;
};

struct BenchRow {
  std::string config_id;
  BackendKind backend = BackendKind::fdsp;
  std::uint64_t instance_seed = 0;
  std::size_t iterations = 0;
  double pruned_fraction = 0.0;
  double preprocess_time = 0.0;
  double solve_time = 0.0;
  Utility best_global_utility = 0.0;
  std::uint64_t leaves_evaluated = 0;
  std::uint64_t total_leaves = 0;
};

struct SkippedRun {
  std::string config_id;
  BackendKind backend = BackendKind::naive;
  std::uint64_t instance_seed = 0;
  std::string reason;
};

struct SweepResult {
  std::vector<BenchRow> rows;
  std::vector<SkippedRun> skipped;
  /// Largest |sum of entries| of any query message emitted by any run.
  double max_abs_query_sum = 0.0;
};

std::string_view to_string(SweepParameter parameter);

SweepConfig parse_sweep_config(std::string_view json_text);
SweepConfig load_sweep_config(const std::filesystem::path& path);

/// Generator config of one (setting, instance) pair.
GenConfig instance_config(const SweepConfig& config, std::size_t setting, std::size_t instance);
/// Label of a setting, e.g. "var_t=0.3".
std::string setting_id(const SweepConfig& config, std::size_t setting);
std::size_t setting_count(const SweepConfig& config);

using SweepProgress = std::function<void(const BenchRow&)>;

/// Runs every setting x instance x backend. Each instance is generated once
/// and shared by all backends.
SweepResult sweep(const SweepConfig& config, const SweepProgress& progress = {});

/// CSV in BenchRow field order with a header row.
std::string csv_header();
std::string csv_line(const BenchRow& row);
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// Per-setting, per-backend means as a JSON document.
std::string summary_json(const SweepConfig& config, const SweepResult& result);

}  // namespace dcop
