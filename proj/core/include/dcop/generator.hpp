#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dcop/factor_graph.hpp"

namespace dcop {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Seeded generator: std::mt19937_64 (fully specified by the standard) with
/// rejection sampling for bounded integers and 53-bit mantissas for reals,
/// so streams reproduce across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Uniform real in [lo, hi).
  double uniform_real(double lo, double hi);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer, used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t x);

struct GenConfig {
  std::size_t num_functions = 10;
  std::size_t min_arity = 2;
  std::size_t max_arity = 3;
  std::size_t domain_min = 2;
  std::size_t domain_max = 2;
  double cost_min = 1.0;
  double cost_max = 100.0;
  double var_t = 0.5;
  std::uint64_t seed = 1;
};

/// Throws ConfigError describing the first problem with `config`.
void validate_config(const GenConfig& config);

/// Random n-ary instance. Arities are drawn per function, the variable count
/// follows from var_t, one domain size is shared by all variables, scopes are
/// sampled without replacement and sorted, and orphan variables are swapped
/// into scopes of variables that occur more than once. Utilities are uniform
/// integers in the cost range.
Problem generate(const GenConfig& config);

/// 1 - |variables| / total arity.
double var_tightness(const Problem& problem);

GenConfig parse_gen_config(std::string_view json_text);
std::string gen_config_to_json(const GenConfig& config);

}  // namespace dcop
