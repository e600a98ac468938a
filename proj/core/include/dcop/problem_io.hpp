#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dcop/factor_graph.hpp"

namespace dcop {

/// A problem document that could not be parsed or failed validation.
/// `violations` lists every problem found (one JSON error, or the output of
/// validate_problem).
class ProblemFormatError : public std::runtime_error {
 public:
  explicit ProblemFormatError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// JSON document layout:
//   { "variables": [ {"id", "domain_size", "agent"} ... ],
//     "functions": [ {"id", "scope", "shape", "values"} ... ],
//     "meta": { ... } }
// `values` is the row-major flat table. The agent list is the sorted set of
// agents named by the variables.

Problem parse_problem(std::string_view json_text);
std::string serialize_problem(const Problem& problem);

Problem load_problem(const std::filesystem::path& path);
void save_problem(const Problem& problem, const std::filesystem::path& path);

}  // namespace dcop
