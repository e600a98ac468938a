#include "dcop/maximizer.hpp"

#include <limits>
#include <string>

#include "dcop/fdsp.hpp"
#include "dcop/gdp.hpp"

namespace dcop {

double SearchStats::pruned_fraction() const {
  if (total_leaves == 0) return 0.0;
  return 1.0 - static_cast<double>(leaves_evaluated) / static_cast<double>(total_leaves);
}

SearchStats& SearchStats::operator+=(const SearchStats& other) {
  leaves_evaluated += other.leaves_evaluated;
  expansions += other.expansions;
  prunes += other.prunes;
  total_leaves += other.total_leaves;
  return *this;
}

void check_response_inputs(const FunctionDecl& function, std::size_t target,
                           std::span<const Message> queries) {
  const std::size_t n = function.arity();
  if (n == 0) throw UsageError("function " + std::to_string(function.id) + " has arity 0");
  if (function.table.shape.size() != n) throw UsageError("table rank differs from arity");
  if (target >= n) {
    throw UsageError("target position " + std::to_string(target) + " outside arity " + std::to_string(n));
  }
  if (queries.size() != n) {
    throw UsageError("expected " + std::to_string(n) + " query slots, got " + std::to_string(queries.size()));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (j == target) continue;
    if (queries[j].size() != function.table.shape[j]) {
      throw UsageError("query for scope position " + std::to_string(j) + " has length " +
                       std::to_string(queries[j].size()) + ", domain size is " +
                       std::to_string(function.table.shape[j]));
    }
  }
}

ResponseResult naive_maximize(const FunctionDecl& function, std::size_t target,
                              std::span<const Message> queries) {
  check_response_inputs(function, target, queries);
  const auto& shape = function.table.shape;
  const std::size_t n = shape.size();

  ResponseResult out;
  out.message.assign(shape[target], -std::numeric_limits<Utility>::infinity());

  JointAssignment assign(n, 0);
  const std::size_t cells = function.table.values.size();
  for (std::size_t cell = 0; cell < cells; ++cell) {
    Utility msg_util = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != target) msg_util += queries[j][static_cast<std::size_t>(assign[j])];
    }
    const Utility total = function.table.values[cell] + msg_util;
    auto& slot = out.message[static_cast<std::size_t>(assign[target])];
    if (total > slot) slot = total;

    // row-major odometer, last axis fastest
    for (std::size_t j = n; j-- > 0;) {
      if (static_cast<std::size_t>(++assign[j]) < shape[j]) break;
      assign[j] = 0;
    }
  }
  out.stats.leaves_evaluated = cells;
  out.stats.expansions = cells;
  out.stats.total_leaves = cells;
  return out;
}

std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::naive: return "naive";
    case BackendKind::fdsp: return "fdsp";
    case BackendKind::gdp: return "gdp";
  }
  return "unknown";
}

BackendKind parse_backend_kind(std::string_view tag) {
  if (tag == "naive") return BackendKind::naive;
  if (tag == "fdsp") return BackendKind::fdsp;
  if (tag == "gdp") return BackendKind::gdp;
  throw UsageError("unknown backend '" + std::string(tag) + "' (expected naive, fdsp or gdp)");
}

Message NaiveBackend::maximize(std::size_t function_index, std::size_t target,
                               std::span<const Message> queries, SearchStats& stats) {
  if (!problem_) throw UsageError("naive backend used before prepare()");
  auto result = naive_maximize(problem_->functions.at(function_index), target, queries);
  stats += result.stats;
  return std::move(result.message);
}

std::unique_ptr<MaximizerBackend> make_backend(BackendKind kind) {
  switch (kind) {
    case BackendKind::naive: return std::make_unique<NaiveBackend>();
    case BackendKind::fdsp: return std::make_unique<FdspBackend>();
    case BackendKind::gdp: return std::make_unique<GdpBackend>();
  }
  throw UsageError("unknown backend kind");
}

}  // namespace dcop
