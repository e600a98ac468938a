#include "dcop/gdp.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace dcop {

namespace {

// Sum of the non-target query entries at `cell`, in ascending position order.
Utility message_sum(const std::vector<std::size_t>& shape, std::size_t cell, std::size_t target,
                    std::span<const Message> queries) {
  // decode back to front, accumulate front to back
  std::size_t values[32];
  for (std::size_t j = shape.size(); j-- > 0;) {
    values[j] = cell % shape[j];
    cell /= shape[j];
  }
  Utility sum = 0.0;
  for (std::size_t j = 0; j < shape.size(); ++j) {
    if (j != target) sum += queries[j][values[j]];
  }
  return sum;
}

}  // namespace

std::span<const SliceEntry> SortedSlices::slice(std::size_t target, ValueIndex value) const {
  if (target >= slices_.size()) throw UsageError("slice target outside arity");
  const auto& per_value = slices_[target];
  if (value < 0 || static_cast<std::size_t>(value) >= per_value.size()) {
    throw UsageError("slice value out of range");
  }
  return per_value[static_cast<std::size_t>(value)];
}

SortedSlices gdp_preprocess(const FunctionDecl& function) {
  const auto& shape = function.table.shape;
  const std::size_t n = shape.size();
  if (n == 0 || n != function.arity()) throw UsageError("cannot preprocess a malformed function");
  if (n > 32) throw UsageError("arity above 32 is not supported");

  SortedSlices out;
  out.slices_.resize(n);
  const std::size_t cells = function.table.values.size();
  std::size_t stride = cells;
  for (std::size_t t = 0; t < n; ++t) {
    stride /= shape[t];
    auto& per_value = out.slices_[t];
    per_value.resize(shape[t]);
    for (auto& s : per_value) s.reserve(cells / shape[t]);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      const std::size_t v = (cell / stride) % shape[t];
      per_value[v].push_back(SliceEntry{function.table.values[cell], cell});
    }
    for (auto& s : per_value) {
      std::stable_sort(s.begin(), s.end(),
                       [](const SliceEntry& a, const SliceEntry& b) { return a.utility > b.utility; });
    }
  }
  return out;
}

GdpRange gdp_range(std::span<const SliceEntry> slice, const FunctionDecl& function, std::size_t target,
                   std::span<const Message> queries) {
  if (slice.empty()) throw UsageError("empty slice");
  const auto& shape = function.table.shape;

  GdpRange r;
  r.p = slice.front().utility;
  for (std::size_t j = 0; j < shape.size(); ++j) {
    if (j != target) r.m += *std::max_element(queries[j].begin(), queries[j].end());
  }
  r.b = message_sum(shape, slice.front().cell, target, queries);
  r.t_gap = r.m - r.b;
  const Utility cut = r.p - r.t_gap;

  const auto it = std::find_if(slice.begin(), slice.end(),
                               [cut](const SliceEntry& e) { return e.utility <= cut; });
  if (it == slice.end()) {
    r.q = slice.back().utility;
    r.inclusive_q = true;
  } else {
    r.q = it->utility;
    r.inclusive_q = r.q != cut;
  }
  return r;
}

ResponseResult gdp_maximize(const FunctionDecl& function, std::size_t target,
                            std::span<const Message> queries, const SortedSlices& slices) {
  check_response_inputs(function, target, queries);
  if (slices.arity() != function.arity()) throw UsageError("slices were built for a different function");
  const auto& shape = function.table.shape;

  ResponseResult out;
  out.stats.total_leaves = function.table.values.size();
  out.message.assign(shape[target], -std::numeric_limits<Utility>::infinity());
  for (std::size_t v = 0; v < shape[target]; ++v) {
    const auto slice = slices.slice(target, static_cast<ValueIndex>(v));
    const GdpRange range = gdp_range(slice, function, target, queries);
    Utility best = -std::numeric_limits<Utility>::infinity();
    for (const auto& entry : slice) {
      if (!range.contains(entry.utility)) break;
      const Utility total = entry.utility + message_sum(shape, entry.cell, target, queries);
      ++out.stats.leaves_evaluated;
      ++out.stats.expansions;
      if (total > best) best = total;
    }
    out.message[v] = best;
  }
  out.stats.prunes = out.stats.total_leaves - out.stats.leaves_evaluated;
  return out;
}

void GdpBackend::prepare(const Problem& problem) {
  problem_ = &problem;
  slices_.clear();
  slices_.reserve(problem.functions.size());
  for (const auto& f : problem.functions) slices_.push_back(gdp_preprocess(f));
}

Message GdpBackend::maximize(std::size_t function_index, std::size_t target,
                             std::span<const Message> queries, SearchStats& stats) {
  if (!problem_) throw UsageError("gdp backend used before prepare()");
  auto result = gdp_maximize(problem_->functions.at(function_index), target, queries,
                             slices_[function_index]);
  stats += result.stats;
  return std::move(result.message);
}

}  // namespace dcop
