#include "dcop/fdsp.hpp"

#include <algorithm>
#include <string>

namespace dcop {

namespace {

// Maximizes out the last axis of a rank >= 2 table.
UtilityTable max_out_last_axis(const UtilityTable& table) {
  const std::size_t last = table.shape.back();
  std::vector<std::size_t> shape(table.shape.begin(), table.shape.end() - 1);
  std::vector<Utility> values(table.values.size() / last);
  for (std::size_t prefix = 0; prefix < values.size(); ++prefix) {
    const auto* row = table.values.data() + prefix * last;
    values[prefix] = *std::max_element(row, row + last);
  }
  return UtilityTable(std::move(shape), std::move(values));
}

// Fixes the last axis of `table` to `value`.
UtilityTable slice_last_axis(const UtilityTable& table, std::size_t value) {
  const std::size_t last = table.shape.back();
  std::vector<std::size_t> shape(table.shape.begin(), table.shape.end() - 1);
  std::vector<Utility> values(table.values.size() / last);
  for (std::size_t prefix = 0; prefix < values.size(); ++prefix) {
    values[prefix] = table.values[prefix * last + value];
  }
  return UtilityTable(std::move(shape), std::move(values));
}

Utility max_of(const Message& m) { return *std::max_element(m.begin(), m.end()); }

class StatePruningSearch {
 public:
  StatePruningSearch(const FunctionDecl& function, std::size_t target, std::span<const Message> queries,
                     const FunctionEstimates& estimates, const MessageEstimates& msg_estimates,
                     SearchStats& stats, SearchTrace* trace)
      : function_(function),
        shape_(function.table.shape),
        target_(target),
        queries_(queries),
        estimates_(estimates),
        msg_est_(msg_estimates.values),
        stats_(stats),
        trace_(trace),
        assign_(shape_.size(), kUnassigned),
        next_free_(shape_.size() + 1, shape_.size()) {
    const std::size_t n = shape_.size();
    std::size_t next = n;
    for (std::size_t i = n; i-- > 0;) {
      next_free_[i] = next;
      if (i != target_) next = i;
    }
    first_free_ = next;
    last_free_ = (target_ == n - 1) ? n - 2 : n - 1;
  }

  Utility solve(ValueIndex target_value) {
    target_value_ = target_value;
    std::fill(assign_.begin(), assign_.end(), kUnassigned);
    assign_[target_] = target_value;
    best_ = -std::numeric_limits<Utility>::infinity();
    lower_bound_ = best_;
    // informed tables are consulted while the expansion position precedes the target
    std::size_t prefix = 0;
    if (first_free_ > target_) prefix = static_cast<std::size_t>(target_value);
    expand(first_free_, prefix, 0.0, std::numeric_limits<Utility>::infinity());
    return best_;
  }

 private:
  // `prefix` is the row-major index of positions 0..position-1.
  void expand(std::size_t position, std::size_t prefix, Utility msg_before, Utility parent_bound) {
    const std::size_t domain = shape_[position];
    const Message& query = queries_[position];
    const bool leaf = position == last_free_;
    const UtilityTable& fun_est =
        position < target_ ? estimates_.informed(position, target_, target_value_)
                           : estimates_.uninformed(position);

    for (std::size_t v = 0; v < domain; ++v) {
      assign_[position] = static_cast<ValueIndex>(v);
      const std::size_t index = prefix * domain + v;
      const Utility msg_util = msg_before + query[v];
      const Utility bound = msg_util + msg_est_[position] + fun_est.values[index];
      ++stats_.expansions;

      const bool expand_node = bound > lower_bound_;
      Utility leaf_utility = 0.0;
      if (expand_node) {
        std::size_t child_prefix = index;
        if (position + 1 == target_) {
          child_prefix = index * shape_[target_] + static_cast<std::size_t>(target_value_);
        }
        if (leaf) {
          leaf_utility = function_.table.values[child_prefix] + msg_util;
          ++stats_.leaves_evaluated;
          if (leaf_utility > best_) {
            best_ = leaf_utility;
            lower_bound_ = leaf_utility;
          }
        }
        record(position, v, parent_bound, bound, leaf, true, leaf_utility);
        if (!leaf) expand(next_free_[position], child_prefix, msg_util, bound);
      } else {
        ++stats_.prunes;
        record(position, v, parent_bound, bound, leaf, false, 0.0);
      }
    }
    assign_[position] = kUnassigned;
  }

  void record(std::size_t position, std::size_t value, Utility parent_bound, Utility bound, bool leaf,
              bool expanded, Utility leaf_utility) {
    if (!trace_) return;
    SearchEvent e;
    e.target_value = target_value_;
    e.position = position;
    e.value = static_cast<ValueIndex>(value);
    e.parent_bound = parent_bound;
    e.bound = bound;
    e.leaf = leaf;
    e.expanded = expanded;
    e.evaluated = leaf && expanded;
    e.leaf_utility = leaf_utility;
    e.assignment = assign_;
    trace_->events.push_back(std::move(e));
  }

  const FunctionDecl& function_;
  const std::vector<std::size_t>& shape_;
  std::size_t target_;
  std::span<const Message> queries_;
  const FunctionEstimates& estimates_;
  const std::vector<Utility>& msg_est_;
  SearchStats& stats_;
  SearchTrace* trace_;

  JointAssignment assign_;
  std::vector<std::size_t> next_free_;
  std::size_t first_free_ = 0;
  std::size_t last_free_ = 0;
  ValueIndex target_value_ = 0;
  Utility best_ = 0.0;
  Utility lower_bound_ = 0.0;
};

}  // namespace

const UtilityTable& FunctionEstimates::uninformed(std::size_t position) const {
  if (position >= uninformed_.size()) throw UsageError("estimate position out of range");
  return uninformed_[position];
}

const UtilityTable& FunctionEstimates::informed(std::size_t position, std::size_t fixed_position,
                                                ValueIndex fixed_value) const {
  if (fixed_position >= informed_.size() || position >= fixed_position) {
    throw UsageError("informed estimate needs position < fixed position < arity");
  }
  const auto& per_value = informed_[fixed_position];
  if (fixed_value < 0 || static_cast<std::size_t>(fixed_value) >= per_value.size()) {
    throw UsageError("informed estimate value out of range");
  }
  return per_value[static_cast<std::size_t>(fixed_value)][position];
}

FunctionEstimates decompose(const FunctionDecl& function) {
  const std::size_t n = function.arity();
  if (n == 0 || function.table.shape.size() != n) throw UsageError("cannot decompose a malformed function");

  FunctionEstimates est;
  est.uninformed_.resize(n);
  est.uninformed_[n - 1] = function.table;
  est.cells_written_ += function.table.values.size();
  for (std::size_t i = n - 1; i-- > 0;) {
    est.uninformed_[i] = max_out_last_axis(est.uninformed_[i + 1]);
    est.cells_written_ += est.uninformed_[i].values.size();
  }

  est.informed_.resize(n);
  for (std::size_t j = 1; j < n; ++j) {
    const std::size_t domain = function.table.shape[j];
    est.informed_[j].resize(domain);
    for (std::size_t v = 0; v < domain; ++v) {
      auto& chain = est.informed_[j][v];
      chain.resize(j);
      chain[j - 1] = slice_last_axis(est.uninformed_[j], v);
      est.cells_written_ += chain[j - 1].values.size();
      for (std::size_t i = j - 1; i-- > 0;) {
        chain[i] = max_out_last_axis(chain[i + 1]);
        est.cells_written_ += chain[i].values.size();
      }
    }
  }
  return est;
}

MessageEstimates build_message_estimates(std::size_t target, std::span<const Utility> query_maxima) {
  const std::size_t n = query_maxima.size();
  if (target >= n) throw UsageError("target position outside arity");
  MessageEstimates out;
  out.target = target;
  out.values.assign(n, 0.0);
  // back up from the last non-target position, which gets 0
  Utility running = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    if (i == target) continue;
    out.values[i] = running;
    running = running + query_maxima[i];
  }
  return out;
}

MessageEstimates build_message_estimates(std::size_t target, std::span<const Message> queries) {
  std::vector<Utility> maxima(queries.size(), 0.0);
  for (std::size_t j = 0; j < queries.size(); ++j) {
    if (j == target) continue;
    if (queries[j].empty()) throw UsageError("missing query for scope position " + std::to_string(j));
    maxima[j] = max_of(queries[j]);
  }
  return build_message_estimates(target, std::span<const Utility>(maxima));
}

Utility upper_bound(const FunctionEstimates& estimates, const MessageEstimates& msg_estimates,
                    std::size_t position, std::span<const ValueIndex> assignment, Utility msg_util) {
  const std::size_t n = estimates.arity();
  const std::size_t target = msg_estimates.target;
  if (position == target) throw UsageError("the target position is never an expansion position");
  if (position >= n || assignment.size() != n || msg_estimates.values.size() != n) {
    throw UsageError("upper bound arguments do not match the function arity");
  }
  const ValueIndex target_value = assignment[target];
  if (target_value == kUnassigned) throw UsageError("target slot must be assigned");

  const UtilityTable& table = position < target ? estimates.informed(position, target, target_value)
                                                : estimates.uninformed(position);
  const std::span<const ValueIndex> prefix = assignment.first(position + 1);
  return msg_util + msg_estimates.values[position] + table.at(prefix);
}

ResponseResult fdsp_maximize(const FunctionDecl& function, std::size_t target,
                             std::span<const Message> queries, const FunctionEstimates& estimates,
                             const MessageEstimates& msg_estimates, SearchTrace* trace) {
  check_response_inputs(function, target, queries);
  const std::size_t n = function.arity();
  if (estimates.arity() != n) throw UsageError("estimates were built for a different function");
  if (msg_estimates.target != target || msg_estimates.values.size() != n) {
    throw UsageError("message estimates were built for a different target");
  }

  ResponseResult out;
  const std::size_t domain = function.table.shape[target];
  out.stats.total_leaves = function.table.values.size();
  if (n == 1) {
    out.message = function.table.values;
    out.stats.leaves_evaluated = domain;
    return out;
  }

  out.message.resize(domain);
  StatePruningSearch search(function, target, queries, estimates, msg_estimates, out.stats, trace);
  for (std::size_t v = 0; v < domain; ++v) out.message[v] = search.solve(static_cast<ValueIndex>(v));
  return out;
}

ResponseResult fdsp_maximize(const FunctionDecl& function, std::size_t target,
                             std::span<const Message> queries, const FunctionEstimates& estimates,
                             SearchTrace* trace) {
  check_response_inputs(function, target, queries);
  return fdsp_maximize(function, target, queries, estimates, build_message_estimates(target, queries),
                       trace);
}

MessageEstimateCache::MessageEstimateCache(std::size_t arity) : maxima_(arity, 0.0) {
  per_target_.reserve(arity);
  for (std::size_t t = 0; t < arity; ++t) {
    per_target_.push_back(MessageEstimates{t, std::vector<Utility>(arity, 0.0)});
  }
}

void MessageEstimateCache::observe(std::size_t target, std::span<const Message> queries) {
  if (queries.size() != maxima_.size()) throw UsageError("query count differs from arity");
  for (std::size_t j = 0; j < queries.size(); ++j) {
    if (j == target) continue;
    if (queries[j].empty()) throw UsageError("missing query for scope position " + std::to_string(j));
    set_maximum(j, max_of(queries[j]));
  }
}

void MessageEstimateCache::set_maximum(std::size_t position, Utility maximum) {
  if (position >= maxima_.size()) throw UsageError("position outside arity");
  if (maxima_[position] == maximum) return;
  maxima_[position] = maximum;
  refresh_estimates(position);
}

void MessageEstimateCache::refresh_estimates(std::size_t changed_position) {
  if (changed_position >= maxima_.size()) throw UsageError("position outside arity");
  ++refresh_count_;
  for (auto& est : per_target_) {
    const std::size_t t = est.target;
    if (t == changed_position) continue;
    // entry i = entry of the next non-target position + its maximum
    for (std::size_t i = changed_position; i-- > 0;) {
      if (i == t) continue;
      std::size_t next = i + 1;
      if (next == t) ++next;
      est.values[i] = next < maxima_.size() ? est.values[next] + maxima_[next] : 0.0;
      ++recomputed_entries_;
    }
  }
}

void FdspBackend::prepare(const Problem& problem) {
  problem_ = &problem;
  estimates_.clear();
  caches_.clear();
  estimates_.reserve(problem.functions.size());
  caches_.reserve(problem.functions.size());
  for (const auto& f : problem.functions) {
    estimates_.push_back(decompose(f));
    caches_.emplace_back(f.arity());
  }
}

Message FdspBackend::maximize(std::size_t function_index, std::size_t target,
                              std::span<const Message> queries, SearchStats& stats) {
  if (!problem_) throw UsageError("fdsp backend used before prepare()");
  const auto& function = problem_->functions.at(function_index);
  check_response_inputs(function, target, queries);
  auto& cache = caches_[function_index];
  cache.observe(target, queries);
  auto result = fdsp_maximize(function, target, queries, estimates_[function_index],
                              cache.estimates(target));
  stats += result.stats;
  return std::move(result.message);
}

}  // namespace dcop
