#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "dcop/factor_graph.hpp"
#include "dcop/maximizer.hpp"

namespace dcop {

/// Function decomposition of one constraint: prefix max-marginal tables used
/// as optimistic bounds on the local utility of a partial assignment.
///
/// Positions are 0-based scope positions. uninformed(i) is a table over
/// positions 0..i holding the maximum of F over positions i+1..n-1, so
/// uninformed(n-1) is F itself. informed(i, j, v) is a table over positions
/// 0..i holding the maximum of F over positions i+1..n-1 with position j > i
/// fixed to value v.
///
/// Both families are built back to front by maximizing out the last axis of
/// the next table; informed(j-1, j, v) is the v-slice of uninformed(j).
class FunctionEstimates {
 public:
  std::size_t arity() const { return uninformed_.size(); }

  const UtilityTable& uninformed(std::size_t position) const;
  const UtilityTable& informed(std::size_t position, std::size_t fixed_position,
                               ValueIndex fixed_value) const;

  /// Total cells written while decomposing (one per estimate entry).
  std::uint64_t cells_written() const { return cells_written_; }

 private:
  friend FunctionEstimates decompose(const FunctionDecl& function);

  std::vector<UtilityTable> uninformed_;
  // informed_[fixed_position][fixed_value][position], position < fixed_position
  std::vector<std::vector<std::vector<UtilityTable>>> informed_;
  std::uint64_t cells_written_ = 0;
};

FunctionEstimates decompose(const FunctionDecl& function);

/// Message half of the bound for one target position: values[i] is the sum of
/// query maxima over non-target positions after i. The target slot holds 0.
struct MessageEstimates {
  std::size_t target = 0;
  std::vector<Utility> values;
};

/// Builds the estimates by backing up maxima from the last non-target
/// position to the first. `query_maxima[j]` is max(queries[j]); the target
/// entry is ignored.
MessageEstimates build_message_estimates(std::size_t target, std::span<const Utility> query_maxima);
MessageEstimates build_message_estimates(std::size_t target, std::span<const Message> queries);

/// Bound on any completion of a partial assignment whose last assigned
/// non-target position is `position`. `assignment` is a full-width scope
/// assignment with positions 0..position and the target assigned.
/// `msg_util` is the sum of query entries of the assigned non-target
/// positions. Uses informed estimates while position < target.
Utility upper_bound(const FunctionEstimates& estimates, const MessageEstimates& msg_estimates,
                    std::size_t position, std::span<const ValueIndex> assignment, Utility msg_util);

/// One visited node of the state-pruning search.
struct SearchEvent {
  ValueIndex target_value = 0;
  std::size_t position = 0;
  ValueIndex value = 0;
  Utility parent_bound = std::numeric_limits<Utility>::infinity();
  Utility bound = 0.0;
  bool leaf = false;       // last non-target position
  bool evaluated = false;  // leaf whose full utility was computed
  bool expanded = false;   // bound exceeded the lower bound
  Utility leaf_utility = 0.0;
  JointAssignment assignment;
};

struct SearchTrace {
  std::vector<SearchEvent> events;
};

/// Branch-and-bound response computation. For each target value the lower
/// bound starts at -inf, children are visited in ascending value order and a
/// node is expanded only if its bound is strictly greater than the lower
/// bound. Returns the same vector as naive_maximize.
ResponseResult fdsp_maximize(const FunctionDecl& function, std::size_t target,
                             std::span<const Message> queries, const FunctionEstimates& estimates,
                             const MessageEstimates& msg_estimates, SearchTrace* trace = nullptr);

ResponseResult fdsp_maximize(const FunctionDecl& function, std::size_t target,
                             std::span<const Message> queries, const FunctionEstimates& estimates,
                             SearchTrace* trace = nullptr);

/// Per-function cache of message estimates for every target position.
/// Estimates are rebuilt only for positions before a position whose query
/// maximum changed.
class MessageEstimateCache {
 public:
  explicit MessageEstimateCache(std::size_t arity);

  /// Records the maxima of the non-target queries and refreshes estimates for
  /// every position whose maximum differs from the cached one.
  void observe(std::size_t target, std::span<const Message> queries);

  /// Sets the cached maximum of one position and refreshes what depends on it.
  void set_maximum(std::size_t position, Utility maximum);

  /// Rebuilds, for every target other than `changed_position`, the entries of
  /// positions before `changed_position`.
  void refresh_estimates(std::size_t changed_position);

  const MessageEstimates& estimates(std::size_t target) const { return per_target_[target]; }
  std::span<const Utility> maxima() const { return maxima_; }

  std::uint64_t refresh_count() const { return refresh_count_; }
  std::uint64_t recomputed_entries() const { return recomputed_entries_; }

 private:
  std::vector<Utility> maxima_;
  std::vector<MessageEstimates> per_target_;
  std::uint64_t refresh_count_ = 0;
  std::uint64_t recomputed_entries_ = 0;
};

class FdspBackend final : public MaximizerBackend {
 public:
  BackendKind kind() const override { return BackendKind::fdsp; }
  void prepare(const Problem& problem) override;
  bool prepared() const override { return problem_ != nullptr; }
  Message maximize(std::size_t function_index, std::size_t target,
                   std::span<const Message> queries, SearchStats& stats) override;

  const FunctionEstimates& estimates(std::size_t function_index) const {
    return estimates_.at(function_index);
  }
  const MessageEstimateCache& message_cache(std::size_t function_index) const {
    return caches_.at(function_index);
  }

 private:
  const Problem* problem_ = nullptr;
  std::vector<FunctionEstimates> estimates_;
  std::vector<MessageEstimateCache> caches_;
};

}  // namespace dcop
