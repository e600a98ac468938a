#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dcop/factor_graph.hpp"
#include "dcop/maximizer.hpp"

namespace dcop {

/// An edge of the factor graph, named by the function and the scope position
/// of the variable within it.
struct EdgeRef {
  std::size_t function = 0;
  std::size_t position = 0;
};

/// Adjacency of a validated problem. Holds a reference to the problem.
class FactorGraph {
 public:
  /// Throws UsageError listing violations if the problem is invalid.
  explicit FactorGraph(const Problem& problem);

  const Problem& problem() const { return *problem_; }
  std::size_t num_variables() const { return by_variable_.size(); }
  std::size_t num_functions() const { return problem_->functions.size(); }
  std::size_t num_edges() const { return num_edges_; }

  std::span<const EdgeRef> edges_of_variable(std::size_t variable) const { return by_variable_.at(variable); }
  /// Dense edge id, contiguous per function in scope order.
  std::size_t edge_id(std::size_t function, std::size_t position) const {
    return edge_offset_[function] + position;
  }
  /// Scope position of `variable` in `function`, or throws UsageError if the
  /// variable is not adjacent to the function.
  std::size_t position_in(std::size_t function, std::size_t variable) const;

 private:
  const Problem* problem_;
  std::vector<std::vector<EdgeRef>> by_variable_;
  std::vector<std::size_t> edge_offset_;
  std::size_t num_edges_ = 0;
};

/// Query and response messages for every edge, zero-initialized. A variable
/// phase reads only responses and writes queries; a function phase reads
/// only queries and writes responses, so each phase sees the previous
/// phase's messages.
class MessageStore {
 public:
  explicit MessageStore(const FactorGraph& graph);

  Message& query(std::size_t function, std::size_t position) { return query_[graph_->edge_id(function, position)]; }
  const Message& query(std::size_t function, std::size_t position) const {
    return query_[graph_->edge_id(function, position)];
  }
  Message& response(std::size_t function, std::size_t position) {
    return response_[graph_->edge_id(function, position)];
  }
  const Message& response(std::size_t function, std::size_t position) const {
    return response_[graph_->edge_id(function, position)];
  }
  /// Queries of one function in scope order.
  std::span<const Message> queries_of(std::size_t function) const;

  std::size_t iteration = 0;
  SearchStats stats;

 private:
  const FactorGraph* graph_;
  std::vector<Message> query_;
  std::vector<Message> response_;
};

/// Query from `variable` to `function`: the sum of responses from the other
/// neighbours, shifted so that the entries sum to zero.
Message compute_query(const FactorGraph& graph, std::size_t variable, std::size_t function,
                      const MessageStore& store);

/// Response from `function` to `variable` via `backend`; counters are added to
/// store.stats.
Message compute_response(const FactorGraph& graph, std::size_t function, std::size_t variable,
                         MessageStore& store, MaximizerBackend& backend);

/// Argmax of the summed responses at `variable`; ties go to the lowest value.
ValueIndex decide_assignment(const FactorGraph& graph, std::size_t variable, const MessageStore& store);

struct RunOptions {
  std::size_t iterations = 200;
  std::uint64_t seed = 0;  // recorded only; the synchronous schedule is deterministic
};

struct RunResult {
  BackendKind backend = BackendKind::naive;
  std::uint64_t seed = 0;
  /// Entry 0 is the decision from the zero-initialized messages, entry k the
  /// decision after iteration k.
  std::vector<JointAssignment> assignments;
  std::vector<Utility> utilities;
  JointAssignment best_assignment;
  Utility best_utility = 0.0;
  SearchStats stats;
  /// Largest |sum of entries| over every query message emitted.
  double max_abs_query_sum = 0.0;
  double preprocess_seconds = 0.0;
  double solve_seconds = 0.0;
};

/// Synchronous Max-Sum. Each iteration sends every query, then every
/// response, then lets every variable decide. Drivers that need a different
/// schedule can call the phase methods directly.
class MaxSumEngine {
 public:
  MaxSumEngine(const FactorGraph& graph, MaximizerBackend& backend);

  void send_queries();
  void send_responses();
  JointAssignment decide() const;
  /// One full iteration; returns the decision made at its end.
  JointAssignment step();

  const MessageStore& store() const { return store_; }
  double max_abs_query_sum() const { return max_abs_query_sum_; }

 private:
  const FactorGraph& graph_;
  MaximizerBackend& backend_;
  MessageStore store_;
  double max_abs_query_sum_ = 0.0;
};

/// Prepares `backend` for `problem` (timed as preprocessing) and runs the
/// synchronous schedule for `options.iterations` iterations.
RunResult run(const Problem& problem, MaximizerBackend& backend, const RunOptions& options);
RunResult run(const Problem& problem, BackendKind backend, const RunOptions& options);

}  // namespace dcop
