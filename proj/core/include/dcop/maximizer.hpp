#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "dcop/factor_graph.hpp"

namespace dcop {

/// Utility vector over one variable's domain.
using Message = std::vector<Utility>;

/// Search counters for response-message maximization. `total_leaves` is the
/// size of the full joint table per response message, summed over calls.
struct SearchStats {
  std::uint64_t leaves_evaluated = 0;
  std::uint64_t expansions = 0;
  std::uint64_t prunes = 0;
  std::uint64_t total_leaves = 0;

  /// 1 - leaves_evaluated / total_leaves, or 0 when nothing was searched.
  double pruned_fraction() const;

  SearchStats& operator+=(const SearchStats& other);
  friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

struct ResponseResult {
  Message message;
  SearchStats stats;
};

// Every maximizer takes `queries` with one message per scope position of the
// function. The entry at the target position is ignored and may be empty;
// every other entry must have the length of that axis.

/// Throws UsageError unless `target` and `queries` fit `function`.
void check_response_inputs(const FunctionDecl& function, std::size_t target,
                           std::span<const Message> queries);

/// Brute-force response: for each target value, the maximum over all
/// completions of F(assign) + sum of the non-target query entries.
ResponseResult naive_maximize(const FunctionDecl& function, std::size_t target,
                              std::span<const Message> queries);

enum class BackendKind { naive, fdsp, gdp };

std::string_view to_string(BackendKind kind);
/// Accepts "naive", "fdsp" or "gdp"; throws UsageError otherwise.
BackendKind parse_backend_kind(std::string_view tag);

/// Function-to-variable response computation strategy used by the Max-Sum
/// engine. A backend is prepared once per problem (preprocessing such as
/// estimate tables or sorted slices) and then queried per (function, target).
/// The prepared problem must outlive the backend's use of it.
class MaximizerBackend {
 public:
  virtual ~MaximizerBackend() = default;

  virtual BackendKind kind() const = 0;
  virtual void prepare(const Problem& problem) = 0;
  virtual bool prepared() const = 0;

  /// Response message of functions[function_index] towards the variable at
  /// scope position `target`. Counters are added to `stats`.
  virtual Message maximize(std::size_t function_index, std::size_t target,
                           std::span<const Message> queries, SearchStats& stats) = 0;
};

class NaiveBackend final : public MaximizerBackend {
 public:
  BackendKind kind() const override { return BackendKind::naive; }
  void prepare(const Problem& problem) override { problem_ = &problem; }
  bool prepared() const override { return problem_ != nullptr; }
  Message maximize(std::size_t function_index, std::size_t target,
                   std::span<const Message> queries, SearchStats& stats) override;

 private:
  const Problem* problem_ = nullptr;
};

std::unique_ptr<MaximizerBackend> make_backend(BackendKind kind);

}  // namespace dcop
