#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dcop/factor_graph.hpp"
#include "dcop/maximizer.hpp"

namespace dcop {

/// One completion of a slice: its local utility and the flat table cell.
struct SliceEntry {
  Utility utility = 0.0;
  std::size_t cell = 0;
};

/// Local utilities of a function grouped by (target position, target value),
/// each group sorted by descending utility with ties in ascending cell order.
class SortedSlices {
 public:
  std::span<const SliceEntry> slice(std::size_t target, ValueIndex value) const;
  std::size_t arity() const { return slices_.size(); }

 private:
  friend SortedSlices gdp_preprocess(const FunctionDecl& function);
  std::vector<std::vector<std::vector<SliceEntry>>> slices_;  // [target][value]
};

SortedSlices gdp_preprocess(const FunctionDecl& function);

/// The one-shot range of utilities to scan for one (target, value).
/// Entries tied at `p` are always scanned; below that the range extends down
/// to `q`, including it iff `inclusive_q`.
struct GdpRange {
  Utility p = 0.0;
  Utility q = 0.0;
  bool inclusive_q = true;
  Utility m = 0.0;      // sum of non-target query maxima
  Utility b = 0.0;      // sum of query entries at the completion achieving p
  Utility t_gap = 0.0;  // m - b

  bool contains(Utility u) const { return u == p || (inclusive_q ? u >= q : u > q); }
};

GdpRange gdp_range(std::span<const SliceEntry> slice, const FunctionDecl& function, std::size_t target,
                   std::span<const Message> queries);

ResponseResult gdp_maximize(const FunctionDecl& function, std::size_t target,
                            std::span<const Message> queries, const SortedSlices& slices);

class GdpBackend final : public MaximizerBackend {
 public:
  BackendKind kind() const override { return BackendKind::gdp; }
  void prepare(const Problem& problem) override;
  bool prepared() const override { return problem_ != nullptr; }
  Message maximize(std::size_t function_index, std::size_t target,
                   std::span<const Message> queries, SearchStats& stats) override;

 private:
  const Problem* problem_ = nullptr;
  std::vector<SortedSlices> slices_;
};

}  // namespace dcop
