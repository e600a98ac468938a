#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcop {

/// Raised when an operation is called with arguments that violate its
/// preconditions (out-of-range values, missing messages, wrong arity).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Utility = double;
using ValueIndex = std::int32_t;

inline constexpr ValueIndex kUnassigned = -1;

/// One slot per scope position; a slot holds a value index or kUnassigned.
using JointAssignment = std::vector<ValueIndex>;

/// Dense n-dimensional utility tensor, row-major with the last axis varying
/// fastest. The fields are public so that malformed tables can be built and
/// reported by validate_problem; lookups check their arguments.
struct UtilityTable {
  std::vector<std::size_t> shape;
  std::vector<Utility> values;

  UtilityTable() = default;
  UtilityTable(std::vector<std::size_t> shape, std::vector<Utility> values);

  /// Table of the given shape filled with `fill`.
  static UtilityTable filled(std::vector<std::size_t> shape, Utility fill = 0.0);

  std::size_t rank() const { return shape.size(); }

  /// Product of the axis lengths (1 for a rank-0 table).
  std::size_t cell_count() const;

  /// Row-major flat index of a fully assigned joint assignment.
  std::size_t index_of(std::span<const ValueIndex> assignment) const;

  /// Inverse of index_of.
  JointAssignment assignment_of(std::size_t index) const;

  Utility at(std::span<const ValueIndex> assignment) const {
    return values[index_of(assignment)];
  }
};

struct VariableDecl {
  int id = 0;
  std::size_t domain_size = 1;
  int owner_agent = 0;
};

struct FunctionDecl {
  int id = 0;
  std::vector<int> scope;  // strictly increasing variable ids
  UtilityTable table;

  std::size_t arity() const { return scope.size(); }
};

/// A DCOP instance <A, X, D, F>. Variable ids are dense: variables[i].id == i.
struct Problem {
  std::vector<int> agents;
  std::vector<VariableDecl> variables;
  std::vector<FunctionDecl> functions;
  /// Free-form metadata, kept as serialized JSON text ("{}" when empty).
  std::string meta = "{}";
};

/// Utility of one cell; every slot must be assigned and in range.
Utility table_lookup(const UtilityTable& table, std::span<const ValueIndex> assignment);

/// Sum of every constraint evaluated at `assignment`, which holds one value
/// per variable indexed by variable id.
Utility global_utility(const Problem& problem, std::span<const ValueIndex> assignment);

/// Every structural violation found in `problem`; empty means valid.
std::vector<std::string> validate_problem(const Problem& problem);

/// Sum over functions of the table arity.
std::size_t total_arity(const Problem& problem);

}  // namespace dcop
