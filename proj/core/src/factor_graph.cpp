#include "dcop/factor_graph.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <set>

namespace dcop {

namespace {

std::size_t product(const std::vector<std::size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

std::string function_label(const FunctionDecl& f) { return "function " + std::to_string(f.id); }

}  // namespace

UtilityTable::UtilityTable(std::vector<std::size_t> shape_in, std::vector<Utility> values_in)
    : shape(std::move(shape_in)), values(std::move(values_in)) {
  if (values.size() != product(shape)) {
    throw UsageError("utility table has " + std::to_string(values.size()) +
                     " values but its shape holds " + std::to_string(product(shape)));
  }
}

UtilityTable UtilityTable::filled(std::vector<std::size_t> shape, Utility fill) {
  const std::size_t n = product(shape);
  return UtilityTable(std::move(shape), std::vector<Utility>(n, fill));
}

std::size_t UtilityTable::cell_count() const { return product(shape); }

std::size_t UtilityTable::index_of(std::span<const ValueIndex> assignment) const {
  if (assignment.size() != shape.size()) {
    throw UsageError("assignment has " + std::to_string(assignment.size()) + " slots, table rank is " +
                     std::to_string(shape.size()));
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    const ValueIndex v = assignment[i];
    if (v == kUnassigned) throw UsageError("slot " + std::to_string(i) + " is unassigned");
    if (v < 0 || static_cast<std::size_t>(v) >= shape[i]) {
      throw UsageError("slot " + std::to_string(i) + " value " + std::to_string(v) +
                       " is outside axis length " + std::to_string(shape[i]));
    }
    index = index * shape[i] + static_cast<std::size_t>(v);
  }
  return index;
}

JointAssignment UtilityTable::assignment_of(std::size_t index) const {
  if (index >= cell_count()) throw UsageError("flat index out of range");
  JointAssignment out(shape.size());
  for (std::size_t i = shape.size(); i-- > 0;) {
    out[i] = static_cast<ValueIndex>(index % shape[i]);
    index /= shape[i];
  }
  return out;
}

Utility table_lookup(const UtilityTable& table, std::span<const ValueIndex> assignment) {
  if (table.values.size() != table.cell_count()) throw UsageError("malformed utility table");
  return table.at(assignment);
}

Utility global_utility(const Problem& problem, std::span<const ValueIndex> assignment) {
  if (assignment.size() != problem.variables.size()) {
    throw UsageError("assignment covers " + std::to_string(assignment.size()) + " of " +
                     std::to_string(problem.variables.size()) + " variables");
  }
  Utility total = 0.0;
  JointAssignment local;
  for (const auto& f : problem.functions) {
    local.resize(f.scope.size());
    for (std::size_t i = 0; i < f.scope.size(); ++i) {
      const int var = f.scope[i];
      if (var < 0 || static_cast<std::size_t>(var) >= assignment.size()) {
        throw UsageError(function_label(f) + " references unknown variable " + std::to_string(var));
      }
      local[i] = assignment[static_cast<std::size_t>(var)];
    }
    total += table_lookup(f.table, local);
  }
  return total;
}

std::vector<std::string> validate_problem(const Problem& problem) {
  std::vector<std::string> violations;
  auto report = [&](std::string msg) { violations.push_back(std::move(msg)); };

  const std::set<int> agents(problem.agents.begin(), problem.agents.end());
  const std::size_t num_vars = problem.variables.size();
  for (std::size_t i = 0; i < num_vars; ++i) {
    const auto& v = problem.variables[i];
    if (v.id != static_cast<int>(i)) {
      report("variable at position " + std::to_string(i) + " has id " + std::to_string(v.id) +
             " (ids must be 0..V-1 in order)");
    }
    if (v.domain_size < 1) report("variable " + std::to_string(v.id) + " has an empty domain");
    if (!agents.contains(v.owner_agent)) {
      report("variable " + std::to_string(v.id) + " is owned by undeclared agent " +
             std::to_string(v.owner_agent));
    }
  }

  std::vector<bool> covered(num_vars, false);
  std::set<int> function_ids;
  for (const auto& f : problem.functions) {
    const std::string label = function_label(f);
    if (!function_ids.insert(f.id).second) report("duplicate " + label);

    if (f.scope.empty()) {
      report(label + " has an empty scope");
      continue;
    }
    bool scope_ok = true;
    for (const int var : f.scope) {
      if (var < 0 || static_cast<std::size_t>(var) >= num_vars) {
        report(label + " references unknown variable " + std::to_string(var));
        scope_ok = false;
      } else {
        covered[static_cast<std::size_t>(var)] = true;
      }
    }
    for (std::size_t i = 1; i < f.scope.size(); ++i) {
      if (f.scope[i] <= f.scope[i - 1]) {
        report(label + " scope is not strictly increasing");
        scope_ok = false;
        break;
      }
    }
    if (!scope_ok) continue;

    const auto& table = f.table;
    if (table.shape.size() != f.scope.size()) {
      report(label + " table rank " + std::to_string(table.shape.size()) + " differs from arity " +
             std::to_string(f.scope.size()));
      continue;
    }
    bool shape_ok = true;
    for (std::size_t i = 0; i < f.scope.size(); ++i) {
      const auto expected = problem.variables[static_cast<std::size_t>(f.scope[i])].domain_size;
      if (table.shape[i] != expected) {
        report(label + " axis " + std::to_string(i) + " has length " + std::to_string(table.shape[i]) +
               " but variable " + std::to_string(f.scope[i]) + " has domain size " +
               std::to_string(expected));
        shape_ok = false;
      }
    }
    if (!shape_ok) continue;
    if (table.values.size() != table.cell_count()) {
      report(label + " table has " + std::to_string(table.values.size()) + " values, expected " +
             std::to_string(table.cell_count()));
      continue;
    }
    for (const Utility u : table.values) {
      if (!std::isfinite(u)) {
        report(label + " table holds a non-finite utility");
        break;
      }
    }
  }

  for (std::size_t i = 0; i < num_vars; ++i) {
    if (!covered[i]) report("variable " + std::to_string(i) + " appears in no scope");
  }
  return violations;
}

std::size_t total_arity(const Problem& problem) {
  std::size_t total = 0;
  for (const auto& f : problem.functions) total += f.scope.size();
  return total;
}

}  // namespace dcop
