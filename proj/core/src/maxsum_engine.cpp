#include "dcop/maxsum_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace dcop {

namespace {

std::string describe(const std::vector<std::string>& violations) {
  std::string out = "invalid problem:";
  for (const auto& v : violations) out += "\n  " + v;
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

FactorGraph::FactorGraph(const Problem& problem) : problem_(&problem) {
  if (auto violations = validate_problem(problem); !violations.empty()) {
    throw UsageError(describe(violations));
  }
  by_variable_.resize(problem.variables.size());
  edge_offset_.reserve(problem.functions.size());
  for (std::size_t f = 0; f < problem.functions.size(); ++f) {
    edge_offset_.push_back(num_edges_);
    const auto& scope = problem.functions[f].scope;
    for (std::size_t p = 0; p < scope.size(); ++p) {
      by_variable_[static_cast<std::size_t>(scope[p])].push_back(EdgeRef{f, p});
    }
    num_edges_ += scope.size();
  }
}

std::size_t FactorGraph::position_in(std::size_t function, std::size_t variable) const {
  for (const auto& e : edges_of_variable(variable)) {
    if (e.function == function) return e.position;
  }
  throw UsageError("variable " + std::to_string(variable) + " is not adjacent to function index " +
                   std::to_string(function));
}

MessageStore::MessageStore(const FactorGraph& graph) : graph_(&graph) {
  query_.resize(graph.num_edges());
  response_.resize(graph.num_edges());
  const auto& problem = graph.problem();
  for (std::size_t f = 0; f < problem.functions.size(); ++f) {
    const auto& fn = problem.functions[f];
    for (std::size_t p = 0; p < fn.scope.size(); ++p) {
      const std::size_t d = fn.table.shape[p];
      query(f, p).assign(d, 0.0);
      response(f, p).assign(d, 0.0);
    }
  }
}

std::span<const Message> MessageStore::queries_of(std::size_t function) const {
  const std::size_t arity = graph_->problem().functions.at(function).arity();
  return std::span<const Message>(query_).subspan(graph_->edge_id(function, 0), arity);
}

Message compute_query(const FactorGraph& graph, std::size_t variable, std::size_t function,
                      const MessageStore& store) {
  graph.position_in(function, variable);
  const std::size_t d = graph.problem().variables.at(variable).domain_size;
  Message out(d, 0.0);
  for (const auto& e : graph.edges_of_variable(variable)) {
    if (e.function == function) continue;
    const Message& r = store.response(e.function, e.position);
    for (std::size_t v = 0; v < d; ++v) out[v] += r[v];
  }
  Utility sum = 0.0;
  for (const Utility u : out) sum += u;
  const Utility alpha = -sum / static_cast<Utility>(d);
  for (auto& u : out) u += alpha;
  return out;
}

Message compute_response(const FactorGraph& graph, std::size_t function, std::size_t variable,
                         MessageStore& store, MaximizerBackend& backend) {
  if (!backend.prepared()) throw UsageError("backend is not prepared");
  const std::size_t position = graph.position_in(function, variable);
  return backend.maximize(function, position, store.queries_of(function), store.stats);
}

ValueIndex decide_assignment(const FactorGraph& graph, std::size_t variable, const MessageStore& store) {
  const std::size_t d = graph.problem().variables.at(variable).domain_size;
  Message belief(d, 0.0);
  for (const auto& e : graph.edges_of_variable(variable)) {
    const Message& r = store.response(e.function, e.position);
    for (std::size_t v = 0; v < d; ++v) belief[v] += r[v];
  }
  std::size_t best = 0;
  for (std::size_t v = 1; v < d; ++v) {
    if (belief[v] > belief[best]) best = v;
  }
  return static_cast<ValueIndex>(best);
}

MaxSumEngine::MaxSumEngine(const FactorGraph& graph, MaximizerBackend& backend)
    : graph_(graph), backend_(backend), store_(graph) {
  if (!backend_.prepared()) throw UsageError("backend is not prepared");
}

void MaxSumEngine::send_queries() {
  const auto& problem = graph_.problem();
  for (std::size_t f = 0; f < problem.functions.size(); ++f) {
    const auto& scope = problem.functions[f].scope;
    for (std::size_t p = 0; p < scope.size(); ++p) {
      Message q = compute_query(graph_, static_cast<std::size_t>(scope[p]), f, store_);
      Utility sum = 0.0;
      for (const Utility u : q) sum += u;
      max_abs_query_sum_ = std::max(max_abs_query_sum_, std::abs(sum));
      store_.query(f, p) = std::move(q);
    }
  }
}

void MaxSumEngine::send_responses() {
  const auto& problem = graph_.problem();
  for (std::size_t f = 0; f < problem.functions.size(); ++f) {
    const auto queries = store_.queries_of(f);
    for (std::size_t p = 0; p < problem.functions[f].arity(); ++p) {
      store_.response(f, p) = backend_.maximize(f, p, queries, store_.stats);
    }
  }
}

JointAssignment MaxSumEngine::decide() const {
  JointAssignment out(graph_.num_variables());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = decide_assignment(graph_, x, store_);
  return out;
}

JointAssignment MaxSumEngine::step() {
  send_queries();
  send_responses();
  ++store_.iteration;
  return decide();
}

RunResult run(const Problem& problem, MaximizerBackend& backend, const RunOptions& options) {
  const FactorGraph graph(problem);

  RunResult result;
  result.backend = backend.kind();
  result.seed = options.seed;

  const auto prep_start = std::chrono::steady_clock::now();
  backend.prepare(problem);
  result.preprocess_seconds = seconds_since(prep_start);

  const auto solve_start = std::chrono::steady_clock::now();
  MaxSumEngine engine(graph, backend);
  auto record = [&](JointAssignment assignment) {
    const Utility u = global_utility(problem, assignment);
    if (result.assignments.empty() || u > result.best_utility) {
      result.best_utility = u;
      result.best_assignment = assignment;
    }
    result.utilities.push_back(u);
    result.assignments.push_back(std::move(assignment));
  };
  record(engine.decide());
  for (std::size_t it = 0; it < options.iterations; ++it) record(engine.step());
  result.solve_seconds = seconds_since(solve_start);

  result.stats = engine.store().stats;
  result.max_abs_query_sum = engine.max_abs_query_sum();
  return result;
}

RunResult run(const Problem& problem, BackendKind backend, const RunOptions& options) {
  auto impl = make_backend(backend);
  return run(problem, *impl, options);
}

}  // namespace dcop
