// Response computation cost per maximizer on one random n-ary function.
// Args: arity, domain size.

#include <benchmark/benchmark.h>

#include "dcop/fdsp.hpp"
#include "dcop/gdp.hpp"
#include "dcop/generator.hpp"

namespace {

using namespace dcop;

struct Fixture {
  FunctionDecl function;
  std::vector<Message> queries;
};

Fixture make_fixture(std::size_t arity, std::size_t domain) {
  Rng rng(mix_seed(arity * 100 + domain));
  Fixture fx;
  std::vector<std::size_t> shape(arity, domain);
  for (std::size_t i = 0; i < arity; ++i) fx.function.scope.push_back(static_cast<int>(i));
  fx.function.table = UtilityTable::filled(shape);
  for (auto& u : fx.function.table.values) u = static_cast<double>(rng.uniform_int(1, 100));
  fx.queries.resize(arity);
  // zero-mean queries, as Max-Sum would send them
  for (std::size_t j = 1; j < arity; ++j) {
    double sum = 0.0;
    for (std::size_t v = 0; v < domain; ++v) {
      fx.queries[j].push_back(rng.uniform_real(-30.0, 30.0));
      sum += fx.queries[j].back();
    }
    for (auto& x : fx.queries[j]) x -= sum / static_cast<double>(domain);
  }
  return fx;
}

void report_pruning(benchmark::State& state, const SearchStats& stats) {
  state.counters["pruned"] = stats.pruned_fraction();
}

void BM_Naive(benchmark::State& state) {
  const auto fx = make_fixture(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  SearchStats last;
  for (auto _ : state) {
    auto r = naive_maximize(fx.function, 0, fx.queries);
    benchmark::DoNotOptimize(r.message.data());
    last = r.stats;
  }
  report_pruning(state, last);
}

void BM_Fdsp(benchmark::State& state) {
  const auto fx = make_fixture(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  const auto estimates = decompose(fx.function);
  const auto msg = build_message_estimates(0, std::span<const Message>(fx.queries));
  SearchStats last;
  for (auto _ : state) {
    auto r = fdsp_maximize(fx.function, 0, fx.queries, estimates, msg);
    benchmark::DoNotOptimize(r.message.data());
    last = r.stats;
  }
  report_pruning(state, last);
}

void BM_Gdp(benchmark::State& state) {
  const auto fx = make_fixture(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  const auto slices = gdp_preprocess(fx.function);
  SearchStats last;
  for (auto _ : state) {
    auto r = gdp_maximize(fx.function, 0, fx.queries, slices);
    benchmark::DoNotOptimize(r.message.data());
    last = r.stats;
  }
  report_pruning(state, last);
}

void BM_Decompose(benchmark::State& state) {
  const auto fx = make_fixture(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    auto fe = decompose(fx.function);
    benchmark::DoNotOptimize(fe.cells_written());
  }
}

void BM_GdpPreprocess(benchmark::State& state) {
  const auto fx = make_fixture(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    auto s = gdp_preprocess(fx.function);
    benchmark::DoNotOptimize(s.arity());
  }
}

void shapes(benchmark::internal::Benchmark* b) {
  for (const int arity : {3, 5, 7}) b->Args({arity, 4});
  for (const int domain : {2, 6, 8}) b->Args({5, domain});
}

}  // namespace

BENCHMARK(BM_Naive)->Apply(shapes);
BENCHMARK(BM_Fdsp)->Apply(shapes);
BENCHMARK(BM_Gdp)->Apply(shapes);
BENCHMARK(BM_Decompose)->Apply(shapes);
BENCHMARK(BM_GdpPreprocess)->Apply(shapes);
BENCHMARK_MAIN();
