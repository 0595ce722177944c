// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to compare scaling.
#include <benchmark/benchmark.h>

#include <cmath>

#include "qagent/kernels.hpp"

namespace {

using namespace qagent;
namespace k = qagent::kernels;

const CounterStream kStream(RngStreamKey{1, StreamContext::kTest, 0, 0});

std::vector<k::cplx> wave(std::size_t n) {
  std::vector<k::cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::polar(std::exp(-1e-5 * i), 0.01 * i);
  return v;
}

template <std::uint64_t (*Fn)(const CounterStream&, std::uint64_t, double)>
void BM_CountBelow(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(kStream, n, 0.3));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

template <k::cplx (*Fn)(std::span<const k::cplx>, std::span<const k::cplx>, double)>
void BM_Simpson(benchmark::State& state) {
  const auto a = wave(static_cast<std::size_t>(state.range(0)) + 1);
  const auto b = wave(a.size());
  for (auto _ : state) benchmark::DoNotOptimize(Fn(a, b, 1e-3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_GridMap(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto f = [](std::size_t i, std::size_t j) { return std::exp(-1e-3 * i) * std::cos(1e-2 * j); };
  for (auto _ : state) {
    auto out = Parallel ? k::parallel::grid_map(n, n, f) : k::serial::grid_map(n, n, f);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}

}  // namespace

BENCHMARK(BM_CountBelow<k::serial::count_below>)->Name("count_below/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_CountBelow<k::parallel::count_below>)->Name("count_below/parallel")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_Simpson<k::serial::simpson_inner>)->Name("simpson_inner/serial")->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_Simpson<k::parallel::simpson_inner>)->Name("simpson_inner/parallel")->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_GridMap<false>)->Name("grid_map/serial")->Arg(64)->Arg(512);
BENCHMARK(BM_GridMap<true>)->Name("grid_map/parallel")->Arg(64)->Arg(512);

BENCHMARK_MAIN();
