#include <benchmark/benchmark.h>

#include "netred/reduction.hpp"
#include "netred/sim.hpp"
#include "netred/validate.hpp"

using namespace netred;

namespace {

NetworkModel reference_network() {
  return make_generator_network(sample_wsbm(reference_wsbm(1)).laplacian, 1);
}

void bm_sample_wsbm(benchmark::State& state) {
  const WsbmParams params = concentration_wsbm(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_wsbm(params).adjacency);
}

void bm_spectral_cluster(benchmark::State& state) {
  const Laplacian lap = sample_wsbm(reference_wsbm(1)).laplacian;
  for (auto _ : state) benchmark::DoNotOptimize(spectral_cluster(lap).lambda2);
}

void bm_evaluate_tyu(benchmark::State& state) {
  const NetworkModel net = reference_network();
  const std::complex<double> s0(0.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_tyu(net, s0)(0, 0));
}

void bm_reduce_network(benchmark::State& state) {
  const NetworkModel net = reference_network();
  for (auto _ : state) benchmark::DoNotOptimize(reduce_network(net).l_hat_weight);
}

void bm_step_response(benchmark::State& state) {
  const NetworkModel net = reference_network();
  const StateSpace closed = assemble_closed_loop(net);
  for (auto _ : state) {
    const TimeSeries series =
        step_response(closed, {1, 1.0, 0.0}, state.range(0), 0.005);
    benchmark::DoNotOptimize(series.outputs.sum());
  }
}

}  // namespace

BENCHMARK(bm_sample_wsbm)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_spectral_cluster)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_evaluate_tyu)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_reduce_network)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_step_response)->Arg(5)->Arg(30)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
