#include <benchmark/benchmark.h>

#include "qbt/closed_form.hpp"
#include "qbt/scenario.hpp"

namespace {

using namespace qbt;

constexpr double kInvSqrt2 = 0.70710678118654752440;

void BM_ChannelBuild(benchmark::State& state) {
  const int cutoff = static_cast<int>(state.range(0));
  const FockBasis basis = make_basis(2, cutoff);
  const auto f = linear_mix(basis, 0, 1.0, complexd{0.5, 0.0});
  for (auto _ : state) {
    CouplingChannel channel(f);
    benchmark::DoNotOptimize(channel.mode_spectrum());
  }
  state.SetComplexityN(cutoff);
}
BENCHMARK(BM_ChannelBuild)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_ReducedDensitySweep(benchmark::State& state) {
  const int cutoff = static_cast<int>(state.range(0));
  const FockBasis basis = make_basis(2, cutoff);
  Eigen::VectorXcd phi(2);
  phi << kInvSqrt2, kInvSqrt2;
  const ReducedDensityEngine engine(linear_mix(basis, 0, 1.0, complexd{0.5, 0.0}),
                                    linear_mix(basis, 1, 1.0, complexd{0.5, 0.0}),
                                    MixedBosonState(product_state(basis, {{phi, 1}})));
  double t = 0.0;
  for (auto _ : state) {
    t += 0.05;
    benchmark::DoNotOptimize(engine.at(t));
  }
  state.SetComplexityN(cutoff);
}
BENCHMARK(BM_ReducedDensitySweep)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_CondensateClosedForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  CondensateScenario s{n, 1, kInvSqrt2 * 0.9, kInvSqrt2 * 0.9, 1.0, 1.2, InitialQubitState::q00};
  double t = 0.0;
  for (auto _ : state) {
    t += 0.05;
    benchmark::DoNotOptimize(rho_condensate(s, t));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_CondensateClosedForm)->RangeMultiplier(2)->Range(2, 32)->Complexity();

void BM_BogoliubovSeries(benchmark::State& state) {
  const double beta = 0.1 * static_cast<double>(state.range(0));
  BogoliubovScenario s{beta, 0.0, 1.0, 0};
  double t = 0.0;
  for (auto _ : state) {
    t += 0.05;
    benchmark::DoNotOptimize(rho_bogoliubov(s, t));
  }
}
BENCHMARK(BM_BogoliubovSeries)->DenseRange(1, 9, 2);

void BM_Negativity(benchmark::State& state) {
  const XState x{0.3, 0.25, 0.25, 0.2, complexd{0.2, 0.1}, complexd{0.05, 0.02}};
  for (auto _ : state) benchmark::DoNotOptimize(negativity(x));
}
BENCHMARK(BM_Negativity);

void BM_BetaScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scan_beta(0.3, 0.7, 40));
}
BENCHMARK(BM_BetaScan);

}  // namespace

BENCHMARK_MAIN();
