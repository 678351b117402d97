#include <benchmark/benchmark.h>

#include <numbers>

#include "qvortex/dynamics.hpp"

namespace {

using namespace qvortex;

void BM_OrbitFrequency(benchmark::State& state) {
  const AnnulusGeometry g(1.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(orbit_frequency(g, 1.0, 1.3));
}
BENCHMARK(BM_OrbitFrequency);

void BM_IntegratePeriod(benchmark::State& state) {
  const AnnulusGeometry g(1.0, 2.0);
  const VortexSystem sys(g, {Vortex{Complex{1.2, 0.0}, 1.0}});
  const double omega = orbit_frequency(g, 1.0, 1.2).omega;
  const double period = 2.0 * std::numbers::pi / std::abs(omega);
  const double dt = default_time_step(sys);
  for (auto _ : state) benchmark::DoNotOptimize(integrate(sys, period, dt));
}
BENCHMARK(BM_IntegratePeriod)->Unit(benchmark::kMillisecond);

}  // namespace
