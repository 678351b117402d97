#include <benchmark/benchmark.h>

#include <cmath>

#include "qvortex/flow.hpp"
#include "qvortex/theta.hpp"

namespace {

using namespace qvortex;

VortexSystem make_system(double q) {
  const AnnulusGeometry g(1.0, std::sqrt(q));
  return VortexSystem(g, {Vortex{std::polar(g.geometric_mean_radius(), 0.2), 1.0},
                          Vortex{std::polar(0.5 * (g.r1() + g.geometric_mean_radius()), 2.1), -0.5}});
}

Complex probe(const VortexSystem& sys) {
  return std::polar(0.5 * (sys.geometry().geometric_mean_radius() + sys.geometry().r2()), -1.0);
}

void BM_VelocityQlog(benchmark::State& state) {
  const VortexSystem sys = make_system(static_cast<double>(state.range(0)));
  const Complex z = probe(sys);
  for (auto _ : state) benchmark::DoNotOptimize(velocity_qlog(sys, z, {}));
}
BENCHMARK(BM_VelocityQlog)->Arg(2)->Arg(4)->Arg(16);

void BM_VelocityImages(benchmark::State& state) {
  const VortexSystem sys = make_system(4.0);
  const Complex z = probe(sys);
  const int n_range = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(velocity_images(sys, z, n_range));
}
BENCHMARK(BM_VelocityImages)->Arg(10)->Arg(40);

void BM_LaurentCoefficients(benchmark::State& state) {
  const VortexSystem sys = make_system(4.0);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(laurent_coefficients(sys, order));
}
BENCHMARK(BM_LaurentCoefficients)->Arg(20)->Arg(60);

void BM_VelocityLaurent(benchmark::State& state) {
  const VortexSystem sys = make_system(4.0);
  const LaurentCoefficients coeffs = laurent_coefficients(sys, 60);
  const Complex z = probe(sys);
  for (auto _ : state) benchmark::DoNotOptimize(velocity_laurent(sys, coeffs, z));
}
BENCHMARK(BM_VelocityLaurent);

void BM_StreamTheta(benchmark::State& state) {
  const VortexSystem sys = rescale_to_unit_outer(make_system(4.0)).system;
  const Complex z = probe(sys);
  for (auto _ : state) benchmark::DoNotOptimize(stream_theta(sys, z));
}
BENCHMARK(BM_StreamTheta);

}  // namespace
