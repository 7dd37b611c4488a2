#include <benchmark/benchmark.h>

#include "breatherlab/analytic.hpp"
#include "breatherlab/evolve.hpp"
#include "breatherlab/functionals.hpp"
#include "breatherlab/variation.hpp"

using namespace breatherlab;

static void BM_FftForward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto fft = make_fft(n);
  std::vector<cplx> in(n, cplx(1.0, -0.5)), out(n);
  for (auto _ : state) {
    fft->forward(in, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_FftForward)->RangeMultiplier(4)->Range(256, 1 << 16)->Complexity();

static void BM_FftRadix2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto fft = make_radix2_fft(n);
  std::vector<cplx> in(n, cplx(1.0, -0.5)), out(n);
  for (auto _ : state) {
    fft->forward(in, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_FftRadix2)->RangeMultiplier(4)->Range(256, 1 << 16)->Complexity();

static void BM_StrangStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  GridSpec g(200.0, n);
  spectral::SpectralEngine eng(g);
  analytic::BreatherSpec p;
  p.kind = analytic::BreatherKind::peregrine;
  ComplexField u = analytic::sample(p, g, -1.0);
  for (auto _ : state) {
    evolve::strang_step(eng, u, 1e-4);
    benchmark::DoNotOptimize(u.values.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_StrangStep)->RangeMultiplier(4)->Range(512, 1 << 15)->Complexity();

static void BM_QuarticFunctional(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  GridSpec g(400.0, n);
  spectral::SpectralEngine eng(g);
  analytic::BreatherSpec km;
  km.kind = analytic::BreatherKind::kuznetsov_ma;
  km.a = 0.8;
  const ComplexField u = analytic::sample(km, g, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        functionals::functional_F(eng, u, Frame::line, spectral::TailPolicy::none));
  }
}
BENCHMARK(BM_QuarticFunctional)->Arg(4096)->Arg(8192);

static void BM_SecondVariation(benchmark::State& state) {
  GridSpec g(40.0, 512);
  spectral::SpectralEngine eng(g);
  analytic::BreatherSpec km;
  km.kind = analytic::BreatherKind::kuznetsov_ma;
  km.a = 0.8;
  const ComplexField B = analytic::sample(km, g, 0.0);
  const auto basis = variation::hessian_basis(g, 4, Frame::line, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(variation::second_variation(
        eng, functionals::LyapunovKind::km, 0.8, Frame::line, B, basis[3], basis[5]));
  }
}
BENCHMARK(BM_SecondVariation);

static void BM_OrbitalDistance(benchmark::State& state) {
  GridSpec g(200.0, 4096);
  spectral::SpectralEngine eng(g);
  analytic::BreatherSpec p;
  p.kind = analytic::BreatherKind::peregrine;
  const ComplexField u = analytic::sample(p, g, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(variation::orbital_distance(eng, u, p, 1.0, Frame::line));
  }
}
BENCHMARK(BM_OrbitalDistance);

BENCHMARK_MAIN();
