#include <doctest.h>

#include <cmath>

#include "breatherlab/analytic.hpp"
#include "breatherlab/quadrature.hpp"
#include "breatherlab/rng.hpp"
#include "breatherlab/spectral.hpp"

using namespace breatherlab;
using namespace breatherlab::spectral;

namespace {

// brute-force DFT oracle
std::vector<cplx> dft(const std::vector<cplx>& x, int sign) {
  const int n = static_cast<int>(x.size());
  std::vector<cplx> out(n);
  for (int k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double ang = sign * 2.0 * pi * j * k / n;
      acc += x[j] * cplx(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

ComplexField random_smooth_field(const GridSpec& g, unsigned seed) {
  CounterRng rng(seed);
  std::vector<cplx> coeffs(g.N, 0.0);
  for (int m = 0; m < 12; ++m) {
    coeffs[m] = 0.5 * rng.complex_symmetric(m);
    coeffs[(g.N - 1 - m) % g.N] = 0.5 * rng.complex_symmetric(100 + m);
  }
  SpectralEngine eng(g);
  ComplexField f(g, 0.0);
  f.values = eng.synthesize(coeffs);
  return f;
}

}  // namespace

TEST_CASE("fft providers match the DFT oracle") {
  for (int n : {16, 64, 256}) {
    CounterRng rng(42 + n);
    std::vector<cplx> x(n);
    for (int j = 0; j < n; ++j) x[j] = rng.complex_symmetric(j);

    const std::vector<cplx> fwd_oracle = dft(x, -1);
    const std::vector<cplx> inv_oracle = dft(x, +1);

    for (auto maker : {&make_radix2_fft, &make_fft}) {
      auto fft = maker(n);
      std::vector<cplx> out(n);
      fft->forward(x, out);
      for (int k = 0; k < n; ++k) CHECK(std::abs(out[k] - fwd_oracle[k]) < 1e-11 * n);
      fft->inverse(x, out);
      for (int k = 0; k < n; ++k) CHECK(std::abs(out[k] - inv_oracle[k]) < 1e-11 * n);
    }
  }
}

TEST_CASE("spectral derivative is exact on Fourier eigenfunctions") {
  GridSpec g(20.0, 64);
  SpectralEngine eng(g);
  const double k1 = 2.0 * pi * 3 / g.L;
  ComplexField f(g, 0.0);
  for (int j = 0; j < g.N; ++j) {
    const double x = g.node(j);
    f.values[j] = cplx(std::cos(k1 * x), std::sin(k1 * x));
  }
  const ComplexField d = eng.derivative(f, 1);
  for (int j = 0; j < g.N; ++j)
    CHECK(std::abs(d.values[j] - cplx(0.0, k1) * f.values[j]) < 1e-12);

  ComplexField c(g, 0.0);
  for (auto& v : c.values) v = cplx(2.5, -1.0);
  for (int order : {1, 2, 3}) {
    const ComplexField dc = eng.derivative(c, order);
    for (const cplx& v : dc.values) CHECK(std::abs(v) < 1e-13);
  }
}

TEST_CASE("second derivative of a sech profile matches the closed form") {
  GridSpec g(80.0, 1024);
  SpectralEngine eng(g);
  ComplexField f(g, 0.0);
  for (int j = 0; j < g.N; ++j) f.values[j] = 1.0 / std::cosh(g.node(j));
  const ComplexField d2 = eng.derivative(f, 2);
  double sup = 0.0;
  for (int j = 0; j < g.N; ++j) {
    const double s = 1.0 / std::cosh(g.node(j));
    sup = std::max(sup, std::abs(d2.values[j] - (s - 2.0 * s * s * s)));
  }
  CHECK(sup < 1e-10);
}

TEST_CASE("derivative composes: d(d f) = d^2 f") {
  GridSpec g(40.0, 256);
  SpectralEngine eng(g);
  const ComplexField f = random_smooth_field(g, 7);
  const ComplexField d11 = eng.derivative(eng.derivative(f, 1), 1);
  const ComplexField d2 = eng.derivative(f, 2);
  for (int j = 0; j < g.N; ++j) CHECK(std::abs(d11.values[j] - d2.values[j]) < 1e-11);
}

TEST_CASE("sobolev norm") {
  GridSpec g(30.0, 128);
  SpectralEngine eng(g);

  ComplexField zero(g, 0.0);
  CHECK(eng.sobolev_norm(zero, 1.0) == 0.0);

  // s = 0 equals the quadrature L2 norm (Parseval)
  const ComplexField f = random_smooth_field(g, 3);
  double l2 = 0.0;
  for (const cplx& v : f.values) l2 += std::norm(v);
  l2 = std::sqrt(l2 * g.dx());
  CHECK(eng.sobolev_norm(f, 0.0) == doctest::Approx(l2).epsilon(1e-12));
}

TEST_CASE("H1 norm of the peregrine perturbation matches direct quadrature") {
  GridSpec g(400.0, 4096);
  SpectralEngine eng(g);
  analytic::BreatherSpec p;
  p.kind = analytic::BreatherKind::peregrine;
  const ComplexField q = analytic::sample(p, g, 0.0, true);
  const double hs = eng.sobolev_norm(q, 1.0);

  // |Q|^2 + |Q_x|^2 with Q = -4/(1+2x^2), Q_x = 16x/(1+2x^2)^2 at t=0
  const auto density = [](double x) -> cplx {
    const double den = 1.0 + 2.0 * x * x;
    const double q0 = -4.0 / den;
    const double qx = 16.0 * x / (den * den);
    return q0 * q0 + qx * qx;
  };
  const double direct =
      std::sqrt(quadrature::integrate(density, -0.5 * g.L, 0.5 * g.L).real());
  CHECK(hs == doctest::Approx(direct).epsilon(1e-6));
}

TEST_CASE("grid refinement leaves the norm of a smooth field unchanged") {
  analytic::BreatherSpec km;
  km.kind = analytic::BreatherKind::kuznetsov_ma;
  km.a = 0.9;
  double prev = -1.0;
  for (int n : {2048, 4096}) {
    GridSpec g(200.0, n);
    SpectralEngine eng(g);
    const ComplexField f = analytic::sample(km, g, 0.4, true);
    const double norm = eng.sobolev_norm(f, 1.0);
    if (prev > 0.0) CHECK(std::abs(norm - prev) < 1e-8 * prev);
    prev = norm;
  }
}

TEST_CASE("periodic integration") {
  GridSpec g(2.0 * pi, 64);
  SpectralEngine eng(g);
  ComplexField one(g, 0.0);
  for (auto& v : one.values) v = 1.0;
  CHECK(eng.integrate_periodic(one).real() == doctest::Approx(2.0 * pi).epsilon(1e-14));

  ComplexField cosf(g, 0.0);
  for (int j = 0; j < g.N; ++j) cosf.values[j] = std::cos(2.0 * pi * g.node(j) / g.L);
  CHECK(std::abs(eng.integrate_periodic(cosf)) < 1e-14);
}

TEST_CASE("one-period akhmediev mass density matches adaptive quadrature") {
  const double a = 0.25;
  analytic::BreatherSpec ak;
  ak.kind = analytic::BreatherKind::akhmediev;
  ak.a = a;
  const double Lp = 2.0 * pi / analytic::akhmediev_params(a).alpha;
  GridSpec g(Lp, 512);
  SpectralEngine eng(g);
  ComplexField density(g, 0.0);
  const ComplexField u = analytic::sample(ak, g, 0.0);
  for (int j = 0; j < g.N; ++j) density.values[j] = std::norm(u.values[j]) - 1.0;
  const cplx grid_val = eng.integrate_periodic(density);

  const auto f = [&](double x) -> cplx {
    return std::norm(analytic::eval(ak, 0.0, x)) - 1.0;
  };
  const cplx oracle = quadrature::integrate(f, -0.5 * Lp, 0.5 * Lp);
  CHECK(std::abs(grid_val - oracle) < 1e-8);
}

TEST_CASE("parseval under randomized fields") {
  GridSpec g(25.0, 256);
  SpectralEngine eng(g);
  for (unsigned seed : {11u, 12u, 13u, 14u}) {
    const ComplexField f = random_smooth_field(g, seed);
    std::vector<cplx> density(g.N);
    for (int j = 0; j < g.N; ++j) density[j] = std::norm(f.values[j]);
    const double n2 = std::pow(eng.sobolev_norm(f, 0.0), 2);
    const double qd = eng.integrate_samples(density).real();
    CHECK(std::abs(n2 - qd) < 1e-10 * (1.0 + n2));
  }
}

TEST_CASE("line integration with algebraic tail correction (samples)") {
  GridSpec g(200.0, 4096);
  SpectralEngine eng(g);
  std::vector<cplx> lorentz(g.N);
  for (int j = 0; j < g.N; ++j) {
    const double x = g.node(j);
    lorentz[j] = 1.0 / (1.0 + x * x);
  }
  const double v = eng.integrate_samples_line(lorentz, 2.0).real();
  CHECK(v == doctest::Approx(pi).epsilon(1e-6));
  CHECK_THROWS_AS(eng.integrate_samples_line(lorentz, 0.9), param_error);
}
