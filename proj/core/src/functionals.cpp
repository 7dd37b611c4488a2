#include "breatherlab/functionals.hpp"

#include <cmath>

#include "breatherlab/analytic.hpp"

namespace breatherlab::functionals {

namespace {

cplx integrate_density(SpectralEngine& eng, const std::vector<cplx>& density, Frame frame,
                       TailPolicy tail, double exponent) {
  if (frame == Frame::periodic) return eng.integrate_samples(density);
  return eng.integrate_samples_line(density, exponent, tail);
}

void check_grid(SpectralEngine& eng, const ComplexField& u, const char* op) {
  if (!(u.grid == eng.grid())) throw usage_error(std::string(op) + ": field grid does not match engine");
}

}  // namespace

double mass(SpectralEngine& eng, const ComplexField& u, Frame frame, TailPolicy tail) {
  check_grid(eng, u, "mass");
  std::vector<cplx> density(u.values.size());
  for (size_t j = 0; j < density.size(); ++j) density[j] = std::norm(u.values[j]) - 1.0;
  return integrate_density(eng, density, frame, tail, kMassTailExponent).real();
}

double momentum_relative(SpectralEngine& eng, const ComplexField& u, const ComplexField& bg,
                         Frame frame, TailPolicy tail) {
  check_grid(eng, u, "momentum");
  if (!(bg.grid == u.grid)) throw usage_error("momentum: background grid mismatch");
  const ComplexField ux = eng.derivative(u, 1);
  std::vector<cplx> density(u.values.size());
  for (size_t j = 0; j < density.size(); ++j)
    density[j] = std::conj(u.values[j] - bg.values[j]) * ux.values[j];
  return integrate_density(eng, density, frame, tail, kMomentumTailExponent).imag();
}

double momentum(SpectralEngine& eng, const ComplexField& u, Frame frame, TailPolicy tail) {
  ComplexField stokes(u.grid, u.t);
  const cplx bg(std::cos(u.t), std::sin(u.t));
  for (cplx& v : stokes.values) v = bg;
  return momentum_relative(eng, u, stokes, frame, tail);
}

double energy(SpectralEngine& eng, const ComplexField& u, Frame frame, TailPolicy tail) {
  check_grid(eng, u, "energy");
  const ComplexField ux = eng.derivative(u, 1);
  std::vector<cplx> density(u.values.size());
  for (size_t j = 0; j < density.size(); ++j) {
    const double m = std::norm(u.values[j]) - 1.0;
    density[j] = std::norm(ux.values[j]) - 0.5 * m * m;
  }
  return integrate_density(eng, density, frame, tail, kEnergyTailExponent).real();
}

double functional_F(SpectralEngine& eng, const ComplexField& u, Frame frame, TailPolicy tail) {
  check_grid(eng, u, "functional_F");
  const ComplexField ux = eng.derivative(u, 1);
  const ComplexField uxx = eng.derivative(u, 2);
  std::vector<cplx> density(u.values.size());
  for (size_t j = 0; j < density.size(); ++j) {
    const double m = std::norm(u.values[j]) - 1.0;
    const double gx = 2.0 * std::real(std::conj(u.values[j]) * ux.values[j]);  // (|u|^2)_x
    density[j] = std::norm(uxx.values[j]) - 3.0 * m * std::norm(ux.values[j]) - 0.5 * gx * gx +
                 0.5 * m * m * m;
  }
  return integrate_density(eng, density, frame, tail, kQuarticTailExponent).real();
}

const char* to_string(LyapunovKind k) {
  switch (k) {
    case LyapunovKind::peregrine: return "peregrine";
    case LyapunovKind::km: return "km";
    case LyapunovKind::akhmediev: return "akhmediev";
  }
  return "?";
}

double lyapunov(SpectralEngine& eng, const ComplexField& u, LyapunovKind kind, double a,
                Frame frame, TailPolicy tail) {
  switch (kind) {
    case LyapunovKind::peregrine:
      if (frame != Frame::line) throw usage_error("lyapunov(peregrine): line frame required");
      return functional_F(eng, u, frame, tail);
    case LyapunovKind::km: {
      if (frame != Frame::line) throw usage_error("lyapunov(km): line frame required");
      const double beta = analytic::km_params(a).beta;
      return functional_F(eng, u, frame, tail) + beta * beta * energy(eng, u, frame, tail);
    }
    case LyapunovKind::akhmediev: {
      if (frame != Frame::periodic)
        throw usage_error("lyapunov(akhmediev): periodic frame required");
      const double alpha = analytic::akhmediev_params(a).alpha;
      return functional_F(eng, u, frame, tail) - alpha * alpha * energy(eng, u, frame, tail);
    }
  }
  throw usage_error("unknown lyapunov kind");
}

double energy_space_distance(SpectralEngine& eng, const ComplexField& u1,
                             const ComplexField& u2) {
  check_grid(eng, u1, "energy_space_distance");
  if (!(u1.grid == u2.grid)) throw usage_error("energy_space_distance: grid mismatch");

  double sup = 0.0;
  for (size_t j = 0; j < u1.values.size(); ++j)
    sup = std::max(sup, std::abs(u1.values[j] - u2.values[j]));

  const ComplexField d1 = eng.derivative(u1, 1);
  const ComplexField d2 = eng.derivative(u2, 1);
  double dx_l2 = 0.0;
  double mod_l2 = 0.0;
  for (size_t j = 0; j < u1.values.size(); ++j) {
    dx_l2 += std::norm(d1.values[j] - d2.values[j]);
    const double dm = std::norm(u1.values[j]) - std::norm(u2.values[j]);
    mod_l2 += dm * dm;
  }
  const double dx = eng.grid().dx();
  return sup + std::sqrt(dx_l2 * dx) + std::sqrt(mod_l2 * dx);
}

FunctionalReport evaluate_all(SpectralEngine& eng, const ComplexField& u, Frame frame,
                              TailPolicy tail) {
  FunctionalReport r;
  r.frame = frame;
  r.t = u.t;
  r.M = mass(eng, u, frame, tail);
  r.P = momentum(eng, u, frame, tail);
  r.E = energy(eng, u, frame, tail);
  r.F = functional_F(eng, u, frame, tail);
  return r;
}

}  // namespace breatherlab::functionals
