#include "breatherlab/analytic.hpp"

#include <cmath>

namespace breatherlab::analytic {

namespace {

cplx expi(double phase) { return {std::cos(phase), std::sin(phase)}; }

cplx peregrine_q(double t, double x) {
  return -4.0 * cplx(1.0, 2.0 * t) / (1.0 + 4.0 * t * t + 2.0 * x * x);
}

// Numerator and denominator normalized by e^{-beta|x|}: cosh never overflows
// and q -> 0 cleanly as |x| -> inf.
cplx km_q(double a, double t, double x) {
  const auto [alpha, beta] = km_params(a);
  const double e = std::exp(-std::abs(beta * x));
  const double cosh_scaled = 0.5 * (1.0 + e * e);
  const double ct = std::cos(alpha * t);
  const double st = std::sin(alpha * t);
  const cplx num = -std::sqrt(2.0) * beta * cplx(beta * beta * ct, alpha * st) * e;
  const double den = alpha * cosh_scaled - std::sqrt(2.0) * beta * ct * e;
  return num / den;
}

cplx akhmediev_q(double a, double t, double x) {
  const auto [alpha, beta] = akhmediev_params(a);
  const double e = std::exp(-std::abs(beta * t));
  const double cosh_scaled = 0.5 * (1.0 + e * e);
  const double sinh_scaled = (t >= 0.0 ? 0.5 : -0.5) * (1.0 - e * e);
  const cplx num(alpha * alpha * cosh_scaled, beta * sinh_scaled);
  const double den = std::sqrt(2.0 * a) * std::cos(alpha * x) * e - cosh_scaled;
  return num / den;
}

cplx perturbation_base(const BreatherSpec& spec, double t, double x) {
  switch (spec.kind) {
    case BreatherKind::stokes:
      return 0.0;
    case BreatherKind::peregrine:
      return peregrine_q(t, x);
    case BreatherKind::kuznetsov_ma:
      return km_q(spec.a, t, x);
    case BreatherKind::akhmediev:
      return akhmediev_q(spec.a, t, x);
    case BreatherKind::soliton:
      throw usage_error("soliton has zero background; no perturbation frame");
  }
  throw usage_error("unknown breather kind");
}

cplx soliton_base(double t, double x) {
  // sqrt(2) sech(x) e^{it}; 1/cosh evaluated without overflow
  const double e = std::exp(-std::abs(x));
  return expi(t) * (std::sqrt(2.0) * 2.0 * e / (1.0 + e * e));
}

struct TransformedArgs {
  double tau;
  double xi;
  cplx prefactor;  // sqrt(c) * exp(i(v x / 2 - v^2 t / 4 + gamma))
};

TransformedArgs transform_args(const SymmetryParams& s, double t, double x) {
  TransformedArgs out;
  out.tau = s.c * (t - s.t0);
  out.xi = std::sqrt(s.c) * (x - s.v * t - s.x0);
  out.prefactor = std::sqrt(s.c) * expi(0.5 * s.v * x - 0.25 * s.v * s.v * t + s.gamma);
  return out;
}

}  // namespace

const char* to_string(BreatherKind k) {
  switch (k) {
    case BreatherKind::stokes: return "stokes";
    case BreatherKind::peregrine: return "peregrine";
    case BreatherKind::kuznetsov_ma: return "km";
    case BreatherKind::akhmediev: return "akhmediev";
    case BreatherKind::soliton: return "soliton";
  }
  return "?";
}

BreatherKind kind_from_string(const std::string& name) {
  if (name == "stokes") return BreatherKind::stokes;
  if (name == "peregrine") return BreatherKind::peregrine;
  if (name == "km" || name == "kuznetsov-ma") return BreatherKind::kuznetsov_ma;
  if (name == "akhmediev") return BreatherKind::akhmediev;
  if (name == "soliton") return BreatherKind::soliton;
  throw usage_error("unknown breather kind '" + name + "'");
}

ModulationParams km_params(double a) {
  if (!(a > 0.5)) throw param_error("a", "(1/2, inf) for the Kuznetsov-Ma breather", a);
  return {std::sqrt(8.0 * a * (2.0 * a - 1.0)), std::sqrt(2.0 * (2.0 * a - 1.0))};
}

ModulationParams akhmediev_params(double a) {
  if (!(a > 0.0 && a < 0.5))
    throw param_error("a", "(0, 1/2) for the Akhmediev breather", a);
  return {std::sqrt(2.0 * (1.0 - 2.0 * a)), std::sqrt(8.0 * a * (1.0 - 2.0 * a))};
}

double km_period(double a) { return 2.0 * pi / km_params(a).alpha; }

cplx akhmediev_phase(double a) {
  const auto [alpha, beta] = akhmediev_params(a);
  return {1.0 - alpha * alpha, -beta};
}

void BreatherSpec::validate() const {
  sym.validate();
  if (kind == BreatherKind::kuznetsov_ma) km_params(a);
  if (kind == BreatherKind::akhmediev) akhmediev_params(a);
}

cplx eval(const BreatherSpec& spec, double t, double x) {
  spec.validate();
  if (!std::isfinite(t) || !std::isfinite(x)) throw usage_error("eval: non-finite (t, x)");
  const TransformedArgs arg = transform_args(spec.sym, t, x);
  if (spec.kind == BreatherKind::soliton) return arg.prefactor * soliton_base(arg.tau, arg.xi);
  const cplx q = perturbation_base(spec, arg.tau, arg.xi);
  return arg.prefactor * expi(arg.tau) * (1.0 + q);
}

cplx eval_perturbation(const BreatherSpec& spec, double t, double x) {
  spec.validate();
  if (spec.kind == BreatherKind::soliton)
    throw usage_error("soliton has zero background; no perturbation frame");
  if (spec.sym.is_identity()) return perturbation_base(spec, t, x);
  return expi(-t) * eval(spec, t, x) - 1.0;
}

cplx background(const BreatherSpec& spec, double t, double x) {
  if (spec.kind == BreatherKind::soliton) return 0.0;
  const TransformedArgs arg = transform_args(spec.sym, t, x);
  return arg.prefactor * expi(arg.tau);
}

cplx background_dx_factor(const BreatherSpec& spec) {
  if (spec.kind == BreatherKind::soliton) return 0.0;
  return {0.0, 0.5 * spec.sym.v};
}

ComplexField sample(const BreatherSpec& spec, const GridSpec& grid, double t,
                    bool as_perturbation) {
  grid.validate();
  spec.validate();
  ComplexField f(grid, t);
  for (int j = 0; j < grid.N; ++j) {
    const double x = grid.node(j);
    f.values[j] = as_perturbation ? eval_perturbation(spec, t, x) : eval(spec, t, x);
  }
  return f;
}

}  // namespace breatherlab::analytic
