#pragma once

#include "breatherlab/types.hpp"

namespace breatherlab::analytic {

/// NLS symmetry group element: scaling c, Galilean velocity v, phase, shifts.
struct SymmetryParams {
  double c = 1.0;
  double v = 0.0;
  double gamma = 0.0;
  double x0 = 0.0;
  double t0 = 0.0;

  bool is_identity() const {
    return c == 1.0 && v == 0.0 && gamma == 0.0 && x0 == 0.0 && t0 == 0.0;
  }
  void validate() const {
    if (!(c > 0.0)) throw param_error("c", "(0, inf)", c);
  }
};

enum class BreatherKind { stokes, peregrine, kuznetsov_ma, akhmediev, soliton };

const char* to_string(BreatherKind k);
BreatherKind kind_from_string(const std::string& name);

struct BreatherSpec {
  BreatherKind kind = BreatherKind::stokes;
  double a = 1.0;  // KM needs a > 1/2, Akhmediev 0 < a < 1/2; others ignore it
  SymmetryParams sym{};

  void validate() const;
};

struct ModulationParams {
  double alpha;
  double beta;
};

/// KM: alpha = sqrt(8a(2a-1)) (temporal frequency), beta = sqrt(2(2a-1))
/// (spatial decay). alpha^2 - 2 beta^2 = 4(2a-1)^2 > 0, so the KM denominator
/// alpha*cosh(beta x) - sqrt(2) beta cos(alpha t) stays positive.
ModulationParams km_params(double a);

/// Akhmediev: alpha = sqrt(2(1-2a)) (spatial frequency), beta = sqrt(8a(1-2a))
/// (temporal growth). sqrt(2a) < 1 <= cosh(beta t) keeps the denominator negative.
ModulationParams akhmediev_params(double a);

/// Temporal period 2 pi / alpha of the KM modulation.
double km_period(double a);

/// Limit phase of the Akhmediev breather: 1 - alpha^2 - i beta, unit modulus.
cplx akhmediev_phase(double a);

/// Exact solution value with the symmetry group applied on top of the base
/// profile; finite for all finite (t,x).
cplx eval(const BreatherSpec& spec, double t, double x);

/// w(t,x) = e^{-it} eval(spec,t,x) - 1. Evaluated in the background-factored
/// form directly when the symmetry is the identity, so decay to the Stokes
/// wave is computed without cancellation. Rejects the soliton (zero background).
cplx eval_perturbation(const BreatherSpec& spec, double t, double x);

/// Symmetry-transformed Stokes background (0 for the soliton) and the factor
/// i v/2 such that d/dx background = factor * background.
cplx background(const BreatherSpec& spec, double t, double x);
cplx background_dx_factor(const BreatherSpec& spec);

ComplexField sample(const BreatherSpec& spec, const GridSpec& grid, double t,
                    bool as_perturbation = false);

}  // namespace breatherlab::analytic
