#pragma once

#include <cmath>

#include "breatherlab/analytic.hpp"
#include "breatherlab/types.hpp"

/// Versioned defaults: tolerances used by the CLI --check modes and the
/// acceptance suite, plus the default grids per breather family. Changing a
/// value here changes what the project certifies.
namespace breatherlab::defaults {

// conserved quantities
inline constexpr double kConservedRelTol = 1e-4;       // KM closed forms
inline constexpr double kPeregrineZeroAbsTol = 1e-3;   // all four Peregrine invariants

// stationary / flow equation residuals
inline constexpr double kResidualSupTol = 1e-6;
inline constexpr double kNegativeControlMin = 1e-1;
inline constexpr double kResidualDt = 1e-5;

// modulational instability
inline constexpr double kMiRelTol = 0.05;

// asymptotics
inline constexpr double kDecayExponent = -0.5;
inline constexpr double kDecayExponentRelTol = 0.10;
inline constexpr double kAkhmedievLimitTol = 1e-3;

// variational certification
inline constexpr double kFirstVariationTol = 1e-5;   // x (1 + ||z||_{H2})^2
inline constexpr double kKernelResidualTol = 1e-4;   // x spectral norm of the restriction

// solver order
inline constexpr double kOrderRatio = 4.0;
inline constexpr double kOrderRatioSlack = 0.25;
inline constexpr double kStokesStepTol = 1e-12;
inline constexpr double kMachineDriftTol = 1e-12;

/// Closed-form conserved values of the KM family under the energy definition
/// used throughout (E = int |u_x|^2 - 1/2 int (|u|^2-1)^2). The -4/3
/// coefficient is pinned two independent ways: adaptive quadrature of the
/// exact profile, and criticality of F + beta^2 E.
struct KmClosedForms {
  double M;
  double E;
  double F;
};

inline KmClosedForms km_closed_forms(double a) {
  const double beta = analytic::km_params(a).beta;
  const double b3 = beta * beta * beta;
  return {4.0 * beta, -4.0 / 3.0 * b3, 0.8 * b3 * beta * beta};
}

// default quadrature windows (line frame)
inline GridSpec peregrine_grid() { return GridSpec(2000.0, 32768); }
inline GridSpec km_grid() { return GridSpec(400.0, 8192); }
inline GridSpec residual_grid() { return GridSpec(200.0, 4096); }

/// Periodic window holding whole Akhmediev periods, sized near target_length.
inline GridSpec akhmediev_grid(double a, int N, double target_length = 170.0) {
  const double period = 2.0 * pi / analytic::akhmediev_params(a).alpha;
  const int m = std::max(1, static_cast<int>(std::lround(target_length / period)));
  return GridSpec(m * period, N);
}

}  // namespace breatherlab::defaults
