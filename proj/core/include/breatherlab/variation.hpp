#pragma once

#include "breatherlab/analytic.hpp"
#include "breatherlab/functionals.hpp"
#include "breatherlab/jacobi.hpp"
#include "breatherlab/spectral.hpp"
#include "breatherlab/types.hpp"

namespace breatherlab::variation {

using analytic::BreatherSpec;
using functionals::LyapunovKind;
using spectral::SpectralEngine;

/// C-infinity plateau: 1 on |x| <= r_flat, 0 on |x| >= r_zero.
double plateau_window(double x, double r_flat, double r_zero);

enum class Equation { nls_pde, ec_p, ec_km, ec_a, automatic };

const char* to_string(Equation e);
Equation equation_from_string(const std::string& name);

struct ResidualReport {
  double sup_residual = 0.0;
  double l2_residual = 0.0;
  GridSpec resolution;
  Equation equation = Equation::nls_pde;
};

// Line-frame residuals taper the decaying deviation with a C-inf plateau
// before spectral differentiation (the periodized deviation has an O(|Q'(L/2)|)
// derivative kink at the window seam that high-order spectral derivatives
// would otherwise spread across the window) and measure norms on the inner
// 70% of the window. Periodic-frame fields are differentiated raw and
// measured on the full grid.
inline constexpr double kTaperFlatFraction = 0.75;
inline constexpr double kTaperZeroFraction = 0.95;
inline constexpr double kMeasureFraction = 0.70;

/// Norms of i du/dt + u_xx + |u|^2 u; du/dt by centered difference of exact
/// samples at t +- dt, u_xx spectral.
ResidualReport pde_residual(const BreatherSpec& spec, const GridSpec& grid, double t,
                            double dt = 1e-5);

/// Norms of the fourth-order stationary equation matched to the breather kind
/// (or forced via `eq` for negative controls):
///   common part G[B] = B_4x + 3 B_x^2 conj(B) + (4|B|^2-3) B_xx + B^2 conj(B_xx)
///                      + 2|B_x|^2 B + 3/2 (|B|^2-1)^2 B
///   ec_p:  G = 0,  ec_km: G - beta^2 (B_xx + (|B|^2-1)B) = 0,
///   ec_a:  G + alpha^2 (B_xx + (|B|^2-1)B) = 0.
ResidualReport ode_residual(const BreatherSpec& spec, const GridSpec& grid, double t,
                            Equation eq = Equation::automatic);

/// Directional derivative of the matched Lyapunov functional by centered
/// difference with one Richardson level. Vanishes at critical points.
double first_variation(SpectralEngine& eng, LyapunovKind kind, double a, Frame frame,
                       const ComplexField& B, const ComplexField& z, double eps = 1e-4);

/// Bilinear Hessian form of the functional, normalized so that
/// L[B+z] = L[B] + L'[B](z) + second_variation(z,z) + higher order.
/// Mixed centered four-point stencil with one Richardson level; symmetric in
/// (z1, z2) by construction.
double second_variation(SpectralEngine& eng, LyapunovKind kind, double a, Frame frame,
                        const ComplexField& B, const ComplexField& z1, const ComplexField& z2,
                        double eps = 1e-3);

/// Windowed Fourier directions chi(x) e^{i k_m x}, |m| <= K, split into
/// real/imaginary perturbations (chi == 1 in the periodic frame). Ordering:
/// m = -K..K, real direction then imaginary direction.
std::vector<ComplexField> hessian_basis(const GridSpec& grid, int K, Frame frame, double t);

/// Deterministic smooth test directions (windowed in the line frame,
/// trigonometric in the periodic frame).
std::vector<ComplexField> test_directions(const GridSpec& grid, Frame frame, int count,
                                          double t);

struct HessianRestriction {
  int basis_size = 0;
  SymmetricMatrix matrix;
  double min_eigenvalue = 0.0;
  double max_abs_eigenvalue = 0.0;  // spectral norm of the restriction
  /// Direct finite-difference values second_variation(B, dx B, b_j): the
  /// translation-kernel statement itself, accurate to FD noise.
  std::vector<double> kernel_residuals;
  /// Diagnostic: matrix action on the least-squares coordinates of dx B in the
  /// basis. Dominated by basis truncation of dx B at desk-scale K.
  std::vector<double> projected_action;
  std::vector<double> kernel_coordinates;
};

/// Matrix of second_variation over all basis pairs plus eigenvalues by cyclic
/// Jacobi. Assembly parallelizes over pairs (pure evaluations, one transform
/// plan per worker); `threads` = 0 picks BREATHER_LAB_THREADS or a small default.
HessianRestriction assemble_hessian(SpectralEngine& eng, LyapunovKind kind, double a,
                                    Frame frame, const ComplexField& B, int K,
                                    double eps = 1e-3, int threads = 0);

struct OrbitalDistanceResult {
  double distance = 0.0;
  double best_shift = 0.0;
  double best_phase = 0.0;
};

/// H^s distance to the reference orbit: minimized over translations via
/// weighted cross-correlation in Fourier space with sub-grid refinement, and
/// over phase (closed form) in the periodic frame. Line frame compares the
/// background-factored perturbations at phase 0.
OrbitalDistanceResult orbital_distance(SpectralEngine& eng, const ComplexField& u,
                                       const BreatherSpec& reference, double s, Frame frame);

}  // namespace breatherlab::variation
