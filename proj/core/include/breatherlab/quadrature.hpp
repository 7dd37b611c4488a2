#pragma once

#include <functional>

#include "breatherlab/types.hpp"

namespace breatherlab::quadrature {

/// Adaptive Gauss-Kronrod (G7,K15) on [a,b].
cplx integrate(const std::function<cplx(double)>& f, double a, double b, double abs_tol = 1e-12,
               double rel_tol = 1e-10, int max_depth = 40);

/// Improper integral of a decaying integrand: adaptive quadrature on
/// [-L/2, L/2] plus algebraic tail correction c/|x|^p fitted at the window
/// boundary on each side. Use skip_tail for exponentially decaying integrands.
cplx integrate_line(const std::function<cplx(double)>& f, double tail_exponent, double L,
                    bool skip_tail = false);

}  // namespace breatherlab::quadrature
