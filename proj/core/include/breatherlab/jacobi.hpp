#pragma once

#include <vector>

#include "breatherlab/types.hpp"

namespace breatherlab {

/// Dense symmetric matrix, row-major.
struct SymmetricMatrix {
  int n = 0;
  std::vector<double> a;  // n*n

  SymmetricMatrix() = default;
  explicit SymmetricMatrix(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, 0.0) {}

  double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps (ascending).
/// Throws numerical_error if the off-diagonal mass has not converged after
/// max_sweeps.
std::vector<double> jacobi_eigenvalues(SymmetricMatrix m, int max_sweeps = 60,
                                       double tol = 1e-13);

}  // namespace breatherlab
