#include "breatherlab/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace breatherlab {

std::vector<double> jacobi_eigenvalues(SymmetricMatrix m, int max_sweeps, double tol) {
  const int n = m.n;
  if (n == 0) return {};
  if (static_cast<int>(m.a.size()) != n * n) throw usage_error("jacobi: matrix size mismatch");

  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(m.at(i, j)));
  if (scale == 0.0) return std::vector<double>(n, 0.0);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(m.at(p, q)));
    if (off <= tol * scale) {
      std::vector<double> eig(n);
      for (int i = 0; i < n; ++i) eig[i] = m.at(i, i);
      std::sort(eig.begin(), eig.end());
      return eig;
    }

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = m.at(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double app = m.at(p, p);
        const double aqq = m.at(q, q);
        const double theta = 0.5 * (aqq - app) / apq;
        // stable tangent of the rotation angle
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int k = 0; k < n; ++k) {
          const double akp = m.at(k, p);
          const double akq = m.at(k, q);
          m.at(k, p) = c * akp - s * akq;
          m.at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = m.at(p, k);
          const double aqk = m.at(q, k);
          m.at(p, k) = c * apk - s * aqk;
          m.at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  throw numerical_error("jacobi: no convergence after " + std::to_string(max_sweeps) +
                        " sweeps (n=" + std::to_string(n) + ")");
}

}  // namespace breatherlab
