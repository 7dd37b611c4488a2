#include <doctest.h>

#include <cmath>

#include "breatherlab/jacobi.hpp"
#include "breatherlab/rng.hpp"

using namespace breatherlab;

TEST_CASE("jacobi recovers eigenvalues of rotated diagonal matrices") {
  CounterRng rng(9);
  const int n = 24;
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = 10.0 * rng.symmetric(i);

  SymmetricMatrix a(n);
  for (int i = 0; i < n; ++i) a.at(i, i) = d[i];

  // conjugate by random Givens rotations; spectrum is invariant
  for (int r = 0; r < 200; ++r) {
    const int p = static_cast<int>(rng.uniform(1000 + 3 * r) * n) % n;
    int q = static_cast<int>(rng.uniform(1000 + 3 * r + 1) * n) % n;
    if (p == q) q = (q + 1) % n;
    const double th = pi * rng.symmetric(1000 + 3 * r + 2);
    const double c = std::cos(th), s = std::sin(th);
    for (int k = 0; k < n; ++k) {
      const double akp = a.at(k, p), akq = a.at(k, q);
      a.at(k, p) = c * akp - s * akq;
      a.at(k, q) = s * akp + c * akq;
    }
    for (int k = 0; k < n; ++k) {
      const double apk = a.at(p, k), aqk = a.at(q, k);
      a.at(p, k) = c * apk - s * aqk;
      a.at(q, k) = s * apk + c * aqk;
    }
  }

  std::vector<double> eig = jacobi_eigenvalues(a);
  std::sort(d.begin(), d.end());
  for (int i = 0; i < n; ++i) CHECK(eig[i] == doctest::Approx(d[i]).epsilon(1e-10));
}

TEST_CASE("jacobi small exact cases") {
  SymmetricMatrix a(2);
  a.at(0, 0) = 2.0;
  a.at(1, 1) = 2.0;
  a.at(0, 1) = a.at(1, 0) = 1.0;
  const auto eig = jacobi_eigenvalues(a);
  CHECK(eig[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eig[1] == doctest::Approx(3.0).epsilon(1e-14));

  const auto none = jacobi_eigenvalues(SymmetricMatrix(0));
  CHECK(none.empty());

  SymmetricMatrix z(3);
  for (double v : jacobi_eigenvalues(z)) CHECK(v == 0.0);
}
