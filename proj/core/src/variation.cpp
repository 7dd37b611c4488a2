#include "breatherlab/variation.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace breatherlab::variation {

using analytic::BreatherKind;

double plateau_window(double x, double r_flat, double r_zero) {
  const double ax = std::abs(x);
  if (ax <= r_flat) return 1.0;
  if (ax >= r_zero) return 0.0;
  const auto bump = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
  const double s = (r_zero - ax) / (r_zero - r_flat);
  return bump(s) / (bump(s) + bump(1.0 - s));
}

const char* to_string(Equation e) {
  switch (e) {
    case Equation::nls_pde: return "nls-pde";
    case Equation::ec_p: return "ec-p";
    case Equation::ec_km: return "ec-km";
    case Equation::ec_a: return "ec-a";
    case Equation::automatic: return "auto";
  }
  return "?";
}

Equation equation_from_string(const std::string& name) {
  if (name == "nls-pde" || name == "pde") return Equation::nls_pde;
  if (name == "ec-p") return Equation::ec_p;
  if (name == "ec-km") return Equation::ec_km;
  if (name == "ec-a") return Equation::ec_a;
  if (name == "auto") return Equation::automatic;
  throw usage_error("unknown equation '" + name + "'");
}

namespace {

bool periodic_kind(BreatherKind k) {
  return k == BreatherKind::akhmediev || k == BreatherKind::stokes;
}

void check_akhmediev_window(const BreatherSpec& spec, const GridSpec& grid) {
  if (spec.kind != BreatherKind::akhmediev) return;
  const double period = 2.0 * pi / analytic::akhmediev_params(spec.a).alpha;
  const double m = grid.L / period;
  if (std::abs(m - std::round(m)) > 1e-8 * std::max(1.0, m))
    throw usage_error("grid length must hold an integer number of spatial periods");
}

/// Spatial derivatives of the sampled field. Line frame: derivative of the
/// tapered deviation plus the analytic background derivative (exact on the
/// plateau). Periodic frame: raw spectral derivative.
struct FieldDerivatives {
  ComplexField d1, d2, d4;
};

FieldDerivatives field_derivatives(spectral::SpectralEngine& eng, const BreatherSpec& spec,
                                   const ComplexField& u, bool need_fourth) {
  const GridSpec& grid = eng.grid();
  FieldDerivatives out;
  if (periodic_kind(spec.kind)) {
    out.d1 = eng.derivative(u, 1);
    out.d2 = eng.derivative(u, 2);
    if (need_fourth) out.d4 = eng.derivative(u, 4);
    return out;
  }

  const double half = 0.5 * grid.L;
  ComplexField dev(grid, u.t);
  std::vector<cplx> bg(grid.N);
  for (int j = 0; j < grid.N; ++j) {
    const double x = grid.node(j);
    bg[j] = analytic::background(spec, u.t, x);
    dev.values[j] = (u.values[j] - bg[j]) *
                    plateau_window(x, kTaperFlatFraction * half, kTaperZeroFraction * half);
  }
  const cplx bf = analytic::background_dx_factor(spec);
  const auto add_bg = [&](ComplexField& f, int order) {
    cplx mult = 1.0;
    for (int p = 0; p < order; ++p) mult *= bf;
    if (mult == cplx(0.0) && order > 0) return;
    for (int j = 0; j < grid.N; ++j) f.values[j] += mult * bg[j];
  };
  out.d1 = eng.derivative(dev, 1);
  add_bg(out.d1, 1);
  out.d2 = eng.derivative(dev, 2);
  add_bg(out.d2, 2);
  if (need_fourth) {
    out.d4 = eng.derivative(dev, 4);
    add_bg(out.d4, 4);
  }
  return out;
}

ResidualReport measure(const GridSpec& grid, const std::vector<cplx>& residual, bool full_grid,
                       Equation eq) {
  ResidualReport rep;
  rep.resolution = grid;
  rep.equation = eq;
  const double cutoff = kMeasureFraction * 0.5 * grid.L;
  double sup = 0.0;
  double l2 = 0.0;
  for (int j = 0; j < grid.N; ++j) {
    if (!full_grid && std::abs(grid.node(j)) > cutoff) continue;
    const double r = std::abs(residual[j]);
    sup = std::max(sup, r);
    l2 += r * r;
  }
  rep.sup_residual = sup;
  rep.l2_residual = std::sqrt(l2 * grid.dx());
  return rep;
}

}  // namespace

ResidualReport pde_residual(const BreatherSpec& spec, const GridSpec& grid, double t,
                            double dt) {
  if (!(dt > 0.0)) throw param_error("dt", "(0, inf)", dt);
  check_akhmediev_window(spec, grid);
  spectral::SpectralEngine eng(grid);

  const ComplexField u = analytic::sample(spec, grid, t);
  const ComplexField up = analytic::sample(spec, grid, t + dt);
  const ComplexField um = analytic::sample(spec, grid, t - dt);
  const FieldDerivatives der = field_derivatives(eng, spec, u, false);

  std::vector<cplx> residual(grid.N);
  const cplx iunit(0.0, 1.0);
  for (int j = 0; j < grid.N; ++j) {
    const cplx dudt = (up.values[j] - um.values[j]) / (2.0 * dt);
    residual[j] =
        iunit * dudt + der.d2.values[j] + std::norm(u.values[j]) * u.values[j];
  }
  return measure(grid, residual, periodic_kind(spec.kind), Equation::nls_pde);
}

ResidualReport ode_residual(const BreatherSpec& spec, const GridSpec& grid, double t,
                            Equation eq) {
  if (eq == Equation::nls_pde) throw usage_error("ode_residual: use pde_residual for the flow equation");
  if (eq == Equation::automatic) {
    switch (spec.kind) {
      case BreatherKind::peregrine: eq = Equation::ec_p; break;
      case BreatherKind::kuznetsov_ma: eq = Equation::ec_km; break;
      case BreatherKind::akhmediev: eq = Equation::ec_a; break;
      default: throw usage_error("ode_residual: no stationary equation for this kind");
    }
  }
  if (spec.kind == BreatherKind::stokes || spec.kind == BreatherKind::soliton)
    throw usage_error("ode_residual: no stationary equation for this kind");
  check_akhmediev_window(spec, grid);

  double correction = 0.0;  // coefficient of (B_xx + (|B|^2-1)B)
  if (eq == Equation::ec_km) correction = -std::pow(analytic::km_params(spec.a).beta, 2);
  if (eq == Equation::ec_a) correction = +std::pow(analytic::akhmediev_params(spec.a).alpha, 2);

  spectral::SpectralEngine eng(grid);
  const ComplexField u = analytic::sample(spec, grid, t);
  const FieldDerivatives der = field_derivatives(eng, spec, u, true);

  std::vector<cplx> residual(grid.N);
  for (int j = 0; j < grid.N; ++j) {
    const cplx b = u.values[j];
    const cplx bx = der.d1.values[j];
    const cplx bxx = der.d2.values[j];
    const cplx b4 = der.d4.values[j];
    const double m = std::norm(b) - 1.0;
    cplx r = b4 + 3.0 * bx * bx * std::conj(b) + (4.0 * std::norm(b) - 3.0) * bxx +
             b * b * std::conj(bxx) + 2.0 * std::norm(bx) * b + 1.5 * m * m * b;
    r += correction * (bxx + m * b);
    residual[j] = r;
  }
  return measure(grid, residual, periodic_kind(spec.kind), eq);
}

namespace {

double lyap(spectral::SpectralEngine& eng, LyapunovKind kind, double a, Frame frame,
            const ComplexField& u) {
  return functionals::lyapunov(eng, u, kind, a, frame);
}

double centered_diff(spectral::SpectralEngine& eng, LyapunovKind kind, double a, Frame frame,
                     const ComplexField& B, const ComplexField& z, double eps) {
  const double fp = lyap(eng, kind, a, frame, axpy(B, eps, z));
  const double fm = lyap(eng, kind, a, frame, axpy(B, -eps, z));
  return (fp - fm) / (2.0 * eps);
}

double mixed_stencil(spectral::SpectralEngine& eng, LyapunovKind kind, double a, Frame frame,
                     const ComplexField& B, const ComplexField& z1, const ComplexField& z2,
                     double eps) {
  const ComplexField zs = axpy(z1, 1.0, z2);
  ComplexField zd = z1;
  for (int j = 0; j < zd.size(); ++j) zd.values[j] -= z2.values[j];
  const double fpp = lyap(eng, kind, a, frame, axpy(B, eps, zs));
  const double fpm = lyap(eng, kind, a, frame, axpy(B, eps, zd));
  const double fmp = lyap(eng, kind, a, frame, axpy(B, -eps, zd));
  const double fmm = lyap(eng, kind, a, frame, axpy(B, -eps, zs));
  // 1/8 rather than 1/4: normalized so the diagonal is the quadratic Taylor
  // coefficient of L[B + z]
  return (fpp - fpm - fmp + fmm) / (8.0 * eps * eps);
}

}  // namespace

double first_variation(spectral::SpectralEngine& eng, LyapunovKind kind, double a, Frame frame,
                       const ComplexField& B, const ComplexField& z, double eps) {
  if (!(eps > 0.0)) throw param_error("eps", "(0, inf)", eps);
  const double d1 = centered_diff(eng, kind, a, frame, B, z, eps);
  const double d2 = centered_diff(eng, kind, a, frame, B, z, 0.5 * eps);
  return (4.0 * d2 - d1) / 3.0;
}

double second_variation(spectral::SpectralEngine& eng, LyapunovKind kind, double a, Frame frame,
                        const ComplexField& B, const ComplexField& z1, const ComplexField& z2,
                        double eps) {
  if (!(eps > 0.0)) throw param_error("eps", "(0, inf)", eps);
  const double s1 = mixed_stencil(eng, kind, a, frame, B, z1, z2, eps);
  const double s2 = mixed_stencil(eng, kind, a, frame, B, z1, z2, 0.5 * eps);
  return (4.0 * s2 - s1) / 3.0;
}

std::vector<ComplexField> hessian_basis(const GridSpec& grid, int K, Frame frame, double t) {
  if (K < 0 || K >= grid.N / 2) throw param_error("K", "[0, N/2)", K);
  const double half = 0.5 * grid.L;
  std::vector<ComplexField> basis;
  basis.reserve(2 * (2 * K + 1));
  for (int m = -K; m <= K; ++m) {
    const double k = 2.0 * pi * m / grid.L;
    ComplexField re(grid, t), im(grid, t);
    for (int j = 0; j < grid.N; ++j) {
      const double x = grid.node(j);
      const double chi =
          frame == Frame::line ? plateau_window(x, 0.5 * half, 0.9 * half) : 1.0;
      const cplx mode = chi * cplx(std::cos(k * x), std::sin(k * x));
      re.values[j] = mode;
      im.values[j] = cplx(0.0, 1.0) * mode;
    }
    basis.push_back(std::move(re));
    basis.push_back(std::move(im));
  }
  return basis;
}

std::vector<ComplexField> test_directions(const GridSpec& grid, Frame frame, int count,
                                          double t) {
  std::vector<ComplexField> dirs;
  const double half = 0.5 * grid.L;
  const double sigma = grid.L / 16.0;
  const double k1 = 2.0 * pi / grid.L;
  for (int n = 0; n < count; ++n) {
    ComplexField z(grid, t);
    for (int j = 0; j < grid.N; ++j) {
      const double x = grid.node(j);
      cplx v;
      if (frame == Frame::line) {
        const double g = std::exp(-(x * x) / (sigma * sigma));
        const double chi = plateau_window(x, 0.6 * half, 0.9 * half);
        switch (n % 5) {
          case 0: v = g; break;
          case 1: v = (x / sigma) * g; break;
          case 2: v = cplx(0.0, 1.0) * g; break;
          case 3: v = std::cos(8.0 * pi * x / grid.L) * g; break;
          default: v = cplx(0.5, 0.5) * std::cos(14.0 * pi * x / grid.L) * g; break;
        }
        v *= chi;
      } else {
        switch (n % 5) {
          case 0: v = std::cos(k1 * x); break;
          case 1: v = cplx(0.0, 1.0) * std::cos(k1 * x); break;
          case 2: v = std::sin(2.0 * k1 * x) + cplx(0.0, 0.3) * std::cos(k1 * x); break;
          case 3: v = 1.0; break;
          default: v = cplx(std::cos(3.0 * k1 * x), std::sin(3.0 * k1 * x)); break;
        }
      }
      z.values[j] = v;
    }
    dirs.push_back(std::move(z));
  }
  return dirs;
}

namespace {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  if (const char* env = std::getenv("BREATHER_LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(hw == 0 ? 1 : std::min(hw, 4u));
}

/// Cholesky solve for the SPD Gram system of the projection.
std::vector<double> solve_spd(SymmetricMatrix g, std::vector<double> rhs) {
  const int n = g.n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = g.at(i, j);
      for (int k = 0; k < j; ++k) s -= g.at(i, k) * g.at(j, k);
      if (i == j) {
        if (s <= 0.0) throw numerical_error("hessian projection: Gram matrix not positive definite");
        g.at(i, i) = std::sqrt(s);
      } else {
        g.at(i, j) = s / g.at(j, j);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    double s = rhs[i];
    for (int k = 0; k < i; ++k) s -= g.at(i, k) * rhs[k];
    rhs[i] = s / g.at(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = rhs[i];
    for (int k = i + 1; k < n; ++k) s -= g.at(k, i) * rhs[k];
    rhs[i] = s / g.at(i, i);
  }
  return rhs;
}

}  // namespace

HessianRestriction assemble_hessian(spectral::SpectralEngine& eng, LyapunovKind kind, double a,
                                    Frame frame, const ComplexField& B, int K, double eps,
                                    int threads) {
  const GridSpec grid = eng.grid();
  if (!(B.grid == grid)) throw usage_error("assemble_hessian: field grid does not match engine");
  const std::vector<ComplexField> basis = hessian_basis(grid, K, frame, B.t);
  const int n = static_cast<int>(basis.size());

  HessianRestriction out;
  out.basis_size = n;
  out.matrix = SymmetricMatrix(n);

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(n * (n + 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) pairs.emplace_back(i, j);

  const int nworkers = std::min<int>(resolve_threads(threads), static_cast<int>(pairs.size()));
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  auto work = [&]() {
    spectral::SpectralEngine local(grid);  // one transform plan per worker
    for (;;) {
      const size_t idx = next.fetch_add(1);
      if (idx >= pairs.size()) break;
      const auto [i, j] = pairs[idx];
      const double v = second_variation(local, kind, a, frame, B, basis[i], basis[j], eps);
      out.matrix.at(i, j) = v;
      out.matrix.at(j, i) = v;
    }
  };
  if (nworkers <= 1) {
    work();
  } else {
    for (int w = 0; w < nworkers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  const std::vector<double> eig = jacobi_eigenvalues(out.matrix);
  out.min_eigenvalue = eig.front();
  out.max_abs_eigenvalue = std::max(std::abs(eig.front()), std::abs(eig.back()));

  // Translation direction: dx B, differentiated through the same line-frame
  // machinery is unnecessary here — for decaying deviations the raw spectral
  // derivative is clean, and the direct second-variation values below carry
  // their own FD error budget.
  const ComplexField dxB = eng.derivative(B, 1);
  out.kernel_residuals.resize(n);
  for (int j = 0; j < n; ++j)
    out.kernel_residuals[j] = second_variation(eng, kind, a, frame, B, dxB, basis[j], eps);

  // Least-squares coordinates of dx B in the (real) span of the basis, and the
  // matrix action on them.
  SymmetricMatrix gram(n);
  std::vector<double> rhs(n);
  const double dx = grid.dx();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int q = 0; q < grid.N; ++q)
        s += std::real(std::conj(basis[i].values[q]) * basis[j].values[q]);
      gram.at(i, j) = gram.at(j, i) = s * dx;
    }
    double b = 0.0;
    for (int q = 0; q < grid.N; ++q)
      b += std::real(std::conj(basis[i].values[q]) * dxB.values[q]);
    rhs[i] = b * dx;
  }
  out.kernel_coordinates = solve_spd(gram, rhs);
  out.projected_action.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += out.matrix.at(i, j) * out.kernel_coordinates[j];
    out.projected_action[i] = s;
  }
  return out;
}

OrbitalDistanceResult orbital_distance(spectral::SpectralEngine& eng, const ComplexField& u,
                                       const BreatherSpec& reference, double s, Frame frame) {
  const GridSpec grid = eng.grid();
  if (!(u.grid == grid)) throw usage_error("orbital_distance: field grid does not match engine");

  ComplexField a(grid, u.t);
  ComplexField b(grid, u.t);
  if (frame == Frame::line && reference.kind == analytic::BreatherKind::soliton) {
    // zero background: the fields themselves decay
    a = u;
    b = analytic::sample(reference, grid, u.t, false);
  } else if (frame == Frame::line) {
    // compare background-factored perturbations, phase fixed to 0
    const cplx rot(std::cos(u.t), -std::sin(u.t));
    for (int j = 0; j < grid.N; ++j) a.values[j] = rot * u.values[j] - 1.0;
    b = analytic::sample(reference, grid, u.t, true);
  } else {
    a = u;
    b = analytic::sample(reference, grid, u.t, false);
  }

  const std::vector<cplx> ca = eng.coefficients(a.values);
  const std::vector<cplx> cb = eng.coefficients(b.values);
  std::vector<double> weight(grid.N);
  std::vector<cplx> corr_coeffs(grid.N);
  double ref_power = 0.0;
  for (int j = 0; j < grid.N; ++j) {
    const double k = grid.wavenumber(j);
    weight[j] = std::pow(1.0 + k * k, s);
    corr_coeffs[j] = weight[j] * ca[j] * std::conj(cb[j]) * grid.L;
    ref_power += std::norm(cb[j]);
  }

  const auto objective_at = [&](double y) {
    cplx acc = 0.0;
    for (int j = 0; j < grid.N; ++j) {
      const double ky = grid.wavenumber(j) * y;
      acc += corr_coeffs[j] * cplx(std::cos(ky), std::sin(ky));
    }
    return acc;
  };
  const auto objective_value = [&](const cplx& c) {
    return frame == Frame::periodic ? std::abs(c) : c.real();
  };

  // distance assembled mode by mode (no cancellation of large norms); the
  // optimal phase at a given shift is the argument of the correlation
  const auto evaluate_at = [&](double y) {
    OrbitalDistanceResult cand;
    cand.best_shift = y;
    if (frame == Frame::periodic) {
      const cplx c = objective_at(y);
      if (std::abs(c) > 0.0) cand.best_phase = std::arg(c);
    }
    const cplx rot(std::cos(cand.best_phase), std::sin(cand.best_phase));
    double d2 = 0.0;
    for (int j = 0; j < grid.N; ++j) {
      const double ky = grid.wavenumber(j) * y;
      const cplx shifted = cb[j] * cplx(std::cos(ky), -std::sin(ky));
      d2 += weight[j] * std::norm(ca[j] - rot * shifted);
    }
    cand.distance = std::sqrt(grid.L * d2);
    return cand;
  };

  if (ref_power <= 1e-28) return evaluate_at(0.0);

  const std::vector<cplx> corr = eng.synthesize(corr_coeffs);
  int best_j = 0;
  double best_val = -1e300;
  for (int j = 0; j < grid.N; ++j) {
    const double val = objective_value(corr[j]);
    if (val > best_val) {
      best_val = val;
      best_j = j;
    }
  }
  const double dx = grid.dx();
  double y0 = best_j * dx;
  if (y0 >= 0.5 * grid.L) y0 -= grid.L;

  // parabolic estimate, then ternary refinement on the trigonometric
  // interpolant of the correlation
  const double jm = objective_value(objective_at(y0 - dx));
  const double j0 = objective_value(objective_at(y0));
  const double jp = objective_value(objective_at(y0 + dx));
  const double denom = jm - 2.0 * j0 + jp;
  double y = y0;
  if (std::abs(denom) > 1e-300) y = y0 + 0.5 * dx * (jm - jp) / denom;
  double lo = y - 0.75 * dx;
  double hi = y + 0.75 * dx;
  for (int it = 0; it < 60 && (hi - lo) > 1e-9 * dx; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (objective_value(objective_at(m1)) < objective_value(objective_at(m2)))
      lo = m1;
    else
      hi = m2;
  }

  // the refinement is a heuristic maximizer working at rounding level; keep
  // whichever candidate actually minimizes the distance
  const OrbitalDistanceResult at_grid = evaluate_at(y0);
  const OrbitalDistanceResult refined = evaluate_at(0.5 * (lo + hi));
  return refined.distance <= at_grid.distance ? refined : at_grid;
}

}  // namespace breatherlab::variation
