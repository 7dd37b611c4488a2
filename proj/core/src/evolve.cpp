#include "breatherlab/evolve.hpp"

#include <cmath>

#include "breatherlab/functionals.hpp"
#include "breatherlab/variation.hpp"

namespace breatherlab::evolve {

void strang_step(SpectralEngine& eng, ComplexField& u, double dt) {
  const GridSpec& grid = eng.grid();
  if (!(u.grid == grid)) throw usage_error("strang_step: field grid does not match engine");

  const auto nonlinear_half = [&](double h) {
    for (cplx& v : u.values) {
      const double phase = std::norm(v) * h;
      v *= cplx(std::cos(phase), std::sin(phase));
    }
  };

  nonlinear_half(0.5 * dt);
  std::vector<cplx> c = eng.coefficients(u.values);
  for (int j = 0; j < grid.N; ++j) {
    const double k = grid.wavenumber(j);
    const double phase = -k * k * dt;
    c[j] *= cplx(std::cos(phase), std::sin(phase));
  }
  u.values = eng.synthesize(c);
  nonlinear_half(0.5 * dt);
  u.t += dt;

  double peak = 0.0;
  for (const cplx& v : u.values) peak = std::max(peak, std::norm(v));
  if (!std::isfinite(peak) || peak > 1e12)
    throw overflow_halt("field overflow at t = " + std::to_string(u.t));
}

void SimConfig::validate() const {
  grid.validate();
  if (!(dt > 0.0)) throw param_error("dt", "(0, inf)", dt);
  if (!(t_end > t0)) throw param_error("t_end", "(t0, inf)", t_end);
  const double steps = (t_end - t0) / dt;
  if (steps > 1e7) throw param_error("(t_end-t0)/dt", "<= 1e7", steps);
  if (record_every < 1) throw param_error("record_every", ">= 1", record_every);
  // dt * max(k^2) < 2pi is an accuracy guideline, not enforced: the splitting
  // is unconditionally stable but the linear phase wraps.
}

namespace {

struct Recorder {
  const SimConfig& cfg;
  SpectralEngine& eng;
  DiagnosticSeries& out;
  double boundary_tolerance = -1.0;

  void operator()(const ComplexField& u) {
    out.times.push_back(u.t);
    out.M.push_back(functionals::mass(eng, u, Frame::periodic));
    out.E.push_back(functionals::energy(eng, u, Frame::periodic));
    if (cfg.record_quartic)
      out.F.push_back(functionals::functional_F(eng, u, Frame::periodic));

    // background-factored perturbation w = u e^{-it} - 1
    ComplexField w(u.grid, u.t);
    const cplx rot(std::cos(u.t), -std::sin(u.t));
    for (int j = 0; j < u.grid.N; ++j) w.values[j] = rot * u.values[j] - 1.0;
    out.hs_norm.push_back(eng.sobolev_norm(w, cfg.sobolev_index));

    if (cfg.reference) {
      const auto od = variation::orbital_distance(eng, u, *cfg.reference, cfg.sobolev_index,
                                                  cfg.frame);
      out.orbital_distance.push_back(od.distance);
    }
    if (!cfg.tracked_modes.empty()) {
      const std::vector<cplx> c = eng.coefficients(w.values);
      for (size_t i = 0; i < cfg.tracked_modes.size(); ++i) {
        int m = cfg.tracked_modes[i];
        int idx = m >= 0 ? m : m + u.grid.N;
        out.mode_amplitudes[i].push_back(std::abs(c[idx]));
      }
    }
    if (cfg.frame == Frame::line && !out.boundary_flagged) {
      const cplx stokes(std::cos(u.t), std::sin(u.t));
      const double dev = std::abs(u.values.front() - stokes);
      if (boundary_tolerance < 0.0) boundary_tolerance = std::max(1e-6, 10.0 * dev);
      if (dev > boundary_tolerance) {
        out.boundary_flagged = true;
        out.boundary_flag_time = u.t;
      }
    }
  }
};

}  // namespace

DiagnosticSeries run(const SimConfig& config, const ComplexField& u0) {
  config.validate();
  if (!(u0.grid == config.grid)) throw usage_error("run: initial field grid mismatch");

  SpectralEngine eng(config.grid);
  DiagnosticSeries series;
  series.mode_amplitudes.resize(config.tracked_modes.size());
  Recorder record{config, eng, series};

  ComplexField u = u0;
  u.t = config.t0;
  record(u);

  const long nsteps = std::lround((config.t_end - config.t0) / config.dt);
  for (long n = 1; n <= nsteps; ++n) {
    try {
      strang_step(eng, u, config.dt);
    } catch (const overflow_halt&) {
      series.overflow = true;
      series.overflow_time = u.t;
      break;
    }
    u.t = config.t0 + n * config.dt;  // avoid accumulated drift
    if (n % config.record_every == 0 || n == nsteps) record(u);
  }
  return series;
}

double mi_theory_rate(double k) {
  const double k2 = k * k;
  if (!(k2 > 0.0) || k2 >= 2.0) return 0.0;
  return std::abs(k) * std::sqrt(2.0 - k2);
}

GrowthRate mi_growth_rate(double k, double eps, const SimConfig& config) {
  if (!(k > 0.0)) throw param_error("k", "(0, inf)", k);
  if (!(eps > 0.0 && eps <= 1e-4)) throw param_error("eps", "(0, 1e-4]", eps);
  const GridSpec grid = config.grid;
  const double cycles = grid.L * k / (2.0 * pi);
  if (std::abs(cycles - std::round(cycles)) > 1e-9 * std::max(1.0, cycles))
    throw param_error("L*k/(2*pi)", "integer (window must hold whole perturbation periods)",
                      cycles);
  const int mode = static_cast<int>(std::lround(cycles));

  SimConfig cfg = config;
  cfg.frame = Frame::periodic;
  cfg.tracked_modes = {mode};
  cfg.reference.reset();

  ComplexField u0(grid, cfg.t0);
  for (int j = 0; j < grid.N; ++j) u0.values[j] = 1.0 + eps * std::cos(k * grid.node(j));

  const DiagnosticSeries series = run(cfg, u0);

  GrowthRate res;
  res.in_band = k * k < 2.0;
  const std::vector<double>& amp = series.mode_amplitudes[0];

  // fit window: transient decayed (>= 10 eps) but still linear (<= 1e-2); only
  // the first contiguous segment counts — after saturation the amplitude can
  // recur below the cap and would drag the slope down
  std::vector<std::pair<double, double>> pts;
  size_t start = amp.size();
  for (size_t i = 0; i < amp.size(); ++i)
    if (amp[i] >= 10.0 * eps) {
      start = i;
      break;
    }
  for (size_t i = start; i < amp.size() && amp[i] <= 1e-2; ++i)
    pts.emplace_back(series.times[i], std::log(amp[i]));
  if (pts.size() < 5) {
    pts.clear();
    for (size_t i = 0; i < amp.size(); ++i)
      if (amp[i] > 0.0) pts.emplace_back(series.times[i], std::log(amp[i]));
  }
  res.fit_points = static_cast<int>(pts.size());
  if (pts.size() < 2) return res;

  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (const auto& [t, y] : pts) {
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  const double n = static_cast<double>(pts.size());
  const double denom = n * stt - st * st;
  if (std::abs(denom) < 1e-300) return res;
  res.rate = (n * sty - st * sy) / denom;
  return res;
}

}  // namespace breatherlab::evolve
