#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "breatherlab/defaults.hpp"
#include "breatherlab/evolve.hpp"
#include "breatherlab/report.hpp"
#include "breatherlab/rng.hpp"
#include "breatherlab/version.hpp"

using namespace breatherlab;
using nlohmann::json;
using report::format_double;
using report::MetaList;

namespace {

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out.good()) throw io_error("write failed for '" + path + "'");
}

std::string format_value(double v) { return format_double(v); }
std::string format_value(int v) { return std::to_string(v); }
std::string format_value(bool v) { return v ? "true" : "false"; }
std::string format_value(const std::string& v) { return v; }
std::string format_value(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}
std::string format_value(const std::vector<double>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

/// Option set with JSON-config overlay: values from --config fill in exactly
/// the options not given on the command line, and the effective configuration
/// is echoed into every report.
class ParamSet {
public:
  explicit ParamSet(CLI::App* cmd) : cmd_(cmd) {
    cmd_->add_option("--config", config_path_,
                     "JSON file with option values; explicit flags override");
  }

  template <class T>
  CLI::Option* add(const std::string& name, T& target, const std::string& desc) {
    CLI::Option* opt = cmd_->add_option("--" + name, target, desc);
    appliers_.push_back([opt, name, &target](const json& cfg) {
      if (opt->count() == 0 && cfg.contains(name)) target = cfg.at(name).get<T>();
    });
    echoers_.push_back([name, &target]() { return std::pair{name, format_value(target)}; });
    return opt;
  }

  CLI::Option* add_flag(const std::string& name, bool& target, const std::string& desc) {
    CLI::Option* opt = cmd_->add_flag("--" + name + ",!--no-" + name, target, desc);
    appliers_.push_back([opt, name, &target](const json& cfg) {
      if (opt->count() == 0 && cfg.contains(name)) target = cfg.at(name).get<bool>();
    });
    echoers_.push_back([name, &target]() { return std::pair{name, format_value(target)}; });
    return opt;
  }

  /// Artifact destinations: configurable and overlay-able, but kept out of
  /// the echo so identical experiments produce byte-identical files anywhere.
  CLI::Option* add_path(const std::string& name, std::string& target,
                        const std::string& desc) {
    CLI::Option* opt = cmd_->add_option("--" + name, target, desc);
    appliers_.push_back([opt, name, &target](const json& cfg) {
      if (opt->count() == 0 && cfg.contains(name)) target = cfg.at(name).get<std::string>();
    });
    return opt;
  }

  /// Apply the config file (if any) to options the user did not pass.
  void overlay() {
    if (config_path_.empty()) return;
    std::ifstream in(config_path_);
    if (!in) throw io_error("cannot read config '" + config_path_ + "'");
    json cfg = json::parse(in, nullptr, true, true);
    for (auto& apply : appliers_) apply(cfg);
  }

  MetaList echo(const std::string& experiment) const {
    MetaList m;
    m.emplace_back("experiment", experiment);
    m.emplace_back("version", kVersion);
    for (const auto& e : echoers_) m.push_back(e());
    return m;
  }

private:
  CLI::App* cmd_;
  std::string config_path_;
  std::vector<std::function<void(const json&)>> appliers_;
  std::vector<std::function<std::pair<std::string, std::string>()>> echoers_;
};

int pool_threads() {
  if (const char* env = std::getenv("BREATHER_LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(hw == 0 ? 1 : std::min(hw, 4u));
}

analytic::BreatherSpec spec_from(const std::string& kind, double a) {
  analytic::BreatherSpec s;
  s.kind = analytic::kind_from_string(kind);
  s.a = a;
  s.validate();
  return s;
}

bool print_check(const std::string& what, bool ok) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
  return ok;
}

// ---------------------------------------------------------------------------
// eval: sample a closed-form solution to CSV

struct EvalCmd {
  std::string kind;
  double a = 0.75, t = 0.0, L = 50.0;
  int N = 1024;
  double c = 1.0, v = 0.0, gamma = 0.0, x0 = 0.0, t0 = 0.0;
  bool perturbation = false;
  std::string out = "eval.csv";
  ParamSet params;

  explicit EvalCmd(CLI::App* app) : params(app) {
    params.add("kind", kind, "stokes|peregrine|km|akhmediev|soliton")->required();
    params.add("a", a, "family parameter (km: a>1/2, akhmediev: 0<a<1/2)");
    params.add("t", t, "evaluation time");
    params.add("L", L, "window length");
    params.add("N", N, "grid points (power of two)");
    params.add("c", c, "scaling");
    params.add("v", v, "Galilean velocity");
    params.add("gamma", gamma, "phase");
    params.add("x0", x0, "space shift");
    params.add("t0", t0, "time shift");
    params.add_flag("perturbation", perturbation, "emit w = u e^{-it} - 1 instead of u");
    params.add_path("out", out, "output CSV path");
  }

  int run() {
    params.overlay();
    analytic::BreatherSpec spec = spec_from(kind, a);
    spec.sym = {c, v, gamma, x0, t0};
    const GridSpec grid(L, N);
    const ComplexField f = analytic::sample(spec, grid, t, perturbation);
    write_file(out, report::field_csv(f, params.echo("eval")));

    double lo = 1e300, hi = 0.0;
    double hi_x = 0.0;
    for (int j = 0; j < grid.N; ++j) {
      const double m = std::abs(f.values[j]);
      lo = std::min(lo, m);
      if (m > hi) {
        hi = m;
        hi_x = grid.node(j);
      }
    }
    std::cout << "modulus range [" << format_double(lo) << ", " << format_double(hi)
              << "], peak at x = " << format_double(hi_x) << "\n"
              << "wrote " << out << "\n";
    return 0;
  }
};

// ---------------------------------------------------------------------------
// conserved: functional report with optional closed-form checks

struct ConservedCmd {
  std::string kind;
  double a = 1.0, t = 0.0;
  double L = 0.0;  // 0 = per-kind default
  int N = 0;
  bool check = false;
  std::string out = "conserved.json";
  ParamSet params;

  explicit ConservedCmd(CLI::App* app) : params(app) {
    params.add("kind", kind, "stokes|peregrine|km|akhmediev")->required();
    params.add("a", a, "family parameter");
    params.add("t", t, "time slice");
    params.add("L", L, "window length (0: per-kind default)");
    params.add("N", N, "grid points (0: per-kind default)");
    params.add_flag("check", check, "compare against the family's closed forms");
    params.add_path("out", out, "output JSON path");
  }

  int run() {
    params.overlay();
    const analytic::BreatherSpec spec = spec_from(kind, a);

    Frame frame = Frame::line;
    spectral::TailPolicy tail = spectral::TailPolicy::none;
    GridSpec grid(100.0, 1024);
    switch (spec.kind) {
      case analytic::BreatherKind::peregrine:
        grid = defaults::peregrine_grid();
        tail = spectral::TailPolicy::algebraic;
        break;
      case analytic::BreatherKind::kuznetsov_ma:
        grid = defaults::km_grid();
        break;
      case analytic::BreatherKind::stokes:
        break;
      case analytic::BreatherKind::akhmediev:
        grid = defaults::akhmediev_grid(a, 1024,
                                        2.0 * pi / analytic::akhmediev_params(a).alpha);
        frame = Frame::periodic;
        break;
      default:
        throw usage_error("conserved: functionals are defined against the unit background");
    }
    if (L > 0.0 || N > 0) grid = GridSpec(L > 0.0 ? L : grid.L, N > 0 ? N : grid.N);

    spectral::SpectralEngine eng(grid);
    const ComplexField u = analytic::sample(spec, grid, t);
    const functionals::FunctionalReport rep = functionals::evaluate_all(eng, u, frame, tail);
    write_file(out, report::to_json(rep, params.echo("conserved")));
    std::cout << "M = " << format_double(rep.M) << "\nP = " << format_double(rep.P)
              << "\nE = " << format_double(rep.E) << "\nF = " << format_double(rep.F)
              << "\nwrote " << out << "\n";

    if (!check) return 0;
    bool ok = true;
    switch (spec.kind) {
      case analytic::BreatherKind::kuznetsov_ma: {
        const auto cf = defaults::km_closed_forms(a);
        const double tol = defaults::kConservedRelTol;
        ok &= print_check("M matches 4 beta", std::abs(rep.M - cf.M) <= tol * std::abs(cf.M));
        ok &= print_check("E matches -(4/3) beta^3",
                          std::abs(rep.E - cf.E) <= tol * std::abs(cf.E));
        ok &= print_check("F matches (4/5) beta^5",
                          std::abs(rep.F - cf.F) <= tol * std::abs(cf.F));
        ok &= print_check("P vanishes", std::abs(rep.P) <= 1e-6);
        break;
      }
      case analytic::BreatherKind::peregrine: {
        const double tol = defaults::kPeregrineZeroAbsTol;
        ok &= print_check("|M| below " + format_double(tol), std::abs(rep.M) <= tol);
        ok &= print_check("|P| below " + format_double(tol), std::abs(rep.P) <= tol);
        ok &= print_check("|E| below " + format_double(tol), std::abs(rep.E) <= tol);
        ok &= print_check("|F| below " + format_double(tol), std::abs(rep.F) <= tol);
        break;
      }
      case analytic::BreatherKind::stokes: {
        ok &= print_check("all invariants at rounding level",
                          std::abs(rep.M) < 1e-12 && std::abs(rep.P) < 1e-12 &&
                              std::abs(rep.E) < 1e-12 && std::abs(rep.F) < 1e-12);
        break;
      }
      default:
        throw usage_error("conserved --check: no closed forms for this kind");
    }
    return ok ? 0 : 1;
  }
};

// ---------------------------------------------------------------------------
// residual: flow-equation or stationary-equation residual norms

struct ResidualCmd {
  std::string equation = "auto";
  std::string kind;
  double a = 0.8, t = 0.0, dt = defaults::kResidualDt;
  double L = 200.0;
  int N = 4096;
  int periods = 0;  // akhmediev window (0: auto near L=170)
  bool check = true;
  std::string out = "residual.json";
  ParamSet params;

  explicit ResidualCmd(CLI::App* app) : params(app) {
    params.add("equation", equation, "nls-pde|ec-p|ec-km|ec-a|auto");
    params.add("kind", kind, "peregrine|km|akhmediev (nls-pde also: stokes|soliton)")
        ->required();
    params.add("a", a, "family parameter");
    params.add("t", t, "time slice");
    params.add("dt", dt, "time-difference step for nls-pde");
    params.add("L", L, "line window length");
    params.add("N", N, "grid points");
    params.add("periods", periods, "akhmediev window in spatial periods (0: auto)");
    params.add_flag("check", check, "require sup residual below the certified bound");
    params.add_path("out", out, "output JSON path");
  }

  int run() {
    params.overlay();
    const analytic::BreatherSpec spec = spec_from(kind, a);
    GridSpec grid(L, N);
    if (spec.kind == analytic::BreatherKind::akhmediev) {
      const double period = 2.0 * pi / analytic::akhmediev_params(a).alpha;
      grid = periods > 0 ? GridSpec(periods * period, N) : defaults::akhmediev_grid(a, N);
    }

    const variation::Equation eq = variation::equation_from_string(equation);
    const variation::ResidualReport rep =
        eq == variation::Equation::nls_pde ? variation::pde_residual(spec, grid, t, dt)
                                           : variation::ode_residual(spec, grid, t, eq);
    write_file(out, report::to_json(rep, params.echo("residual")));
    std::cout << "equation = " << variation::to_string(rep.equation)
              << "\nsup_residual = " << format_double(rep.sup_residual)
              << "\nl2_residual = " << format_double(rep.l2_residual) << "\nwrote " << out
              << "\n";
    if (!check) return 0;
    const bool ok =
        print_check("sup residual below " + format_double(defaults::kResidualSupTol),
                    rep.sup_residual < defaults::kResidualSupTol);
    return ok ? 0 : 1;
  }
};

// ---------------------------------------------------------------------------
// mi: modulational-instability growth-rate sweep

struct MiCmd {
  std::vector<double> ks;
  double eps = 1e-6, dt = 2e-3;
  int N = 256;
  bool check = true;
  std::string out = "mi.csv";
  ParamSet params;

  explicit MiCmd(CLI::App* app) : params(app) {
    params.add("k", ks, "wavenumbers (default: 0.25..1.75 step 0.25)");
    params.add("eps", eps, "seed amplitude");
    params.add("dt", dt, "time step");
    params.add("N", N, "grid points");
    params.add_flag("check", check, "require in-band rates within 5% of |k| sqrt(2-k^2)");
    params.add_path("out", out, "output CSV path");
  }

  int run() {
    params.overlay();
    if (ks.empty())
      for (int i = 1; i <= 7; ++i) ks.push_back(0.25 * i);

    struct Row {
      double k, measured, theory, rel_err;
      bool in_band;
    };
    std::vector<Row> rows(ks.size());

    std::atomic<size_t> next{0};
    auto work = [&]() {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= ks.size()) break;
        const double k = ks[i];
        const double period = 2.0 * pi / k;
        const int m = std::max(1, static_cast<int>(std::lround(24.0 / period)));
        evolve::SimConfig cfg;
        cfg.grid = GridSpec(m * period, N);
        cfg.dt = dt;
        cfg.t0 = 0.0;
        cfg.record_every = std::max(1, static_cast<int>(std::lround(0.05 / dt)));
        const double sigma = evolve::mi_theory_rate(k);
        cfg.t_end = sigma > 0.05 ? std::min(40.0, 16.0 / sigma + 6.0) : 30.0;
        cfg.frame = Frame::periodic;
        const evolve::GrowthRate gr = evolve::mi_growth_rate(k, eps, cfg);
        rows[i] = {k, gr.rate, sigma, gr.in_band ? std::abs(gr.rate - sigma) / sigma : 0.0,
                   gr.in_band};
      }
    };
    const int nw = std::min<int>(pool_threads(), static_cast<int>(ks.size()));
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();

    std::string csv;
    for (const auto& [key, val] : params.echo("mi")) csv += "# " + key + " = " + val + "\n";
    csv += "k,measured_rate,theory_rate,relative_error,in_band\n";
    bool ok = true;
    for (const Row& r : rows) {
      csv += format_double(r.k) + "," + format_double(r.measured) + "," +
             format_double(r.theory) + "," + format_double(r.rel_err) + "," +
             (r.in_band ? "1" : "0") + "\n";
      std::cout << "k = " << format_double(r.k) << ": rate " << format_double(r.measured)
                << " vs theory " << format_double(r.theory) << "\n";
      if (r.in_band) ok &= r.rel_err <= defaults::kMiRelTol;
    }
    write_file(out, csv);
    std::cout << "wrote " << out << "\n";
    if (!check) return 0;
    return print_check("in-band rates within 5% of linear theory", ok) ? 0 : 1;
  }
};

// ---------------------------------------------------------------------------
// instability: decay tabulation, perturbed runs, large-time limit distances

struct InstabilityCmd {
  std::string scenario;
  double s = 1.0, t_min = 100.0, t_max = 1e4;
  int points = 13;
  std::string kind = "peregrine";
  double a = 0.25, eps = 0.0;
  int seed = 1;
  double t0 = -1.0, t_end = 1.0, dt = 5e-5, L = 1000.0;
  int N = 8192, record_every = 400;
  double T = 15.0;
  bool check = true;
  std::string out = "instability.csv";
  std::string json_out;
  ParamSet params;

  explicit InstabilityCmd(CLI::App* app) : params(app) {
    app->add_option("scenario", scenario, "decay | perturbed-run | akhmediev-limits")
        ->required();
    params.add("s", s, "Sobolev index");
    params.add("t-min", t_min, "decay: first time");
    params.add("t-max", t_max, "decay: last time");
    params.add("points", points, "decay: log-grid size");
    params.add("kind", kind, "perturbed-run: reference family");
    params.add("a", a, "family parameter");
    params.add("eps", eps, "perturbed-run: noise amplitude (0 = exact-solution control)");
    params.add("seed", seed, "perturbed-run: noise seed");
    params.add("t0", t0, "perturbed-run: start time");
    params.add("t-end", t_end, "perturbed-run: end time");
    params.add("dt", dt, "perturbed-run: time step");
    params.add("L", L, "perturbed-run: window length");
    params.add("N", N, "grid points");
    params.add("record-every", record_every, "perturbed-run: record cadence in steps");
    params.add("T", T, "akhmediev-limits: evaluation time");
    params.add_flag("check", check, "apply the scenario's certified thresholds");
    params.add_path("out", out, "output CSV path");
    params.add_path("json", json_out, "perturbed-run: also write the series as JSON");
  }

  int run_decay() {
    std::string csv;
    for (const auto& [key, val] : params.echo("instability-decay"))
      csv += "# " + key + " = " + val + "\n";
    csv += "t,hs_norm,L,N\n";
    analytic::BreatherSpec p = spec_from("peregrine", 0.0);
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (int i = 0; i < points; ++i) {
      const double t = t_min * std::pow(t_max / t_min, static_cast<double>(i) / (points - 1));
      const double width = std::sqrt(1.0 + 4.0 * t * t);
      const GridSpec grid(40.0 * width, 2048);
      spectral::SpectralEngine eng(grid);
      const ComplexField w = analytic::sample(p, grid, t, true);
      const double hs = eng.sobolev_norm(w, s);
      csv += format_double(t) + "," + format_double(hs) + "," + format_double(grid.L) + "," +
             std::to_string(grid.N) + "\n";
      const double lt = std::log(t), ly = std::log(hs);
      st += lt;
      sy += ly;
      stt += lt * lt;
      sty += lt * ly;
    }
    write_file(out, csv);
    const double n = points;
    const double slope = (n * sty - st * sy) / (n * stt - st * st);
    std::cout << "fitted decay exponent = " << format_double(slope) << "\nwrote " << out
              << "\n";
    if (!check) return 0;
    const bool ok = print_check(
        "decay exponent -1/2 within 10%",
        std::abs(slope - defaults::kDecayExponent) <=
            std::abs(defaults::kDecayExponent) * defaults::kDecayExponentRelTol);
    return ok ? 0 : 1;
  }

  int run_perturbed() {
    const analytic::BreatherSpec ref = spec_from(kind, a);
    evolve::SimConfig cfg;
    if (ref.kind == analytic::BreatherKind::akhmediev) {
      const double period = 2.0 * pi / analytic::akhmediev_params(a).alpha;
      const int m = std::max(1, static_cast<int>(std::lround(L / period)));
      cfg.grid = GridSpec(m * period, N);
    } else {
      cfg.grid = GridSpec(L, N);
    }
    cfg.dt = dt;
    cfg.t0 = t0;
    cfg.t_end = t_end;
    cfg.record_every = record_every;
    cfg.reference = ref;
    cfg.sobolev_index = s;
    cfg.frame = ref.kind == analytic::BreatherKind::akhmediev ? Frame::periodic : Frame::line;
    ComplexField u0 = analytic::sample(ref, cfg.grid, t0);
    if (eps > 0.0) {
      CounterRng rng(static_cast<std::uint64_t>(seed));
      for (int j = 0; j < cfg.grid.N; ++j) u0.values[j] += eps * rng.complex_symmetric(j);
    }
    const evolve::DiagnosticSeries series = evolve::run(cfg, u0);
    const MetaList meta = params.echo("instability-perturbed-run");
    write_file(out, report::diagnostics_csv(series, cfg.tracked_modes, meta));
    if (!json_out.empty()) write_file(json_out, report::to_json(series, meta));

    double dist_max = 0.0;
    for (double d : series.orbital_distance) dist_max = std::max(dist_max, d);
    std::cout << "max orbital distance = " << format_double(dist_max)
              << ", final = " << format_double(series.orbital_distance.back()) << "\nwrote "
              << out << "\n";
    if (series.boundary_flagged)
      std::cout << "note: window boundary contaminated from t = "
                << format_double(series.boundary_flag_time) << "\n";
    if (!check || eps > 0.0) return 0;
    const bool ok =
        print_check("control run stays within 1e-6 of the orbit", dist_max < 1e-6);
    return ok ? 0 : 1;
  }

  int run_akhmediev_limits() {
    const analytic::BreatherSpec ak = spec_from("akhmediev", a);
    const double period = 2.0 * pi / analytic::akhmediev_params(a).alpha;
    const GridSpec grid(period, N);
    spectral::SpectralEngine eng(grid);
    const cplx phase = analytic::akhmediev_phase(a);

    std::string csv;
    for (const auto& [key, val] : params.echo("instability-akhmediev-limits"))
      csv += "# " + key + " = " + val + "\n";
    csv += "t,h1_distance\n";
    double worst = 0.0;
    for (double t : {-T, T}) {
      const cplx limit = (t > 0 ? phase : std::conj(phase)) * cplx(std::cos(t), std::sin(t));
      ComplexField diff = analytic::sample(ak, grid, t);
      for (auto& v : diff.values) v -= limit;
      const double d = eng.sobolev_norm(diff, 1.0);
      worst = std::max(worst, d);
      csv += format_double(t) + "," + format_double(d) + "\n";
      std::cout << "t = " << format_double(t) << ": distance " << format_double(d) << "\n";
    }
    write_file(out, csv);
    std::cout << "wrote " << out << "\n";
    if (!check) return 0;
    const bool ok = print_check("limit distances below 1e-3 at |t| = " + format_double(T),
                                worst < defaults::kAkhmedievLimitTol);
    return ok ? 0 : 1;
  }

  int run() {
    params.overlay();
    if (scenario == "decay") return run_decay();
    if (scenario == "perturbed-run") return run_perturbed();
    if (scenario == "akhmediev-limits") return run_akhmediev_limits();
    throw usage_error("unknown scenario '" + scenario + "'");
  }
};

// ---------------------------------------------------------------------------
// hessian: finite restriction of the matched second variation

struct HessianCmd {
  std::string kind;
  double a = 0.8;
  double t = 0.0;
  int K = 12;
  double L = 0.0;
  int N = 0;
  double eps = 1e-3;
  int threads = 0;
  bool check = true;
  std::string out = "hessian.json";
  std::string matrix_out = "hessian_matrix.csv";
  ParamSet params;

  explicit HessianCmd(CLI::App* app) : params(app) {
    params.add("kind", kind, "stokes|peregrine|km|akhmediev")->required();
    params.add("a", a, "family parameter");
    params.add("t", t, "time slice");
    params.add("K", K, "mode cutoff: basis chi e^{i k_m x}, |m| <= K");
    params.add("L", L, "window length (0: per-kind default)");
    params.add("N", N, "grid points (0: per-kind default)");
    params.add("eps", eps, "finite-difference step");
    params.add("threads", threads, "assembly workers (0: BREATHER_LAB_THREADS or auto)");
    params.add_flag("check", check, "apply the kind's certified spectral statements");
    params.add_path("out", out, "output JSON path");
    params.add_path("matrix-out", matrix_out, "matrix CSV path");
  }

  int run() {
    params.overlay();
    const analytic::BreatherSpec spec = spec_from(kind, a);

    functionals::LyapunovKind lk = functionals::LyapunovKind::peregrine;
    Frame frame = Frame::line;
    GridSpec grid(40.0, 512);
    switch (spec.kind) {
      case analytic::BreatherKind::stokes:
        grid = GridSpec(32.0, 256);
        break;
      case analytic::BreatherKind::peregrine:
        grid = GridSpec(67.0, 512);
        break;
      case analytic::BreatherKind::kuznetsov_ma:
        lk = functionals::LyapunovKind::km;
        grid = GridSpec(40.0, 512);
        break;
      case analytic::BreatherKind::akhmediev:
        lk = functionals::LyapunovKind::akhmediev;
        frame = Frame::periodic;
        grid = defaults::akhmediev_grid(a, 256, 40.0);
        break;
      default:
        throw usage_error("hessian: no matched functional for this kind");
    }
    if (L > 0.0 || N > 0) grid = GridSpec(L > 0.0 ? L : grid.L, N > 0 ? N : grid.N);

    spectral::SpectralEngine eng(grid);
    const ComplexField B = analytic::sample(spec, grid, t);
    const variation::HessianRestriction h =
        variation::assemble_hessian(eng, lk, a, frame, B, K, eps, threads);

    write_file(out, report::to_json(h, params.echo("hessian")));
    write_file(matrix_out, report::matrix_csv(h.matrix));

    double kernel_worst = 0.0;
    for (double r : h.kernel_residuals) kernel_worst = std::max(kernel_worst, std::abs(r));
    double action_worst = 0.0;
    for (double r : h.projected_action) action_worst = std::max(action_worst, std::abs(r));
    std::cout << "basis size = " << h.basis_size
              << "\nmin eigenvalue = " << format_double(h.min_eigenvalue)
              << "\nspectral norm = " << format_double(h.max_abs_eigenvalue)
              << "\nkernel residual (direct, max over basis) = "
              << format_double(kernel_worst)
              << "\nprojected-action diagnostic (max) = " << format_double(action_worst)
              << "\nwrote " << out << ", " << matrix_out << "\n";
    if (!check) return 0;

    bool ok = true;
    if (spec.kind == analytic::BreatherKind::kuznetsov_ma ||
        spec.kind == analytic::BreatherKind::akhmediev) {
      ok &= print_check("translation direction in the kernel (direct residual)",
                        kernel_worst < defaults::kKernelResidualTol * h.max_abs_eigenvalue);
    }
    if (spec.kind == analytic::BreatherKind::stokes ||
        spec.kind == analytic::BreatherKind::peregrine) {
      ok &= print_check("restriction has a negative direction", h.min_eigenvalue < 0.0);
    }
    return ok ? 0 : 1;
  }
};

// ---------------------------------------------------------------------------
// evolve: generic split-step run with diagnostics

struct EvolveCmd {
  std::string kind;
  double a = 0.25, eps = 0.0;
  int seed = 1;
  double t0 = 0.0, t_end = 1.0, dt = 1e-3, L = 200.0;
  int N = 2048, record_every = 10;
  double s = 1.0;
  bool record_F = false;
  std::string reference;  // empty: none; "same": the initial family
  std::vector<int> track_modes;
  std::string out = "evolve.csv";
  std::string json_out;
  ParamSet params;

  explicit EvolveCmd(CLI::App* app) : params(app) {
    params.add("kind", kind, "initial condition family")->required();
    params.add("a", a, "family parameter");
    params.add("eps", eps, "seeded noise amplitude");
    params.add("seed", seed, "noise seed");
    params.add("t0", t0, "start time");
    params.add("t-end", t_end, "end time");
    params.add("dt", dt, "time step");
    params.add("L", L, "window length");
    params.add("N", N, "grid points");
    params.add("record-every", record_every, "record cadence in steps");
    params.add("s", s, "Sobolev index of the perturbation norm");
    params.add_flag("record-F", record_F, "also record the quartic functional");
    params.add("reference", reference, "orbital-distance reference family ('same' or a kind)");
    params.add("track-modes", track_modes, "perturbation Fourier modes to track");
    params.add_path("out", out, "output CSV path");
    params.add_path("json", json_out, "also write the series as JSON");
  }

  int run() {
    params.overlay();
    const analytic::BreatherSpec spec = spec_from(kind, a);
    evolve::SimConfig cfg;
    GridSpec grid(L, N);
    if (spec.kind == analytic::BreatherKind::akhmediev) {
      const double period = 2.0 * pi / analytic::akhmediev_params(a).alpha;
      const int m = std::max(1, static_cast<int>(std::lround(L / period)));
      grid = GridSpec(m * period, N);
      cfg.frame = Frame::periodic;
    } else if (spec.kind == analytic::BreatherKind::stokes) {
      cfg.frame = Frame::periodic;
    } else {
      cfg.frame = Frame::line;
    }
    cfg.grid = grid;
    cfg.dt = dt;
    cfg.t0 = t0;
    cfg.t_end = t_end;
    cfg.record_every = record_every;
    cfg.sobolev_index = s;
    cfg.record_quartic = record_F;
    cfg.tracked_modes = track_modes;
    if (!reference.empty())
      cfg.reference = reference == "same" ? spec : spec_from(reference, a);

    ComplexField u0 = analytic::sample(spec, grid, t0);
    if (eps > 0.0) {
      CounterRng rng(static_cast<std::uint64_t>(seed));
      for (int j = 0; j < grid.N; ++j) u0.values[j] += eps * rng.complex_symmetric(j);
    }

    const evolve::DiagnosticSeries series = evolve::run(cfg, u0);
    const MetaList meta = params.echo("evolve");
    write_file(out, report::diagnostics_csv(series, cfg.tracked_modes, meta));
    if (!json_out.empty()) write_file(json_out, report::to_json(series, meta));

    std::cout << "records = " << series.records() << ", final |M - M0| = "
              << format_double(std::abs(series.M.back() - series.M.front()))
              << ", final |E - E0| = "
              << format_double(std::abs(series.E.back() - series.E.front())) << "\n";
    if (series.overflow)
      std::cout << "halted: overflow at t = " << format_double(series.overflow_time) << "\n";
    if (series.boundary_flagged)
      std::cout << "note: window boundary contaminated from t = "
                << format_double(series.boundary_flag_time) << "\n";
    std::cout << "wrote " << out << "\n";
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for plane-wave-background breathers of the focusing "
               "cubic Schrodinger equation"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  EvalCmd eval_cmd(app.add_subcommand("eval", "sample a closed-form solution to CSV"));
  ConservedCmd conserved_cmd(
      app.add_subcommand("conserved", "mass/momentum/energy/quartic functional report"));
  ResidualCmd residual_cmd(
      app.add_subcommand("residual", "flow- or stationary-equation residual norms"));
  MiCmd mi_cmd(app.add_subcommand("mi", "modulational-instability growth-rate sweep"));
  InstabilityCmd instability_cmd(
      app.add_subcommand("instability", "decay, perturbed-run and limit experiments"));
  HessianCmd hessian_cmd(
      app.add_subcommand("hessian", "finite restriction of the matched second variation"));
  EvolveCmd evolve_cmd(app.add_subcommand("evolve", "split-step run with diagnostics"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // --help/--version exit 0, parse problems exit 2
  }

  const auto started = std::chrono::steady_clock::now();
  int rc = 0;
  try {
    if (app.got_subcommand("eval")) rc = eval_cmd.run();
    else if (app.got_subcommand("conserved")) rc = conserved_cmd.run();
    else if (app.got_subcommand("residual")) rc = residual_cmd.run();
    else if (app.got_subcommand("mi")) rc = mi_cmd.run();
    else if (app.got_subcommand("instability")) rc = instability_cmd.run();
    else if (app.got_subcommand("hessian")) rc = hessian_cmd.run();
    else if (app.got_subcommand("evolve")) rc = evolve_cmd.run();
  } catch (const io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const param_error& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  const auto elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::cerr << "completed in " << elapsed << " s\n";  // stderr: files stay byte-deterministic
  return rc;
}
