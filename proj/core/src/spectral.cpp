#include "breatherlab/spectral.hpp"

#include <cmath>

namespace breatherlab::spectral {

SpectralEngine::SpectralEngine(const GridSpec& grid) : grid_(grid), fft_(make_fft(grid.N)) {
  grid_.validate();
  scratch_.resize(grid.N);
}

std::vector<cplx> SpectralEngine::coefficients(const std::vector<cplx>& values) {
  if (static_cast<int>(values.size()) != grid_.N)
    throw usage_error("coefficients: sample count does not match grid");
  std::vector<cplx> out(grid_.N);
  fft_->forward(values, out);
  const double inv_n = 1.0 / grid_.N;
  for (cplx& c : out) c *= inv_n;
  return out;
}

std::vector<cplx> SpectralEngine::synthesize(const std::vector<cplx>& coeffs) {
  if (static_cast<int>(coeffs.size()) != grid_.N)
    throw usage_error("synthesize: coefficient count does not match grid");
  std::vector<cplx> out(grid_.N);
  fft_->inverse(coeffs, out);
  return out;
}

ComplexField SpectralEngine::derivative(const ComplexField& f, int order) {
  if (!(f.grid == grid_)) throw usage_error("derivative: field grid does not match engine");
  if (order < 1) throw param_error("order", ">= 1", order);
  if (!f.all_finite()) throw usage_error("derivative: non-finite input field");

  std::vector<cplx> c = coefficients(f.values);
  for (int j = 0; j < grid_.N; ++j) {
    const bool odd_nyquist = (order % 2 == 1) && j == grid_.N / 2;
    if (odd_nyquist) {
      c[j] = 0.0;
      continue;
    }
    const cplx ik(0.0, grid_.wavenumber(j));
    cplx mult = 1.0;
    for (int p = 0; p < order; ++p) mult *= ik;
    c[j] *= mult;
  }
  ComplexField out(grid_, f.t);
  out.values = synthesize(c);
  return out;
}

double SpectralEngine::sobolev_norm(const ComplexField& f, double s) {
  if (!(f.grid == grid_)) throw usage_error("sobolev_norm: field grid does not match engine");
  std::vector<cplx> c = coefficients(f.values);
  double acc = 0.0;
  for (int j = 0; j < grid_.N; ++j) {
    const double k = grid_.wavenumber(j);
    acc += std::pow(1.0 + k * k, s) * std::norm(c[j]);
  }
  return std::sqrt(grid_.L * acc);
}

cplx SpectralEngine::integrate_samples(const std::vector<cplx>& density) const {
  cplx acc = 0.0;
  for (const cplx& v : density) acc += v;
  return acc * grid_.dx();
}

cplx SpectralEngine::integrate_periodic(const ComplexField& f) const {
  if (!(f.grid == grid_)) throw usage_error("integrate_periodic: field grid does not match engine");
  return integrate_samples(f.values);
}

cplx SpectralEngine::integrate_samples_line(const std::vector<cplx>& density, double tail_exponent,
                                            TailPolicy tail) const {
  if (static_cast<int>(density.size()) != grid_.N)
    throw usage_error("integrate_samples_line: sample count does not match grid");
  cplx window = integrate_samples(density);
  if (tail == TailPolicy::none) return window;
  if (!(tail_exponent > 1.0)) throw param_error("tail_exponent", "(1, inf)", tail_exponent);

  // fit f ~ c/|x|^p at the outermost sample on each side, integrate beyond L/2
  const double p = tail_exponent;
  const double xb = 0.5 * grid_.L;
  const double x_left = std::abs(grid_.node(0));
  const double x_right = std::abs(grid_.node(grid_.N - 1));
  const cplx c_left = density.front() * std::pow(x_left, p);
  const cplx c_right = density.back() * std::pow(x_right, p);
  const double tail_factor = std::pow(xb, 1.0 - p) / (p - 1.0);
  return window + (c_left + c_right) * tail_factor;
}

}  // namespace breatherlab::spectral
