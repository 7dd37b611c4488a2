#pragma once

#include <memory>

#include "breatherlab/fft.hpp"
#include "breatherlab/types.hpp"

namespace breatherlab::spectral {

/// Algebraic-tail handling for quadrature of decaying samples on a line window.
enum class TailPolicy { none, algebraic };

/// Fourier workspace bound to one grid. Owns the transform plan, so the
/// concurrency contract is one engine per worker.
class SpectralEngine {
public:
  explicit SpectralEngine(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }

  /// Normalized Fourier coefficients c_m (FFT storage order), f_j = sum_m c_m e^{i k_m x_j}
  /// up to a per-mode phase that cancels in every product this library forms.
  std::vector<cplx> coefficients(const std::vector<cplx>& values);
  std::vector<cplx> synthesize(const std::vector<cplx>& coeffs);

  /// Spectral derivative: mode m scaled by (i k_m)^order. The Nyquist mode is
  /// zeroed for odd orders (symmetric-derivative convention).
  ComplexField derivative(const ComplexField& f, int order);

  /// H^s norm: sqrt( L * sum_m (1+k_m^2)^s |c_m|^2 ). For s=0 this equals the
  /// trapezoid L^2 norm exactly (discrete Parseval).
  double sobolev_norm(const ComplexField& f, double s);

  /// Trapezoid rule, spectrally accurate for smooth periodic integrands.
  cplx integrate_periodic(const ComplexField& f) const;
  cplx integrate_samples(const std::vector<cplx>& density) const;

  /// Trapezoid over the window plus algebraic tail correction fitted from the
  /// outermost samples: f ~ c/|x|^p beyond the window. p <= 1 diverges.
  cplx integrate_samples_line(const std::vector<cplx>& density, double tail_exponent,
                              TailPolicy tail = TailPolicy::algebraic) const;

private:
  GridSpec grid_;
  std::unique_ptr<FourierTransform> fft_;
  std::vector<cplx> scratch_;
};

}  // namespace breatherlab::spectral
