#pragma once

#include <memory>
#include <span>

#include "breatherlab/types.hpp"

namespace breatherlab {

/// One-dimensional complex transform of a fixed power-of-two size.
///
/// forward:  X_k = sum_j x_j exp(-2*pi*i*j*k/N)   (unnormalized)
/// inverse:  x_j = sum_k X_k exp(+2*pi*i*j*k/N)   (unnormalized)
///
/// Implementations hold per-instance plan state. One instance per worker;
/// instances must not be shared mutably across threads.
class FourierTransform {
public:
  virtual ~FourierTransform() = default;
  virtual int size() const = 0;
  virtual void forward(std::span<const cplx> in, std::span<cplx> out) = 0;
  virtual void inverse(std::span<const cplx> in, std::span<cplx> out) = 0;
  virtual const char* provider() const = 0;
};

/// In-repo iterative radix-2 transform. Always available.
std::unique_ptr<FourierTransform> make_radix2_fft(int n);

/// Best available provider (FFTW3 when compiled in, else radix-2).
std::unique_ptr<FourierTransform> make_fft(int n);

bool fftw_available();

}  // namespace breatherlab
