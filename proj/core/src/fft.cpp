#include "breatherlab/fft.hpp"

#include <cstring>
#include <mutex>

#ifdef BREATHERLAB_HAVE_FFTW
#include <fftw3.h>
#endif

namespace breatherlab {

namespace {

class Radix2Fft final : public FourierTransform {
public:
  explicit Radix2Fft(int n) : n_(n) {
    if (n < 2 || (n & (n - 1)) != 0)
      throw param_error("fft size", "power of two >= 2", static_cast<double>(n));
    // bit-reversal permutation
    rev_.resize(n);
    int log2n = 0;
    while ((1 << log2n) < n) ++log2n;
    for (int i = 0; i < n; ++i) {
      unsigned r = 0;
      for (int b = 0; b < log2n; ++b)
        if (i & (1 << b)) r |= 1u << (log2n - 1 - b);
      rev_[i] = static_cast<int>(r);
    }
    // twiddles for the forward (sign -1) direction; inverse conjugates
    tw_.resize(n / 2);
    for (int i = 0; i < n / 2; ++i) {
      double ang = -2.0 * pi * i / n;
      tw_[i] = cplx(std::cos(ang), std::sin(ang));
    }
  }

  int size() const override { return n_; }
  const char* provider() const override { return "radix2"; }

  void forward(std::span<const cplx> in, std::span<cplx> out) override { run(in, out, false); }
  void inverse(std::span<const cplx> in, std::span<cplx> out) override { run(in, out, true); }

private:
  void run(std::span<const cplx> in, std::span<cplx> out, bool conj_tw) {
    for (int i = 0; i < n_; ++i) out[rev_[i]] = in[i];
    for (int len = 2; len <= n_; len <<= 1) {
      const int half = len >> 1;
      const int stride = n_ / len;
      for (int start = 0; start < n_; start += len) {
        for (int i = 0; i < half; ++i) {
          cplx w = tw_[i * stride];
          if (conj_tw) w = std::conj(w);
          cplx a = out[start + i];
          cplx b = out[start + i + half] * w;
          out[start + i] = a + b;
          out[start + i + half] = a - b;
        }
      }
    }
  }

  int n_;
  std::vector<int> rev_;
  std::vector<cplx> tw_;
};

#ifdef BREATHERLAB_HAVE_FFTW
// FFTW_ESTIMATE keeps plan creation deterministic (FFTW_MEASURE is not,
// run-to-run). Plan creation is not thread-safe; execution on private
// buffers is.
std::mutex fftw_plan_mutex;

class FftwFft final : public FourierTransform {
public:
  explicit FftwFft(int n) : n_(n) {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    fwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }

  ~FftwFft() override {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(buf_);
  }

  int size() const override { return n_; }
  const char* provider() const override { return "fftw3"; }

  void forward(std::span<const cplx> in, std::span<cplx> out) override {
    std::memcpy(buf_, in.data(), sizeof(cplx) * n_);
    fftw_execute(fwd_);
    std::memcpy(out.data(), buf_, sizeof(cplx) * n_);
  }

  void inverse(std::span<const cplx> in, std::span<cplx> out) override {
    std::memcpy(buf_, in.data(), sizeof(cplx) * n_);
    fftw_execute(bwd_);
    std::memcpy(out.data(), buf_, sizeof(cplx) * n_);
  }

private:
  int n_;
  fftw_complex* buf_;
  fftw_plan fwd_;
  fftw_plan bwd_;
};
#endif

}  // namespace

std::unique_ptr<FourierTransform> make_radix2_fft(int n) { return std::make_unique<Radix2Fft>(n); }

bool fftw_available() {
#ifdef BREATHERLAB_HAVE_FFTW
  return true;
#else
  return false;
#endif
}

std::unique_ptr<FourierTransform> make_fft(int n) {
#ifdef BREATHERLAB_HAVE_FFTW
  return std::make_unique<FftwFft>(n);
#else
  return make_radix2_fft(n);
#endif
}

}  // namespace breatherlab
