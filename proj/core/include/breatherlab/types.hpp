#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace breatherlab {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Invalid value for a named parameter; message carries the admissible range.
class param_error : public std::invalid_argument {
public:
  param_error(const std::string& name, const std::string& admissible, double got)
      : std::invalid_argument("parameter '" + name + "' = " + std::to_string(got) +
                              " outside admissible range " + admissible),
        param_name(name), range(admissible) {}
  std::string param_name;
  std::string range;
};

/// API misuse (frame mismatch, grid mismatch, wrong breather kind for an operation).
class usage_error : public std::logic_error {
  using std::logic_error::logic_error;
};

/// Solution left the representable range during time stepping.
class overflow_halt : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An iterative numerical procedure failed to converge.
class numerical_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Frame { line, periodic };

inline const char* to_string(Frame f) { return f == Frame::line ? "line" : "periodic"; }

/// Uniform periodic grid on [-L/2, L/2): nodes x_j = -L/2 + j L/N.
struct GridSpec {
  double L = 0.0;
  int N = 0;

  GridSpec() = default;
  GridSpec(double length, int points) : L(length), N(points) { validate(); }

  void validate() const {
    if (!(L > 0.0)) throw param_error("L", "(0, inf)", L);
    if (N < 8 || (N & (N - 1)) != 0)
      throw param_error("N", "power of two >= 8", static_cast<double>(N));
  }

  double dx() const { return L / N; }
  double node(int j) const { return -0.5 * L + j * dx(); }

  /// Signed Fourier mode number for FFT storage index j (Nyquist maps to -N/2).
  int mode(int j) const { return j < N / 2 ? j : j - N; }
  double wavenumber(int j) const { return 2.0 * pi * mode(j) / L; }

  bool operator==(const GridSpec& o) const { return L == o.L && N == o.N; }
};

/// Complex samples of a field on a grid at a fixed time. Treated as immutable
/// once filled; operations return new fields.
struct ComplexField {
  GridSpec grid;
  double t = 0.0;
  std::vector<cplx> values;

  ComplexField() = default;
  ComplexField(const GridSpec& g, double time) : grid(g), t(time), values(g.N) {}

  int size() const { return static_cast<int>(values.size()); }

  bool all_finite() const {
    for (const cplx& v : values)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }
};

inline ComplexField axpy(const ComplexField& base, cplx coeff, const ComplexField& dir) {
  if (!(base.grid == dir.grid)) throw usage_error("axpy: fields on different grids");
  ComplexField out = base;
  for (int j = 0; j < out.size(); ++j) out.values[j] += coeff * dir.values[j];
  return out;
}

}  // namespace breatherlab
