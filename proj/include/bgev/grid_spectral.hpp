#ifndef BGEV_GRID_SPECTRAL_HPP
#define BGEV_GRID_SPECTRAL_HPP

// Periodic grid, discrete Fourier transforms and the Fourier multipliers
// used by the rest of the library.
//
// Convention: for samples f_j = f(x_j), x_j = j*L/N,
//   fhat_k = (1/N) sum_j f_j exp(-i xi_k x_j),   xi_k = 2*pi*k/L,
// so fhat_k approximates the Fourier-series coefficient (1/L) int f e^{-i xi_k x} dx
// and Parseval reads  L * sum_k |fhat_k|^2 = int_0^L |f|^2 dx.
//
// Spectral coefficients are stored in FFT order: storage index i holds mode
// k = i for i < N/2 and k = i - N otherwise. Use mode_of / index_of to convert.

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "bgev/errors.hpp"

namespace bgev {

using Complex = std::complex<double>;

struct GridSpec {
  std::size_t n_points = 0;
  double box_length = 0.0;
  double dealias_fraction = 2.0 / 3.0;

  double dx() const { return box_length / static_cast<double>(n_points); }
  double x(std::size_t j) const { return static_cast<double>(j) * dx(); }
  /// Continuous frequency of integer mode k.
  double xi(long k) const { return 2.0 * std::numbers::pi * static_cast<double>(k) / box_length; }
  long half() const { return static_cast<long>(n_points / 2); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

inline GridSpec make_grid(std::size_t n_points, double box_length,
                          double dealias_fraction = 2.0 / 3.0) {
  if (n_points < 8 || n_points % 2 != 0) {
    throw ConfigError("grid: n_points must be even and >= 8 (got " + std::to_string(n_points) +
                      ")");
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw ConfigError("grid: box_length must be a positive finite number");
  }
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw ConfigError("grid: dealias_fraction must lie in (0, 1]");
  }
  return GridSpec{n_points, box_length, dealias_fraction};
}

inline long mode_of(std::size_t index, std::size_t n) {
  const auto i = static_cast<long>(index);
  const auto nn = static_cast<long>(n);
  return i < nn / 2 ? i : i - nn;
}

inline std::size_t index_of(long k, std::size_t n) {
  const auto nn = static_cast<long>(n);
  return static_cast<std::size_t>(k >= 0 ? k : k + nn);
}

struct RealField {
  GridSpec grid;
  std::vector<double> samples;

  RealField() = default;
  explicit RealField(const GridSpec& g) : grid(g), samples(g.n_points, 0.0) {}
  RealField(const GridSpec& g, std::vector<double> values) : grid(g), samples(std::move(values)) {
    if (samples.size() != grid.n_points) {
      throw ConfigError("RealField: sample count does not match grid.n_points");
    }
  }

  std::size_t size() const { return samples.size(); }
  double& operator[](std::size_t j) { return samples[j]; }
  double operator[](std::size_t j) const { return samples[j]; }

  bool all_finite() const {
    return std::all_of(samples.begin(), samples.end(), [](double v) { return std::isfinite(v); });
  }

  RealField& operator+=(const RealField& o) {
    for (std::size_t j = 0; j < samples.size(); ++j) samples[j] += o.samples[j];
    return *this;
  }
  RealField& operator-=(const RealField& o) {
    for (std::size_t j = 0; j < samples.size(); ++j) samples[j] -= o.samples[j];
    return *this;
  }
  RealField& operator*=(double a) {
    for (double& v : samples) v *= a;
    return *this;
  }
  friend RealField operator+(RealField a, const RealField& b) { return a += b; }
  friend RealField operator-(RealField a, const RealField& b) { return a -= b; }
  friend RealField operator*(double s, RealField a) { return a *= s; }
};

/// Samples f at the grid nodes x_j = j*L/N.
inline RealField sample(const GridSpec& grid, const std::function<double(double)>& f) {
  RealField out(grid);
  for (std::size_t j = 0; j < grid.n_points; ++j) out[j] = f(grid.x(j));
  return out;
}

inline double sup_norm(const RealField& f) {
  double m = 0.0;
  for (double v : f.samples) m = std::max(m, std::abs(v));
  return m;
}

struct SpectralField {
  GridSpec grid;
  std::vector<Complex> coeffs;  // FFT order

  SpectralField() = default;
  explicit SpectralField(const GridSpec& g) : grid(g), coeffs(g.n_points, Complex{}) {}

  Complex& coeff(long k) { return coeffs[index_of(k, grid.n_points)]; }
  const Complex& coeff(long k) const { return coeffs[index_of(k, grid.n_points)]; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& c : coeffs) m = std::max(m, std::abs(c));
    return m;
  }

  SpectralField& operator+=(const SpectralField& o) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
    return *this;
  }
  SpectralField& operator*=(Complex a) {
    for (auto& c : coeffs) c *= a;
    return *this;
  }
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(Complex s, SpectralField a) { return a *= s; }
};

namespace detail {

// One forward/backward plan pair per transform length. Plans are created under
// a global lock (the FFTW planner is not re-entrant) and only ever executed via
// the new-array interface afterwards, which is thread-safe.
class FftPlans {
 public:
  static const FftPlans& get(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<FftPlans>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot.reset(new FftPlans(n));
    return *slot;
  }

  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;
  ~FftPlans() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }

  void forward(const Complex* in, Complex* out) const { execute(forward_, in, out); }
  void backward(const Complex* in, Complex* out) const { execute(backward_, in, out); }

 private:
  explicit FftPlans(std::size_t n) {
    std::vector<Complex> a(n), b(n);
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_ = fftw_plan_dft_1d(len, as_fftw(a.data()), as_fftw(b.data()), FFTW_FORWARD, flags);
    backward_ = fftw_plan_dft_1d(len, as_fftw(a.data()), as_fftw(b.data()), FFTW_BACKWARD, flags);
  }

  static fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

  static void execute(fftw_plan plan, const Complex* in, Complex* out) {
    // Out-of-place complex transforms leave the input untouched.
    fftw_execute_dft(plan, as_fftw(const_cast<Complex*>(in)), as_fftw(out));
  }

  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

}  // namespace detail

inline SpectralField dft(const RealField& f) {
  if (!f.all_finite()) throw NumericalError("dft: non-finite sample in input field");
  const std::size_t n = f.grid.n_points;
  std::vector<Complex> in(n);
  for (std::size_t j = 0; j < n; ++j) in[j] = Complex(f[j], 0.0);
  SpectralField out(f.grid);
  detail::FftPlans::get(n).forward(in.data(), out.coeffs.data());
  const double inv_n = 1.0 / static_cast<double>(n);
  for (auto& c : out.coeffs) c *= inv_n;
  return out;
}

/// Inverse transform; the imaginary part (round-off for Hermitian input) is dropped.
inline RealField idft(const SpectralField& F) {
  const std::size_t n = F.grid.n_points;
  std::vector<Complex> out(n);
  detail::FftPlans::get(n).backward(F.coeffs.data(), out.data());
  RealField f(F.grid);
  for (std::size_t j = 0; j < n; ++j) f[j] = out[j].real();
  return f;
}

/// Multiplies every mode by m(xi_k).
template <class Multiplier>
SpectralField apply_multiplier(SpectralField F, Multiplier&& m) {
  const std::size_t n = F.grid.n_points;
  for (std::size_t i = 0; i < n; ++i) F.coeffs[i] *= m(F.grid.xi(mode_of(i, n)));
  return F;
}

/// d^order/dx^order: multiply by (i xi_k)^order. The Nyquist mode is zeroed
/// for odd orders.
inline SpectralField deriv(SpectralField F, unsigned order) {
  if (order == 0) return F;
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex phase = kIPow[order % 4];
  const std::size_t n = F.grid.n_points;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = F.grid.xi(mode_of(i, n));
    F.coeffs[i] *= phase * std::pow(xi, static_cast<int>(order));
  }
  if (order % 2 == 1) F.coeff(-F.grid.half()) = Complex{};
  return F;
}

/// Lambda^{-2} = (1 - d_xx)^{-1}: divide by 1 + xi_k^2.
inline SpectralField helmholtz_inv(SpectralField F) {
  return apply_multiplier(std::move(F), [](double xi) { return 1.0 / (1.0 + xi * xi); });
}

/// Lambda^2 = 1 - d_xx: multiply by 1 + xi_k^2.
inline SpectralField helmholtz(SpectralField F) {
  return apply_multiplier(std::move(F), [](double xi) { return 1.0 + xi * xi; });
}

/// Largest |k| kept by the dealiasing rule.
inline long dealias_cutoff(const GridSpec& g) {
  return static_cast<long>(std::floor(g.dealias_fraction * static_cast<double>(g.half()) + 1e-9));
}

/// Zeroes every mode with |k| > dealias_fraction * N/2.
inline SpectralField dealias(SpectralField F) {
  const long cut = dealias_cutoff(F.grid);
  const std::size_t n = F.grid.n_points;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(mode_of(i, n)) > cut) F.coeffs[i] = Complex{};
  }
  return F;
}

}  // namespace bgev

#endif  // BGEV_GRID_SPECTRAL_HPP
