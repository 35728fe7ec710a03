#ifndef BGEV_NORMS_HPP
#define BGEV_NORMS_HPP

// Discrete Sobolev, Gevrey, Himonas-Misiolek and Kato-Masuda norms.
//
// Integrals over xi become L-weighted sums over the discrete modes xi_k.
// Modes with |uhat_k| below kRoundoffFloor * max|uhat| are excluded from every
// norm here: after multiplication by |xi|^j or e^{sigma|xi|} they would only
// amplify round-off. Factorially weighted series are evaluated in log space.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "bgev/errors.hpp"
#include "bgev/grid_spectral.hpp"

namespace bgev {

inline constexpr double kRoundoffFloor = 1e-13;
inline constexpr double kSeriesTailTol = 1e-16;
inline constexpr int kDefaultJMax = 200;

namespace detail {

inline double log_sum_exp(const std::vector<double>& v) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : v) mx = std::max(mx, x);
  if (!std::isfinite(mx)) return mx;
  double acc = 0.0;
  for (double x : v) acc += std::exp(x - mx);
  return mx + std::log(acc);
}

inline double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double mx = std::max(a, b);
  return mx + std::log1p(std::exp(-std::abs(a - b)));
}

/// Modes above the round-off floor, as (xi_k, log|uhat_k|^2).
class LogSpectrum {
 public:
  explicit LogSpectrum(const SpectralField& F) : box_length_(F.grid.box_length) {
    const double floor = kRoundoffFloor * F.max_abs();
    const std::size_t n = F.grid.n_points;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = std::abs(F.coeffs[i]);
      if (a == 0.0 || a < floor) continue;
      xi_.push_back(F.grid.xi(mode_of(i, n)));
      log_abs2_.push_back(2.0 * std::log(a));
    }
  }

  bool empty() const { return xi_.empty(); }

  /// log( L sum_k |xi_k|^{2j} (1 + xi_k^2)^s |uhat_k|^2 ), i.e. log ||d^j u||^2_{H^s}.
  double log_deriv_norm_sq(int j, double s) const {
    std::vector<double> terms;
    terms.reserve(xi_.size());
    for (std::size_t i = 0; i < xi_.size(); ++i) {
      const double ax = std::abs(xi_[i]);
      if (j > 0 && ax == 0.0) continue;
      double t = log_abs2_[i] + s * std::log1p(ax * ax);
      if (j > 0) t += 2.0 * j * std::log(ax);
      terms.push_back(t);
    }
    if (terms.empty()) return -std::numeric_limits<double>::infinity();
    return std::log(box_length_) + log_sum_exp(terms);
  }

  const std::vector<double>& xi() const { return xi_; }
  const std::vector<double>& log_abs2() const { return log_abs2_; }

 private:
  double box_length_;
  std::vector<double> xi_;
  std::vector<double> log_abs2_;
};

inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace detail

struct GevreyNorm {
  double value = 0.0;
  /// Weighted tail terms increase over the last quarter of the resolved band:
  /// sigma exceeds the decay rate the field's spectrum can support.
  bool diverged = false;
};

/// ( L sum_k e^{2 sigma |xi_k|} (1 + xi_k^2)^s |uhat_k|^2 )^{1/2} with a
/// structural divergence check on the tail.
inline GevreyNorm gevrey_norm(const SpectralField& U, double sigma, double s) {
  if (!(sigma >= 0.0)) throw DomainError("gevrey_norm: sigma must be >= 0");
  const double floor = kRoundoffFloor * U.max_abs();

  std::vector<double> all_terms;
  // Pair terms (modes +k and -k) indexed by k > 0, for the tail test.
  std::vector<double> pair_k, pair_log;
  auto log_weight = [&](double xi) { return 2.0 * sigma * std::abs(xi) + s * std::log1p(xi * xi); };
  auto log_term = [&](long k) {
    const double a = std::abs(U.coeff(k));
    if (a == 0.0 || a < floor) return -std::numeric_limits<double>::infinity();
    return log_weight(U.grid.xi(k)) + 2.0 * std::log(a);
  };

  for (long k = -U.grid.half(); k < U.grid.half(); ++k) {
    const double t = log_term(k);
    if (std::isfinite(t)) all_terms.push_back(t);
  }
  for (long k = 1; k < U.grid.half(); ++k) {
    const double t = detail::log_add(log_term(k), log_term(-k));
    if (std::isfinite(t)) {
      pair_k.push_back(static_cast<double>(k));
      pair_log.push_back(t);
    }
  }

  GevreyNorm out;
  if (all_terms.empty()) return out;
  out.value = std::exp(0.5 * (std::log(U.grid.box_length) + detail::log_sum_exp(all_terms)));

  if (!pair_k.empty()) {
    const double k_res = pair_k.back();
    const double k_lo = std::ceil(0.75 * k_res);
    std::vector<double> tk, tl;
    for (std::size_t i = 0; i < pair_k.size(); ++i) {
      if (pair_k[i] >= k_lo) {
        tk.push_back(pair_k[i]);
        tl.push_back(pair_log[i]);
      }
    }
    if (tk.size() >= 4 && detail::slope(tk, tl) > 0.0) out.diverged = true;
  }
  return out;
}

inline GevreyNorm gevrey_norm(const RealField& u, double sigma, double s) {
  return gevrey_norm(dft(u), sigma, s);
}

/// ( L sum_k (1 + xi_k^2)^s |uhat_k|^2 )^{1/2}; the sigma = 0 Gevrey norm.
inline double sobolev_norm(const SpectralField& U, double s) { return gevrey_norm(U, 0.0, s).value; }
inline double sobolev_norm(const RealField& u, double s) { return sobolev_norm(dft(u), s); }

/// Himonas-Misiolek norm  sup_j sigma^j (j+1)^2 / j! ||d^j u||_{H^{2m}}.
///
/// The supremum is taken over j = 0..j_max and accepted once three consecutive
/// terms fall below kSeriesTailTol times the running sup; otherwise throws
/// TruncationError.
inline double hm_norm(const SpectralField& U, double sigma, int m, int j_max = kDefaultJMax) {
  if (!(sigma > 0.0)) throw DomainError("hm_norm: sigma must be > 0");
  if (m < 2) throw DomainError("hm_norm: m must be >= 2");
  if (j_max < 1) throw DomainError("hm_norm: j_max must be >= 1");
  const detail::LogSpectrum spec(U);
  if (spec.empty()) return 0.0;

  const double log_sigma = std::log(sigma);
  double log_sup = -std::numeric_limits<double>::infinity();
  int small_run = 0;
  for (int j = 0; j <= j_max; ++j) {
    const double log_norm = 0.5 * spec.log_deriv_norm_sq(j, 2.0 * m);
    const double log_term =
        j * log_sigma + 2.0 * std::log(j + 1.0) - std::lgamma(j + 1.0) + log_norm;
    log_sup = std::max(log_sup, log_term);
    if (log_term < log_sup + std::log(kSeriesTailTol)) {
      if (++small_run == 3) return std::exp(log_sup);
    } else {
      small_run = 0;
    }
  }
  throw TruncationError("hm_norm: terms have not decayed by j_max = " + std::to_string(j_max));
}

inline double hm_norm(const RealField& u, double sigma, int m, int j_max = kDefaultJMax) {
  return hm_norm(dft(u), sigma, m, j_max);
}

/// Kato-Masuda functional
///   Phi_{sigma,m}(u) = 1/2 sum_{j=0}^{m} e^{2 sigma j} / (j!)^2 ||d^j u||^2_{H^2}.
inline double km_phi(const SpectralField& U, double sigma, int m) {
  if (m < 0) throw DomainError("km_phi: m must be >= 0");
  const detail::LogSpectrum spec(U);
  if (spec.empty()) return 0.0;
  double log_sum = -std::numeric_limits<double>::infinity();
  for (int j = 0; j <= m; ++j) {
    const double t = 2.0 * sigma * j - 2.0 * std::lgamma(j + 1.0) + spec.log_deriv_norm_sq(j, 2.0);
    log_sum = detail::log_add(log_sum, t);
  }
  const double v = 0.5 * std::exp(log_sum);
  if (!std::isfinite(v)) throw NumericalError("km_phi: overflow");
  return v;
}

inline double km_phi(const RealField& u, double sigma, int m) { return km_phi(dft(u), sigma, m); }

/// lim_{m -> inf} Phi_{sigma,m}(u), summed until three consecutive terms fall
/// below kSeriesTailTol of the running sum. Throws TruncationError when the
/// tail has not converged by j_max (u not in A(e^sigma) at this resolution).
inline double km_phi_limit(const SpectralField& U, double sigma, int j_max = kDefaultJMax) {
  const detail::LogSpectrum spec(U);
  if (spec.empty()) return 0.0;
  double log_sum = -std::numeric_limits<double>::infinity();
  int small_run = 0;
  for (int j = 0; j <= j_max; ++j) {
    const double t = 2.0 * sigma * j - 2.0 * std::lgamma(j + 1.0) + spec.log_deriv_norm_sq(j, 2.0);
    log_sum = detail::log_add(log_sum, t);
    if (t < log_sum + std::log(kSeriesTailTol)) {
      if (++small_run == 3) return 0.5 * std::exp(log_sum);
    } else {
      small_run = 0;
    }
  }
  throw TruncationError("km_phi_limit: series has not converged by j_max = " +
                        std::to_string(j_max));
}

inline double km_phi_limit(const RealField& u, double sigma, int j_max = kDefaultJMax) {
  return km_phi_limit(dft(u), sigma, j_max);
}

/// ||u||_{sigma,2} = lim_m ||u||_{sigma,2,m} = sqrt(2 Phi_{sigma,inf}).
inline double km_radius_norm(const RealField& u, double sigma, int j_max = kDefaultJMax) {
  return std::sqrt(2.0 * km_phi_limit(u, sigma, j_max));
}

}  // namespace bgev

#endif  // BGEV_NORMS_HPP
