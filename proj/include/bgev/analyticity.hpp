#ifndef BGEV_ANALYTICITY_HPP
#define BGEV_ANALYTICITY_HPP

// Spatial analyticity radius: an empirical estimate from Fourier decay, and
// the Kato-Masuda lower bound
//
//   sigma(t) = gamma - lambda (e^{A(mu) t / 2} - 1),   r(t) = e^{sigma(t)},
//
// with A(p) = (32 + 16|b| + 64|3-b|) p and
//      B(p, q) = (64 + 32|b| + 256|3-b|) (1 + p) q^{1/2}.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bgev/dynamics.hpp"
#include "bgev/errors.hpp"
#include "bgev/evolve.hpp"
#include "bgev/grid_spectral.hpp"
#include "bgev/norms.hpp"

namespace bgev {

struct RadiusFit {
  double sigma_hat = 0.0;    // fitted exponential decay rate of |uhat(xi)|
  double fit_quality = 0.0;  // R^2 of the log-linear fit
  long k_min = 0;
  long k_max = 0;
  std::size_t n_modes = 0;
  bool floor_hit = false;          // some mode in [k_min, N/2) sits below the floor
  bool super_exponential = false;  // decay rate grows markedly along the band
};

inline constexpr long kDefaultFitKMin = 4;
inline constexpr std::size_t kMinFitModes = 8;

/// Least-squares fit of log|uhat_k| = a - sigma |xi_k| over modes
/// k_min <= k < N/2 whose magnitude exceeds floor_rel * max|uhat|.
/// The magnitude at k is the RMS of the +k and -k coefficients.
inline RadiusFit fit_decay_radius(const SpectralField& F, long k_min = kDefaultFitKMin,
                                  double floor_rel = kRoundoffFloor) {
  if (k_min < 1) throw ConfigError("fit_decay_radius: k_min must be >= 1");
  const double floor = floor_rel * F.max_abs();
  std::vector<double> xs, ys;
  std::vector<long> ks;
  RadiusFit fit;
  for (long k = k_min; k < F.grid.half(); ++k) {
    const double mag = std::sqrt(0.5 * (std::norm(F.coeff(k)) + std::norm(F.coeff(-k))));
    if (!(mag > floor) || mag == 0.0) {
      fit.floor_hit = true;
      continue;
    }
    ks.push_back(k);
    xs.push_back(std::abs(F.grid.xi(k)));
    ys.push_back(std::log(mag));
  }
  if (xs.size() < kMinFitModes) {
    throw InsufficientBandError("fit_decay_radius: only " + std::to_string(xs.size()) +
                                " usable modes above the floor (need " +
                                std::to_string(kMinFitModes) + ")");
  }

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    ss_res += r * r;
  }

  fit.sigma_hat = std::max(0.0, -slope);
  fit.fit_quality = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.k_min = ks.front();
  fit.k_max = ks.back();
  fit.n_modes = xs.size();

  if (xs.size() >= 2 * kMinFitModes) {
    const std::size_t mid = xs.size() / 2;
    const std::vector<double> hx(xs.begin(), xs.begin() + static_cast<long>(mid));
    const std::vector<double> hy(ys.begin(), ys.begin() + static_cast<long>(mid));
    const std::vector<double> tx(xs.begin() + static_cast<long>(mid), xs.end());
    const std::vector<double> ty(ys.begin() + static_cast<long>(mid), ys.end());
    const double head_rate = -detail::slope(hx, hy);
    const double tail_rate = -detail::slope(tx, ty);
    fit.super_exponential = head_rate > 0.0 && tail_rate > 1.5 * head_rate;
  }
  return fit;
}

inline RadiusFit fit_decay_radius(const RealField& u, long k_min = kDefaultFitKMin,
                                  double floor_rel = kRoundoffFloor) {
  return fit_decay_radius(dft(u), k_min, floor_rel);
}

// ---------------------------------------------------------------------------
// Kato-Masuda bound

struct KMConstants {
  double A = 0.0;
  double B = 0.0;
};

inline KMConstants km_constants(BParam b, double p, double q) {
  if (!(p >= 0.0) || !(q >= 0.0)) throw DomainError("km_constants: p and q must be >= 0");
  const double ab = std::abs(b.value);
  const double a3 = std::abs(3.0 - b.value);
  return {(32.0 + 16.0 * ab + 64.0 * a3) * p, (64.0 + 32.0 * ab + 256.0 * a3) * (1.0 + p) * std::sqrt(q)};
}

/// lambda = 2 B(mu, Phi0) / A(mu), from integrating dPhi/dt = A(mu) Phi,
/// dsigma/dt = -B(mu, Phi) in closed form.
inline double km_lambda(BParam b, double mu, double phi0) {
  if (!(mu > 0.0)) throw DomainError("km_lambda: mu must be > 0");
  if (!(phi0 >= 0.0)) throw DomainError("km_lambda: phi0 must be >= 0");
  const double A = km_constants(b, mu, 0.0).A;
  const double B = km_constants(b, mu, phi0).B;
  return 2.0 * B / A;
}

struct KMBound {
  BParam b{0.0};
  double mu = 1.0;
  double K_rate = 0.0;  // A(mu)
  double gamma = -0.05;
  double lambda = 0.0;
  double phi0 = 0.0;
};

inline KMBound make_km_bound(BParam b, double mu, double gamma, double phi0) {
  if (!(gamma < 0.0)) throw DomainError("KM bound: gamma must be < 0");
  KMBound k{b, mu, km_constants(b, mu, 0.0).A, gamma, km_lambda(b, mu, phi0), phi0};
  return k;
}

inline double km_bound_sigma(double t, const KMBound& bound) {
  if (!(t >= 0.0)) throw DomainError("km_bound_sigma: t must be >= 0");
  return bound.gamma - bound.lambda * std::expm1(0.5 * bound.K_rate * t);
}

inline double km_bound_radius(double t, const KMBound& bound) {
  return std::exp(km_bound_sigma(t, bound));
}

/// gamma = min(-0.05, log(0.9 min(1, sigma_hat(0)))). A non-finite or
/// non-positive measured rate falls back to min(1, .) = 1.
inline double default_gamma(double sigma_hat0) {
  const double s = (std::isfinite(sigma_hat0) && sigma_hat0 > 0.0) ? std::min(1.0, sigma_hat0) : 1.0;
  return std::min(-0.05, std::log(0.9 * s));
}

inline constexpr int kDefaultKMTrunc = 32;

/// mu = 1 + max_t ||u(t)||_{H^2} over the sampled trajectory (the "h2" monitor
/// when present, otherwise the stored snapshots); Phi0 = Phi_{gamma, m_trunc}(u(0)).
inline KMBound km_bound_from_run(const Trajectory& traj, BParam b, double gamma,
                                 int m_trunc = kDefaultKMTrunc) {
  if (traj.snapshots.empty()) throw ConfigError("km_bound_from_run: empty trajectory");
  double h2_max = 0.0;
  const auto it = std::find(traj.monitor_names.begin(), traj.monitor_names.end(), "h2");
  if (it != traj.monitor_names.end()) {
    for (double v : traj.series("h2")) h2_max = std::max(h2_max, v);
  }
  for (const auto& snap : traj.snapshots) h2_max = std::max(h2_max, sobolev_norm(snap.u, 2.0));
  const double phi0 = km_phi(traj.initial(), gamma, m_trunc);
  return make_km_bound(b, 1.0 + h2_max, gamma, phi0);
}

}  // namespace bgev

#endif  // BGEV_ANALYTICITY_HPP
