#ifndef BGEV_TAYLOR_HPP
#define BGEV_TAYLOR_HPP

// Time-Taylor expansion u(t, x) = sum_k c_k(x) t^k of the analytic local
// solution. Substituting the series into u_t = F(u) and matching powers of t:
//
//   (k+1) c_{k+1} = -[ sum_{i+j=k} c_i d_x c_j
//                      + d_x Lambda^{-2}( (b/2) sum c_i c_j + ((3-b)/2) sum d_x c_i d_x c_j ) ]
//
// The Cauchy products reuse the dealiased quadratic kernel of rhs_F, so
// c_1 = rhs_F(c_0, b) holds bit for bit.

#include <cmath>
#include <cstddef>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "bgev/dynamics.hpp"
#include "bgev/errors.hpp"
#include "bgev/grid_spectral.hpp"

namespace bgev {

inline constexpr int kDefaultTaylorOrder = 16;
/// Coefficients whose sup norm exceeds this end the series.
inline constexpr double kTaylorGrowthHorizon = 1e12;

struct TaylorSeries {
  GridSpec grid;
  BParam b{0.0};
  std::vector<RealField> coeffs;  // c_0 .. c_K
  /// Set when the recursion stopped before the requested order.
  bool truncated = false;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

inline double l2_norm(const RealField& f) {
  double acc = 0.0;
  for (double v : f.samples) acc += v * v;
  return std::sqrt(acc * f.grid.dx());
}

inline TaylorSeries taylor_coeffs(const RealField& u0, BParam b, int order) {
  if (order < 1) throw ConfigError("taylor_coeffs: order must be >= 1");
  if (!u0.all_finite()) throw NumericalError("taylor_coeffs: non-finite initial datum");

  TaylorSeries series{u0.grid, b, {u0}, false};
  std::vector<DealiasedPair> pairs;
  pairs.reserve(static_cast<std::size_t>(order) + 1);
  pairs.push_back(dealiased_pair(dft(u0)));

  for (int k = 0; k < order; ++k) {
    QuadraticSums sums(u0.grid);
    for (int i = 0; i <= k; ++i) {
      const auto& ci = pairs[static_cast<std::size_t>(i)];
      const auto& cj = pairs[static_cast<std::size_t>(k - i)];
      sums.accumulate(ci.value, ci.dx, cj.value, cj.dx);
    }
    RealField next = combine_quadratic(sums, b);
    next *= 1.0 / static_cast<double>(k + 1);
    if (!next.all_finite()) {
      throw NumericalError("taylor_coeffs: non-finite coefficient c_" + std::to_string(k + 1));
    }
    if (sup_norm(next) > kTaylorGrowthHorizon) {
      std::cerr << "warning: taylor_coeffs: c_" << (k + 1)
                << " exceeds the double-precision growth horizon; series truncated at order " << k
                << "\n";
      series.truncated = true;
      break;
    }
    pairs.push_back(dealiased_pair(dft(next)));
    series.coeffs.push_back(std::move(next));
  }
  return series;
}

/// Horner evaluation of sum_k c_k t^k. Negative t evaluates the backward
/// (reflected) branch.
inline RealField taylor_eval(const TaylorSeries& series, double t) {
  RealField acc = series.coeffs.back();
  for (int k = series.order() - 1; k >= 0; --k) {
    acc *= t;
    acc += series.coeffs[static_cast<std::size_t>(k)];
  }
  return acc;
}

/// Root-test estimate 1 / max_{k in tail} (||c_k|| / ||c_0||)^{1/k} in L2 over
/// the last half of the coefficients. Dividing by ||c_0|| removes the
/// ||c_0||^{1/k} bias and makes the estimate scale as 1/alpha under u0 -> alpha u0.
/// Returns +infinity when every tail coefficient is below 1e-12 ||c_0||, i.e.
/// the series is numerically a polynomial.
inline double time_radius_estimate(const TaylorSeries& series) {
  const int K = series.order();
  if (K < 6) throw ConfigError("time_radius_estimate: need at least 6 coefficients beyond c_0");
  const double c0 = l2_norm(series.coeffs.front());
  const double vanish = 1e-12 * std::max(c0, std::numeric_limits<double>::min());
  double root_max = 0.0;
  bool any = false;
  for (int k = (K + 1) / 2; k <= K; ++k) {
    if (k == 0) continue;
    const double nk = l2_norm(series.coeffs[static_cast<std::size_t>(k)]);
    if (nk <= vanish) continue;
    any = true;
    root_max = std::max(root_max, std::pow(nk / c0, 1.0 / k));
  }
  if (!any) return std::numeric_limits<double>::infinity();
  return 1.0 / root_max;
}

}  // namespace bgev

#endif  // BGEV_TAYLOR_HPP
