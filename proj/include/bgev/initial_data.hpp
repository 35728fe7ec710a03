#ifndef BGEV_INITIAL_DATA_HPP
#define BGEV_INITIAL_DATA_HPP

#include <cmath>
#include <numbers>

#include "bgev/config.hpp"
#include "bgev/dynamics.hpp"
#include "bgev/errors.hpp"
#include "bgev/grid_spectral.hpp"

namespace bgev {

namespace detail {

// f(x - c) summed over the box and its two neighbouring images, so that a
// profile decaying away from c is periodic to machine precision once
// L >= 40 * width.
template <class Profile>
RealField periodized(const GridSpec& grid, double center, Profile&& profile) {
  const double L = grid.box_length;
  return sample(grid, [&](double x) {
    return profile(x - center - L) + profile(x - center) + profile(x - center + L);
  });
}

}  // namespace detail

/// Builds u0 for the requested family:
///   gaussian       a exp(-(x - c)^2 / w^2)
///   sech           a sech((x - c) / w)
///   sine           a sin(2 pi q x / L)
///   momentum_bump  Lambda^{-2} m0 with m0 = a exp(-(x - c)^2 / w^2) >= 0
inline RealField initial_data(const InitSpec& spec, const GridSpec& grid) {
  const double a = spec.amplitude;
  const double w = spec.width;
  const double c = spec.center.value_or(0.5 * grid.box_length);
  if (spec.family == "gaussian") {
    return detail::periodized(grid, c, [&](double y) { return a * std::exp(-(y * y) / (w * w)); });
  }
  if (spec.family == "sech") {
    return detail::periodized(grid, c, [&](double y) { return a / std::cosh(y / w); });
  }
  if (spec.family == "sine") {
    const double q = spec.wavenumber;
    return sample(grid, [&](double x) {
      return a * std::sin(2.0 * std::numbers::pi * q * x / grid.box_length);
    });
  }
  if (spec.family == "momentum_bump") {
    MomentumField m0(
        detail::periodized(grid, c, [&](double y) { return a * std::exp(-(y * y) / (w * w)); }));
    return inverse_momentum(m0);
  }
  throw ConfigError("initial_data: unknown family '" + spec.family + "'");
}

}  // namespace bgev

#endif  // BGEV_INITIAL_DATA_HPP
