#ifndef BGEV_DYNAMICS_HPP
#define BGEV_DYNAMICS_HPP

// Right-hand side of the b-family equation
//
//   u_t = F(u) = -u u_x - d_x Lambda^{-2} ( (b/2) u^2 + ((3-b)/2) u_x^2 ),
//
// the momentum m = u - u_xx, and the functionals monitored along a run.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "bgev/errors.hpp"
#include "bgev/grid_spectral.hpp"

namespace bgev {

struct BParam {
  double value = 0.0;
  explicit BParam(double b) : value(b) {
    if (!std::isfinite(b)) throw ConfigError("b must be finite");
  }
};

/// m = u - u_xx on the same grid as its source field.
struct MomentumField : RealField {
  using RealField::RealField;
  explicit MomentumField(RealField f) : RealField(std::move(f)) {}
};

/// Pointwise sums of quadratic products accumulated in physical space:
///   advect      = sum v_i * d_x w_j
///   square      = sum v_i * w_j
///   grad_square = sum d_x v_i * d_x w_j
/// rhs_F(u) uses a single (u, u) pair; the time-Taylor recursion uses the
/// Cauchy products sum_{i+j=k}.
struct QuadraticSums {
  RealField advect;
  RealField square;
  RealField grad_square;

  explicit QuadraticSums(const GridSpec& g) : advect(g), square(g), grad_square(g) {}

  void accumulate(const RealField& v, const RealField& v_x, const RealField& w,
                  const RealField& w_x) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      advect[j] += v[j] * w_x[j];
      square[j] += v[j] * w[j];
      grad_square[j] += v_x[j] * w_x[j];
    }
  }
};

/// Band-limited physical values of a field and its first derivative, as used
/// inside the dealiased products.
struct DealiasedPair {
  RealField value;
  RealField dx;
};

inline DealiasedPair dealiased_pair(const SpectralField& F) {
  SpectralField p = dealias(F);
  return {idft(p), idft(deriv(p, 1))};
}

/// -advect - d_x Lambda^{-2}((b/2) square + ((3-b)/2) grad_square), with the
/// product spectra truncated by the dealiasing rule.
inline RealField combine_quadratic(const QuadraticSums& s, BParam b) {
  const GridSpec& g = s.advect.grid;
  RealField pressure_source(g);
  const double cb = 0.5 * b.value;
  const double cg = 0.5 * (3.0 - b.value);
  for (std::size_t j = 0; j < g.n_points; ++j) {
    pressure_source[j] = cb * s.square[j] + cg * s.grad_square[j];
  }
  SpectralField adv = dft(s.advect);
  SpectralField src = dft(pressure_source);
  SpectralField out(g);
  const std::size_t n = g.n_points;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = g.xi(mode_of(i, n));
    const Complex nonlocal = Complex(0.0, xi / (1.0 + xi * xi)) * src.coeffs[i];
    out.coeffs[i] = -adv.coeffs[i] - nonlocal;
  }
  out.coeff(-g.half()) = Complex{};
  RealField r = idft(dealias(std::move(out)));
  if (!r.all_finite()) throw NumericalError("rhs_F: non-finite value (numerical blow-up)");
  return r;
}

inline RealField rhs_F(const RealField& u, BParam b) {
  if (!u.all_finite()) throw NumericalError("rhs_F: non-finite input (numerical blow-up)");
  const DealiasedPair p = dealiased_pair(dft(u));
  QuadraticSums sums(u.grid);
  sums.accumulate(p.value, p.dx, p.value, p.dx);
  return combine_quadratic(sums, b);
}

inline MomentumField momentum(const RealField& u) {
  return MomentumField(idft(helmholtz(dft(u))));
}

inline RealField inverse_momentum(const MomentumField& m) {
  return idft(helmholtz_inv(dft(m)));
}

/// int_0^L u dx, exact for the trigonometric interpolant.
inline double conserved_mean(const RealField& u) {
  return u.grid.box_length * dft(u).coeff(0).real();
}

/// int (u^2 + u_x^2) dx = L sum (1 + xi_k^2) |uhat_k|^2.
inline double h1_energy(const RealField& u) {
  const SpectralField U = dft(u);
  const std::size_t n = u.grid.n_points;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = u.grid.xi(mode_of(i, n));
    acc += (1.0 + xi * xi) * std::norm(U.coeffs[i]);
  }
  return u.grid.box_length * acc;
}

/// Periodic trapezoid rule for int |m| dx.
inline double momentum_l1(const RealField& u) {
  const MomentumField m = momentum(u);
  double acc = 0.0;
  for (double v : m.samples) acc += std::abs(v);
  return acc * u.grid.dx();
}

/// Grid minimum of m. Sub-grid sign changes are not detectable.
inline double momentum_min(const RealField& u) {
  const MomentumField m = momentum(u);
  return *std::min_element(m.samples.begin(), m.samples.end());
}

inline double momentum_max(const RealField& u) {
  const MomentumField m = momentum(u);
  return *std::max_element(m.samples.begin(), m.samples.end());
}

/// Tolerance for treating a grid momentum as sign-definite.
inline constexpr double kSignTolerance = 1e-10;

/// True when m >= -tol or m <= tol on every node.
inline bool momentum_sign_definite(const RealField& u, double tol = kSignTolerance) {
  const MomentumField m = momentum(u);
  const auto [lo, hi] = std::minmax_element(m.samples.begin(), m.samples.end());
  return *lo >= -tol || *hi <= tol;
}

}  // namespace bgev

#endif  // BGEV_DYNAMICS_HPP
