#ifndef BGEV_EVOLVE_HPP
#define BGEV_EVOLVE_HPP

// Explicit RK4 time marching with an advective CFL step, exact-time sampling
// of named monitors, and blow-up detection.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "bgev/dynamics.hpp"
#include "bgev/errors.hpp"
#include "bgev/grid_spectral.hpp"

namespace bgev {

struct EvolveConfig {
  BParam b{0.0};
  double t_final = 1.0;
  double cfl_safety = 0.2;
  double dt_max = 0.01;
  double sample_interval = 0.1;
  double blowup_threshold = 1e6;
  /// Reject initial data whose momentum changes sign on the grid.
  bool require_sign_certificate = false;
  /// Keep the field at every sample time, not just the first and last.
  bool keep_all_snapshots = true;
};

inline void validate(const EvolveConfig& cfg) {
  if (!(cfg.t_final >= 0.0) || !std::isfinite(cfg.t_final)) {
    throw ConfigError("evolve: t_final must be a non-negative finite number");
  }
  if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0)) {
    throw ConfigError("evolve: cfl_safety must lie in (0, 1]");
  }
  if (!(cfg.dt_max > 0.0)) throw ConfigError("evolve: dt_max must be positive");
  if (!(cfg.sample_interval > 0.0)) throw ConfigError("evolve: sample_interval must be positive");
  if (!(cfg.blowup_threshold > 0.0)) throw ConfigError("evolve: blowup_threshold must be positive");
}

struct Monitor {
  std::string name;
  std::function<double(const RealField&)> fn;
};

struct TimedField {
  double t = 0.0;
  RealField u;
};

struct MonitorSample {
  double t = 0.0;
  double dt_used = 0.0;  // size of the step that landed on t (0 at t = 0)
  std::vector<double> values;
};

struct Trajectory {
  std::vector<std::string> monitor_names;
  std::vector<TimedField> snapshots;
  std::vector<MonitorSample> samples;
  bool completed = true;
  double abort_time = std::numeric_limits<double>::quiet_NaN();
  std::string abort_reason;

  const RealField& initial() const { return snapshots.front().u; }
  const RealField& final_state() const { return snapshots.back().u; }

  /// Column of one monitor across all samples.
  std::vector<double> series(const std::string& name) const {
    const auto it = std::find(monitor_names.begin(), monitor_names.end(), name);
    if (it == monitor_names.end()) throw ConfigError("trajectory: no monitor named '" + name + "'");
    const auto col = static_cast<std::size_t>(it - monitor_names.begin());
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.values[col]);
    return out;
  }
};

inline double cfl_dt(const RealField& u, const EvolveConfig& cfg) {
  const double vmax = std::max(sup_norm(u), 1e-8);
  return std::min(cfg.dt_max, cfg.cfl_safety * u.grid.dx() / vmax);
}

/// Classical four-stage Runge-Kutta step of u_t = rhs_F(u). Throws BlowupError
/// when the result is non-finite or its sup norm exceeds the threshold.
inline RealField rk4_step(const RealField& u, double dt, BParam b,
                          double blowup_threshold = 1e6) {
  if (!(dt > 0.0)) throw ConfigError("rk4_step: dt must be positive");
  const auto nan = std::numeric_limits<double>::quiet_NaN();
  try {
    const RealField k1 = rhs_F(u, b);
    const RealField k2 = rhs_F(u + (0.5 * dt) * k1, b);
    const RealField k3 = rhs_F(u + (0.5 * dt) * k2, b);
    const RealField k4 = rhs_F(u + dt * k3, b);
    RealField next = u;
    const double w = dt / 6.0;
    for (std::size_t j = 0; j < next.size(); ++j) {
      next[j] += w * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    if (!next.all_finite()) throw BlowupError("rk4_step: non-finite state", nan);
    if (sup_norm(next) > blowup_threshold) {
      throw BlowupError("rk4_step: sup norm exceeded blow-up threshold", nan);
    }
    return next;
  } catch (const BlowupError&) {
    throw;
  } catch (const NumericalError& e) {
    throw BlowupError(e.what(), nan);
  }
}

/// Marches u0 to cfg.t_final. Monitors are evaluated at t = 0, at every
/// multiple of sample_interval and at t_final; steps are clipped to land on
/// those times exactly. A blow-up stops the run and returns the partial
/// trajectory with completed = false.
inline Trajectory run(const RealField& u0, const EvolveConfig& cfg,
                      const std::vector<Monitor>& monitors) {
  validate(cfg);
  if (!u0.all_finite()) throw NumericalError("run: non-finite initial datum");
  const bool sign_ok = momentum_sign_definite(u0);
  if (cfg.require_sign_certificate && !sign_ok) {
    throw ConfigError("run: initial momentum m0 = u0 - u0'' changes sign on the grid");
  }

  Trajectory traj;
  for (const auto& m : monitors) traj.monitor_names.push_back(m.name);

  auto record = [&](double t, double dt_used, const RealField& u, bool keep) {
    MonitorSample s{t, dt_used, {}};
    s.values.reserve(monitors.size());
    for (const auto& m : monitors) s.values.push_back(m.fn(u));
    traj.samples.push_back(std::move(s));
    if (keep) traj.snapshots.push_back({t, u});
  };

  RealField u = u0;
  double t = 0.0;
  record(t, 0.0, u, true);
  if (cfg.t_final == 0.0) return traj;

  long sample_index = 1;
  auto next_sample = [&] {
    return std::min(static_cast<double>(sample_index) * cfg.sample_interval, cfg.t_final);
  };
  double target = next_sample();
  while (t < cfg.t_final) {
    double dt = cfl_dt(u, cfg);
    bool land = false;
    if (t + dt >= target - 1e-12 * std::max(1.0, target)) {
      dt = target - t;
      land = true;
    }
    try {
      u = rk4_step(u, dt, cfg.b, cfg.blowup_threshold);
    } catch (const BlowupError& e) {
      traj.completed = false;
      traj.abort_time = t;
      traj.abort_reason = std::string(e.what()) +
                          (sign_ok ? " (initial momentum was sign-definite: numerical failure)"
                                   : " (initial momentum changes sign: hypothesis violated)");
      if (traj.snapshots.back().t < t) traj.snapshots.push_back({t, u});
      return traj;
    }
    if (land) {
      t = target;
      const bool last = t >= cfg.t_final;
      record(t, dt, u, cfg.keep_all_snapshots || last);
      ++sample_index;
      target = next_sample();
    } else {
      t += dt;
    }
  }
  return traj;
}

}  // namespace bgev

#endif  // BGEV_EVOLVE_HPP
