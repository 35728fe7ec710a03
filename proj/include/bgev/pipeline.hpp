#ifndef BGEV_PIPELINE_HPP
#define BGEV_PIPELINE_HPP

// Full run: initial datum -> evolution -> per-sample diagnostics and decay fit
// -> Kato-Masuda bound -> output directory.

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bgev/analyticity.hpp"
#include "bgev/config.hpp"
#include "bgev/dynamics.hpp"
#include "bgev/errors.hpp"
#include "bgev/evolve.hpp"
#include "bgev/initial_data.hpp"
#include "bgev/io.hpp"
#include "bgev/norms.hpp"

namespace bgev {

/// Fit that reports NaN instead of throwing when the band is too short
/// (e.g. a single-harmonic datum).
inline std::optional<RadiusFit> try_fit(const RealField& u, long k_min) {
  try {
    return fit_decay_radius(u, k_min);
  } catch (const InsufficientBandError&) {
    return std::nullopt;
  }
}

inline std::vector<Monitor> standard_monitors(long fit_k_min) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {
      {"l2", [](const RealField& u) { return sobolev_norm(u, 0.0); }},
      {"h1", [](const RealField& u) { return sobolev_norm(u, 1.0); }},
      {"h2", [](const RealField& u) { return sobolev_norm(u, 2.0); }},
      {"mean_u", [](const RealField& u) { return conserved_mean(u); }},
      {"m_l1", [](const RealField& u) { return momentum_l1(u); }},
      {"m_min", [](const RealField& u) { return momentum_min(u); }},
      {"sigma_hat",
       [=](const RealField& u) {
         const auto f = try_fit(u, fit_k_min);
         return f ? f->sigma_hat : nan;
       }},
      {"fit_quality",
       [=](const RealField& u) {
         const auto f = try_fit(u, fit_k_min);
         return f ? f->fit_quality : nan;
       }},
  };
}

struct GevreyEntry {
  double t = 0.0;
  std::vector<GevreyNorm> norms;  // one per diagnostics.sigma_list entry
};

struct RunReport {
  Trajectory trajectory;
  std::vector<DiagnosticsRow> rows;
  std::vector<GevreyEntry> gevrey;
  KMBound bound;
  int exit_code = 0;
};

inline RunReport run_pipeline(const RunConfig& cfg) {
  validate(cfg);
  const RealField u0 = initial_data(cfg.init, cfg.grid);
  RunReport rep;
  rep.trajectory = run(u0, cfg.evolve, standard_monitors(cfg.diagnostics.fit_k_min));
  const Trajectory& traj = rep.trajectory;

  const double sigma_hat0 = traj.samples.front().values[6];
  const double gamma = cfg.diagnostics.gamma_override.value_or(default_gamma(sigma_hat0));
  rep.bound = km_bound_from_run(traj, cfg.evolve.b, gamma, cfg.diagnostics.km_trunc);

  for (const auto& s : traj.samples) {
    const auto& v = s.values;
    rep.rows.push_back({s.t, v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7],
                        km_bound_sigma(s.t, rep.bound), s.dt_used});
  }
  if (cfg.diagnostics.gevrey) {
    for (const auto& snap : traj.snapshots) {
      GevreyEntry e{snap.t, {}};
      const SpectralField U = dft(snap.u);
      for (double sg : cfg.diagnostics.sigma_list) {
        e.norms.push_back(gevrey_norm(U, sg, cfg.diagnostics.s));
      }
      rep.gevrey.push_back(std::move(e));
    }
  }
  rep.exit_code = traj.completed ? 0 : 2;
  return rep;
}

inline std::string gevrey_csv(const RunConfig& cfg, const std::vector<GevreyEntry>& entries) {
  std::string out = "t";
  for (double sg : cfg.diagnostics.sigma_list) {
    out += ",G_sigma=" + format_double(sg) + ",diverged_sigma=" + format_double(sg);
  }
  out += "\n";
  for (const auto& e : entries) {
    out += format_double(e.t);
    for (const auto& g : e.norms) out += "," + format_double(g.value) + "," + (g.diverged ? "1" : "0");
    out += "\n";
  }
  return out;
}

namespace detail {
inline std::string wall_time_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}
}  // namespace detail

/// Runs the pipeline and writes config.ini, diagnostics.csv (+ .dat
/// companions), gevrey.csv, initial.bgev, final.bgev and manifest.txt into
/// cfg.output_dir. Returns the CLI exit code (0 or 2).
inline int run_and_write(const RunConfig& cfg, std::ostream& log = std::cerr) {
  namespace fs = std::filesystem;
  const std::string started = detail::wall_time_now();
  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  detail::write_file(dir / "config.ini", to_config_text(cfg));

  const RunReport rep = run_pipeline(cfg);
  const Trajectory& traj = rep.trajectory;
  emit_diagnostics(rep.rows, dir / "diagnostics.csv");
  if (cfg.diagnostics.gevrey) detail::write_file(dir / "gevrey.csv", gevrey_csv(cfg, rep.gevrey));
  write_snapshot(dir / "initial.bgev", Snapshot::of(traj.initial(), 0.0, cfg.evolve.b.value));
  write_snapshot(dir / "final.bgev",
                 Snapshot::of(traj.final_state(), traj.snapshots.back().t, cfg.evolve.b.value));

  std::string manifest;
  manifest += "start_time = " + started + "\n";
  manifest += "end_time = " + detail::wall_time_now() + "\n";
  manifest += "exit_status = " + std::to_string(rep.exit_code) + "\n";
  manifest += "completed = " + std::string(traj.completed ? "true" : "false") + "\n";
  if (!traj.completed) {
    manifest += "abort_time = " + format_double(traj.abort_time) + "\n";
    manifest += "abort_reason = " + traj.abort_reason + "\n";
    log << "error: blow-up at t = " << traj.abort_time << ": " << traj.abort_reason << "\n";
  }
  manifest += "samples = " + std::to_string(rep.rows.size()) + "\n";
  manifest += "km_mu = " + format_double(rep.bound.mu) + "\n";
  manifest += "km_gamma = " + format_double(rep.bound.gamma) + "\n";
  manifest += "km_lambda = " + format_double(rep.bound.lambda) + "\n";
  manifest += "km_phi0 = " + format_double(rep.bound.phi0) + "\n";
  detail::write_file(dir / "manifest.txt", manifest);
  return rep.exit_code;
}

}  // namespace bgev

#endif  // BGEV_PIPELINE_HPP
