// bgev: command-line front end of the b-family analyticity laboratory.
//
//   bgev run    --config <file>
//   bgev norms  --snapshot <file> --sigma <v> --s <v> [--m <int>] [--j-max <int>]
//   bgev radius --snapshot <file> [--k-min <int>]
//   bgev taylor --config <file> [--order <K>]
//   bgev bound  --config <file>
//
// Exit codes: 0 success, 1 configuration, 2 numerical blow-up / failure, 3 io.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "bgev/bgev.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

bgev::RunConfig load_config(const std::string& path) {
  return bgev::parse_config(bgev::detail::read_file(path));
}

int cmd_run(const std::string& config_path) {
  const bgev::RunConfig cfg = load_config(config_path);
  const int code = bgev::run_and_write(cfg);
  std::printf("run finished (exit %d); outputs in %s\n", code, cfg.output_dir.c_str());
  return code;
}

int cmd_norms(const std::string& snapshot_path, double sigma, double s, int m, int j_max) {
  const bgev::Snapshot snap = bgev::read_snapshot(snapshot_path);
  const bgev::RealField u = snap.field();
  const bgev::SpectralField U = bgev::dft(u);
  std::printf("snapshot: N = %llu, L = %.17g, t = %.17g, b = %.17g\n",
              static_cast<unsigned long long>(snap.n_points), snap.box_length, snap.t, snap.b);
  std::printf("sobolev_norm(s=%g)        = %.17g\n", s, bgev::sobolev_norm(U, s));
  const bgev::GevreyNorm g = bgev::gevrey_norm(U, sigma, s);
  std::printf("gevrey_norm(sigma=%g, s=%g) = %.17g%s\n", sigma, s, g.value,
              g.diverged ? "  [DIVERGED: sigma beyond resolvable decay rate]" : "");
  if (sigma > 0.0) {
    try {
      std::printf("hm_norm(sigma=%g, m=%d)     = %.17g\n", sigma, m, bgev::hm_norm(U, sigma, m, j_max));
    } catch (const bgev::TruncationError& e) {
      std::printf("hm_norm(sigma=%g, m=%d)     = not converged (%s)\n", sigma, m, e.what());
    }
  }
  std::printf("km_phi(sigma=%g, m=%d)      = %.17g\n", sigma, m, bgev::km_phi(U, sigma, m));
  try {
    std::printf("km_phi(sigma=%g, m=inf)     = %.17g\n", sigma, bgev::km_phi_limit(U, sigma, j_max));
  } catch (const bgev::TruncationError& e) {
    std::printf("km_phi(sigma=%g, m=inf)     = not converged (%s)\n", sigma, e.what());
  }
  std::printf("h1_energy                  = %.17g\n", bgev::h1_energy(u));
  std::printf("mean (int u dx)            = %.17g\n", bgev::conserved_mean(u));
  std::printf("momentum_l1                = %.17g\n", bgev::momentum_l1(u));
  std::printf("momentum_min               = %.17g\n", bgev::momentum_min(u));
  return kExitOk;
}

int cmd_radius(const std::string& snapshot_path, long k_min) {
  const bgev::Snapshot snap = bgev::read_snapshot(snapshot_path);
  const bgev::RadiusFit fit = bgev::fit_decay_radius(snap.field(), k_min);
  std::printf("sigma_hat = %.12f\n", fit.sigma_hat);
  std::printf("fit_quality = %.12f\n", fit.fit_quality);
  std::printf("band = [%ld, %ld] (%zu modes)\n", fit.k_min, fit.k_max, fit.n_modes);
  std::printf("floor_hit = %s\n", fit.floor_hit ? "true" : "false");
  if (fit.super_exponential) {
    std::printf(
        "warning: spectrum decays faster than exponentially; sigma_hat is a band-dependent "
        "lower estimate, not a finite analyticity radius\n");
  }
  return kExitOk;
}

int cmd_taylor(const std::string& config_path, int order) {
  const bgev::RunConfig cfg = load_config(config_path);
  const bgev::RealField u0 = bgev::initial_data(cfg.init, cfg.grid);
  const bgev::TaylorSeries series = bgev::taylor_coeffs(u0, cfg.evolve.b, order);
  std::printf("%4s  %24s\n", "k", "||c_k||_L2");
  for (int k = 0; k <= series.order(); ++k) {
    std::printf("%4d  %24.17g\n", k, bgev::l2_norm(series.coeffs[static_cast<std::size_t>(k)]));
  }
  if (series.order() < 6) {
    std::printf("time radius: not estimated (fewer than 6 coefficients)\n");
    return kExitOk;
  }
  const double rho = bgev::time_radius_estimate(series);
  std::printf("time radius estimate = %.17g\n", rho);
  const double t_cmp = std::isfinite(rho) ? std::min(rho / 4.0, 0.05) : 0.05;
  bgev::RealField u = u0;
  const int steps = 2000;
  for (int i = 0; i < steps; ++i) u = bgev::rk4_step(u, t_cmp / steps, cfg.evolve.b);
  const bgev::RealField tay = bgev::taylor_eval(series, t_cmp);
  const double rel = bgev::l2_norm(tay - u) / std::max(bgev::l2_norm(u), 1e-300);
  std::printf("stepper comparison at t = %.6g (dt = t/%d): relative L2 difference = %.3e\n", t_cmp,
              steps, rel);
  return kExitOk;
}

int cmd_bound(const std::string& config_path) {
  const bgev::RunConfig cfg = load_config(config_path);
  const bgev::RunReport rep = bgev::run_pipeline(cfg);
  const bgev::KMBound& k = rep.bound;
  const bgev::KMConstants c = bgev::km_constants(k.b, k.mu, k.phi0);
  std::printf("b = %.17g\nmu = %.17g\nA(mu) = %.17g\nB(mu, Phi0) = %.17g\n", k.b.value, k.mu, c.A,
              c.B);
  std::printf("gamma = %.17g\nPhi0 = %.17g\nlambda = %.17g\n", k.gamma, k.phi0, k.lambda);
  std::printf("%12s %14s %24s %24s\n", "t", "sigma_hat", "sigma(t)", "r(t)");
  for (const auto& r : rep.rows) {
    std::printf("%12.6g %14.8g %24.17g %24.17g\n", r.t, r.sigma_hat, r.km_sigma_bound,
                std::exp(r.km_sigma_bound));
  }
  if (rep.exit_code != 0) {
    std::fprintf(stderr, "error: %s\n", rep.trajectory.abort_reason.c_str());
  }
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"b-family Gevrey/analyticity laboratory", "bgev"};
  app.require_subcommand(1);

  std::string config_path, snapshot_path;
  double sigma = 0.0, s = 2.0;
  int m = 2, j_max = bgev::kDefaultJMax, order = bgev::kDefaultTaylorOrder;
  long k_min = bgev::kDefaultFitKMin;

  auto* run = app.add_subcommand("run", "evolve a configured scenario and write diagnostics");
  run->add_option("--config", config_path, "run configuration file")->required();

  auto* norms = app.add_subcommand("norms", "print every norm of a snapshot");
  norms->add_option("--snapshot", snapshot_path, "BGEV snapshot file")->required();
  norms->add_option("--sigma", sigma, "Gevrey / HM / Kato-Masuda parameter")->required();
  norms->add_option("--s", s, "Sobolev index")->required();
  norms->add_option("--m", m, "derivative index for hm_norm and km_phi");
  norms->add_option("--j-max", j_max, "series truncation cap");

  auto* radius = app.add_subcommand("radius", "fit the analyticity radius of a snapshot");
  radius->add_option("--snapshot", snapshot_path, "BGEV snapshot file")->required();
  radius->add_option("--k-min", k_min, "lowest mode used in the fit");

  auto* taylor = app.add_subcommand("taylor", "time-Taylor coefficients and time radius");
  taylor->add_option("--config", config_path, "run configuration file")->required();
  taylor->add_option("--order", order, "number of Taylor coefficients K");

  auto* bound = app.add_subcommand("bound", "Kato-Masuda analyticity lower bound table");
  bound->add_option("--config", config_path, "run configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path);
    if (*norms) return cmd_norms(snapshot_path, sigma, s, m, j_max);
    if (*radius) return cmd_radius(snapshot_path, k_min);
    if (*taylor) return cmd_taylor(config_path, order);
    if (*bound) return cmd_bound(config_path);
  } catch (const bgev::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const bgev::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const bgev::DomainError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const bgev::InsufficientBandError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const bgev::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  std::cerr << app.help();
  return kExitConfig;
}
