#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <numbers>
#include <random>

#include "bgev/bgev.hpp"

using namespace bgev;
namespace fs = std::filesystem;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bgev_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Config, MinimalConfigGetsDefaults) {
  const RunConfig c = parse_config("[model]\nb = 2\n[init]\nfamily = sech\n");
  EXPECT_EQ(c.grid.n_points, 512u);
  EXPECT_DOUBLE_EQ(c.grid.box_length, kTwoPi);
  EXPECT_DOUBLE_EQ(c.grid.dealias_fraction, 2.0 / 3.0);
  EXPECT_EQ(c.evolve.b.value, 2.0);
  EXPECT_EQ(c.evolve.cfl_safety, 0.2);
  EXPECT_EQ(c.evolve.blowup_threshold, 1e6);
  EXPECT_EQ(c.diagnostics.s, 2.0);
  EXPECT_EQ(c.diagnostics.fit_k_min, 4);
  EXPECT_EQ(c.diagnostics.km_trunc, 32);
  EXPECT_FALSE(c.diagnostics.gamma_override.has_value());
  EXPECT_EQ(c.init.family, "sech");
}

TEST(Config, FullConfigWithComments) {
  const RunConfig c = parse_config(
      "# reference\n"
      "[grid]\nn_points = 256\nbox_length = 80\n"
      "[model]\nb = -1.5\n"
      "[evolve]\nt_final = 3\nsample_interval = 0.5\nrequire_sign_certificate = true\n"
      "; the datum\n"
      "[init]\nfamily = gaussian\namplitude = 0.5\nwidth = 2\ncenter = 10\n"
      "[diagnostics]\nsigma_list = 0.1, 0.2\ngamma = -0.3\n"
      "[output]\ndir = /tmp/somewhere\n");
  EXPECT_EQ(c.grid.n_points, 256u);
  EXPECT_EQ(c.grid.box_length, 80.0);
  EXPECT_EQ(c.evolve.b.value, -1.5);
  EXPECT_EQ(c.evolve.t_final, 3.0);
  EXPECT_TRUE(c.evolve.require_sign_certificate);
  EXPECT_EQ(c.init.center.value(), 10.0);
  EXPECT_EQ(c.diagnostics.sigma_list, (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(c.diagnostics.gamma_override.value(), -0.3);
  EXPECT_EQ(c.output_dir, "/tmp/somewhere");
}

TEST(Config, Rejections) {
  const auto bad = [](const std::string& text) { EXPECT_THROW(parse_config(text), ConfigError) << text; };
  bad("[model]\nb = 2\nb = 3\n");                         // duplicate key
  bad("[model]\nb = 2\n[model]\nb = 3\n");                // duplicate section
  bad("[model]\nb = 2\nc = 3\n");                         // unknown key
  bad("[modle]\nb = 2\n");                                // unknown section
  bad("b = 2\n");                                         // key outside a section
  bad("[grid]\nn_points = 64\n");                         // b missing
  bad("[model]\nb = two\n");                              // not a number
  bad("[model]\nb = 2\n[grid]\nn_points = 63\n");         // odd N
  bad("[model]\nb = 2\n[init]\nfamily = peakon\n");       // unknown family
  bad("[model]\nb = 2\n[init]\nwidth = -1\n");            // negative width
  bad("[model]\nb = 2\n[diagnostics]\ngamma = 0.1\n");    // gamma must be negative
  bad("[model]\nb = 2\n[evolve]\ncfl_safety = 2\n");
  bad("[model]\nb = 2\n[model\n");                        // syntax
}

TEST(Config, SobolevIndexHypothesis) {
  try {
    parse_config("[model]\nb = 2\n[diagnostics]\ns = 1.0\n");
    FAIL() << "s = 1 accepted";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("3/2"), std::string::npos);
  }
  EXPECT_NO_THROW(parse_config("[model]\nb = 2\n[diagnostics]\ns = 1.0\ngevrey = false\n"));
}

TEST(Config, CanonicalTextRoundTrips) {
  RunConfig c = parse_config(
      "[grid]\nn_points = 128\nbox_length = 0.1\n[model]\nb = 0.3\n[init]\ncenter = 0.05\n"
      "[diagnostics]\ngamma = -0.7\nsigma_list = 0.1\n");
  const RunConfig again = parse_config(to_config_text(c));
  EXPECT_EQ(again.grid, c.grid);
  EXPECT_EQ(again.evolve.b.value, c.evolve.b.value);
  EXPECT_EQ(again.evolve.dt_max, c.evolve.dt_max);
  EXPECT_EQ(again.init.center, c.init.center);
  EXPECT_EQ(again.diagnostics.gamma_override, c.diagnostics.gamma_override);
  EXPECT_EQ(again.diagnostics.sigma_list, c.diagnostics.sigma_list);
  EXPECT_EQ(to_config_text(again), to_config_text(c));
}

TEST(InitialData, SineExactAtNodes) {
  const GridSpec g = make_grid(64, kTwoPi);
  InitSpec s;
  s.family = "sine";
  const RealField u = initial_data(s, g);
  for (std::size_t j = 0; j < g.n_points; ++j) EXPECT_NEAR(u[j], std::sin(g.x(j)), 1e-15);
  s.wavenumber = 3;
  s.amplitude = 2.0;
  const RealField v = initial_data(s, g);
  for (std::size_t j = 0; j < g.n_points; ++j) EXPECT_NEAR(v[j], 2 * std::sin(3 * g.x(j)), 1e-14);
}

TEST(InitialData, MomentumBumpRoundTrip) {
  const GridSpec g = make_grid(512, 80.0);
  InitSpec s;
  s.family = "momentum_bump";
  s.amplitude = 0.25;
  s.width = 4.0;
  const RealField u = initial_data(s, g);
  const MomentumField m = momentum(u);
  for (std::size_t j = 0; j < g.n_points; ++j) {
    const double y = g.x(j) - 40.0;
    EXPECT_NEAR(m[j], 0.25 * std::exp(-y * y / 16.0), 1e-12);
  }
  EXPECT_GE(momentum_min(u), -1e-12);
  EXPECT_TRUE(momentum_sign_definite(u));
  for (double v : u.samples) EXPECT_GT(v, 0.0);  // positive kernel
}

TEST(InitialData, PeriodizedProfilesAreSmoothAcrossTheSeam) {
  const GridSpec g = make_grid(1024, 80.0);
  for (const char* fam : {"gaussian", "sech"}) {
    InitSpec s;
    s.family = fam;
    s.center = 1.0;  // straddles x = 0
    const RealField u = initial_data(s, g);
    // Smooth across the seam: spectrum still decays to the floor.
    EXPECT_LT(std::abs(dft(u).coeff(g.half() - 1)), 1e-14) << fam;
  }
}

TEST(InitialData, UnknownFamily) {
  InitSpec s;
  s.family = "peakon";
  EXPECT_THROW(initial_data(s, make_grid(16, 1.0)), ConfigError);
}

TEST(Snapshot, BitExactRoundTrip) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> N(0.0, 1e3);
  Snapshot s{128, 80.0, 1.0 / 3.0, -0.7, {}};
  for (int j = 0; j < 128; ++j) s.samples.push_back(N(rng));
  s.samples[5] = -0.0;
  s.samples[6] = std::numeric_limits<double>::denorm_min();
  const fs::path dir = scratch("snap");
  write_snapshot(dir / "a.bgev", s);
  const Snapshot r = read_snapshot(dir / "a.bgev");
  EXPECT_EQ(r.n_points, s.n_points);
  EXPECT_EQ(std::memcmp(&r.box_length, &s.box_length, 8), 0);
  EXPECT_EQ(std::memcmp(&r.t, &s.t, 8), 0);
  EXPECT_EQ(std::memcmp(&r.b, &s.b, 8), 0);
  ASSERT_EQ(r.samples.size(), s.samples.size());
  EXPECT_EQ(std::memcmp(r.samples.data(), s.samples.data(), 8 * s.samples.size()), 0);
  EXPECT_EQ(fs::file_size(dir / "a.bgev"), 40u + 8u * 128u);
}

TEST(Snapshot, LittleEndianLayout) {
  Snapshot s{8, 1.0, 0.0, 2.0, std::vector<double>(8, 0.0)};
  const std::string bytes = encode_snapshot(s);
  EXPECT_EQ(bytes.substr(0, 4), "BGEV");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 1);  // version, low byte first
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 8);  // N
  // 1.0 = 0x3FF0000000000000 little-endian.
  EXPECT_EQ(static_cast<unsigned char>(bytes[22]), 0xF0);
  EXPECT_EQ(static_cast<unsigned char>(bytes[23]), 0x3F);
}

TEST(Snapshot, CorruptionIsIoError) {
  Snapshot s{8, 1.0, 0.0, 2.0, std::vector<double>(8, 1.5)};
  std::string bytes = encode_snapshot(s);
  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_snapshot(bad_magic), IoError);
  std::string bad_version = bytes;
  bad_version[4] = 2;
  EXPECT_THROW(decode_snapshot(bad_version), IoError);
  EXPECT_THROW(decode_snapshot(bytes.substr(0, bytes.size() - 1)), IoError);
  EXPECT_THROW(decode_snapshot(bytes.substr(0, 20)), IoError);
  EXPECT_THROW(decode_snapshot(bytes + "x"), IoError);
  EXPECT_THROW(read_snapshot("/nonexistent/dir/x.bgev"), IoError);
}

TEST(Diagnostics, CsvShapeAndRoundTrip) {
  EXPECT_EQ(diagnostics_csv({}), std::string(kDiagnosticsHeader) + "\n");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1e5, 1e5);
  std::vector<DiagnosticsRow> rows(1);
  const std::string one = diagnostics_csv(rows);
  EXPECT_EQ(std::count(one.begin(), one.end(), '\n'), 2);
  for (int i = 0; i < 10; ++i) {
    rows.push_back({U(rng), U(rng), U(rng), U(rng), U(rng), U(rng), U(rng), U(rng) / 7, U(rng), U(rng), 1e-300 * U(rng)});
  }
  const auto back = parse_diagnostics_csv(diagnostics_csv(rows));
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(std::memcmp(&back[i], &rows[i], sizeof(DiagnosticsRow)), 0) << "row " << i;
  }
}

TEST(Diagnostics, CompanionFiles) {
  const fs::path dir = scratch("diag");
  std::vector<DiagnosticsRow> rows{{0.0}, {0.5}};
  rows[1].sigma_hat = 1.25;
  rows[1].km_sigma_bound = -3.0;
  emit_diagnostics(rows, dir / "diagnostics.csv");
  EXPECT_TRUE(fs::exists(dir / "diagnostics.csv"));
  EXPECT_EQ(detail::read_file(dir / "diagnostics_sigma_hat.dat"), "# t sigma_hat\n0 0\n0.5 1.25\n");
  EXPECT_EQ(detail::read_file(dir / "diagnostics_km_sigma_bound.dat"), "# t km_sigma_bound\n0 0\n0.5 -3\n");
}

TEST(Pipeline, WritesCompleteRunDirectory) {
  const fs::path dir = scratch("pipeline");
  RunConfig c = parse_config(
      "[grid]\nn_points = 256\nbox_length = 40\n[model]\nb = 2\n"
      "[evolve]\nt_final = 0.5\nsample_interval = 0.25\n"
      "[init]\nfamily = sech\namplitude = 0.25\nwidth = 2\n");
  c.output_dir = dir.string();
  std::ostringstream log;
  EXPECT_EQ(run_and_write(c, log), 0);
  for (const char* f : {"config.ini", "diagnostics.csv", "diagnostics_sigma_hat.dat",
                        "diagnostics_km_sigma_bound.dat", "gevrey.csv", "initial.bgev", "final.bgev",
                        "manifest.txt"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  const auto rows = parse_diagnostics_csv(detail::read_file(dir / "diagnostics.csv"));
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(rows[i].t, rows[i - 1].t);
  for (const auto& r : rows) {
    EXPECT_TRUE(std::isfinite(r.sigma_hat));
    EXPECT_LT(std::exp(r.km_sigma_bound), r.sigma_hat);
  }
  EXPECT_EQ(read_snapshot(dir / "final.bgev").t, 0.5);
  const std::string manifest = detail::read_file(dir / "manifest.txt");
  EXPECT_NE(manifest.find("exit_status = 0"), std::string::npos);
  EXPECT_NE(manifest.find("start_time = "), std::string::npos);
  EXPECT_NE(manifest.find("end_time = "), std::string::npos);

  // Rerunning from the persisted config copy reproduces the diagnostics exactly.
  RunConfig again = parse_config(detail::read_file(dir / "config.ini"));
  const fs::path dir2 = scratch("pipeline2");
  again.output_dir = dir2.string();
  EXPECT_EQ(run_and_write(again, log), 0);
  EXPECT_EQ(detail::read_file(dir2 / "diagnostics.csv"), detail::read_file(dir / "diagnostics.csv"));
}

TEST(Pipeline, SingleHarmonicGivesNanFit) {
  RunConfig c = parse_config("[grid]\nn_points = 64\n[model]\nb = -1\n[evolve]\nt_final = 0.1\n[init]\nfamily = sine\n");
  const RunReport rep = run_pipeline(c);
  EXPECT_EQ(rep.exit_code, 0);
  for (const auto& r : rep.rows) EXPECT_TRUE(std::isnan(r.sigma_hat));
  EXPECT_NEAR(rep.bound.gamma, std::log(0.9), 1e-15);
}
