#ifndef BGEV_CONFIG_HPP
#define BGEV_CONFIG_HPP

// Run configuration: an INI-style file of `key = value` lines grouped under
// [section] headers. `#` and `;` start comment lines. Duplicate keys,
// duplicate sections, unknown sections and unknown keys are rejected.
// The full grammar and default table are documented in README.md.

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bgev/errors.hpp"
#include "bgev/evolve.hpp"
#include "bgev/grid_spectral.hpp"

namespace bgev {

struct InitSpec {
  std::string family = "momentum_bump";  // gaussian | sech | sine | momentum_bump
  double amplitude = 1.0;
  double width = 1.0;
  std::optional<double> center;  // default L/2
  int wavenumber = 1;            // sine only
};

struct DiagnosticsSpec {
  bool gevrey = true;
  std::vector<double> sigma_list{0.25, 0.5, 1.0};
  double s = 2.0;
  long fit_k_min = 4;
  std::optional<double> gamma_override;
  int km_trunc = 32;
};

struct RunConfig {
  GridSpec grid = make_grid(512, 2.0 * std::numbers::pi);
  EvolveConfig evolve;
  InitSpec init;
  DiagnosticsSpec diagnostics;
  std::string output_dir = "bgev_run";
};

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_real(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(v)) {
    throw ConfigError("config: key '" + key + "' expects a finite real number, got '" + t + "'");
  }
  return v;
}

inline long parse_integer(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("config: key '" + key + "' expects an integer, got '" + t + "'");
  }
  return v;
}

inline bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  throw ConfigError("config: key '" + key + "' expects true/false, got '" + t + "'");
}

inline std::vector<double> parse_real_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(parse_real(key, item));
  }
  return out;
}

}  // namespace detail

inline void validate(const RunConfig& cfg) {
  validate(cfg.evolve);
  static const std::set<std::string> families{"gaussian", "sech", "sine", "momentum_bump"};
  if (!families.count(cfg.init.family)) {
    throw ConfigError("config: unknown init family '" + cfg.init.family +
                      "' (expected gaussian, sech, sine or momentum_bump)");
  }
  if (!(cfg.init.amplitude > 0.0)) throw ConfigError("config: init.amplitude must be positive");
  if (!(cfg.init.width > 0.0)) throw ConfigError("config: init.width must be positive");
  if (cfg.init.wavenumber < 1) throw ConfigError("config: init.wavenumber must be >= 1");
  if (cfg.diagnostics.gevrey && !(cfg.diagnostics.s > 1.5)) {
    throw ConfigError(
        "config: diagnostics.s must exceed 3/2 when Gevrey diagnostics are enabled "
        "(global analyticity requires initial data in G^{1,s} with s > 3/2)");
  }
  for (double sg : cfg.diagnostics.sigma_list) {
    if (!(sg >= 0.0)) throw ConfigError("config: diagnostics.sigma_list entries must be >= 0");
  }
  if (cfg.diagnostics.fit_k_min < 1) throw ConfigError("config: diagnostics.fit_k_min must be >= 1");
  if (cfg.diagnostics.gamma_override && !(*cfg.diagnostics.gamma_override < 0.0)) {
    throw ConfigError("config: diagnostics.gamma must be negative");
  }
  if (cfg.diagnostics.km_trunc < 0) throw ConfigError("config: diagnostics.km_trunc must be >= 0");
}

inline RunConfig parse_config(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: syntax error: ") + e.what());
  }

  static const std::map<std::string, std::set<std::string>> schema{
      {"grid", {"n_points", "box_length", "dealias_fraction"}},
      {"model", {"b"}},
      {"evolve",
       {"t_final", "cfl_safety", "dt_max", "sample_interval", "blowup_threshold",
        "require_sign_certificate"}},
      {"init", {"family", "amplitude", "width", "center", "wavenumber"}},
      {"diagnostics", {"gevrey", "sigma_list", "s", "fit_k_min", "gamma", "km_trunc"}},
      {"output", {"dir"}},
  };

  RunConfig cfg;
  bool have_b = false;
  long n_points = static_cast<long>(cfg.grid.n_points);
  double box_length = cfg.grid.box_length;
  double dealias_fraction = cfg.grid.dealias_fraction;

  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) {
      throw ConfigError("config: key '" + section + "' must appear inside a [section]");
    }
    const auto sit = schema.find(section);
    if (sit == schema.end()) throw ConfigError("config: unknown section [" + section + "]");
    for (const auto& [key, node] : body) {
      if (!sit->second.count(key)) {
        throw ConfigError("config: unknown key '" + key + "' in [" + section + "]");
      }
      const std::string v = detail::trim(node.data());
      const std::string name = section + "." + key;
      if (section == "grid") {
        if (key == "n_points") n_points = detail::parse_integer(name, v);
        if (key == "box_length") box_length = detail::parse_real(name, v);
        if (key == "dealias_fraction") dealias_fraction = detail::parse_real(name, v);
      } else if (section == "model") {
        cfg.evolve.b = BParam(detail::parse_real(name, v));
        have_b = true;
      } else if (section == "evolve") {
        auto& e = cfg.evolve;
        if (key == "t_final") e.t_final = detail::parse_real(name, v);
        if (key == "cfl_safety") e.cfl_safety = detail::parse_real(name, v);
        if (key == "dt_max") e.dt_max = detail::parse_real(name, v);
        if (key == "sample_interval") e.sample_interval = detail::parse_real(name, v);
        if (key == "blowup_threshold") e.blowup_threshold = detail::parse_real(name, v);
        if (key == "require_sign_certificate") e.require_sign_certificate = detail::parse_bool(name, v);
      } else if (section == "init") {
        auto& i = cfg.init;
        if (key == "family") i.family = v;
        if (key == "amplitude") i.amplitude = detail::parse_real(name, v);
        if (key == "width") i.width = detail::parse_real(name, v);
        if (key == "center") i.center = detail::parse_real(name, v);
        if (key == "wavenumber") i.wavenumber = static_cast<int>(detail::parse_integer(name, v));
      } else if (section == "diagnostics") {
        auto& d = cfg.diagnostics;
        if (key == "gevrey") d.gevrey = detail::parse_bool(name, v);
        if (key == "sigma_list") d.sigma_list = detail::parse_real_list(name, v);
        if (key == "s") d.s = detail::parse_real(name, v);
        if (key == "fit_k_min") d.fit_k_min = detail::parse_integer(name, v);
        if (key == "gamma") d.gamma_override = detail::parse_real(name, v);
        if (key == "km_trunc") d.km_trunc = static_cast<int>(detail::parse_integer(name, v));
      } else if (section == "output") {
        cfg.output_dir = v;
      }
    }
  }
  if (!have_b) throw ConfigError("config: [model] b is required");
  if (n_points < 0) throw ConfigError("config: grid.n_points must be positive");
  cfg.grid = make_grid(static_cast<std::size_t>(n_points), box_length, dealias_fraction);
  validate(cfg);
  return cfg;
}

/// Canonical text of a configuration with every default spelled out;
/// parse_config(to_config_text(c)) reproduces c exactly.
inline std::string to_config_text(const RunConfig& c) {
  std::ostringstream o;
  o << "[grid]\n"
    << "n_points = " << c.grid.n_points << "\n"
    << "box_length = " << format_double(c.grid.box_length) << "\n"
    << "dealias_fraction = " << format_double(c.grid.dealias_fraction) << "\n\n"
    << "[model]\n"
    << "b = " << format_double(c.evolve.b.value) << "\n\n"
    << "[evolve]\n"
    << "t_final = " << format_double(c.evolve.t_final) << "\n"
    << "cfl_safety = " << format_double(c.evolve.cfl_safety) << "\n"
    << "dt_max = " << format_double(c.evolve.dt_max) << "\n"
    << "sample_interval = " << format_double(c.evolve.sample_interval) << "\n"
    << "blowup_threshold = " << format_double(c.evolve.blowup_threshold) << "\n"
    << "require_sign_certificate = " << (c.evolve.require_sign_certificate ? "true" : "false")
    << "\n\n"
    << "[init]\n"
    << "family = " << c.init.family << "\n"
    << "amplitude = " << format_double(c.init.amplitude) << "\n"
    << "width = " << format_double(c.init.width) << "\n";
  if (c.init.center) o << "center = " << format_double(*c.init.center) << "\n";
  o << "wavenumber = " << c.init.wavenumber << "\n\n"
    << "[diagnostics]\n"
    << "gevrey = " << (c.diagnostics.gevrey ? "true" : "false") << "\n"
    << "sigma_list = ";
  for (std::size_t i = 0; i < c.diagnostics.sigma_list.size(); ++i) {
    o << (i ? ", " : "") << format_double(c.diagnostics.sigma_list[i]);
  }
  o << "\n"
    << "s = " << format_double(c.diagnostics.s) << "\n"
    << "fit_k_min = " << c.diagnostics.fit_k_min << "\n";
  if (c.diagnostics.gamma_override) o << "gamma = " << format_double(*c.diagnostics.gamma_override) << "\n";
  o << "km_trunc = " << c.diagnostics.km_trunc << "\n\n"
    << "[output]\n"
    << "dir = " << c.output_dir << "\n";
  return o.str();
}

}  // namespace bgev

#endif  // BGEV_CONFIG_HPP
