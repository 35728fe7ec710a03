#ifndef BGEV_IO_HPP
#define BGEV_IO_HPP

// Persistence: binary field snapshots and diagnostics CSV.
//
// Snapshot layout (all little-endian, no padding):
//   offset  0  char[4]  magic "BGEV"
//   offset  4  uint32   format version (kSnapshotVersion)
//   offset  8  uint64   N
//   offset 16  float64  L
//   offset 24  float64  t
//   offset 32  float64  b
//   offset 40  float64  samples[N]

#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bgev/config.hpp"
#include "bgev/errors.hpp"
#include "bgev/grid_spectral.hpp"

namespace bgev {

inline constexpr std::array<char, 4> kSnapshotMagic{'B', 'G', 'E', 'V'};
inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 40;

struct Snapshot {
  std::uint64_t n_points = 0;
  double box_length = 0.0;
  double t = 0.0;
  double b = 0.0;
  std::vector<double> samples;

  static Snapshot of(const RealField& u, double t, double b) {
    return {u.grid.n_points, u.grid.box_length, t, b, u.samples};
  }
  RealField field() const { return RealField(make_grid(n_points, box_length), samples); }
};

namespace detail {

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}
inline void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}
inline void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

inline std::uint64_t get_le(const std::string& in, std::size_t off, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[off + i])) << (8 * i);
  }
  return v;
}
inline double get_f64(const std::string& in, std::size_t off) {
  return std::bit_cast<double>(get_le(in, off, 8));
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace detail

inline std::string encode_snapshot(const Snapshot& s) {
  if (s.samples.size() != s.n_points) throw IoError("snapshot: payload length does not match N");
  std::string out;
  out.reserve(kSnapshotHeaderBytes + 8 * s.samples.size());
  out.append(kSnapshotMagic.begin(), kSnapshotMagic.end());
  detail::put_u32(out, kSnapshotVersion);
  detail::put_u64(out, s.n_points);
  detail::put_f64(out, s.box_length);
  detail::put_f64(out, s.t);
  detail::put_f64(out, s.b);
  for (double v : s.samples) detail::put_f64(out, v);
  return out;
}

inline Snapshot decode_snapshot(const std::string& bytes) {
  if (bytes.size() < kSnapshotHeaderBytes) throw IoError("snapshot: truncated header");
  if (!std::equal(kSnapshotMagic.begin(), kSnapshotMagic.end(), bytes.begin())) {
    throw IoError("snapshot: bad magic (not a BGEV file)");
  }
  const auto version = static_cast<std::uint32_t>(detail::get_le(bytes, 4, 4));
  if (version != kSnapshotVersion) {
    throw IoError("snapshot: unsupported format version " + std::to_string(version));
  }
  Snapshot s;
  s.n_points = detail::get_le(bytes, 8, 8);
  s.box_length = detail::get_f64(bytes, 16);
  s.t = detail::get_f64(bytes, 24);
  s.b = detail::get_f64(bytes, 32);
  const std::uint64_t payload = bytes.size() - kSnapshotHeaderBytes;
  if (s.n_points > payload / 8 || payload != 8 * s.n_points) {
    throw IoError("snapshot: payload length does not match N = " + std::to_string(s.n_points));
  }
  s.samples.resize(s.n_points);
  for (std::uint64_t j = 0; j < s.n_points; ++j) {
    s.samples[j] = detail::get_f64(bytes, kSnapshotHeaderBytes + 8 * j);
  }
  return s;
}

inline void write_snapshot(const std::filesystem::path& path, const Snapshot& s) {
  detail::write_file(path, encode_snapshot(s));
}

inline Snapshot read_snapshot(const std::filesystem::path& path) {
  return decode_snapshot(detail::read_file(path));
}

// ---------------------------------------------------------------------------
// Diagnostics CSV

struct DiagnosticsRow {
  double t = 0.0;
  double l2 = 0.0;      // ||u||_{L2}
  double h1 = 0.0;      // ||u||_{H1}
  double h2 = 0.0;      // ||u||_{H2}
  double mean_u = 0.0;  // int u dx
  double m_l1 = 0.0;    // int |m| dx
  double m_min = 0.0;   // min_j m(x_j)
  double sigma_hat = 0.0;
  double fit_quality = 0.0;
  double km_sigma_bound = 0.0;
  double dt_used = 0.0;
};

inline constexpr const char* kDiagnosticsHeader =
    "t,l2,h1,h2,mean_u,m_l1,m_min,sigma_hat,fit_quality,km_sigma_bound,dt_used";

inline std::string diagnostics_csv(const std::vector<DiagnosticsRow>& rows) {
  std::string out = std::string(kDiagnosticsHeader) + "\n";
  for (const auto& r : rows) {
    const double v[] = {r.t,      r.l2,        r.h1,        r.h2,
                        r.mean_u, r.m_l1,      r.m_min,     r.sigma_hat,
                        r.fit_quality, r.km_sigma_bound, r.dt_used};
    for (std::size_t i = 0; i < std::size(v); ++i) {
      if (i) out += ',';
      out += format_double(v[i]);
    }
    out += '\n';
  }
  return out;
}

inline std::vector<DiagnosticsRow> parse_diagnostics_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kDiagnosticsHeader) {
    throw IoError("diagnostics: missing or unexpected header");
  }
  std::vector<DiagnosticsRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      char* end = nullptr;
      v.push_back(std::strtod(cell.c_str(), &end));
      if (end == cell.c_str() || *end != '\0') throw IoError("diagnostics: bad cell '" + cell + "'");
    }
    if (v.size() != 11) throw IoError("diagnostics: expected 11 columns");
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9], v[10]});
  }
  return rows;
}

/// Writes `path` plus the plot-ready companions <stem>_sigma_hat.dat and
/// <stem>_km_sigma_bound.dat (two whitespace-separated columns: t value).
inline void emit_diagnostics(const std::vector<DiagnosticsRow>& rows,
                             const std::filesystem::path& path) {
  detail::write_file(path, diagnostics_csv(rows));
  std::string sh = "# t sigma_hat\n";
  std::string kb = "# t km_sigma_bound\n";
  for (const auto& r : rows) {
    sh += format_double(r.t) + " " + format_double(r.sigma_hat) + "\n";
    kb += format_double(r.t) + " " + format_double(r.km_sigma_bound) + "\n";
  }
  const auto stem = path.parent_path() / path.stem();
  detail::write_file(stem.string() + "_sigma_hat.dat", sh);
  detail::write_file(stem.string() + "_km_sigma_bound.dat", kb);
}

}  // namespace bgev

#endif  // BGEV_IO_HPP
