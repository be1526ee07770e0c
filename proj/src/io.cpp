#include "fracplap/io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>

#include "fracplap/error.hpp"

namespace fracplap {
namespace {

constexpr std::array<char, 4> kMagic{'F', 'P', 'L', 'P'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& out, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_le(const std::string& in, std::size_t offset, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[offset + i])) << (8 * i);
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string series_csv(const std::vector<NormRecord>& series) {
  std::string out = "t,sup_norm,l2_norm,l1_norm,min_value\n";
  for (const auto& r : series) {
    out += format_double(r.t) + "," + format_double(r.sup_norm) + "," + format_double(r.l2_norm) + "," +
           format_double(r.l1_norm) + "," + format_double(r.min_value) + "\n";
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for " + path);
}

void write_series(const RunReport& report, const std::string& path) { write_text(path, series_csv(report.series)); }

void write_snapshot(const Field& field, const std::string& path) {
  const DomainSpec& d = field.domain();
  std::string bytes(kMagic.begin(), kMagic.end());
  put_u32(bytes, kVersion);
  put_u32(bytes, static_cast<std::uint32_t>(d.dim));
  put_u32(bytes, static_cast<std::uint32_t>(d.points_per_axis));
  put_f64(bytes, d.half_width);
  for (double v : field.values()) put_f64(bytes, v);
  write_text(path, bytes);
}

Field read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  constexpr std::size_t header = 4 + 4 + 4 + 4 + 8;
  if (bytes.size() < header || std::memcmp(bytes.data(), kMagic.data(), 4) != 0)
    throw IoError(path + ": not a snapshot file");
  if (get_le(bytes, 4, 4) != kVersion) throw IoError(path + ": unsupported snapshot version");
  DomainSpec d;
  d.dim = static_cast<int>(get_le(bytes, 8, 4));
  d.points_per_axis = static_cast<int>(get_le(bytes, 12, 4));
  d.half_width = std::bit_cast<double>(get_le(bytes, 16, 8));
  try {
    d.validate();
  } catch (const std::invalid_argument& e) {
    throw IoError(path + ": " + e.what());
  }
  const std::size_t count = d.total_points();
  if (bytes.size() != header + 8 * count) throw IoError(path + ": truncated or oversized snapshot");
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = std::bit_cast<double>(get_le(bytes, header + 8 * i, 8));
  return Field(d, std::move(values));
}

}  // namespace fracplap
