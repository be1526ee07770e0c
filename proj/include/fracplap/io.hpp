#pragma once

#include <string>
#include <vector>

#include "fracplap/field.hpp"
#include "fracplap/integrator.hpp"

namespace fracplap {

/// Decimal rendering with 17 significant digits.
std::string format_double(double v);

/// CSV with header t,sup_norm,l2_norm,l1_norm,min_value.
std::string series_csv(const std::vector<NormRecord>& series);
void write_series(const RunReport& report, const std::string& path);

/// Binary snapshot: "FPLP", u32 version (1), u32 dim, u32 n, f64 L, then
/// n^dim f64 values row-major; all little-endian.
void write_snapshot(const Field& field, const std::string& path);
Field read_snapshot(const std::string& path);

/// Writes `text` to `path`, raising IoError on failure.
void write_text(const std::string& path, const std::string& text);

}  // namespace fracplap
