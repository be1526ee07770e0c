#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracplap/config.hpp"
#include "fracplap/integrator.hpp"

namespace fracplap {

/// Headline numbers of one finished run.
struct RunSummary {
  std::string status;
  double status_time = 0.0;
  double max_sup_norm = 0.0;
  double terminal_sup_norm = 0.0;
  std::size_t steps = 0;
  std::string allee = "n/a";
  std::string bounded = "n/a";
  std::optional<double> bound;
};

/// Runs the manifest and writes into `directory`: manifest.json,
/// series.csv, final.bin, snap_<i>.bin (when enabled) and report.json.
RunSummary simulate_to_directory(const RunManifest& manifest, const std::string& directory);

/// Verdicts derived from a report without touching disk.
RunSummary summarize(const RunManifest& manifest, const RunReport& report);

/// A base manifest plus JSON-pointer keyed value lists; the sweep runs the
/// Cartesian product.
struct SweepPlan {
  std::string base_text;
  std::vector<std::string> pointers;
  std::vector<std::vector<std::string>> values;  ///< JSON text per value
};

/// Parses {"base": {...}, "vary": {"/model/alpha": [..], ...}}. Throws
/// ConfigError.
SweepPlan parse_sweep(const std::string& text);

struct SweepRow {
  std::string hash;
  std::vector<std::string> values;
  RunSummary summary;
  bool reused = false;
};

/// Expands and runs every variant in up to `workers` threads. Each run
/// writes to <base output>/<manifest hash>/; variants whose report.json
/// already exists are not rerun. Writes sweep.csv next to the run
/// directories and returns the rows in expansion order.
std::vector<SweepRow> run_sweep(const SweepPlan& plan, unsigned workers);

/// Thread cap from FRACPLAP_THREADS, else hardware concurrency (>= 1).
unsigned thread_cap();

}  // namespace fracplap
