#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fracplap/config.hpp"
#include "fracplap/error.hpp"
#include "fracplap/io.hpp"
#include "fracplap/session.hpp"

using namespace fracplap;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fracplap_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string config_error_path(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<none>";
}

const char* kSmall = R"({
  "model": {"alpha": 0.6, "p": 1.8, "mu": 1, "k": 1, "gamma": 0.1875, "dim": 1},
  "domain": {"half_width": 4, "points_per_axis": 16},
  "solver": {"dt": 0.05, "t_final": 1, "snapshot_times": [0.5]},
  "initial": {"kind": "gaussian_bump", "height": 0.5, "width": 1}
})";

}  // namespace

TEST(Config, DefaultsResolveKernel) {
  const RunManifest m = parse_config("{}");
  EXPECT_EQ(m.solver.dt, 1e-3);
  EXPECT_EQ(m.domain.points_per_axis, 64);
  EXPECT_DOUBLE_EQ(m.analysis.delta0, m.domain.half_width / 8.0);
  const std::optional<KernelGrid> k = build_kernel(m);
  ASSERT_TRUE(k.has_value());
  EXPECT_DOUBLE_EQ(k->delta0, m.analysis.delta0);
  EXPECT_DOUBLE_EQ(k->eta, m.analysis.eta);
  EXPECT_GT(k->core_min, k->eta);
}

TEST(Config, RoundTrip) {
  const RunManifest m = parse_config(kSmall);
  const std::string text = serialize_config(m);
  EXPECT_EQ(parse_config(text), m);
  EXPECT_EQ(serialize_config(parse_config(text)), text);
  EXPECT_EQ(manifest_hash(parse_config(text)), manifest_hash(m));
  RunManifest other = m;
  other.model.alpha = 0.7;
  EXPECT_NE(manifest_hash(other), manifest_hash(m));
}

TEST(Config, ErrorsCarryPointer) {
  EXPECT_EQ(config_error_path(R"({"model": {"alpha": 1.5}})"), "/model/alpha");
  EXPECT_EQ(config_error_path(R"({"model": {"colour": 1}})"), "/model/colour");
  EXPECT_EQ(config_error_path(R"({"solver": {"dt": "fast"}})"), "/solver/dt");
  EXPECT_EQ(config_error_path(R"({"solver": {"scheme": "rk4"}})"), "/solver/scheme");
  EXPECT_EQ(config_error_path(R"({"bogus": {}})"), "/bogus");
  EXPECT_EQ(config_error_path("{not json"), "");
}

TEST(Config, RandomInitialDataIsSeeded) {
  const std::string base = R"({"domain": {"half_width": 2, "points_per_axis": 32},
                               "initial": {"kind": "random", "seed": 17, "amplitude": 0.3}})";
  const Field a = initial_field(parse_config(base));
  const Field b = initial_field(parse_config(base));
  EXPECT_EQ(a, b);
  for (double v : a.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 0.3);
  }
  const std::vector<double> s = uniform_samples(17, 4, 1.0);
  const std::vector<double> t = uniform_samples(18, 4, 1.0);
  EXPECT_NE(s, t);
}

TEST(Snapshot, LayoutAndRoundTrip) {
  const fs::path dir = scratch("snapshot");
  Field f(DomainSpec{1.5, 8, 1});
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = 0.1 * static_cast<double>(i) - 0.3;
  write_snapshot(f, (dir / "a.bin").string());
  const std::string bytes = slurp(dir / "a.bin");
  EXPECT_EQ(bytes.size(), 88u);
  EXPECT_EQ(bytes.substr(0, 4), "FPLP");
  EXPECT_EQ(read_snapshot((dir / "a.bin").string()), f);

  Field g(DomainSpec{2.0, 8, 2}, 0.25);
  write_snapshot(g, (dir / "b.bin").string());
  EXPECT_EQ(read_snapshot((dir / "b.bin").string()), g);
  EXPECT_THROW(read_snapshot((dir / "missing.bin").string()), IoError);
}

TEST(SeriesCsv, HeaderAndRows) {
  std::vector<NormRecord> s(3);
  for (int i = 0; i < 3; ++i) s[i] = {0.1 * i, 1.0 / 3.0, 2.0, 3.0, -0.5};
  const std::string csv = series_csv(s);
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "t,sup_norm,l2_norm,l1_norm,min_value");
  EXPECT_EQ(lines[1], "0,0.33333333333333331,2,3,-0.5");
}

TEST(Session, SimulateWritesOutputs) {
  const fs::path dir = scratch("simulate");
  const RunManifest m = parse_config(kSmall);
  const RunSummary s = simulate_to_directory(m, dir.string());
  EXPECT_EQ(s.status, "completed");
  for (const char* f : {"manifest.json", "series.csv", "final.bin", "snap_0.bin", "report.json"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  EXPECT_EQ(parse_config(slurp(dir / "manifest.json")), m);

  const fs::path again = scratch("simulate_again");
  simulate_to_directory(m, again.string());
  EXPECT_EQ(slurp(dir / "series.csv"), slurp(again / "series.csv"));
  EXPECT_EQ(slurp(dir / "final.bin"), slurp(again / "final.bin"));
}

TEST(Session, SweepExpandsAndReuses) {
  const fs::path dir = scratch("sweep");
  const std::string plan_text = std::string(R"({"base": {"model": {"alpha": 0.6, "p": 1.8},
      "domain": {"half_width": 4, "points_per_axis": 16},
      "solver": {"dt": 0.1, "t_final": 1},
      "initial": {"kind": "constant", "value": 0.1},
      "output": {"directory": ")") + dir.string() + R"(", "snapshots": false}},
      "vary": {"/model/alpha": [0.4, 0.8], "/initial/value": [0.05, 0.1, 0.6]}})";
  const SweepPlan plan = parse_sweep(plan_text);
  const std::vector<SweepRow> rows = run_sweep(plan, 3);
  ASSERT_EQ(rows.size(), 6u);
  for (const auto& r : rows) {
    EXPECT_FALSE(r.reused);
    EXPECT_TRUE(fs::exists(dir / r.hash / "series.csv"));
  }
  EXPECT_NE(rows[0].hash, rows[1].hash);
  const std::string table = slurp(dir / "sweep.csv");
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 7);

  const std::vector<SweepRow> again = run_sweep(plan, 2);
  for (std::size_t i = 0; i < again.size(); ++i) {
    EXPECT_TRUE(again[i].reused);
    EXPECT_EQ(again[i].hash, rows[i].hash);
    EXPECT_EQ(again[i].summary.max_sup_norm, rows[i].summary.max_sup_norm);
  }
}

TEST(Session, SweepRejectsBadVariant) {
  const std::string text = R"({"base": {}, "vary": {"/model/alpha": [0.5, 3.0]}})";
  const SweepPlan plan = parse_sweep(text);
  try {
    run_sweep(plan, 1);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.path(), "/model/alpha");
  }
  EXPECT_THROW(parse_sweep(R"({"base": {}, "extra": 1})"), ConfigError);
  EXPECT_THROW(parse_sweep(R"({"base": {}, "vary": {"/model/alpha": []}})"), ConfigError);
}
