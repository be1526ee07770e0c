#include "fracplap/session.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "fracplap/analysis.hpp"
#include "fracplap/error.hpp"
#include "fracplap/io.hpp"

namespace fracplap {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json summary_json(const RunSummary& s) {
  json j = {{"status", s.status},
            {"status_time", s.status_time},
            {"max_sup_norm", s.max_sup_norm},
            {"terminal_sup_norm", s.terminal_sup_norm},
            {"steps", s.steps},
            {"allee", s.allee},
            {"bounded", s.bounded}};
  if (s.bound) j["bound_K"] = *s.bound;
  return j;
}

RunSummary summary_from_json(const json& j) {
  RunSummary s;
  s.status = j.at("status").get<std::string>();
  s.status_time = j.at("status_time").get<double>();
  s.max_sup_norm = j.at("max_sup_norm").get<double>();
  s.terminal_sup_norm = j.at("terminal_sup_norm").get<double>();
  s.steps = j.at("steps").get<std::size_t>();
  s.allee = j.at("allee").get<std::string>();
  s.bounded = j.at("bounded").get<std::string>();
  if (j.contains("bound_K")) s.bound = j.at("bound_K").get<double>();
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

RunSummary summarize(const RunManifest& m, const RunReport& report) {
  RunSummary s;
  s.status = to_string(report.status);
  s.status_time = report.status == RunStatus::completed ? report.final_time : report.status_time;
  s.max_sup_norm = report.max_sup_norm();
  s.terminal_sup_norm = report.series.empty() ? 0.0 : report.series.back().sup_norm;
  s.steps = report.steps;

  const ModelParameters& p = m.model;
  if (p.mu > 0.0 && p.k > 0.0) {
    const EquilibriumRoots roots = equilibrium_roots(p.mu, p.k, p.gamma);
    if (roots.real && roots.a > 0.0) s.allee = to_string(allee_classify(report, roots));
  }
  if (p.coupling == CouplingMode::kernel && validate_params(p, Regime::theorem).empty() &&
      !report.series.empty()) {
    const BoundEstimate K = bound_K(p, m.analysis, report.series.front().sup_norm, m.solver.t_final);
    if (K.ok()) s.bound = K.value;
    s.bounded = to_string(boundedness_check(report, K).verdict);
  }
  return s;
}

RunSummary simulate_to_directory(const RunManifest& m, const std::string& directory) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw IoError("cannot create " + directory + ": " + ec.message());
  const fs::path dir(directory);
  write_text((dir / "manifest.json").string(), serialize_config(m));

  const Field u0 = initial_field(m);
  const std::optional<KernelGrid> kernel = build_kernel(m);
  const RunReport report = run(u0, m.model, m.solver, kernel ? &*kernel : nullptr);

  write_series(report, (dir / "series.csv").string());
  write_snapshot(report.final_field, (dir / "final.bin").string());
  if (m.output.snapshots)
    for (std::size_t i = 0; i < report.snapshots.size(); ++i)
      write_snapshot(report.snapshots[i].field, (dir / ("snap_" + std::to_string(i) + ".bin")).string());

  const RunSummary s = summarize(m, report);
  json j = summary_json(s);
  j["final_time"] = report.final_time;
  j["wall_time"] = report.wall_time;
  j["warnings"] = report.warnings;
  json snaps = json::array();
  for (std::size_t i = 0; i < report.snapshots.size(); ++i)
    snaps.push_back({{"file", "snap_" + std::to_string(i) + ".bin"}, {"t", report.snapshots[i].t}});
  j["snapshots"] = snaps;
  write_text((dir / "report.json").string(), j.dump(2) + "\n");
  return s;
}

SweepPlan parse_sweep(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("", "top level must be an object");
  for (const auto& item : root.items())
    if (item.key() != "base" && item.key() != "vary") throw ConfigError("/" + item.key(), "unknown key");
  if (!root.contains("base") || !root["base"].is_object()) throw ConfigError("/base", "expected an object");
  SweepPlan plan;
  plan.base_text = root["base"].dump();
  parse_config(plan.base_text);
  if (root.contains("vary")) {
    const json& vary = root["vary"];
    if (!vary.is_object()) throw ConfigError("/vary", "expected an object");
    for (const auto& item : vary.items()) {
      const std::string where = "/vary/" + item.key();
      if (!item.value().is_array() || item.value().empty()) throw ConfigError(where, "expected a non-empty array");
      try {
        (void)json::json_pointer(item.key());
      } catch (const json::exception& e) {
        throw ConfigError(where, std::string("invalid JSON pointer: ") + e.what());
      }
      plan.pointers.push_back(item.key());
      std::vector<std::string> values;
      for (const auto& v : item.value()) values.push_back(v.dump());
      plan.values.push_back(std::move(values));
    }
  }
  return plan;
}

std::vector<SweepRow> run_sweep(const SweepPlan& plan, unsigned workers) {
  const RunManifest base = parse_config(plan.base_text);
  const json base_json = json::parse(plan.base_text);

  // Cartesian product, last pointer fastest.
  struct Variant {
    RunManifest manifest;
    std::vector<std::string> values;
  };
  std::vector<Variant> variants;
  std::vector<std::size_t> index(plan.pointers.size(), 0);
  while (true) {
    json j = base_json;
    std::vector<std::string> values;
    for (std::size_t a = 0; a < plan.pointers.size(); ++a) {
      j[json::json_pointer(plan.pointers[a])] = json::parse(plan.values[a][index[a]]);
      values.push_back(plan.values[a][index[a]]);
    }
    RunManifest m;
    try {
      m = parse_config(j.dump());
    } catch (const ConfigError& e) {
      std::string combo;
      for (std::size_t a = 0; a < values.size(); ++a) combo += " " + plan.pointers[a] + "=" + values[a];
      throw ConfigError(e.path(), std::string(e.what()) + " (variant" + combo + ")");
    }
    variants.push_back({std::move(m), std::move(values)});
    bool done = true;
    for (std::size_t a = plan.pointers.size(); a-- > 0;) {
      if (++index[a] < plan.values[a].size()) {
        done = false;
        break;
      }
      index[a] = 0;
    }
    if (done) break;
  }

  const fs::path root(base.output.directory);
  std::vector<SweepRow> rows(variants.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= variants.size()) return;
      try {
        SweepRow& row = rows[i];
        row.hash = hex(manifest_hash(variants[i].manifest));
        row.values = variants[i].values;
        const fs::path dir = root / row.hash;
        const fs::path report = dir / "report.json";
        if (fs::exists(report)) {
          std::ifstream in(report);
          std::stringstream buf;
          buf << in.rdbuf();
          row.summary = summary_from_json(json::parse(buf.str()));
          row.reused = true;
        } else {
          RunManifest m = variants[i].manifest;
          m.output.directory = dir.string();
          row.summary = simulate_to_directory(m, dir.string());
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(variants.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < count; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  std::string table = "hash";
  for (const auto& p : plan.pointers) table += "," + csv_field(p);
  table += ",status,status_time,max_sup_norm,terminal_sup_norm,allee,bounded\n";
  for (const auto& r : rows) {
    table += r.hash;
    for (const auto& v : r.values) table += "," + csv_field(v);
    table += "," + r.summary.status + "," + format_double(r.summary.status_time) + "," +
             format_double(r.summary.max_sup_norm) + "," + format_double(r.summary.terminal_sup_norm) + "," +
             r.summary.allee + "," + r.summary.bounded + "\n";
  }
  std::error_code ec;
  fs::create_directories(root, ec);
  write_text((root / "sweep.csv").string(), table);
  return rows;
}

unsigned thread_cap() {
  if (const char* env = std::getenv("FRACPLAP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace fracplap
