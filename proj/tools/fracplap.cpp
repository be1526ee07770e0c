#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "fracplap/config.hpp"
#include "fracplap/error.hpp"
#include "fracplap/mittag_leffler.hpp"
#include "fracplap/model.hpp"
#include "fracplap/session.hpp"
#include "fracplap/suites.hpp"

using namespace fracplap;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_simulate(const std::string& config_path, const std::string& output) {
  RunManifest m = load_config(config_path);
  if (!output.empty()) m.output.directory = output;
  const RunSummary s = simulate_to_directory(m, m.output.directory);
  std::printf("status=%s t=%.6g steps=%zu max_sup=%.6g terminal_sup=%.6g allee=%s bounded=%s\n", s.status.c_str(),
              s.status_time, s.steps, s.max_sup_norm, s.terminal_sup_norm, s.allee.c_str(), s.bounded.c_str());
  std::printf("output: %s\n", m.output.directory.c_str());
  return 0;
}

int cmd_verify(const std::string& suite) {
  const std::vector<int> ids = suite_criteria(suite);
  bool all = true;
  for (int id : ids) {
    const CriterionResult r = run_criterion(id);
    std::cout << format_result(r) << std::flush;
    all = all && r.pass();
  }
  std::printf("suite %s %s\n", suite.c_str(), all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}

int cmd_sweep(const std::string& path, unsigned workers) {
  const SweepPlan plan = parse_sweep(read_file(path));
  const std::vector<SweepRow> rows = run_sweep(plan, workers);
  for (const auto& r : rows) {
    std::printf("%s", r.hash.c_str());
    for (std::size_t a = 0; a < r.values.size(); ++a)
      std::printf(" %s=%s", plan.pointers[a].c_str(), r.values[a].c_str());
    std::printf(" status=%s max_sup=%.6g allee=%s bounded=%s%s\n", r.summary.status.c_str(), r.summary.max_sup_norm,
                r.summary.allee.c_str(), r.summary.bounded.c_str(), r.reused ? " (reused)" : "");
  }
  std::printf("%zu runs\n", rows.size());
  return 0;
}

int cmd_roots(double mu, double k, double gamma, const AnalysisConstants& consts) {
  const EquilibriumRoots r = equilibrium_roots(mu, k, gamma);
  if (r.real)
    std::printf("a=%.12g A=%.12g\n", r.a, r.A);
  else
    std::printf("complex roots, real part %.12g\n", r.a);
  std::printf("k_star(dim=1)=%.12g k_star(dim=2)=%.12g\n", k_star(1, mu, consts), k_star(2, mu, consts));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-fractional p-Laplacian solver with nonlocal competition"};
  app.require_subcommand(1);

  std::string config_path, output;
  auto* simulate = app.add_subcommand("simulate", "Run one manifest and write its outputs");
  simulate->add_option("config", config_path, "JSON manifest")->required();
  simulate->add_option("-o,--output", output, "Override output.directory");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));

  std::string sweep_path;
  unsigned workers = thread_cap();
  auto* sweep = app.add_subcommand("sweep", "Expand a base manifest over parameter lists");
  sweep->add_option("plan", sweep_path, "Sweep JSON: {\"base\": {...}, \"vary\": {pointer: [values]}}")->required();
  sweep->add_option("-j,--jobs", workers, "Concurrent runs (default FRACPLAP_THREADS or core count)")
      ->check(CLI::PositiveNumber);

  double mu = 1.0, k = 1.0, gamma = 0.0;
  AnalysisConstants consts;
  auto* roots = app.add_subcommand("roots", "Print the equilibrium roots and k_star");
  roots->add_option("--mu", mu)->required();
  roots->add_option("--k", k)->required();
  roots->add_option("--gamma", gamma)->required();
  roots->add_option("--c-gn", consts.c_gn, "Gagliardo-Nirenberg constant");
  roots->add_option("--eta", consts.eta, "Kernel floor");

  double alpha = 1.0, beta = 1.0, z = 0.0;
  auto* mlf = app.add_subcommand("mlf", "Evaluate the Mittag-Leffler function E_{alpha,beta}(z)");
  mlf->add_option("--alpha", alpha)->required();
  mlf->add_option("--beta", beta);
  mlf->add_option("--z", z)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*simulate) return cmd_simulate(config_path, output);
    if (*verify) return cmd_verify(suite);
    if (*sweep) return cmd_sweep(sweep_path, workers);
    if (*roots) return cmd_roots(mu, k, gamma, consts);
    if (*mlf) {
      std::printf("%.17g\n", mittag_leffler(alpha, beta, z));
      return 0;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error at '%s': %s\n", e.path().c_str(), e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
