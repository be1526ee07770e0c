#include "fracplap/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <numbers>
#include <stdexcept>

#include "fracplap/analysis.hpp"
#include "fracplap/config.hpp"
#include "fracplap/fractional.hpp"
#include "fracplap/integrator.hpp"
#include "fracplap/io.hpp"
#include "fracplap/mittag_leffler.hpp"
#include "fracplap/model.hpp"
#include "fracplap/oracles.hpp"
#include "fracplap/spatial.hpp"

namespace fracplap {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

CheckLine check(std::string name, bool pass, std::string detail) {
  return {std::move(name), pass, std::move(detail)};
}

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Field random_field(const DomainSpec& d, std::uint64_t seed, double lo, double hi) {
  std::vector<double> v = uniform_samples(seed, d.total_points(), hi - lo);
  for (double& x : v) x += lo;
  return Field(d, std::move(v));
}

// ---- 1: Caputo order -------------------------------------------------------

double caputo_at_one(double alpha, int steps, double (*u)(double)) {
  const double dt = 1.0 / steps;
  const DomainSpec d{1.0, 8, 1};
  HistoryBuffer history(Field(d, u(0.0)), dt);
  for (int j = 1; j < steps; ++j) history.push(Field(d, u(j * dt)));
  const L1Weights w = l1_weights(alpha, static_cast<std::size_t>(steps), dt);
  return discrete_caputo(history, Field(d, u(1.0)), w)[0];
}

std::vector<CheckLine> criterion_caputo() {
  std::vector<CheckLine> out;
  for (double alpha : {0.3, 0.5, 0.8}) {
    const double exact = 2.0 / std::tgamma(3.0 - alpha);
    std::vector<double> dts, errs;
    for (int steps : {40, 80, 160, 320}) {
      dts.push_back(1.0 / steps);
      errs.push_back(std::abs(caputo_at_one(alpha, steps, [](double t) { return t * t; }) - exact));
    }
    const double order = fitted_order(dts, errs);
    out.push_back(check("order on t^2, alpha=" + num(alpha), std::abs(order - (2.0 - alpha)) <= 0.15,
                        "fitted " + num(order) + ", expected " + num(2.0 - alpha) + " +- 0.15"));
    const double linear = caputo_at_one(alpha, 10, [](double t) { return t; });
    const double target = 1.0 / std::tgamma(2.0 - alpha);
    const double rel = std::abs(linear - target) / target;
    out.push_back(check("exact on t, alpha=" + num(alpha), rel <= 1e-12, "relative error " + num(rel)));
  }
  return out;
}

// ---- 2: Mittag-Leffler -----------------------------------------------------

std::vector<CheckLine> criterion_mlf() {
  std::vector<CheckLine> out;
  double worst = 0.0;
  for (int i = 0; i <= 2500; ++i) {
    const double z = -20.0 + 0.01 * i;
    const double e = std::exp(z);
    worst = std::max(worst, std::abs(mittag_leffler(1.0, 1.0, z) - e) / e);
  }
  out.push_back(check("E_{1,1}(z) = exp(z) on [-20, 5]", worst <= 1e-12, "max relative error " + num(worst)));
  const double half = mittag_leffler(0.5, 1.0, 1.0);
  const double err = std::abs(half - 5.0089800807622834663);
  out.push_back(check("E_{0.5,1}(1) = 5.008980...", err <= 1e-9, "absolute error " + num(err)));
  bool exact = true;
  for (double alpha : {0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) exact = exact && mittag_leffler(alpha, 1.0, 0.0) == 1.0;
  out.push_back(check("E_{a,1}(0) = 1 exactly", exact, exact ? "all alpha" : "mismatch"));
  return out;
}

// ---- 3: linear spectral oracle --------------------------------------------

std::vector<CheckLine> criterion_linear_oracle() {
  const DomainSpec d{1.0, 64, 1};
  Field u0(d);
  for (int i = 0; i < 64; ++i) u0[i] = 0.5 + std::sin(std::numbers::pi * d.coordinate(i) / d.half_width);
  ModelParameters params;
  params.alpha = 0.5;
  params.p = 2.0;
  params.mu = 0.0;
  params.k = 0.0;
  params.gamma = 0.5;
  const Field reference = linear_spectral_reference(u0, params.gamma, params.alpha, {1.0}).front();

  std::vector<double> dts{1e-3, 5e-4};
  std::vector<double> errs;
  double runtime = 0.0;
  for (double dt : dts) {
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.t_final = 1.0;
    cfg.record_every = 1000000;
    const RunReport r = run(u0, params, cfg);
    if (dt == dts.front()) runtime = r.wall_time;
    errs.push_back(max_abs_diff(r.final_field, reference));
  }
  const double order = std::log2(errs[0] / errs[1]);
  return {check("sup error at dt=1e-3 <= 1e-3", errs[0] <= 1e-3, "error " + num(errs[0])),
          check("order under dt halving >= 1.3", order >= 1.3,
                "observed " + num(order) + " (errors " + num(errs[0]) + ", " + num(errs[1]) + ")"),
          check("runtime < 60 s", runtime < 60.0, num(runtime) + " s")};
}

// ---- 4, 10, 11: Allee dichotomy -------------------------------------------

struct AlleeSetup {
  DomainSpec domain{8.0, 16, 1};
  ModelParameters params;
  SolverConfig config;
  KernelGrid kernel;
};

AlleeSetup allee_setup(double alpha) {
  AlleeSetup s;
  s.params.alpha = alpha;
  s.params.p = 1.5;
  s.params.mu = 1.0;
  s.params.k = 1.0;
  s.params.gamma = 3.0 / 16.0;
  s.config.dt = 0.01;
  s.config.t_final = 200.0;
  s.config.record_every = 100;
  s.config.record_fields = true;
  s.kernel = discretize_kernel(KernelShape::box, 1.0, 0.1, s.domain);
  return s;
}

RunReport allee_run(double alpha, double u0) {
  const AlleeSetup s = allee_setup(alpha);
  return run(Field(s.domain, u0), s.params, s.config, &s.kernel);
}

const RunReport& cached_allee_run(double alpha, double u0) {
  static std::map<std::pair<double, double>, RunReport> cache;
  auto it = cache.find({alpha, u0});
  if (it == cache.end()) it = cache.emplace(std::make_pair(alpha, u0), allee_run(alpha, u0)).first;
  return it->second;
}

std::vector<CheckLine> criterion_allee() {
  const EquilibriumRoots roots = equilibrium_roots(1.0, 1.0, 3.0 / 16.0);
  std::vector<CheckLine> out;
  for (double alpha : {0.5, 0.8}) {
    const RunReport& low = cached_allee_run(alpha, 0.2);
    const AlleeVerdict vl = allee_classify(low, roots);
    out.push_back(check("u0=0.20 extinction, alpha=" + num(alpha), vl == AlleeVerdict::extinction,
                        to_string(vl) + ", terminal sup " + num(low.series.back().sup_norm) + " vs band " +
                            num(0.02 * roots.a)));
    const RunReport& high = cached_allee_run(alpha, 0.5);
    const AlleeVerdict vh = allee_classify(high, roots);
    const double terminal = high.series.back().sup_norm;
    out.push_back(check("u0=0.50 persistence within 5% of A, alpha=" + num(alpha),
                        vh == AlleeVerdict::persistence && std::abs(terminal - 0.75) <= 0.05 * 0.75,
                        to_string(vh) + ", terminal sup " + num(terminal)));
  }
  return out;
}

std::vector<CheckLine> criterion_lyapunov() {
  const EquilibriumRoots roots = equilibrium_roots(1.0, 1.0, 3.0 / 16.0);
  std::vector<CheckLine> out;
  for (double alpha : {0.5, 0.8}) {
    const RunReport& r = cached_allee_run(alpha, 0.2);
    const auto delta = lyapunov_ball_radius(roots, 1.0, 1.0, r.max_sup_norm(), 1.0);
    if (!delta) {
      out.push_back(check("max H non-increasing, alpha=" + num(alpha), false, "no admissible ball radius"));
      continue;
    }
    const LyapunovSeries ly = lyapunov_monitor(r, roots, 1.0, 1.0, *delta);
    out.push_back(check("max H non-increasing, alpha=" + num(alpha), ly.verdict == Verdict::pass,
                        to_string(ly.verdict) + ", delta " + num(*delta) + ", H " + num(ly.h_max.front()) + " -> " +
                            num(ly.h_max.back())));
  }
  return out;
}

std::vector<CheckLine> criterion_determinism() {
  const RunReport a = allee_run(0.8, 0.5);
  const RunReport b = allee_run(0.8, 0.5);
  const std::string ca = series_csv(a.series);
  const std::string cb = series_csv(b.series);
  return {check("identical CSV on repeat", ca == cb, std::to_string(ca.size()) + " bytes"),
          check("identical final field on repeat", a.final_field == b.final_field,
                "max difference " + num(max_abs_diff(a.final_field, b.final_field)))};
}

// ---- 5: decay envelope -----------------------------------------------------

std::vector<CheckLine> criterion_decay() {
  std::vector<CheckLine> out;
  const DomainSpec d{8.0, 64, 1};
  const KernelGrid kernel = discretize_kernel(KernelShape::box, 1.0, 0.1, d);
  RunManifest m;
  m.domain = d;
  m.model.dim = 1;
  m.initial.kind = InitialKind::gaussian_bump;
  m.initial.center = {0.0};
  m.initial.height = 0.5;
  m.initial.width = 1.0;
  const Field u0 = initial_field(m);
  for (double alpha : {0.5, 0.8}) {
    ModelParameters params;
    params.alpha = alpha;
    params.p = 1.5;
    params.mu = 0.01;
    params.k = 1.0;
    params.gamma = 1.0;
    SolverConfig cfg;
    cfg.dt = 0.01;
    cfg.t_final = 5.0;
    cfg.record_every = 10;
    const RunReport r = run(u0, params, cfg, &kernel);
    const double s = sigma(params.gamma, params.mu, u0.sup_norm());
    const EnvelopeCheck env = decay_envelope_check(r.series, s, alpha, 0.05);
    out.push_back(check("sup <= |u0| E_a(-sigma t^a) * 1.05, alpha=" + num(alpha), env.verdict == Verdict::pass,
                        "sigma " + num(s) + ", worst ratio " + num(env.worst_ratio) + ", literal exponential " +
                            (env.literal_exponential_holds ? "holds" : "violated")));
  }
  return out;
}

// ---- 6: boundedness and blow-up --------------------------------------------

std::vector<CheckLine> criterion_boundedness() {
  std::vector<CheckLine> out;
  const DomainSpec d{4.0, 64, 2};
  ModelParameters params;
  params.alpha = 0.5;
  params.p = 1.5;
  params.mu = 1.0;
  params.k = 3.0;
  params.gamma = 0.1;
  params.dim = 2;
  AnalysisConstants consts;
  consts.delta0 = 0.25;
  consts.eta = 0.9;
  const KernelGrid kernel = discretize_kernel(KernelShape::box, consts.delta0, consts.eta, d);
  const double threshold = k_star(2, params.mu, consts);
  out.push_back(check("k > k_star", params.k > threshold, "k " + num(params.k) + ", k_star " + num(threshold)));

  RunManifest m;
  m.domain = d;
  m.model.dim = 2;
  m.initial.kind = InitialKind::gaussian_bump;
  m.initial.center = {0.0, 0.0};
  m.initial.height = 1.0;
  m.initial.width = 1.0;
  const Field u0 = initial_field(m);
  SolverConfig cfg;
  cfg.dt = 0.01;
  cfg.t_final = 10.0;
  cfg.record_every = 10;
  const RunReport r = run(u0, params, cfg, &kernel);
  const BoundEstimate K = bound_K(params, consts, u0.sup_norm(), cfg.t_final);
  const BoundednessCheck bc = boundedness_check(r, K);
  out.push_back(check("2D run completes with max sup <= K", bc.verdict == Verdict::pass,
                      to_string(r.status) + ", max sup " + num(r.max_sup_norm()) + ", K " +
                          (K.ok() ? num(K.value) : "unavailable (" + K.term + ")")));

  ModelParameters blow = params;
  blow.k = 0.0;
  blow.gamma = 0.0;
  SolverConfig bcfg;
  bcfg.dt = 1e-4;
  bcfg.t_final = 1.0;
  bcfg.record_every = 1000;
  const RunReport br = run(Field(d, 2.0), blow, bcfg);
  const ScalarTrajectory oracle =
      fractional_adams([](double u) { return std::max(u, 0.0) * std::max(u, 0.0); }, 2.0, blow.alpha, 2e-5, 1.0,
                       bcfg.blowup_threshold);
  const bool both = br.status == RunStatus::blowup && oracle.blowup_time.has_value();
  const double rel = both ? std::abs(br.status_time - *oracle.blowup_time) / *oracle.blowup_time : 1.0;
  out.push_back(check("blow-up time within 10% of scalar oracle", both && rel <= 0.1,
                      to_string(br.status) + " at t=" + num(br.status_time) + ", oracle " +
                          (oracle.blowup_time ? num(*oracle.blowup_time) : "none") + ", relative gap " + num(rel)));
  return out;
}

// ---- 7: nonlinear diffusion with global mass -------------------------------

std::vector<CheckLine> criterion_theorem3() {
  std::vector<CheckLine> out;
  struct Case {
    int dim;
    double m;
    double p;
  };
  for (const Case c : {Case{2, 2.5, 1.8}, Case{1, 1.5, 1.8}, Case{1, 3.0, 1.8}}) {
    const DomainSpec d{4.0, 64, c.dim};
    const ModelParameters params = ModelParameters::global_mass(0.5, c.p, c.m, c.dim);
    const Field u0(d, uniform_samples(7, d.total_points(), 1.0));
    SolverConfig cfg;
    cfg.dt = 0.05;
    cfg.t_final = 50.0;
    cfg.record_every = 10;
    const RunReport r = run(u0, params, cfg);
    const double top = r.max_sup_norm();
    out.push_back(check("dim=" + std::to_string(c.dim) + " m=" + num(c.m) + " completes bounded",
                        r.status == RunStatus::completed && std::isfinite(top),
                        to_string(r.status) + ", max sup " + num(top) + ", final sup " +
                            num(r.series.back().sup_norm)));
  }
  return out;
}

// ---- 8: discrete inequalities ----------------------------------------------

std::vector<CheckLine> criterion_inequalities() {
  std::vector<CheckLine> out;
  constexpr int kSequences = 1000;
  constexpr std::size_t kLength = 64;
  const double dt = 1.0 / kLength;
  int alpha_index = 0;
  for (double alpha : {0.3, 0.5, 0.8}) {
    int fail_alikhanov = 0, fail_square = 0, fail_cube = 0;
    for (int s = 0; s < kSequences; ++s) {
      const auto seed = static_cast<std::uint64_t>(100000 * alpha_index + s);
      const std::vector<double> steps = uniform_samples(seed, kLength + 1, 2.0);
      std::vector<double> walk(kLength + 1), positive(kLength + 1);
      double v = 0.0;
      for (std::size_t j = 0; j <= kLength; ++j) {
        v += steps[j] - 1.0;
        walk[j] = v;
        positive[j] = std::abs(v);
      }
      if (!alikhanov_check(walk, alpha, dt).pass) ++fail_alikhanov;
      if (!power_inequality_check(positive, 2, alpha, dt).pass) ++fail_square;
      if (!power_inequality_check(positive, 3, alpha, dt).pass) ++fail_cube;
    }
    out.push_back(check("v D v >= 1/2 D v^2 on 1000 walks, alpha=" + num(alpha), fail_alikhanov == 0,
                        std::to_string(fail_alikhanov) + " failing sequences"));
    out.push_back(check("u D u >= 1/2 D u^2 on 1000 sequences, alpha=" + num(alpha), fail_square == 0,
                        std::to_string(fail_square) + " failing sequences"));
    out.push_back(check("u^2 D u >= 1/3 D u^3 on 1000 sequences, alpha=" + num(alpha), fail_cube == 0,
                        std::to_string(fail_cube) + " failing sequences"));
    ++alpha_index;
  }
  return out;
}

// ---- 9: operator identities -------------------------------------------------

Field standard_laplacian(const Field& u) {
  const DomainSpec& d = u.domain();
  const int n = d.points_per_axis;
  const double inv_h2 = 1.0 / (d.spacing() * d.spacing());
  auto at = [&](int i, int j) {
    i = (i % n + n) % n;
    j = (j % n + n) % n;
    return d.dim == 1 ? u[i] : u[static_cast<std::size_t>(i) * n + j];
  };
  Field out(d);
  if (d.dim == 1) {
    for (int i = 0; i < n; ++i) out[i] = (at(i + 1, 0) - 2.0 * at(i, 0) + at(i - 1, 0)) * inv_h2;
    return out;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out[static_cast<std::size_t>(i) * n + j] =
          (at(i + 1, j) + at(i - 1, j) + at(i, j + 1) + at(i, j - 1) - 4.0 * at(i, j)) * inv_h2;
  return out;
}

std::vector<CheckLine> criterion_operators() {
  std::vector<CheckLine> out;
  double worst_sum = 0.0;
  for (int s = 0; s < 100; ++s) {
    const DomainSpec d = s % 2 == 0 ? DomainSpec{1.0, 64, 1} : DomainSpec{1.0, 32, 2};
    const Field u = random_field(d, 500 + s, -1.0, 1.0);
    const double p = 1.0 + uniform_samples(900 + s, 1, 1.0)[0];
    const Field lap = p_laplacian(u, p, 1e-6);
    double sum = 0.0, mag = 0.0;
    for (double v : lap.values()) {
      sum += v;
      mag += std::abs(v);
    }
    worst_sum = std::max(worst_sum, std::abs(sum) / mag);
  }
  out.push_back(check("p-Laplacian grid sum vanishes on 100 fields", worst_sum <= 1e-12,
                      "max |sum| / sum|.| = " + num(worst_sum)));

  double worst_stencil = 0.0;
  bool eps_free = true;
  for (int s = 0; s < 20; ++s) {
    const DomainSpec d = s % 2 == 0 ? DomainSpec{1.0, 64, 1} : DomainSpec{1.0, 32, 2};
    const Field u = random_field(d, 700 + s, -1.0, 1.0);
    const Field a = p_laplacian(u, 2.0, 1e-6);
    const Field b = p_laplacian(u, 2.0, 0.5);
    eps_free = eps_free && a == b;
    const Field ref = standard_laplacian(u);
    worst_stencil = std::max(worst_stencil, max_abs_diff(a, ref) / ref.sup_norm());
  }
  out.push_back(check("p=2 equals the standard stencil, independent of eps", eps_free && worst_stencil <= 1e-12,
                      std::string(eps_free ? "eps-independent" : "eps-dependent") + ", max relative gap " +
                          num(worst_stencil)));

  double worst_conv = 0.0;
  const KernelShape shapes[] = {KernelShape::box, KernelShape::triangle, KernelShape::gaussian};
  for (int s = 0; s < 50; ++s) {
    const DomainSpec d{4.0, 64, 1};
    const KernelGrid k = discretize_kernel(shapes[s % 3], 0.5, 1e-3, d);
    const Field u = random_field(d, 1100 + s, -1.0, 1.0);
    const Field ref = direct_convolution(u, k.values);
    worst_conv = std::max(worst_conv, max_abs_diff(convolve_kernel(u, k), ref) / ref.sup_norm());
  }
  for (int s = 0; s < 4; ++s) {
    const DomainSpec d{4.0, 64, 2};
    const KernelGrid k = discretize_kernel(shapes[s % 3], 0.5, 1e-3, d);
    const Field u = random_field(d, 1300 + s, -1.0, 1.0);
    const Field ref = direct_convolution(u, k.values);
    worst_conv = std::max(worst_conv, max_abs_diff(convolve_kernel(u, k), ref) / ref.sup_norm());
  }
  out.push_back(check("FFT convolution matches direct sum on n=64", worst_conv <= 1e-10,
                      "max relative gap " + num(worst_conv)));
  return out;
}

struct CriterionEntry {
  const char* title;
  std::vector<CheckLine> (*body)();
};

const std::vector<CriterionEntry>& registry() {
  static const std::vector<CriterionEntry> entries{
      {"Caputo L1 order and exactness", criterion_caputo},
      {"Mittag-Leffler accuracy", criterion_mlf},
      {"linear run vs spectral oracle", criterion_linear_oracle},
      {"Allee dichotomy", criterion_allee},
      {"decay envelope", criterion_decay},
      {"boundedness and blow-up contrast", criterion_boundedness},
      {"global-mass nonlinear diffusion stays bounded", criterion_theorem3},
      {"discrete fractional inequalities", criterion_inequalities},
      {"operator identities", criterion_operators},
      {"Lyapunov functional monotonicity", criterion_lyapunov},
      {"determinism", criterion_determinism},
  };
  return entries;
}

}  // namespace

bool CriterionResult::pass() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

int criterion_count() { return static_cast<int>(registry().size()); }

std::string criterion_title(int id) {
  if (id < 1 || id > criterion_count()) throw std::invalid_argument("unknown criterion " + std::to_string(id));
  return registry()[static_cast<std::size_t>(id - 1)].title;
}

CriterionResult run_criterion(int id) {
  CriterionResult result;
  result.id = id;
  result.title = criterion_title(id);
  const auto started = std::chrono::steady_clock::now();
  try {
    result.checks = registry()[static_cast<std::size_t>(id - 1)].body();
  } catch (const std::exception& e) {
    result.checks.push_back(check("completed without error", false, e.what()));
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

std::vector<std::string> suite_names() {
  return {"caputo", "mlf", "operators", "linear-oracle", "allee", "boundedness", "inequalities", "theorem3"};
}

std::vector<int> suite_criteria(const std::string& suite) {
  static const std::map<std::string, std::vector<int>> table{
      {"caputo", {1}},      {"mlf", {2}},          {"linear-oracle", {3}}, {"allee", {4, 10, 11}},
      {"boundedness", {5, 6}}, {"theorem3", {7}}, {"inequalities", {8}},  {"operators", {9}},
  };
  const auto it = table.find(suite);
  if (it == table.end()) throw std::invalid_argument("unknown suite '" + suite + "'");
  return it->second;
}

std::string format_result(const CriterionResult& result) {
  std::string out;
  for (const auto& c : result.checks)
    out += std::string("    ") + (c.pass ? "[PASS] " : "[FAIL] ") + c.name + ": " + c.detail + "\n";
  char head[256];
  std::snprintf(head, sizeof head, "criterion %2d %s %s (%.1f s)\n", result.id, result.pass() ? "PASS" : "FAIL",
                result.title.c_str(), result.seconds);
  return out + head;
}

}  // namespace fracplap
