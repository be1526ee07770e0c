#include "fracplap/integrator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fracplap/convolution.hpp"
#include "fracplap/error.hpp"
#include "fracplap/mittag_leffler.hpp"

namespace fracplap {
namespace {

constexpr double kSolverTolerance = 1e-10;
constexpr double kNegativeWarning = -1e-8;

std::size_t wrap(int i, int n) { return static_cast<std::size_t>(((i % n) + n) % n); }

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Neighbour across face `idx` along `axis`.
std::size_t face_partner(const DomainSpec& d, std::size_t idx, int axis) {
  const int n = d.points_per_axis;
  if (d.dim == 1) return wrap(static_cast<int>(idx) + 1, n);
  const int i = static_cast<int>(idx) / n;
  const int j = static_cast<int>(idx) % n;
  return axis == 0 ? wrap(i + 1, n) * n + j : static_cast<std::size_t>(i) * n + wrap(j + 1, n);
}

// Neighbour on the other side of `idx` (the face owned by that neighbour).
std::size_t face_owner_before(const DomainSpec& d, std::size_t idx, int axis) {
  const int n = d.points_per_axis;
  if (d.dim == 1) return wrap(static_cast<int>(idx) - 1, n);
  const int i = static_cast<int>(idx) / n;
  const int j = static_cast<int>(idx) % n;
  return axis == 0 ? wrap(i - 1, n) * n + j : static_cast<std::size_t>(i) * n + wrap(j - 1, n);
}

// Face coefficients of the lagged operator div(c grad u) ~ Delta_p u^m.
FaceCoefficients lagged_coefficients(const Field& prev, const ModelParameters& params, double eps_reg) {
  if (params.m == 1.0) return p_diffusivity(prev, params.p, eps_reg);
  const Field v = positive_power(prev, params.m);
  FaceCoefficients c = p_diffusivity(v, params.p, eps_reg);
  const DomainSpec& d = prev.domain();
  for (int axis = 0; axis < d.dim; ++axis) {
    for (std::size_t idx = 0; idx < prev.size(); ++idx) {
      const std::size_t nb = face_partner(d, idx, axis);
      const double du = prev[nb] - prev[idx];
      double slope;
      if (du != 0.0) {
        slope = (v[nb] - v[idx]) / du;
      } else {
        slope = params.m * std::pow(std::max(prev[idx], 0.0), params.m - 1.0);
      }
      c.axis[axis][idx] *= slope;
    }
  }
  return c;
}

// Solves (scale I - div(c grad)) x = b with Jacobi-preconditioned CG.
Field solve_shifted_diffusion(const FaceCoefficients& c, double scale, const Field& b, const Field& guess) {
  const DomainSpec& d = b.domain();
  const std::size_t n = b.size();
  const double inv_h2 = 1.0 / (d.spacing() * d.spacing());

  std::vector<double> inv_diag(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    double diag = scale;
    for (int axis = 0; axis < d.dim; ++axis)
      diag += (c.axis[axis][idx] + c.axis[axis][face_owner_before(d, idx, axis)]) * inv_h2;
    inv_diag[idx] = 1.0 / diag;
  }
  auto apply = [&](const std::vector<double>& x) {
    const Field lap = apply_face_diffusion(c, Field(d, x));
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = scale * x[i] - lap[i];
    return out;
  };

  const std::vector<double> rhs(b.values().begin(), b.values().end());
  const double b_norm = std::sqrt(dot(rhs, rhs));
  if (b_norm == 0.0) return Field(d, 0.0);
  const double target = kSolverTolerance * b_norm;

  std::vector<double> x(guess.values().begin(), guess.values().end());
  std::vector<double> r = apply(x);
  for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - r[i];
  std::vector<double> z(n), p(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);
  const std::size_t max_iter = 10 * n;
  for (std::size_t it = 0; it < max_iter; ++it) {
    if (std::sqrt(dot(r, r)) <= target) return Field(d, std::move(x));
    const std::vector<double> ap = apply(p);
    const double pap = dot(p, ap);
    if (!(pap > 0.0) || !std::isfinite(pap)) break;
    const double step = rz / pap;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += step * p[i];
      r[i] -= step * ap[i];
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  if (std::sqrt(dot(r, r)) <= target) return Field(d, std::move(x));
  throw SolverError("lagged-implicit solve did not reach residual " + std::to_string(kSolverTolerance) +
                    " relative within " + std::to_string(max_iter) + " iterations");
}

}  // namespace

std::string to_string(Scheme scheme) {
  return scheme == Scheme::explicit_step ? "explicit" : "lagged_implicit";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "explicit") return Scheme::explicit_step;
  if (name == "lagged_implicit") return Scheme::lagged_implicit;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::completed:
      return "completed";
    case RunStatus::blowup:
      return "blowup";
    case RunStatus::nonfinite:
      return "nonfinite";
  }
  return "completed";
}

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw std::invalid_argument("t_final must be positive");
  if (!(dt < t_final)) throw std::invalid_argument("dt must be smaller than t_final");
  if (!(eps_reg > 0.0)) throw std::invalid_argument("eps_reg must be positive");
  if (!(blowup_threshold > 1.0)) throw std::invalid_argument("blowup_threshold must exceed 1");
  if (record_every < 1) throw std::invalid_argument("record_every must be at least 1");
  for (double s : snapshot_times)
    if (!(s >= 0.0 && s <= t_final)) throw std::invalid_argument("snapshot times must lie in [0, t_final]");
}

std::size_t SolverConfig::step_count() const {
  return static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
}

NormRecord measure(const Field& u, double t) {
  return {t, u.sup_norm(), u.l2_norm(), u.l1_norm(), u.min_value()};
}

double RunReport::max_sup_norm() const {
  double m = 0.0;
  for (const auto& r : series) m = std::max(m, r.sup_norm);
  return m;
}

Field reaction_field(const Field& u, const ModelParameters& params, const KernelGrid* kernel) {
  Field out(u.domain());
  if (params.coupling == CouplingMode::global_mass) {
    const double mass = global_mass(u);
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = reaction(u[i], mass, params);
    return out;
  }
  if (params.k == 0.0 || params.mu == 0.0) {
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = reaction(u[i], 0.0, params);
    return out;
  }
  if (kernel == nullptr) throw std::invalid_argument("kernel coupling with k != 0 needs a kernel");
  const Field conv = convolve_kernel(u, *kernel);
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = reaction(u[i], conv[i], params);
  return out;
}

Field rhs_field(const Field& u, const ModelParameters& params, const KernelGrid* kernel, double eps_reg) {
  Field out = p_laplacian_power(u, params.p, params.m, eps_reg);
  const Field r = reaction_field(u, params, kernel);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += r[i];
  return out;
}

Field step(const HistoryBuffer& history, const StepContext& ctx) {
  const Field& prev = history.latest();
  const std::vector<double> tail = history.memory_tail(ctx.weights);
  const double scale = ctx.weights.scale;

  if (ctx.config.scheme == Scheme::explicit_step) {
    const Field rhs = rhs_field(prev, ctx.params, ctx.kernel, ctx.config.eps_reg);
    Field next(prev.domain());
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = prev[i] - tail[i] + rhs[i] / scale;
    return next;
  }

  const Field react = reaction_field(prev, ctx.params, ctx.kernel);
  Field b(prev.domain());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = scale * (prev[i] - tail[i]) + react[i];
  const FaceCoefficients c = lagged_coefficients(prev, ctx.params, ctx.config.eps_reg);
  return solve_shifted_diffusion(c, scale, b, prev);
}

FieldStatus detect_blowup(const Field& field, double threshold) {
  if (!field.all_finite()) return FieldStatus::nonfinite;
  if (field.sup_norm() > threshold) return FieldStatus::blowup;
  return FieldStatus::ok;
}

RunReport run(const Field& u0, const ModelParameters& params, const SolverConfig& config, const KernelGrid* kernel) {
  const auto started = std::chrono::steady_clock::now();
  u0.domain().validate();
  config.validate();
  const auto violations = validate_params(params, Regime::numerical);
  if (!violations.empty()) {
    std::string msg = "invalid parameters:";
    for (const auto& v : violations) msg += " " + v.field + " " + v.message + ";";
    throw std::invalid_argument(msg);
  }
  if (params.dim != u0.domain().dim) throw GridMismatch("parameter dim does not match the grid");
  if (!u0.all_finite()) throw std::invalid_argument("initial data must be finite");
  const bool needs_kernel = params.coupling == CouplingMode::kernel && params.k != 0.0 && params.mu != 0.0;
  if (needs_kernel) {
    if (kernel == nullptr) throw std::invalid_argument("kernel coupling with k != 0 needs a kernel");
    require_same_grid(u0.domain(), kernel->values.domain(), "run kernel");
  }

  const std::size_t total = config.step_count();
  StepContext ctx{params, config, l1_weights(params.alpha, total, config.dt), needs_kernel ? kernel : nullptr};

  std::vector<double> pending_snapshots = config.snapshot_times;
  std::sort(pending_snapshots.begin(), pending_snapshots.end());
  std::size_t next_snapshot = 0;
  RunReport report;
  auto take_snapshots = [&](const Field& u, double t) {
    while (next_snapshot < pending_snapshots.size() && pending_snapshots[next_snapshot] <= t + 1e-9 * config.dt) {
      report.snapshots.push_back({t, u});
      ++next_snapshot;
    }
  };
  bool warned_negative = false;
  auto record = [&](const Field& u, double t) {
    report.series.push_back(measure(u, t));
    if (config.record_fields) report.recorded_fields.push_back(u);
    if (!warned_negative && report.series.back().min_value < kNegativeWarning) {
      warned_negative = true;
      report.warnings.push_back("field dropped below " + std::to_string(kNegativeWarning) + " at t = " +
                                std::to_string(t));
    }
  };

  record(u0, 0.0);
  take_snapshots(u0, 0.0);
  HistoryBuffer history(u0, config.dt);
  Field current = u0;
  for (std::size_t n = 1; n <= total; ++n) {
    Field next = step(history, ctx);
    const double t = static_cast<double>(n) * config.dt;
    const FieldStatus status = detect_blowup(next, config.blowup_threshold);
    report.steps = n;
    report.final_time = t;
    if (status != FieldStatus::ok) {
      report.status = status == FieldStatus::blowup ? RunStatus::blowup : RunStatus::nonfinite;
      report.status_time = t;
      record(next, t);
      current = std::move(next);
      break;
    }
    if (n % static_cast<std::size_t>(config.record_every) == 0 || n == total) record(next, t);
    take_snapshots(next, t);
    current = next;
    history.push(std::move(next));
  }
  report.final_field = std::move(current);
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

double laplacian_symbol(const DomainSpec& domain, int k0, int k1) {
  const double h = domain.spacing();
  const int n = domain.points_per_axis;
  auto axis = [&](int k) {
    const double s = 2.0 * std::sin(std::numbers::pi * k / n) / h;
    return s * s;
  };
  double sum = axis(k0);
  if (domain.dim == 2) sum += axis(k1);
  return -sum;
}

std::vector<Field> linear_spectral_reference(const Field& u0, double gamma, double alpha,
                                             const std::vector<double>& times) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be non-negative");
  std::vector<Field> out;
  out.reserve(times.size());
  for (double t : times) {
    if (!(t >= 0.0)) throw std::invalid_argument("times must be non-negative");
    if (t == 0.0) {
      out.push_back(u0);
      continue;
    }
    const double ta = std::pow(t, alpha);
    std::map<double, double> cache;
    out.push_back(apply_fourier_multiplier(u0, [&](int k0, int k1) {
      const double lambda = laplacian_symbol(u0.domain(), k0, k1) - gamma;
      auto [it, inserted] = cache.try_emplace(lambda, 0.0);
      if (inserted) it->second = mittag_leffler(alpha, 1.0, lambda * ta);
      return it->second;
    }));
  }
  return out;
}

}  // namespace fracplap
