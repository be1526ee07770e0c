#include "fracplap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracplap/error.hpp"
#include "fracplap/mittag_leffler.hpp"
#include "fracplap/spatial.hpp"

namespace fracplap {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::undecided:
      return "undecided";
  }
  return "undecided";
}

std::string to_string(AlleeVerdict v) {
  switch (v) {
    case AlleeVerdict::extinction:
      return "extinction";
    case AlleeVerdict::persistence:
      return "persistence";
    case AlleeVerdict::blowup:
      return "blowup";
    case AlleeVerdict::undecided:
      return "undecided";
  }
  return "undecided";
}

double h_scalar(double u, const EquilibriumRoots& roots) {
  if (!(u < roots.a)) throw HypothesisError("h(u) requires u < a");
  return roots.A * std::log1p(-u / roots.A) - roots.a * std::log1p(-u / roots.a);
}

double h_prime(double u, const EquilibriumRoots& roots) {
  return (roots.A - roots.a) * u / ((roots.a - u) * (roots.A - u));
}

double h_second(double u, const EquilibriumRoots& roots) {
  const double da = roots.a - u;
  const double dA = roots.A - u;
  return roots.a / (da * da) - roots.A / (dA * dA);
}

Field h_functional(const Field& u, const EquilibriumRoots& roots, double delta) {
  double top = -std::numeric_limits<double>::infinity();
  for (double v : u.values()) top = std::max(top, v);
  if (!(top < roots.a))
    throw HypothesisError("H is defined only while max u < a (max u = " + std::to_string(top) +
                          ", a = " + std::to_string(roots.a) + ")");
  Field hu(u.domain());
  for (std::size_t i = 0; i < u.size(); ++i) hu[i] = h_scalar(u[i], roots);
  return ball_integral(hu, delta);
}

Field d_functional(const Field& u, const EquilibriumRoots& roots, double mu, double k, double delta) {
  Field out = local_l2_ball(u, delta);
  const double factor = 0.5 * (roots.A - roots.a) * mu * k;
  for (double& v : out.values()) v *= factor;
  return out;
}

std::optional<double> lyapunov_ball_radius(const EquilibriumRoots& roots, double mu, double k, double sup_bound,
                                           double delta0) {
  const double A = roots.A;
  const double a = roots.a;
  const double K = sup_bound;
  const double negative = (A - a) * (A - a) / (A * A * a);
  const double growth = (A - a) * std::pow(K, 4) * mu * k / (2.0 * (A - K) * (A - K) * (a - K) * (a - K));
  double delta = 0.5 * delta0;
  for (int i = 0; i < 60; ++i) {
    const double two_delta = 2.0 * delta;
    if (-negative + growth * two_delta * two_delta <= 0.0) return delta;
    delta *= 0.5;
  }
  return std::nullopt;
}

Verdict h_series_verdict(const std::vector<double>& h_max, double slack) {
  if (h_max.empty()) return Verdict::pass;
  const double limit = h_max.front() * (1.0 + slack);
  for (double h : h_max)
    if (h > limit) return Verdict::fail;
  return Verdict::pass;
}

LyapunovSeries lyapunov_monitor(const std::vector<double>& times, const std::vector<Field>& fields,
                                const EquilibriumRoots& roots, double mu, double k, double delta, double slack) {
  if (times.size() != fields.size()) throw std::invalid_argument("lyapunov_monitor: times and fields differ in length");
  LyapunovSeries out;
  for (std::size_t j = 0; j < fields.size(); ++j) {
    Field h;
    try {
      h = h_functional(fields[j], roots, delta);
    } catch (const HypothesisError&) {
      out.verdict = Verdict::undecided;
      out.violation_time = times[j];
      return out;
    }
    const Field d = d_functional(fields[j], roots, mu, k, delta);
    out.times.push_back(times[j]);
    out.h_max.push_back(*std::max_element(h.values().begin(), h.values().end()));
    out.d_max.push_back(*std::max_element(d.values().begin(), d.values().end()));
  }
  out.verdict = h_series_verdict(out.h_max, slack);
  return out;
}

LyapunovSeries lyapunov_monitor(const RunReport& run, const EquilibriumRoots& roots, double mu, double k,
                                double delta, double slack) {
  if (run.recorded_fields.size() != run.series.size())
    throw std::invalid_argument("lyapunov_monitor needs a run recorded with record_fields");
  std::vector<double> times;
  times.reserve(run.series.size());
  for (const auto& r : run.series) times.push_back(r.t);
  return lyapunov_monitor(times, run.recorded_fields, roots, mu, k, delta, slack);
}

EnvelopeCheck decay_envelope_check(const std::vector<NormRecord>& series, double sigma, double alpha, double slack) {
  EnvelopeCheck out;
  if (!(sigma > 0.0)) {
    out.verdict = Verdict::undecided;
    return out;
  }
  if (series.empty()) return out;
  const double u0 = series.front().sup_norm;
  const double rate = std::pow(sigma, 1.0 / alpha);
  for (const auto& r : series) {
    const double envelope = u0 * mittag_leffler(alpha, 1.0, -sigma * std::pow(r.t, alpha));
    if (envelope > 0.0) out.worst_ratio = std::max(out.worst_ratio, r.sup_norm / envelope);
    if (r.sup_norm > envelope * (1.0 + slack) && out.verdict == Verdict::pass) {
      out.verdict = Verdict::fail;
      out.first_violation = r.t;
    }
    if (r.sup_norm > u0 * std::exp(-rate * r.t)) out.literal_exponential_holds = false;
  }
  return out;
}

AlleeVerdict allee_classify(const RunReport& run, const EquilibriumRoots& roots, const AlleeBands& bands) {
  if (run.status == RunStatus::blowup) return AlleeVerdict::blowup;
  if (run.status == RunStatus::nonfinite || run.series.empty()) return AlleeVerdict::undecided;
  const double terminal = run.series.back().sup_norm;
  if (terminal < bands.extinction_fraction * roots.a) return AlleeVerdict::extinction;
  if (std::abs(terminal - roots.A) <= bands.persistence_fraction * roots.A) return AlleeVerdict::persistence;
  return AlleeVerdict::undecided;
}

BoundednessCheck boundedness_check(const RunReport& run, double K) {
  BoundednessCheck out;
  if (!(K > 0.0) || !std::isfinite(K)) {
    out.verdict = Verdict::undecided;
    return out;
  }
  out.max_ratio = run.max_sup_norm() / K;
  if (run.status != RunStatus::completed || out.max_ratio > 1.0) out.verdict = Verdict::fail;
  return out;
}

BoundednessCheck boundedness_check(const RunReport& run, const BoundEstimate& K) {
  if (!K.ok()) return {Verdict::undecided, 0.0};
  return boundedness_check(run, K.value);
}

}  // namespace fracplap
