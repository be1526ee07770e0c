#include "fracplap/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracplap/error.hpp"
#include "fracplap/mittag_leffler.hpp"

namespace fracplap {
namespace {

constexpr std::size_t kPointBlock = 256;
// Stepwise inequalities tolerate rounding of this relative size.
constexpr double kInequalitySlack = 1e-12;

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

StepwiseInequality compare_series(std::span<const double> lhs, std::span<const double> rhs) {
  StepwiseInequality out;
  out.difference.reserve(lhs.size());
  for (std::size_t n = 1; n < lhs.size(); ++n) {
    const double diff = lhs[n] - rhs[n];
    out.difference.push_back(diff);
    if (diff < -kInequalitySlack * (std::abs(lhs[n]) + std::abs(rhs[n])) && out.pass) {
      out.pass = false;
      out.first_failure = n;
    }
  }
  return out;
}

}  // namespace

L1Weights l1_weights(double alpha, std::size_t n_steps, double dt) {
  require_alpha(alpha);
  if (n_steps < 1) throw std::invalid_argument("l1_weights needs at least one step");
  if (!(dt > 0.0)) throw std::invalid_argument("l1_weights needs dt > 0");
  L1Weights w;
  w.alpha = alpha;
  w.dt = dt;
  w.scale = std::pow(dt, -alpha) / std::tgamma(2.0 - alpha);
  w.b.resize(n_steps);
  const double expo = 1.0 - alpha;
  w.b[0] = 1.0;
  for (std::size_t j = 1; j < n_steps; ++j) {
    // j^{1-a} ((1 + 1/j)^{1-a} - 1) without cancellation for large j.
    const double jd = static_cast<double>(j);
    w.b[j] = std::pow(jd, expo) * std::expm1(expo * std::log1p(1.0 / jd));
  }
  return w;
}

HistoryBuffer::HistoryBuffer(Field initial, double dt) : dt_(dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("history dt must be positive");
  states_.push_back(std::move(initial));
}

void HistoryBuffer::push(Field state) {
  require_same_grid(states_.front().domain(), state.domain(), "history push");
  states_.push_back(std::move(state));
}

std::vector<double> HistoryBuffer::memory_tail(const L1Weights& weights) const {
  const std::size_t n = states_.size();
  const std::size_t points = domain().total_points();
  std::vector<double> acc(points, 0.0);
  if (n < 2) return acc;
  if (weights.size() < n) throw std::invalid_argument("weight table shorter than history");

  const auto blocks = static_cast<std::ptrdiff_t>((points + kPointBlock - 1) / kPointBlock);
#pragma omp parallel for schedule(static) if (points >= 4096)
  for (std::ptrdiff_t blk = 0; blk < blocks; ++blk) {
    const std::size_t lo = static_cast<std::size_t>(blk) * kPointBlock;
    const std::size_t hi = std::min(points, lo + kPointBlock);
    for (std::size_t j = 1; j < n; ++j) {
      const double bj = weights.b[j];
      const double* newer = states_[n - j].values().data();
      const double* older = states_[n - j - 1].values().data();
      for (std::size_t i = lo; i < hi; ++i) acc[i] += bj * (newer[i] - older[i]);
    }
  }
  return acc;
}

Field discrete_caputo(const HistoryBuffer& history, const Field& candidate, const L1Weights& weights) {
  require_same_grid(history.domain(), candidate.domain(), "discrete_caputo");
  const std::vector<double> tail = history.memory_tail(weights);
  const Field& previous = history.latest();
  Field out(candidate.domain());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = weights.scale * (weights.b[0] * (candidate[i] - previous[i]) + tail[i]);
  return out;
}

std::vector<double> discrete_caputo_series(std::span<const double> series, double alpha, double dt) {
  std::vector<double> out(series.size(), 0.0);
  if (series.size() < 2) return out;
  const L1Weights w = l1_weights(alpha, series.size() - 1, dt);
  for (std::size_t n = 1; n < series.size(); ++n) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += w.b[j] * (series[n - j] - series[n - j - 1]);
    out[n] = w.scale * acc;
  }
  return out;
}

double linear_fode_solution(double lambda, double c, double y0, double alpha, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("linear_fode_solution requires t >= 0");
  if (t == 0.0) return y0;
  const double ta = std::pow(t, alpha);
  const double z = lambda * ta;
  double value = y0 * mittag_leffler(alpha, 1.0, z);
  if (c != 0.0) value += c * ta * mittag_leffler(alpha, alpha + 1.0, z);
  return value;
}

std::vector<double> duhamel_mode(double lambda, double y0, std::span<const double> forcing, double alpha,
                                 double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("duhamel_mode requires dt > 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("duhamel_mode requires alpha in (0, 1]");
  const std::size_t steps = forcing.size();
  // Antiderivative of tau^{a-1} E_{a,a}(lambda tau^a) at tau = m dt.
  std::vector<double> primitive(steps + 1, 0.0);
  for (std::size_t m = 1; m <= steps; ++m) {
    const double ta = std::pow(static_cast<double>(m) * dt, alpha);
    primitive[m] = ta * mittag_leffler(alpha, alpha + 1.0, lambda * ta);
  }
  std::vector<double> y(steps + 1);
  y[0] = y0;
  for (std::size_t n = 1; n <= steps; ++n) {
    const double ta = std::pow(static_cast<double>(n) * dt, alpha);
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += forcing[j] * (primitive[n - j] - primitive[n - j - 1]);
    y[n] = y0 * mittag_leffler(alpha, 1.0, lambda * ta) + acc;
  }
  return y;
}

CheckOutcome gronwall_bound_check(std::span<const double> y_series, double /*c1*/, double b, double alpha,
                                  double horizon) {
  if (y_series.empty()) throw std::invalid_argument("gronwall_bound_check: empty series");
  for (double y : y_series)
    if (y < 0.0) throw std::invalid_argument("gronwall_bound_check: negative sample");
  const double bound = y_series.front() + b * std::pow(horizon, alpha) / (alpha * std::tgamma(alpha));
  const double peak = *std::max_element(y_series.begin(), y_series.end());
  return {peak <= bound, bound - peak};
}

BoundValue bernoulli_decay_bound(double y0, double k_exp, double c, double c1, double alpha, double horizon) {
  if (!(k_exp > 0.0 && k_exp < 1.0)) throw std::invalid_argument("bernoulli_decay_bound: k must lie in (0,1)");
  if (!(c1 > 0.0)) throw std::invalid_argument("bernoulli_decay_bound: C1 must be positive");
  if (!(y0 > 0.0)) throw std::invalid_argument("bernoulli_decay_bound: y0 must be positive");
  const double base = std::pow(y0, 1.0 - k_exp) +
                      (c + c1 * (k_exp - 1.0)) * std::pow(horizon, alpha) / (alpha * std::tgamma(alpha));
  if (base < 0.0) return {false, 0.0, "base is negative; bound is vacuous"};
  return {true, std::pow(base, 1.0 / (1.0 - k_exp)), {}};
}

StepwiseInequality alikhanov_check(std::span<const double> v_series, double alpha, double dt) {
  std::vector<double> squares(v_series.size());
  std::transform(v_series.begin(), v_series.end(), squares.begin(), [](double v) { return v * v; });
  const std::vector<double> dv = discrete_caputo_series(v_series, alpha, dt);
  const std::vector<double> dv2 = discrete_caputo_series(squares, alpha, dt);
  std::vector<double> lhs(v_series.size()), rhs(v_series.size());
  for (std::size_t n = 0; n < v_series.size(); ++n) {
    lhs[n] = v_series[n] * dv[n];
    rhs[n] = 0.5 * dv2[n];
  }
  return compare_series(lhs, rhs);
}

StepwiseInequality power_inequality_check(std::span<const double> u_series, int exponent, double alpha,
                                          double dt) {
  if (exponent < 2) throw std::invalid_argument("power_inequality_check: exponent must be >= 2");
  for (double u : u_series)
    if (u < 0.0) throw std::invalid_argument("power_inequality_check: negative sample");
  std::vector<double> powers(u_series.size());
  std::transform(u_series.begin(), u_series.end(), powers.begin(),
                 [exponent](double u) { return std::pow(u, exponent); });
  const std::vector<double> du = discrete_caputo_series(u_series, alpha, dt);
  const std::vector<double> dup = discrete_caputo_series(powers, alpha, dt);
  std::vector<double> lhs(u_series.size()), rhs(u_series.size());
  for (std::size_t n = 0; n < u_series.size(); ++n) {
    lhs[n] = std::pow(u_series[n], exponent - 1) * du[n];
    rhs[n] = dup[n] / exponent;
  }
  return compare_series(lhs, rhs);
}

}  // namespace fracplap
