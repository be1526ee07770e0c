#include "fracplap/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "fracplap/error.hpp"

namespace fracplap {

Field direct_convolution(const Field& u, const Field& kernel_centered) {
  require_same_grid(u.domain(), kernel_centered.domain(), "direct_convolution");
  const DomainSpec& d = u.domain();
  const int n = d.points_per_axis;
  const int half = n / 2;
  const double w = d.cell_volume();
  Field out(d);
  if (d.dim == 1) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += kernel_centered[((i - j + half) % n + n) % n] * u[j];
      out[i] = w * acc;
    }
    return out;
  }
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n; ++i1) {
      double acc = 0.0;
      for (int j0 = 0; j0 < n; ++j0)
        for (int j1 = 0; j1 < n; ++j1) {
          const int k0 = ((i0 - j0 + half) % n + n) % n;
          const int k1 = ((i1 - j1 + half) % n + n) % n;
          acc += kernel_centered[static_cast<std::size_t>(k0) * n + k1] * u[static_cast<std::size_t>(j0) * n + j1];
        }
      out[static_cast<std::size_t>(i0) * n + i1] = w * acc;
    }
  return out;
}

ScalarTrajectory fractional_adams(const std::function<double(double)>& f, double y0, double alpha, double dt,
                                  double t_final, double threshold) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("fractional_adams: alpha must lie in (0, 1]");
  if (!(dt > 0.0 && t_final > 0.0)) throw std::invalid_argument("fractional_adams: dt and t_final must be positive");
  const auto steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
  const double pred_scale = std::pow(dt, alpha) / std::tgamma(alpha + 1.0);
  const double corr_scale = std::pow(dt, alpha) / std::tgamma(alpha + 2.0);

  // Product-integration weights depend only on the index distance.
  std::vector<double> rect(steps + 1), trap(steps + 1);
  for (std::size_t m = 0; m <= steps; ++m) {
    const double md = static_cast<double>(m);
    rect[m] = std::pow(md + 1.0, alpha) - std::pow(md, alpha);
    trap[m] = std::pow(md + 2.0, alpha + 1.0) + std::pow(md, alpha + 1.0) - 2.0 * std::pow(md + 1.0, alpha + 1.0);
  }

  ScalarTrajectory out;
  out.times.push_back(0.0);
  out.values.push_back(y0);
  std::vector<double> fv{f(y0)};
  for (std::size_t n = 0; n < steps; ++n) {
    const double nn = static_cast<double>(n);
    double pred = 0.0;
    for (std::size_t j = 0; j <= n; ++j) pred += rect[n - j] * fv[j];
    const double y_pred = y0 + pred_scale * pred;
    double corr = (std::pow(nn, alpha + 1.0) - (nn - alpha) * std::pow(nn + 1.0, alpha)) * fv[0];
    for (std::size_t j = 1; j <= n; ++j) corr += trap[n - j] * fv[j];
    const double y = y0 + corr_scale * (corr + f(y_pred));
    const double t = static_cast<double>(n + 1) * dt;
    out.times.push_back(t);
    out.values.push_back(y);
    if (!std::isfinite(y) || std::abs(y) > threshold) {
      out.blowup_time = t;
      break;
    }
    fv.push_back(f(y));
  }
  return out;
}

double fitted_order(std::span<const double> steps, std::span<const double> errors) {
  if (steps.size() != errors.size() || steps.size() < 2)
    throw std::invalid_argument("fitted_order needs at least two matching samples");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double x = std::log(steps[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace fracplap
