#include "fracplap/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fracplap/error.hpp"

namespace fracplap {
namespace {

// Fraction of the cell [x - h/2, x + h/2] inside [-r, r].
double cell_overlap(double x, double h, double r) {
  const double lo = std::max(x - 0.5 * h, -r);
  const double hi = std::min(x + 0.5 * h, r);
  return hi > lo ? (hi - lo) / h : 0.0;
}

double axis_profile(KernelShape shape, double x, double h, double delta0) {
  const double r = 2.0 * delta0;
  switch (shape) {
    case KernelShape::box:
      return cell_overlap(x, h, r);
    case KernelShape::triangle:
      return std::max(0.0, 1.0 - std::abs(x) / r);
    case KernelShape::gaussian:
      break;
  }
  return 0.0;
}

std::size_t wrap(int i, int n) { return static_cast<std::size_t>(((i % n) + n) % n); }

}  // namespace

std::string to_string(KernelShape shape) {
  switch (shape) {
    case KernelShape::box:
      return "box";
    case KernelShape::triangle:
      return "triangle";
    case KernelShape::gaussian:
      return "gaussian";
  }
  return "box";
}

KernelShape kernel_shape_from_string(const std::string& name) {
  if (name == "box") return KernelShape::box;
  if (name == "triangle") return KernelShape::triangle;
  if (name == "gaussian") return KernelShape::gaussian;
  throw std::invalid_argument("unknown kernel shape '" + name + "'");
}

Field kernel_profile(KernelShape shape, double delta0, const DomainSpec& domain) {
  domain.validate();
  const int n = domain.points_per_axis;
  const double h = domain.spacing();
  Field out(domain);
  if (shape == KernelShape::gaussian) {
    const double cut2 = 36.0 * delta0 * delta0;
    const double inv = 1.0 / (2.0 * delta0 * delta0);
    if (domain.dim == 1) {
      for (int i = 0; i < n; ++i) {
        const double r2 = domain.coordinate(i) * domain.coordinate(i);
        out[i] = r2 <= cut2 ? std::exp(-r2 * inv) : 0.0;
      }
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double r2 = domain.coordinate(i) * domain.coordinate(i) + domain.coordinate(j) * domain.coordinate(j);
          out[static_cast<std::size_t>(i) * n + j] = r2 <= cut2 ? std::exp(-r2 * inv) : 0.0;
        }
    }
  } else {
    std::vector<double> axis(n);
    for (int i = 0; i < n; ++i) axis[i] = axis_profile(shape, domain.coordinate(i), h, delta0);
    if (domain.dim == 1) {
      for (int i = 0; i < n; ++i) out[i] = axis[i];
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i) * n + j] = axis[i] * axis[j];
    }
  }
  const double total = global_mass(out);
  if (!(total > 0.0)) throw KernelError("kernel profile has no mass on this grid");
  for (double& v : out.values()) v /= total;
  return out;
}

double kernel_core_min(const Field& kernel, double delta0) {
  const DomainSpec& domain = kernel.domain();
  const int n = domain.points_per_axis;
  double core = std::numeric_limits<double>::infinity();
  const double r2 = delta0 * delta0 * (1.0 + 1e-12);
  for (std::size_t idx = 0; idx < kernel.size(); ++idx) {
    const int i = domain.dim == 1 ? static_cast<int>(idx) : static_cast<int>(idx) / n;
    const double xi = domain.coordinate(i);
    double d2 = xi * xi;
    if (domain.dim == 2) {
      const double xj = domain.coordinate(static_cast<int>(idx) % n);
      d2 += xj * xj;
    }
    if (d2 <= r2) core = std::min(core, kernel[idx]);
  }
  return core;
}

KernelGrid discretize_kernel(KernelShape shape, double delta0, double eta, const DomainSpec& domain) {
  domain.validate();
  if (!(delta0 > 0.0 && delta0 < 0.25 * domain.half_width))
    throw std::invalid_argument("kernel delta0 must lie in (0, L/4)");
  if (!(eta > 0.0)) throw std::invalid_argument("kernel eta must be positive");

  KernelGrid k;
  k.values = kernel_profile(shape, delta0, domain);
  k.shape = shape;
  k.delta0 = delta0;
  k.eta = eta;
  k.integral = global_mass(k.values);

  const double core = kernel_core_min(k.values, delta0);
  k.core_min = core;
  if (!(core > eta))
    throw KernelError("kernel minimum " + std::to_string(core) + " on |x| <= delta0 does not exceed eta = " +
                      std::to_string(eta) + "; choose a smaller eta");
  k.convolver = std::make_shared<PeriodicConvolver>(domain, k.values.values(), domain.cell_volume());
  return k;
}

Field convolve_kernel(const Field& u, const KernelGrid& kernel) {
  require_same_grid(u.domain(), kernel.values.domain(), "convolve_kernel");
  if (kernel.convolver) return kernel.convolver->apply(u);
  return PeriodicConvolver(u.domain(), kernel.values.values(), u.domain().cell_volume()).apply(u);
}

FaceGradients gradient_faces(const Field& u) {
  const DomainSpec& d = u.domain();
  const int n = d.points_per_axis;
  const double inv_h = 1.0 / d.spacing();
  FaceGradients g{d, {}};
  if (d.dim == 1) {
    g.axis[0].resize(n);
    for (int i = 0; i < n; ++i) g.axis[0][i] = (u[wrap(i + 1, n)] - u[i]) * inv_h;
    return g;
  }
  g.axis[0].resize(u.size());
  g.axis[1].resize(u.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t c = static_cast<std::size_t>(i) * n + j;
      g.axis[0][c] = (u[wrap(i + 1, n) * n + j] - u[c]) * inv_h;
      g.axis[1][c] = (u[static_cast<std::size_t>(i) * n + wrap(j + 1, n)] - u[c]) * inv_h;
    }
  return g;
}

FaceCoefficients p_diffusivity(const Field& u, double p, double eps_reg) {
  const DomainSpec& d = u.domain();
  const int n = d.points_per_axis;
  const double h = d.spacing();
  const double expo = 0.5 * (p - 2.0);
  const double eps2 = eps_reg * eps_reg;
  const FaceGradients g = gradient_faces(u);
  FaceCoefficients c{d, {}};
  if (d.dim == 1) {
    c.axis[0].resize(n);
    for (int i = 0; i < n; ++i) c.axis[0][i] = std::pow(g.axis[0][i] * g.axis[0][i] + eps2, expo);
    return c;
  }
  // Centered differences along each axis at every node.
  std::vector<double> cd0(u.size()), cd1(u.size());
  const double inv_2h = 0.5 / h;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * n + j;
      cd0[idx] = (u[wrap(i + 1, n) * n + j] - u[wrap(i - 1, n) * n + j]) * inv_2h;
      cd1[idx] = (u[static_cast<std::size_t>(i) * n + wrap(j + 1, n)] - u[static_cast<std::size_t>(i) * n + wrap(j - 1, n)]) * inv_2h;
    }
  c.axis[0].resize(u.size());
  c.axis[1].resize(u.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * n + j;
      const std::size_t down = wrap(i + 1, n) * n + j;
      const std::size_t right = static_cast<std::size_t>(i) * n + wrap(j + 1, n);
      const double t0 = 0.5 * (cd1[idx] + cd1[down]);
      const double t1 = 0.5 * (cd0[idx] + cd0[right]);
      const double g0 = g.axis[0][idx];
      const double g1 = g.axis[1][idx];
      c.axis[0][idx] = std::pow(g0 * g0 + t0 * t0 + eps2, expo);
      c.axis[1][idx] = std::pow(g1 * g1 + t1 * t1 + eps2, expo);
    }
  return c;
}

Field apply_face_diffusion(const FaceCoefficients& coeffs, const Field& v) {
  require_same_grid(coeffs.domain, v.domain(), "apply_face_diffusion");
  const DomainSpec& d = v.domain();
  const int n = d.points_per_axis;
  const double inv_h2 = 1.0 / (d.spacing() * d.spacing());
  Field out(d);
  if (d.dim == 1) {
    const auto& c = coeffs.axis[0];
    for (int i = 0; i < n; ++i) {
      const std::size_t l = wrap(i - 1, n);
      const std::size_t r = wrap(i + 1, n);
      out[i] = (c[i] * (v[r] - v[i]) - c[l] * (v[i] - v[l])) * inv_h2;
    }
    return out;
  }
  const auto& c0 = coeffs.axis[0];
  const auto& c1 = coeffs.axis[1];
#pragma omp parallel for schedule(static) if (v.size() >= 16384)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * n + j;
      const std::size_t up = wrap(i - 1, n) * n + j;
      const std::size_t down = wrap(i + 1, n) * n + j;
      const std::size_t left = static_cast<std::size_t>(i) * n + wrap(j - 1, n);
      const std::size_t right = static_cast<std::size_t>(i) * n + wrap(j + 1, n);
      const double flux0 = c0[idx] * (v[down] - v[idx]) - c0[up] * (v[idx] - v[up]);
      const double flux1 = c1[idx] * (v[right] - v[idx]) - c1[left] * (v[idx] - v[left]);
      out[idx] = (flux0 + flux1) * inv_h2;
    }
  return out;
}

Field p_laplacian(const Field& u, double p, double eps_reg) {
  return apply_face_diffusion(p_diffusivity(u, p, eps_reg), u);
}

Field positive_power(const Field& u, double m) {
  Field out(u.domain());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double pos = std::max(u[i], 0.0);
    out[i] = m == 1.0 ? pos : std::pow(pos, m);
  }
  return out;
}

Field p_laplacian_power(const Field& u, double p, double m, double eps_reg) {
  if (m == 1.0) return p_laplacian(u, p, eps_reg);
  return p_laplacian(positive_power(u, m), p, eps_reg);
}

double global_mass(const Field& u) {
  double s = 0.0;
  for (double v : u.values()) s += v;
  return s * u.domain().cell_volume();
}

Field ball_integral(const Field& f, double delta) {
  const DomainSpec& d = f.domain();
  if (!(delta > 0.0 && delta < 0.5 * d.half_width))
    throw std::invalid_argument("ball radius must lie in (0, L/2)");
  const int n = d.points_per_axis;
  const double h = d.spacing();
  const int reach = static_cast<int>(std::ceil(delta / h + 0.5));
  std::vector<double> w(2 * reach + 1);
  for (int s = -reach; s <= reach; ++s) w[s + reach] = cell_overlap(s * h, h, delta) * h;

  Field out(d);
  if (d.dim == 1) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int s = -reach; s <= reach; ++s) acc += w[s + reach] * f[wrap(i + s, n)];
      out[i] = acc;
    }
    return out;
  }
  // Separable weights: sum along axis 1, then along axis 0.
  std::vector<double> rows(f.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int s = -reach; s <= reach; ++s) acc += w[s + reach] * f[static_cast<std::size_t>(i) * n + wrap(j + s, n)];
      rows[static_cast<std::size_t>(i) * n + j] = acc;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int s = -reach; s <= reach; ++s) acc += w[s + reach] * rows[wrap(i + s, n) * n + j];
      out[static_cast<std::size_t>(i) * n + j] = acc;
    }
  return out;
}

Field local_l2_ball(const Field& u, double delta) {
  Field sq(u.domain());
  for (std::size_t i = 0; i < u.size(); ++i) sq[i] = u[i] * u[i];
  return ball_integral(sq, delta);
}

}  // namespace fracplap
