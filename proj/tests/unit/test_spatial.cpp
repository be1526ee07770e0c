#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracplap/convolution.hpp"
#include "fracplap/error.hpp"
#include "fracplap/oracles.hpp"
#include "fracplap/spatial.hpp"

using namespace fracplap;

namespace {

constexpr double kPi = std::numbers::pi;

Field random_field(const DomainSpec& d, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  Field f(d);
  for (double& v : f.values()) v = u(rng);
  return f;
}

Field from_function(const DomainSpec& d, double (*fn)(double, double)) {
  Field f(d);
  const int n = d.points_per_axis;
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    const int i = d.dim == 1 ? static_cast<int>(idx) : static_cast<int>(idx) / n;
    const int j = d.dim == 1 ? 0 : static_cast<int>(idx) % n;
    f[idx] = fn(d.coordinate(i), d.dim == 1 ? 0.0 : d.coordinate(j));
  }
  return f;
}

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Field, NormsAndGridChecks) {
  const DomainSpec d{2.0, 8, 1};
  Field f(d, -3.0);
  EXPECT_DOUBLE_EQ(f.sup_norm(), 3.0);
  EXPECT_DOUBLE_EQ(f.min_value(), -3.0);
  EXPECT_DOUBLE_EQ(f.l1_norm(), 12.0);
  EXPECT_NEAR(f.l2_norm(), std::sqrt(36.0), 1e-14);
  EXPECT_THROW(require_same_grid(d, DomainSpec{2.0, 16, 1}, "test"), GridMismatch);
}

TEST(Kernel, BoxPlateauValue) {
  for (int dim : {1, 2}) {
    const DomainSpec d{8.0, 64, dim};
    const KernelGrid k = discretize_kernel(KernelShape::box, 1.0, 0.01, d);
    const double centre = k.values[dim == 1 ? 32 : 32 * 64 + 32];
    EXPECT_NEAR(centre, 1.0 / std::pow(4.0, dim), 1e-14);
    EXPECT_NEAR(k.integral, 1.0, 1e-14);
    for (double v : k.values.values()) EXPECT_GE(v, 0.0);
  }
}

TEST(Kernel, GaussianFloor) {
  const DomainSpec d{8.0, 128, 1};
  const KernelGrid k = discretize_kernel(KernelShape::gaussian, 0.5, 0.1, d);
  EXPECT_GT(k.core_min, 0.1);
  EXPECT_NEAR(k.integral, 1.0, 1e-14);
}

TEST(Kernel, FloorViolationAndRadiusLimits) {
  const DomainSpec d{8.0, 64, 1};
  EXPECT_THROW(discretize_kernel(KernelShape::box, 1.0, 0.5, d), KernelError);
  EXPECT_ANY_THROW(discretize_kernel(KernelShape::box, 2.5, 0.01, d));
  EXPECT_ANY_THROW(discretize_kernel(KernelShape::box, 1.0, 0.0, d));
}

TEST(Kernel, TriangleSymmetric) {
  const DomainSpec d{4.0, 64, 1};
  const KernelGrid k = discretize_kernel(KernelShape::triangle, 0.5, 0.01, d);
  for (int i = 1; i < 32; ++i) EXPECT_NEAR(k.values[32 + i], k.values[32 - i], 1e-15);
}

TEST(Convolution, ConstantIsPreserved) {
  const DomainSpec d{4.0, 64, 2};
  const KernelGrid k = discretize_kernel(KernelShape::gaussian, 0.5, 0.01, d);
  const Field out = convolve_kernel(Field(d, 0.7), k);
  for (double v : out.values()) EXPECT_NEAR(v, 0.7, 1e-14);
}

TEST(Convolution, SingleCellKernelIsIdentity) {
  const DomainSpec d{4.0, 32, 1};
  const KernelGrid k = discretize_kernel(KernelShape::box, 0.25 * d.spacing(), 0.01, d);
  const Field u = random_field(d, 11);
  EXPECT_LT(max_abs_diff(convolve_kernel(u, k), u), 1e-14);
}

TEST(Convolution, MatchesDirectSum) {
  const DomainSpec d{4.0, 64, 1};
  const KernelGrid k = discretize_kernel(KernelShape::box, 0.5, 0.01, d);
  const Field u = from_function(d, [](double x, double) { return std::sin(kPi * x / 4.0); });
  EXPECT_LT(max_abs_diff(convolve_kernel(u, k), direct_convolution(u, k.values)), 1e-13);

  const DomainSpec d2{2.0, 16, 2};
  const KernelGrid k2 = discretize_kernel(KernelShape::triangle, 0.4, 0.01, d2);
  const Field u2 = random_field(d2, 5);
  EXPECT_LT(max_abs_diff(convolve_kernel(u2, k2), direct_convolution(u2, k2.values)), 1e-13);
}

TEST(Convolution, GridMismatchRejected) {
  const KernelGrid k = discretize_kernel(KernelShape::box, 0.5, 0.01, DomainSpec{4.0, 64, 1});
  EXPECT_THROW(convolve_kernel(Field(DomainSpec{4.0, 32, 1}), k), GridMismatch);
}

TEST(Gradient, SawtoothFaces) {
  const DomainSpec d{1.0, 16, 1};
  const Field u = from_function(d, [](double x, double) { return x; });
  const FaceGradients g = gradient_faces(u);
  for (int i = 0; i < 15; ++i) EXPECT_NEAR(g.axis[0][i], 1.0, 1e-12);
  EXPECT_NEAR(g.axis[0][15], (u[0] - u[15]) / d.spacing(), 1e-12);
  const FaceGradients flat = gradient_faces(Field(d, 3.0));
  for (double v : flat.axis[0]) EXPECT_EQ(v, 0.0);
}

TEST(PLaplacian, ConstantGivesZero) {
  for (int dim : {1, 2}) {
    const Field out = p_laplacian(Field(DomainSpec{1.0, 16, dim}, 2.0), 1.5, 1e-6);
    EXPECT_EQ(out.sup_norm(), 0.0);
  }
}

TEST(PLaplacian, QuadraticCaseMatchesStencilSymbol) {
  const DomainSpec d{1.0, 128, 1};
  const double h = d.spacing();
  const Field u = from_function(d, [](double x, double) { return std::sin(2.0 * kPi * x / 1.0); });
  const Field out = p_laplacian(u, 2.0, 1e-6);
  // sin(2 pi x / L) on [-L, L] is Fourier mode 2 with wavenumber 2 pi / L.
  const double kappa = 2.0 * kPi / 1.0;
  const double symbol = -std::pow(2.0 * std::sin(0.5 * kappa * h) / h, 2);
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(out[i], symbol * u[i], 1e-9);
}

TEST(PLaplacian, SumsToZero) {
  for (int dim : {1, 2}) {
    const DomainSpec d{2.0, 32, dim};
    for (std::uint64_t s = 0; s < 10; ++s) {
      const Field out = p_laplacian(random_field(d, s), 1.4, 1e-6);
      double sum = 0.0, scale = 0.0;
      for (double v : out.values()) {
        sum += v;
        scale += std::abs(v);
      }
      EXPECT_LT(std::abs(sum), 1e-12 * scale);
    }
  }
}

TEST(PLaplacianPower, Reductions) {
  const DomainSpec d{1.0, 64, 2};
  const Field u = random_field(d, 2, 0.5, 1.5);
  EXPECT_LT(max_abs_diff(p_laplacian_power(u, 1.6, 1.0, 1e-6), p_laplacian(u, 1.6, 1e-6)), 1e-14);
  EXPECT_EQ(p_laplacian_power(Field(d, 0.3), 1.6, 2.0, 1e-6).sup_norm(), 0.0);
}

TEST(PLaplacianPower, CubeMatchesLaplacianOfCube) {
  const DomainSpec d{1.0, 64, 1};
  const Field u = from_function(d, [](double x, double) { return 1.0 + 0.1 * std::sin(2.0 * kPi * x); });
  const Field out = p_laplacian_power(u, 2.0, 3.0, 1e-6);
  const double h2 = d.spacing() * d.spacing();
  const int n = d.points_per_axis;
  for (int i = 0; i < n; ++i) {
    auto cube = [&](int j) { return std::pow(u[(j + n) % n], 3); };
    EXPECT_NEAR(out[i], (cube(i + 1) - 2 * cube(i) + cube(i - 1)) / h2, 1e-9);
  }
}

TEST(GlobalMass, Examples) {
  EXPECT_NEAR(global_mass(Field(DomainSpec{3.0, 30, 1}, 1.0)), 6.0, 1e-13);
  EXPECT_EQ(global_mass(Field(DomainSpec{3.0, 30, 2}, 0.0)), 0.0);
  const Field s = from_function(DomainSpec{1.0, 64, 1}, [](double x, double) {
    const double v = std::sin(kPi * x);
    return v * v;
  });
  EXPECT_NEAR(global_mass(s), 1.0, 1e-12);
}

TEST(Ball, ConstantField) {
  for (int dim : {1, 2}) {
    const DomainSpec d{4.0, 64, dim};
    const Field out = local_l2_ball(Field(d, 0.6), 0.4);
    for (double v : out.values()) EXPECT_NEAR(v, std::pow(0.8, dim) * 0.36, 1e-13);
    EXPECT_EQ(local_l2_ball(Field(d, 0.0), 0.4).sup_norm(), 0.0);
  }
}

TEST(Ball, StepFunctionMatchesWindowSum) {
  const DomainSpec d{4.0, 64, 1};
  const int n = d.points_per_axis;
  const double h = d.spacing();
  Field u(d);
  for (int i = 20; i < 40; ++i) u[i] = 1.0;
  for (double delta : {0.3, 0.5, 1.1}) {
    const Field out = local_l2_ball(u, delta);
    for (int i = 0; i < n; ++i) {
      // Length of each cell inside [x_i - delta, x_i + delta].
      double acc = 0.0;
      for (int s = -n / 2; s < n / 2; ++s) {
        const double lo = std::max(s * h - 0.5 * h, -delta);
        const double hi = std::min(s * h + 0.5 * h, delta);
        if (hi > lo) acc += (hi - lo) * u[((i + s) % n + n) % n];
      }
      EXPECT_NEAR(out[i], acc, 1e-13) << delta << " " << i;
    }
  }
}

TEST(FourierMultiplier, IdentitySymbol) {
  const DomainSpec d{2.0, 32, 2};
  const Field u = random_field(d, 9);
  EXPECT_LT(max_abs_diff(apply_fourier_multiplier(u, [](int, int) { return 1.0; }), u), 1e-14);
}
