#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fracplap/fractional.hpp"
#include "fracplap/mittag_leffler.hpp"
#include "fracplap/oracles.hpp"

using namespace fracplap;

struct MlCase {
  double alpha, beta, z, value;
};

// 120-digit series summation (erfc closed form for alpha = 1/2, z = -50).
const MlCase kMlTable[] = {
    {0.5, 1, 1, 5.0089800807622834663},
    {0.5, 1, -1, 0.42758357615580700441},
    {0.5, 1, -10, 0.056140992743822585858},
    {0.5, 1, -20, 0.028174348741051319319},
    {0.5, 1, -50, 0.0112815362653237725},
    {0.8, 1, -2, 0.18979669236370564843},
    {0.8, 1, -30, 0.0075758607992192086547},
    {0.8, 1, -45, 0.0049783673338649725153},
    {0.3, 1, -5, 0.13708086902027063889},
    {0.9, 0.9, -3, 0.044151271783037726131},
    {0.5, 1.5, -4, 0.21575013559373465253},
    {0.7, 1.7, 2, 9.9832165657409781519},
    {0.6, 0.6, -20, 0.00069976531797853914304},
    {0.95, 1, -40, 0.0013474824487701776278},
};

TEST(MittagLeffler, FrozenReferenceValues) {
  for (const auto& c : kMlTable)
    EXPECT_NEAR(mittag_leffler(c.alpha, c.beta, c.z), c.value, 1e-12 * std::max(1.0, std::abs(c.value)))
        << "alpha=" << c.alpha << " beta=" << c.beta << " z=" << c.z;
}

TEST(MittagLeffler, UnitAtZero) {
  for (double a : {0.1, 0.5, 0.9, 1.0}) EXPECT_DOUBLE_EQ(mittag_leffler(a, 0.0), 1.0);
}

TEST(MittagLeffler, ExponentialWhenAlphaIsOne) {
  for (double z = -20.0; z <= 5.0; z += 0.25)
    EXPECT_NEAR(mittag_leffler(1.0, 1.0, z), std::exp(z), 1e-12 * std::exp(z)) << z;
}

TEST(MittagLeffler, PositiveAndDecreasingOnNegativeAxis) {
  for (double a : {0.2, 0.5, 0.8}) {
    double prev = mittag_leffler(a, 0.0);
    for (double x = 0.01; x <= 50.0; x += 0.01) {
      const double v = mittag_leffler(a, -x);
      ASSERT_GT(v, 0.0) << a << " " << x;
      ASSERT_LT(v, prev) << a << " " << x;
      prev = v;
    }
  }
}

TEST(L1Weights, Examples) {
  const L1Weights w = l1_weights(0.5, 10);
  EXPECT_DOUBLE_EQ(w.b[0], 1.0);
  EXPECT_NEAR(w.b[1], std::sqrt(2.0) - 1.0, 1e-15);
  const L1Weights near_one = l1_weights(1.0 - 1e-9, 5);
  for (std::size_t j = 1; j < near_one.size(); ++j) EXPECT_LT(near_one.b[j], 1e-8);
  EXPECT_THROW(l1_weights(1.0, 3), std::invalid_argument);
  EXPECT_THROW(l1_weights(0.0, 3), std::invalid_argument);
}

TEST(L1Weights, PositiveStrictlyDecreasing) {
  for (double a : {0.1, 0.5, 0.9}) {
    const L1Weights w = l1_weights(a, 2000, 0.01);
    EXPECT_NEAR(w.scale, std::pow(0.01, -a) / std::tgamma(2 - a), 1e-12 * w.scale);
    for (std::size_t j = 1; j < w.size(); ++j) {
      EXPECT_GT(w.b[j], 0.0);
      EXPECT_LT(w.b[j], w.b[j - 1]);
    }
  }
}

TEST(DiscreteCaputo, ConstantHistoryGivesZero) {
  const DomainSpec d{1.0, 8, 1};
  HistoryBuffer h(Field(d, 2.0), 0.1);
  for (int i = 0; i < 5; ++i) h.push(Field(d, 2.0));
  const Field out = discrete_caputo(h, Field(d, 2.0), l1_weights(0.5, 10, 0.1));
  EXPECT_EQ(out.sup_norm(), 0.0);
}

TEST(DiscreteCaputo, ExactOnLinearData) {
  const DomainSpec d{1.0, 4, 1};
  const double dt = 0.1;
  const L1Weights w = l1_weights(0.5, 10, dt);
  HistoryBuffer h(Field(d, 0.0), dt);
  for (int n = 1; n <= 10; ++n) {
    const double t = n * dt;
    const Field out = discrete_caputo(h, Field(d, t), w);
    const double exact = std::pow(t, 0.5) / std::tgamma(1.5);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_NEAR(out[i], exact, 1e-12);
    h.push(Field(d, t));
  }
  EXPECT_NEAR(1.0 / std::tgamma(1.5), 1.128379, 1e-6);
}

TEST(DiscreteCaputo, QuadraticConvergesAtExpectedRate) {
  std::vector<double> steps, errors;
  for (int n : {100, 200, 400, 800}) {
    const double dt = 1.0 / n;
    std::vector<double> s(n + 1);
    for (int i = 0; i <= n; ++i) s[i] = (i * dt) * (i * dt);
    const double v = discrete_caputo_series(s, 0.5, dt).back();
    steps.push_back(dt);
    errors.push_back(std::abs(v - 2.0 / std::tgamma(2.5)));
  }
  EXPECT_NEAR(errors.back(), 0.0, 1e-3);
  EXPECT_NEAR(fitted_order(steps, errors), 1.5, 0.1);
}

TEST(HistoryBuffer, RejectsForeignGrid) {
  HistoryBuffer h(Field(DomainSpec{1.0, 8, 1}), 0.1);
  EXPECT_ANY_THROW(h.push(Field(DomainSpec{1.0, 16, 1})));
}

TEST(LinearFode, Examples) {
  EXPECT_DOUBLE_EQ(linear_fode_solution(0, 0, 3.0, 0.5, 7.0), 3.0);
  for (double t : {0.1, 1.0, 3.0})
    EXPECT_NEAR(linear_fode_solution(-1, 0, 2.0, 1.0, t), 2.0 * std::exp(-t), 1e-13);
  // The approach to the steady state is algebraic: 1 - E_{1/2}(-sqrt t).
  EXPECT_NEAR(linear_fode_solution(-1, 1, 0.0, 0.5, 100.0), 1.0 - 0.056140992743822585858, 1e-12);
  EXPECT_NEAR(linear_fode_solution(-1, 1, 0.0, 0.5, 1e4), 1.0, 0.02);
}

TEST(Duhamel, HomogeneousMatchesClosedForm) {
  const double dt = 0.01;
  std::vector<double> f(200, 0.0);
  const std::vector<double> y = duhamel_mode(-2.0, 1.5, f, 0.6, dt);
  for (std::size_t n = 0; n < y.size(); ++n)
    EXPECT_NEAR(y[n], linear_fode_solution(-2.0, 0.0, 1.5, 0.6, n * dt), 1e-12);
}

TEST(Duhamel, PlainIntegration) {
  const double dt = 0.05;
  std::vector<double> f(40, 1.0);
  const std::vector<double> y = duhamel_mode(0.0, 0.0, f, 1.0, dt);
  for (std::size_t n = 0; n < y.size(); ++n) EXPECT_NEAR(y[n], n * dt, 1e-12);
}

TEST(Duhamel, ConstantForcingIsExact) {
  std::vector<double> errs;
  for (double dt : {0.02, 0.01}) {
    const int n = static_cast<int>(std::round(2.0 / dt));
    std::vector<double> f(n, 1.0);
    const std::vector<double> y = duhamel_mode(-1.0, 0.0, f, 0.5, dt);
    double err = 0.0;
    for (int i = 0; i <= n; ++i) err = std::max(err, std::abs(y[i] - linear_fode_solution(-1, 1, 0, 0.5, i * dt)));
    errs.push_back(err);
  }
  for (double e : errs) EXPECT_LT(e, 1e-12);
}

TEST(Gronwall, Examples) {
  std::vector<double> flat(50, 2.0);
  EXPECT_TRUE(gronwall_bound_check(flat, 1.0, 0.5, 0.5, 1.0).pass);

  std::vector<double> exact;
  for (int i = 0; i <= 100; ++i) exact.push_back(linear_fode_solution(-0.7, 0.3, 1.0, 0.5, i * 0.01));
  EXPECT_TRUE(gronwall_bound_check(exact, 0.7, 0.3, 0.5, 1.0).pass);

  std::vector<double> jump(50, 1.0);
  jump[20] = 1.0 + 0.5 * 1.0 / (0.5 * std::tgamma(0.5)) + 0.1;
  EXPECT_FALSE(gronwall_bound_check(jump, 1.0, 0.5, 0.5, 1.0).pass);
}

TEST(Bernoulli, Examples) {
  EXPECT_DOUBLE_EQ(bernoulli_decay_bound(1.7, 0.5, 2, 1, 0.5, 0.0).value, 1.7);
  const BoundValue v = bernoulli_decay_bound(1, 0.5, 2, 1, 0.5, 1);
  ASSERT_TRUE(v.ok);
  EXPECT_NEAR(v.value, 7.2499264769406537655, 1e-13);
  const double small_k = bernoulli_decay_bound(1, 1e-9, 2, 1, 0.5, 1).value;
  EXPECT_NEAR(small_k, 1 + 1.0 / (0.5 * std::tgamma(0.5)), 1e-7);
}

TEST(Alikhanov, Examples) {
  std::vector<double> c(30, 1.3);
  const StepwiseInequality r = alikhanov_check(c, 0.5, 0.1);
  EXPECT_TRUE(r.pass);
  for (double d : r.difference) EXPECT_NEAR(d, 0.0, 1e-12);

  std::vector<double> lin;
  for (int i = 0; i <= 100; ++i) lin.push_back(i * 0.01);
  EXPECT_TRUE(alikhanov_check(lin, 0.5, 0.01).pass);
}

TEST(Alikhanov, RandomWalks) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> step(0.0, 1.0);
  for (double a : {0.3, 0.5, 0.8})
    for (int s = 0; s < 200; ++s) {
      std::vector<double> v{step(rng)};
      for (int i = 0; i < 40; ++i) v.push_back(v.back() + step(rng));
      ASSERT_TRUE(alikhanov_check(v, a, 0.05).pass) << a << " " << s;
    }
}

TEST(PowerInequality, Examples) {
  std::vector<double> lin;
  for (int i = 0; i <= 50; ++i) lin.push_back(i * 0.02);
  EXPECT_TRUE(power_inequality_check(lin, 3, 0.5, 0.02).pass);
  std::vector<double> c(20, 0.4);
  EXPECT_TRUE(power_inequality_check(c, 4, 0.5, 0.1).pass);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int s = 0; s < 50; ++s) {
    std::vector<double> v;
    for (int i = 0; i < 30; ++i) v.push_back(u(rng));
    EXPECT_EQ(power_inequality_check(v, 2, 0.6, 0.1).pass, alikhanov_check(v, 0.6, 0.1).pass);
  }
}

TEST(FractionalAdams, QuadraticBlowUpIsFinite) {
  const ScalarTrajectory y = fractional_adams([](double v) { return v * v; }, 2.0, 0.5, 1e-4, 1.0);
  ASSERT_TRUE(y.blowup_time.has_value());
  EXPECT_GT(*y.blowup_time, 0.0);
  EXPECT_LT(*y.blowup_time, 1.0);
}
