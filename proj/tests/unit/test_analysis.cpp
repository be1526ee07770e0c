#include <gtest/gtest.h>

#include <cmath>

#include "fracplap/analysis.hpp"
#include "fracplap/error.hpp"
#include "fracplap/mittag_leffler.hpp"
#include "fracplap/spatial.hpp"

using namespace fracplap;

namespace {

const EquilibriumRoots kRoots = equilibrium_roots(1.0, 1.0, 0.1875);

RunReport synthetic(const std::vector<double>& sups, double dt = 1.0, RunStatus status = RunStatus::completed) {
  RunReport r;
  r.status = status;
  for (std::size_t i = 0; i < sups.size(); ++i) {
    NormRecord n;
    n.t = i * dt;
    n.sup_norm = sups[i];
    r.series.push_back(n);
  }
  return r;
}

}  // namespace

TEST(HFunction, DerivativesMatchFiniteDifferences) {
  for (double u : {0.01, 0.05, 0.1, 0.2}) {
    const double e = 1e-6;
    EXPECT_NEAR(h_prime(u, kRoots), (h_scalar(u + e, kRoots) - h_scalar(u - e, kRoots)) / (2 * e), 1e-7);
    EXPECT_NEAR(h_second(u, kRoots), (h_prime(u + e, kRoots) - h_prime(u - e, kRoots)) / (2 * e), 1e-5);
  }
  EXPECT_EQ(h_scalar(0.0, kRoots), 0.0);
  EXPECT_THROW(h_scalar(0.25, kRoots), HypothesisError);
}

TEST(HFunction, QuadraticNearZero) {
  const double c = 1e-4;
  const double coeff = 0.5 * (1 / kRoots.a - 1 / kRoots.A);
  EXPECT_NEAR(h_scalar(c, kRoots) / (c * c), coeff, 1e-3 * coeff);
}

TEST(HFunctional, ConstantField) {
  const DomainSpec d{4.0, 32, 2};
  const double delta = 0.5, c = 0.1;
  EXPECT_EQ(h_functional(Field(d, 0.0), kRoots, delta).sup_norm(), 0.0);
  const Field H = h_functional(Field(d, c), kRoots, delta);
  const double expected =
      std::pow(2 * delta, 2) * (kRoots.A * std::log(1 - c / kRoots.A) - kRoots.a * std::log(1 - c / kRoots.a));
  EXPECT_GT(expected, 0.0);
  for (double v : H.values()) EXPECT_NEAR(v, expected, 1e-13);
  EXPECT_THROW(h_functional(Field(d, 0.3), kRoots, delta), HypothesisError);
}

TEST(HFunctional, SmallAmplitudeRatio) {
  const DomainSpec d{4.0, 32, 1};
  Field u(d);
  for (int i = 0; i < 32; ++i) u[i] = 1e-5 * (1.0 + 0.5 * std::cos(0.4 * i));
  const Field H = h_functional(u, kRoots, 0.5);
  const Field M = local_l2_ball(u, 0.5);
  const double expected = 0.5 * (kRoots.A - kRoots.a) / (kRoots.a * kRoots.A);
  for (int i = 0; i < 32; ++i) EXPECT_NEAR(H[i] / M[i], expected, 1e-3 * expected);
}

TEST(DFunctional, ConstantScaling) {
  const DomainSpec d{4.0, 32, 1};
  const double delta = 0.4, c = 0.2, mu = 2.0, k = 0.5;
  EXPECT_EQ(d_functional(Field(d, 0.0), kRoots, mu, k, delta).sup_norm(), 0.0);
  const Field D = d_functional(Field(d, c), kRoots, mu, k, delta);
  for (double v : D.values()) EXPECT_NEAR(v, 0.5 * (kRoots.A - kRoots.a) * mu * k * 2 * delta * c * c, 1e-14);
}

TEST(Lyapunov, DecayingHomogeneousRunPasses) {
  const DomainSpec d{4.0, 16, 1};
  std::vector<double> times;
  std::vector<Field> fields;
  for (int i = 0; i < 20; ++i) {
    times.push_back(i);
    fields.emplace_back(d, 0.2 * std::exp(-0.1 * i));
  }
  const LyapunovSeries s = lyapunov_monitor(times, fields, kRoots, 1.0, 1.0, 0.5);
  EXPECT_EQ(s.verdict, Verdict::pass);
  for (std::size_t i = 1; i < s.h_max.size(); ++i) EXPECT_LT(s.h_max[i], s.h_max[i - 1]);
  EXPECT_EQ(lyapunov_monitor({}, {}, kRoots, 1.0, 1.0, 0.5).verdict, Verdict::pass);
}

TEST(Lyapunov, InjectedIncreaseFails) {
  EXPECT_EQ(h_series_verdict({1.0, 0.9, 1.2, 0.5}), Verdict::fail);
  EXPECT_EQ(h_series_verdict({1.0, 0.9, 0.8}), Verdict::pass);
}

TEST(Lyapunov, ThresholdCrossingRecorded) {
  const DomainSpec d{4.0, 16, 1};
  const LyapunovSeries s =
      lyapunov_monitor({0.0, 1.0}, {Field(d, 0.1), Field(d, 0.3)}, kRoots, 1.0, 1.0, 0.5);
  EXPECT_NE(s.verdict, Verdict::pass);
  ASSERT_TRUE(s.violation_time.has_value());
  EXPECT_DOUBLE_EQ(*s.violation_time, 1.0);
}

TEST(DecayEnvelope, ExactSolutionPasses) {
  const double sigma = 0.8, alpha = 0.6;
  std::vector<double> sups;
  for (int i = 0; i <= 100; ++i) sups.push_back(0.5 * mittag_leffler(alpha, -sigma * std::pow(0.05 * i, alpha)));
  const RunReport r = synthetic(sups, 0.05);
  EXPECT_EQ(decay_envelope_check(r.series, sigma, alpha).verdict, Verdict::pass);
  EXPECT_EQ(decay_envelope_check(synthetic({0, 0, 0}).series, sigma, alpha).verdict, Verdict::pass);
}

TEST(DecayEnvelope, FlatSeriesFailsAfterCrossing) {
  const RunReport r = synthetic(std::vector<double>(50, 1.0), 0.1);
  const EnvelopeCheck e = decay_envelope_check(r.series, 1.0, 0.5);
  EXPECT_EQ(e.verdict, Verdict::fail);
  // First sample where 1.05 E(-sqrt t) drops below 1.
  double expected = -1.0;
  for (const auto& rec : r.series)
    if (1.05 * mittag_leffler(0.5, -std::sqrt(rec.t)) < 1.0) {
      expected = rec.t;
      break;
    }
  EXPECT_DOUBLE_EQ(e.first_violation, expected);
}

TEST(Allee, Classification) {
  EXPECT_EQ(allee_classify(synthetic({0.2, 0.01, 0.004}), kRoots), AlleeVerdict::extinction);
  EXPECT_EQ(allee_classify(synthetic({0.5, 0.7, 0.74}), kRoots), AlleeVerdict::persistence);
  EXPECT_EQ(allee_classify(synthetic({0.2, 0.1}), kRoots), AlleeVerdict::undecided);
  EXPECT_EQ(allee_classify(synthetic({2.0, 1e9}, 1.0, RunStatus::blowup), kRoots), AlleeVerdict::blowup);
}

TEST(Boundedness, Verdicts) {
  EXPECT_EQ(boundedness_check(synthetic({0.5, 0.9}), 1.0).verdict, Verdict::pass);
  EXPECT_EQ(boundedness_check(synthetic({0.5, 1.1}), 1.0).verdict, Verdict::fail);
  BoundEstimate bad;
  bad.status = BoundEstimate::Status::bracket_nonpositive;
  EXPECT_EQ(boundedness_check(synthetic({0.5}), bad).verdict, Verdict::undecided);
}

TEST(LyapunovRadius, SatisfiesSignCondition) {
  const std::optional<double> delta = lyapunov_ball_radius(kRoots, 1.0, 1.0, 1.0, 1.0);
  ASSERT_TRUE(delta.has_value());
  EXPECT_GT(*delta, 0.0);
  EXPECT_LE(*delta, 0.5);
}
