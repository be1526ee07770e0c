#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracplap/field.hpp"
#include "fracplap/integrator.hpp"
#include "fracplap/model.hpp"

namespace fracplap {

enum class Verdict { pass, fail, undecided };

std::string to_string(Verdict v);

/// h(u) = A ln(1 - u/A) - a ln(1 - u/a), defined for u < a.
double h_scalar(double u, const EquilibriumRoots& roots);
/// h'(u) = (A - a) u / ((a - u)(A - u)).
double h_prime(double u, const EquilibriumRoots& roots);
/// h''(u) = a/(a - u)^2 - A/(A - u)^2.
double h_second(double u, const EquilibriumRoots& roots);

/// Integral of h(u) over the box ball of radius delta around every point.
/// Throws HypothesisError when max u >= a.
Field h_functional(const Field& u, const EquilibriumRoots& roots, double delta);

/// 1/2 (A - a) mu k times local_l2_ball(u, delta).
Field d_functional(const Field& u, const EquilibriumRoots& roots, double mu, double k, double delta);

/// Largest delta = delta0 / 2^j (j >= 1) for which
///   -(A-a)^2/(A^2 a) + (A-a) K^4 mu k (2 delta)^2 / (2 (A-K)^2 (a-K)^2) <= 0.
/// Gives up after 60 halvings and returns nullopt.
std::optional<double> lyapunov_ball_radius(const EquilibriumRoots& roots, double mu, double k, double sup_bound,
                                           double delta0);

struct LyapunovSeries {
  std::vector<double> times;
  std::vector<double> h_max;
  std::vector<double> d_max;
  Verdict verdict = Verdict::pass;
  std::optional<double> violation_time;  ///< first time with max u >= a
};

/// Evaluates max_x H and max_x D at every recorded field. Pass iff
/// max_x H(t_j) <= max_x H(0) (1 + slack) for every j.
LyapunovSeries lyapunov_monitor(const std::vector<double>& times, const std::vector<Field>& fields,
                                const EquilibriumRoots& roots, double mu, double k, double delta,
                                double slack = 1e-6);

/// Uses the recorded fields of a run (record_fields must have been set).
LyapunovSeries lyapunov_monitor(const RunReport& run, const EquilibriumRoots& roots, double mu, double k,
                                double delta, double slack = 1e-6);

/// Verdict on a precomputed H series.
Verdict h_series_verdict(const std::vector<double>& h_max, double slack = 1e-6);

struct EnvelopeCheck {
  Verdict verdict = Verdict::pass;
  double worst_ratio = 0.0;    ///< max over t of sup_norm / (|u0| E_a(-sigma t^a))
  double first_violation = -1.0;
  bool literal_exponential_holds = true;  ///< |u(t)| <= |u0| exp(-sigma^{1/a} t)
};

/// Mittag-Leffler decay envelope; undecided when sigma <= 0.
EnvelopeCheck decay_envelope_check(const std::vector<NormRecord>& series, double sigma, double alpha,
                                   double slack = 0.05);

enum class AlleeVerdict { extinction, persistence, blowup, undecided };

std::string to_string(AlleeVerdict v);

struct AlleeBands {
  double extinction_fraction = 0.02;   ///< of a
  double persistence_fraction = 0.05;  ///< of A
};

AlleeVerdict allee_classify(const RunReport& run, const EquilibriumRoots& roots, const AlleeBands& bands = {});

struct BoundednessCheck {
  Verdict verdict = Verdict::pass;
  double max_ratio = 0.0;  ///< max sup_norm / K
};

/// Pass iff the run did not blow up and max sup_norm <= K.
BoundednessCheck boundedness_check(const RunReport& run, double K);
/// Undecided when the estimate is a failure marker.
BoundednessCheck boundedness_check(const RunReport& run, const BoundEstimate& K);

}  // namespace fracplap
