#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fracplap/field.hpp"

namespace fracplap {

/// L1 quadrature weights for the Caputo derivative on a uniform grid:
/// b_j = (j+1)^{1-a} - j^{1-a}, scale = dt^{-a} / Gamma(2-a).
struct L1Weights {
  double alpha = 0.5;
  double dt = 1.0;
  double scale = 1.0;
  std::vector<double> b;

  std::size_t size() const { return b.size(); }
};

/// Weights b_0 .. b_{n_steps-1}. Throws std::invalid_argument unless
/// 0 < alpha < 1, n_steps >= 1 and dt > 0.
L1Weights l1_weights(double alpha, std::size_t n_steps, double dt = 1.0);

/// Past states u^0 .. u^{n-1} of one run, all on one grid.
class HistoryBuffer {
 public:
  HistoryBuffer(Field initial, double dt);

  void push(Field state);
  std::size_t steps() const { return states_.size(); }
  double dt() const { return dt_; }
  const DomainSpec& domain() const { return states_.front().domain(); }
  const Field& state(std::size_t i) const { return states_.at(i); }
  const Field& latest() const { return states_.back(); }

  /// Memory tail sum_{j=1}^{n-1} b_j (u^{n-j} - u^{n-j-1}) per grid point,
  /// where n = steps(). Summation runs over j in increasing order for every
  /// point, independent of threading.
  std::vector<double> memory_tail(const L1Weights& weights) const;

 private:
  double dt_;
  std::vector<Field> states_;
};

/// L1 approximation of the Caputo derivative at t_n for the candidate u^n.
Field discrete_caputo(const HistoryBuffer& history, const Field& candidate, const L1Weights& weights);

/// L1 derivative of a scalar series at every step n = 1 .. N.
/// Entry 0 of the result is 0 by convention.
std::vector<double> discrete_caputo_series(std::span<const double> series, double alpha, double dt);

/// Exact solution of D^a y = lambda y + c, y(0) = y0:
/// y0 E_{a,1}(lambda t^a) + c t^a E_{a,a+1}(lambda t^a).
double linear_fode_solution(double lambda, double c, double y0, double alpha, double t);

/// Mild solution of D^a y = lambda y + f(t) at t_n = n dt for n = 0 .. N,
/// with f taken piecewise constant (left values f_0 .. f_{N-1}) and the
/// kernel (t-s)^{a-1} E_{a,a}(lambda (t-s)^a) integrated exactly per step.
std::vector<double> duhamel_mode(double lambda, double y0, std::span<const double> forcing, double alpha,
                                 double dt);

struct CheckOutcome {
  bool pass = true;
  double margin = 0.0;  ///< positive means slack
};

/// Fractional Gronwall bound: max y <= y(0) + b T^a / (a Gamma(a)).
CheckOutcome gronwall_bound_check(std::span<const double> y_series, double c1, double b, double alpha,
                                  double horizon);

struct BoundValue {
  bool ok = true;
  double value = 0.0;
  std::string failure;
};

/// [y0^{1-k} + (C + C1 (k-1)) T^a / (a Gamma(a))]^{1/(1-k)}; not ok when
/// the base is negative.
BoundValue bernoulli_decay_bound(double y0, double k_exp, double c, double c1, double alpha, double horizon);

struct StepwiseInequality {
  bool pass = true;
  std::vector<double> difference;  ///< lhs - rhs at steps 1 .. N
  std::size_t first_failure = 0;   ///< 1-based step, 0 when none
};

/// Discrete v_n (D^a v)_n >= 1/2 (D^a v^2)_n at every step.
StepwiseInequality alikhanov_check(std::span<const double> v_series, double alpha, double dt);

/// Discrete u_n^{q-1} (D^a u)_n >= (1/q) (D^a u^q)_n at every step, q >= 2.
StepwiseInequality power_inequality_check(std::span<const double> u_series, int exponent, double alpha,
                                          double dt);

}  // namespace fracplap
