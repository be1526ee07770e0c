#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fracplap {

enum class CouplingMode { kernel, global_mass };

/// Coefficients of  D_t^a u = Div_p u^m + mu u^2 (1 - k C[u]) - gamma u,
/// where C[u] is J*u (kernel mode) or the total mass (global_mass mode).
struct ModelParameters {
  double alpha = 0.5;
  double p = 1.5;
  double mu = 1.0;
  double k = 1.0;
  double gamma = 0.1;
  double m = 1.0;
  int dim = 1;
  CouplingMode coupling = CouplingMode::kernel;

  /// Global-mass mode with mu = k = gamma = 1.
  static ModelParameters global_mass(double alpha, double p, double m, int dim);

  bool operator==(const ModelParameters&) const = default;
};

/// Which ranges validate_params enforces. `theorem` is the admissible regime
/// of the boundedness/Allee results; `numerical` additionally admits the
/// reference cases the solver must handle (p = 2, mu = 0, k = 0).
enum class Regime { theorem, numerical };

struct Violation {
  std::string field;
  std::string message;
};

std::vector<Violation> validate_params(const ModelParameters& params,
                                       Regime regime = Regime::theorem);

struct EquilibriumRoots {
  double a = 0.0;
  double A = 0.0;
  bool real = true;
};

/// Roots of mu u (1 - k u) = gamma. When the discriminant is negative both
/// entries hold the common real part 1/(2k) and `real` is false.
EquilibriumRoots equilibrium_roots(double mu, double k, double gamma);

/// User-supplied constants of the a-priori estimates.
struct AnalysisConstants {
  double c_gn = 1.0;
  double c4 = 1.0;
  double eta = 0.5;
  double delta0 = 0.5;
  std::optional<double> delta;  ///< ball radius; defaults to delta0 / 2
  double c1 = 1.0;
  double c2 = 1.0;
  /// Alternate reading of the decay smallness threshold (tau / mu). Unset
  /// means gamma / mu.
  std::optional<double> tau;

  double ball_radius() const { return delta ? *delta : 0.5 * delta0; }
  std::vector<Violation> validate() const;

  bool operator==(const AnalysisConstants&) const = default;
};

/// Zero in one dimension, (mu c_gn^2 + 1) / eta in two.
double k_star(int dim, double mu, const AnalysisConstants& consts);

/// mu max(u,0)^2 (1 - k coupling) - gamma u. In global-mass mode the caller
/// passes mu = k = gamma = 1 via the parameters.
double reaction(double u, double coupling, const ModelParameters& params);

inline double sigma(double gamma, double mu, double sup_u) { return gamma - mu * sup_u; }

/// Smallness threshold of the decay regime: gamma/mu, or tau/mu when set.
double smallness_threshold(const ModelParameters& params, const AnalysisConstants& consts);

struct BoundEstimate {
  enum class Status { ok, bracket_nonpositive, nonfinite };
  Status status = Status::ok;
  double value = 0.0;    ///< K
  double l2_ball = 0.0;  ///< M
  double bracket = 0.0;  ///< base raised to 1/(1-p)
  std::string term;      ///< offending term when status != ok

  bool ok() const { return status == Status::ok; }
};

/// Sup-norm bound K = C4 |u0| + mu C4 M^2 T^a / a with the local L2 bound M
/// from the fractional Bernoulli estimate.
BoundEstimate bound_K(const ModelParameters& params, const AnalysisConstants& consts,
                      double u0_sup, double horizon);

std::string to_string(CouplingMode mode);
CouplingMode coupling_from_string(const std::string& name);

}  // namespace fracplap
