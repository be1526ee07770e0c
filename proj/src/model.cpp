#include "fracplap/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracplap {

ModelParameters ModelParameters::global_mass(double alpha, double p, double m, int dim) {
  ModelParameters params;
  params.alpha = alpha;
  params.p = p;
  params.mu = 1.0;
  params.k = 1.0;
  params.gamma = 1.0;
  params.m = m;
  params.dim = dim;
  params.coupling = CouplingMode::global_mass;
  return params;
}

std::vector<Violation> validate_params(const ModelParameters& params, Regime regime) {
  std::vector<Violation> out;
  auto flag = [&](const char* field, std::string message) { out.push_back({field, std::move(message)}); };
  const bool strict = regime == Regime::theorem;

  if (!(params.alpha > 0.0 && params.alpha < 1.0)) flag("alpha", "must lie in (0, 1)");
  if (strict) {
    if (!(params.p > 1.0 && params.p < 2.0)) flag("p", "must lie in (1, 2)");
    if (!(params.mu > 0.0)) flag("mu", "must be positive");
  } else {
    if (!(params.p > 1.0 && params.p <= 2.0)) flag("p", "must lie in (1, 2]");
    if (!(params.mu >= 0.0)) flag("mu", "must be non-negative");
  }
  if (!(params.k >= 0.0) || !std::isfinite(params.k)) flag("k", "must be non-negative");
  if (!(params.gamma >= 0.0) || !std::isfinite(params.gamma)) flag("gamma", "must be non-negative");
  if (params.dim != 1 && params.dim != 2) flag("dim", "must be 1 or 2");

  if (params.coupling == CouplingMode::kernel) {
    if (params.m != 1.0) flag("m", "kernel coupling requires m = 1");
    if (strict && !(params.k > 0.0)) flag("k", "must be positive");
  } else {
    if (params.dim == 1 || params.dim == 2) {
      const double lower = 2.0 - 2.0 / params.dim;
      if (!(params.m > lower && params.m <= 3.0))
        flag("m", "global_mass coupling requires " + std::to_string(lower) + " < m <= 3");
    }
    if (params.mu != 1.0) flag("mu", "fixed to 1 in global_mass coupling");
    if (params.k != 1.0) flag("k", "fixed to 1 in global_mass coupling");
    if (params.gamma != 1.0) flag("gamma", "fixed to 1 in global_mass coupling");
  }
  return out;
}

EquilibriumRoots equilibrium_roots(double mu, double k, double gamma) {
  if (!(mu > 0.0) || !(k > 0.0) || !(gamma >= 0.0))
    throw std::invalid_argument("equilibrium_roots requires mu > 0, k > 0, gamma >= 0");
  const double disc = 1.0 - 4.0 * k * gamma / mu;
  EquilibriumRoots roots;
  if (disc < 0.0) {
    roots.a = roots.A = 0.5 / k;
    roots.real = false;
    return roots;
  }
  const double root = std::sqrt(disc);
  roots.A = (1.0 + root) / (2.0 * k);
  // a A = gamma / (mu k); avoids cancellation in 1 - sqrt(disc) for small gamma.
  roots.a = gamma / (mu * k * roots.A);
  return roots;
}

std::vector<Violation> AnalysisConstants::validate() const {
  std::vector<Violation> out;
  auto positive = [&](const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) out.push_back({name, "must be positive"});
  };
  positive("c_gn", c_gn);
  positive("c4", c4);
  positive("eta", eta);
  positive("delta0", delta0);
  positive("c1", c1);
  positive("c2", c2);
  if (delta) {
    positive("delta", *delta);
    if (*delta > 0.5 * delta0) out.push_back({"delta", "must not exceed delta0 / 2"});
  }
  if (tau) positive("tau", *tau);
  return out;
}

double k_star(int dim, double mu, const AnalysisConstants& consts) {
  if (dim == 1) return 0.0;
  if (dim == 2) return (mu * consts.c_gn * consts.c_gn + 1.0) / consts.eta;
  throw std::invalid_argument("k_star is defined for dim 1 or 2");
}

double reaction(double u, double coupling, const ModelParameters& params) {
  const double pos = std::max(u, 0.0);
  return params.mu * pos * pos * (1.0 - params.k * coupling) - params.gamma * u;
}

double smallness_threshold(const ModelParameters& params, const AnalysisConstants& consts) {
  const double numerator = consts.tau ? *consts.tau : params.gamma;
  return numerator / params.mu;
}

BoundEstimate bound_K(const ModelParameters& params, const AnalysisConstants& consts,
                      double u0_sup, double horizon) {
  if (!(horizon > 0.0)) throw std::invalid_argument("bound_K requires T > 0");
  if (!(u0_sup >= 0.0)) throw std::invalid_argument("bound_K requires u0_sup >= 0");
  if (!(params.alpha > 0.0 && params.alpha <= 1.0)) throw std::invalid_argument("bound_K requires alpha in (0,1]");
  if (!(params.p > 1.0 && params.p < 2.0)) throw std::invalid_argument("bound_K requires p in (1,2)");

  BoundEstimate est;
  auto fail_nonfinite = [&](const char* term) {
    est.status = BoundEstimate::Status::nonfinite;
    est.term = term;
    return est;
  };

  const double alpha = params.alpha;
  const double mu = params.mu;
  const double delta = consts.ball_radius();
  const double time_factor = std::pow(horizon, alpha) / (alpha * std::tgamma(alpha));

  double initial_mass = 0.0;
  double source = 0.0;
  if (params.dim == 1) {
    initial_mass = 2.0 * delta * u0_sup * u0_sup;
    const double inner = std::cbrt(mu) * std::pow(consts.c_gn, 4.0 / 3.0) + 1.0;
    const double q1 = 2.0 * mu * (std::pow(inner, 6) * std::pow(consts.eta * params.k, -5) +
                                  std::pow(consts.c_gn, 10));
    if (!std::isfinite(q1)) return fail_nonfinite("Q1");
    source = q1;
  } else if (params.dim == 2) {
    initial_mass = 4.0 * delta * delta * u0_sup * u0_sup;
    source = 2.0 * mu * std::pow(consts.c_gn, 4);
    if (!std::isfinite(source)) return fail_nonfinite("2 mu C_GN^4");
  } else {
    throw std::invalid_argument("bound_K is defined for dim 1 or 2");
  }

  const double exponent = 1.0 - params.p;
  // initial_mass = 0 sends the first addend to +inf and the bracket power to
  // its limit 0, so M = 0 there.
  const double first = std::pow(initial_mass, exponent);
  const double second = (source + (2.0 * params.gamma - 2.0 * consts.c2)) * time_factor;
  if (!std::isfinite(second)) return fail_nonfinite("T^alpha / (alpha Gamma(alpha)) term");
  est.bracket = first + second;
  if (std::isnan(est.bracket)) return fail_nonfinite("bracket");
  if (!(est.bracket > 0.0)) {
    est.status = BoundEstimate::Status::bracket_nonpositive;
    est.term = "bracket";
    return est;
  }
  const double m_squared = std::pow(est.bracket, 1.0 / exponent);
  if (!std::isfinite(m_squared)) return fail_nonfinite("M^2");
  est.l2_ball = std::sqrt(m_squared);
  est.value = consts.c4 * u0_sup + mu * consts.c4 * m_squared * std::pow(horizon, alpha) / alpha;
  if (!std::isfinite(est.value)) return fail_nonfinite("K");
  return est;
}

std::string to_string(CouplingMode mode) {
  return mode == CouplingMode::kernel ? "kernel" : "global_mass";
}

CouplingMode coupling_from_string(const std::string& name) {
  if (name == "kernel") return CouplingMode::kernel;
  if (name == "global_mass") return CouplingMode::global_mass;
  throw std::invalid_argument("unknown coupling mode '" + name + "'");
}

}  // namespace fracplap
