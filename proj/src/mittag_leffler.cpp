#include "fracplap/mittag_leffler.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracplap/error.hpp"

namespace fracplap {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogOverflow = 700.0;
// Series is used on the negative axis while |z|^{1/alpha} stays below this;
// the alternating sum then loses at most ~e^3/alpha ulps.
constexpr double kSeriesReach = 3.0;
// exp(-chi^{1/alpha}) < 1e-26 beyond chi = 60^alpha.
constexpr double kTailExponent = 60.0;

double series(double alpha, double beta, double z) {
  const double log_abs = std::log(std::abs(z));
  const double reach = std::pow(std::abs(z), 1.0 / alpha);
  double sum = 0.0;
  double comp = 0.0;
  for (int j = 0; j < 100000; ++j) {
    const double arg = alpha * j + beta;
    double term;
    if (arg < 170.0 && j * log_abs < kLogOverflow) {
      term = std::pow(z, j) / std::tgamma(arg);
    } else {
      const double mag = std::exp(j * log_abs - std::lgamma(arg));
      term = (z < 0.0 && (j % 2 != 0)) ? -mag : mag;
    }
    // Neumaier compensated summation.
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
    if (j > 0 && alpha * j > reach + 1.0 &&
        std::abs(term) <= 1e-17 * std::abs(sum + comp))
      break;
  }
  return sum + comp;
}

// Requires 0 < alpha < 1, 0 < beta < 1 + alpha, z < 0.
double integral_representation(double alpha, double beta, double z) {
  const double x = -z;
  const double s_first = std::sin(kPi * (1.0 - beta));
  const double s_second = std::sin(kPi * (1.0 - beta + alpha));
  const double c = std::cos(alpha * kPi);
  const double power = (1.0 - beta) / alpha;
  const double inv_alpha = 1.0 / alpha;
  const double prefactor = 1.0 / (alpha * kPi);

  auto kernel = [=](double chi) {
    if (!(chi > 0.0)) return 0.0;
    const double num = chi * s_first + x * s_second;
    const double den = chi * chi + 2.0 * chi * x * c + x * x;
    return prefactor * std::pow(chi, power) * std::exp(-std::pow(chi, inv_alpha)) * num / den;
  };

  const double upper = std::pow(kTailExponent, alpha);
  // The denominator is smallest at chi = -x cos(alpha pi) with width x sin(alpha pi).
  const double centre = -x * c;
  const double width = x * std::sin(alpha * kPi);

  std::vector<double> breaks{0.0};
  auto add_break = [&](double b) {
    if (b > breaks.back() * (1.0 + 1e-12) && b < upper) breaks.push_back(b);
  };
  if (centre > 0.0 && centre < upper) {
    add_break(std::max(centre - 8.0 * width, 0.5 * centre));
    add_break(centre - width);
    add_break(centre);
    add_break(centre + width);
    add_break(centre + 8.0 * width);
  } else {
    add_break(std::min(0.5 * x, 0.5 * upper));
  }
  breaks.push_back(upper);

  thread_local boost::math::quadrature::tanh_sinh<double> endpoint_rule;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i];
    const double hi = breaks[i + 1];
    if (i == 0) {
      // Possible integrable singularity chi^{(1-b)/a} at the origin.
      total += endpoint_rule.integrate(kernel, lo, hi, 1e-13);
    } else {
      total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(kernel, lo, hi, 15, 1e-13);
    }
  }
  return total;
}

double negative_axis(double alpha, double beta, double z) {
  if (beta >= 1.0 + alpha) {
    const double lower = negative_axis(alpha, beta - alpha, z);
    return (lower - 1.0 / std::tgamma(beta - alpha)) / z;
  }
  return integral_representation(alpha, beta, z);
}

// alpha == 1 on the far negative axis: closed forms for integer beta.
double exponential_family(double beta, double z) {
  const double rounded = std::round(beta);
  if (std::abs(beta - rounded) > 1e-14 || rounded < 1.0)
    throw std::invalid_argument("mittag_leffler: alpha = 1 with non-integer beta is only supported for |z| <= 3");
  const int order = static_cast<int>(rounded);
  if (order == 1) return std::exp(z);
  double value = std::expm1(z) / z;  // E_{1,2}
  double factorial = 1.0;            // Gamma(b - 1) for the next step
  for (int b = 3; b <= order; ++b) {
    factorial *= (b - 2);
    value = (value - 1.0 / factorial) / z;
  }
  return value;
}

}  // namespace

double mittag_leffler(double alpha, double beta, double z) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("mittag_leffler: alpha must lie in (0, 1]");
  if (!(beta > 0.0)) throw std::invalid_argument("mittag_leffler: beta must be positive");
  if (std::isnan(z)) throw std::invalid_argument("mittag_leffler: z is NaN");

  if (z == 0.0) return 1.0 / std::tgamma(beta);

  if (z > 0.0) {
    const double log_growth = std::pow(z, 1.0 / alpha) + (1.0 - beta) / alpha * std::log(z) - std::log(alpha);
    if (log_growth > kLogOverflow)
      throw OverflowError("mittag_leffler: E_{" + std::to_string(alpha) + "," + std::to_string(beta) + "}(" +
                          std::to_string(z) + ") exceeds e^700");
    if (alpha == 1.0 && beta == 1.0) return std::exp(z);
    return series(alpha, beta, z);
  }

  if (alpha == 1.0 && beta == 1.0) return std::exp(z);
  if (std::pow(-z, 1.0 / alpha) <= kSeriesReach) return series(alpha, beta, z);
  if (alpha == 1.0) return exponential_family(beta, z);
  return negative_axis(alpha, beta, z);
}

}  // namespace fracplap
