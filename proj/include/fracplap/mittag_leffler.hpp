#pragma once

namespace fracplap {

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) for real z,
/// 0 < alpha <= 1, beta > 0.
///
/// Small |z| and positive z use the power series with compensated
/// summation. On the negative axis, where the alternating series cancels
/// catastrophically, beta is first reduced below 1 + alpha with
/// E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z and the function is then
/// evaluated from its real-axis integral representation
///   E_{a,b}(z) = int_0^inf K(chi) dchi,
///   K = chi^{(1-b)/a} exp(-chi^{1/a}) [chi sin(pi(1-b)) - z sin(pi(1-b+a))]
///       / (a pi (chi^2 - 2 chi z cos(a pi) + z^2)).
///
/// Throws OverflowError when the result exceeds roughly e^700 and
/// std::invalid_argument for parameters outside the supported range.
double mittag_leffler(double alpha, double beta, double z);

/// E_{alpha,1}(z).
inline double mittag_leffler(double alpha, double z) { return mittag_leffler(alpha, 1.0, z); }

}  // namespace fracplap
