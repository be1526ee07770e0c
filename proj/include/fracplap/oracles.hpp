#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fracplap/field.hpp"
#include "fracplap/spatial.hpp"

namespace fracplap {

/// O(N^2) periodic convolution h^dim sum_j J(x_i - x_j) u_j.
Field direct_convolution(const Field& u, const Field& kernel_centered);

struct ScalarTrajectory {
  std::vector<double> times;
  std::vector<double> values;
  std::optional<double> blowup_time;  ///< first time the value exceeded the threshold
};

/// Fractional Adams predictor-corrector for D^a y = f(y), y(0) = y0, on the
/// Volterra form with product-integration weights. Stops at t_final or
/// when |y| exceeds `threshold`.
ScalarTrajectory fractional_adams(const std::function<double(double)>& f, double y0, double alpha, double dt,
                                  double t_final, double threshold = 1e8);

/// Least-squares slope of log(error) against log(step).
double fitted_order(std::span<const double> steps, std::span<const double> errors);

}  // namespace fracplap
