#pragma once

#include <functional>
#include <memory>
#include <span>

#include "fracplap/field.hpp"

namespace fracplap {

/// Periodic convolution with a fixed kernel, done with real-to-complex FFTs.
/// The kernel spectrum is computed once; apply() is safe to call from
/// several threads at once.
class PeriodicConvolver {
 public:
  /// `kernel` is sampled on `domain` with the origin at index n/2 on every
  /// axis. The result of apply() is weight * sum_j kernel(x_i - x_j) u_j.
  PeriodicConvolver(const DomainSpec& domain, std::span<const double> kernel, double weight);

  Field apply(const Field& u) const;
  const DomainSpec& domain() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Multiplies the discrete Fourier coefficients of `u` by symbol(k0, k1)
/// and transforms back. Indices are raw FFT indices in [0, n); k1 is 0 in
/// one dimension. The symbol must be even in each index.
Field apply_fourier_multiplier(const Field& u, const std::function<double(int, int)>& symbol);

}  // namespace fracplap
