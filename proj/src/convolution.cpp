#include "fracplap/convolution.hpp"

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <vector>

#include "fracplap/error.hpp"

namespace fracplap {
namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct RealBuffer {
  explicit RealBuffer(std::size_t n) : data(fftw_alloc_real(n)) {}
  ~RealBuffer() { fftw_free(data); }
  RealBuffer(const RealBuffer&) = delete;
  RealBuffer& operator=(const RealBuffer&) = delete;
  double* data;
};

struct ComplexBuffer {
  explicit ComplexBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {}
  ~ComplexBuffer() { fftw_free(data); }
  ComplexBuffer(const ComplexBuffer&) = delete;
  ComplexBuffer& operator=(const ComplexBuffer&) = delete;
  fftw_complex* data;
};

// Forward/backward plan pair for one grid shape.
struct PlanPair {
  explicit PlanPair(const DomainSpec& domain) : n(domain.points_per_axis), dim(domain.dim) {
    real_size = domain.total_points();
    spectral_size = dim == 1 ? static_cast<std::size_t>(n / 2 + 1)
                             : static_cast<std::size_t>(n) * static_cast<std::size_t>(n / 2 + 1);
    RealBuffer r(real_size);
    ComplexBuffer c(spectral_size);
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (dim == 1) {
      forward = fftw_plan_dft_r2c_1d(n, r.data, c.data, FFTW_ESTIMATE);
      backward = fftw_plan_dft_c2r_1d(n, c.data, r.data, FFTW_ESTIMATE);
    } else {
      forward = fftw_plan_dft_r2c_2d(n, n, r.data, c.data, FFTW_ESTIMATE);
      backward = fftw_plan_dft_c2r_2d(n, n, c.data, r.data, FFTW_ESTIMATE);
    }
    if (!forward || !backward) throw Error("FFTW plan creation failed");
  }
  ~PlanPair() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  PlanPair(const PlanPair&) = delete;
  PlanPair& operator=(const PlanPair&) = delete;

  int n;
  int dim;
  std::size_t real_size = 0;
  std::size_t spectral_size = 0;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

std::vector<std::complex<double>> forward_transform(const PlanPair& plans, std::span<const double> values) {
  RealBuffer r(plans.real_size);
  ComplexBuffer c(plans.spectral_size);
  std::copy(values.begin(), values.end(), r.data);
  fftw_execute_dft_r2c(plans.forward, r.data, c.data);
  std::vector<std::complex<double>> out(plans.spectral_size);
  for (std::size_t i = 0; i < plans.spectral_size; ++i) out[i] = {c.data[i][0], c.data[i][1]};
  return out;
}

}  // namespace

struct PeriodicConvolver::Impl {
  explicit Impl(const DomainSpec& d) : domain(d), plans(d) {}
  DomainSpec domain;
  PlanPair plans;
  std::vector<std::complex<double>> spectrum;  // already scaled by weight / N
};

PeriodicConvolver::PeriodicConvolver(const DomainSpec& domain, std::span<const double> kernel, double weight) {
  domain.validate();
  if (kernel.size() != domain.total_points()) throw GridMismatch("kernel size does not match the grid");
  auto impl = std::make_shared<Impl>(domain);

  // Move the origin from index n/2 to index 0 on every axis.
  const int n = domain.points_per_axis;
  const int half = n / 2;
  std::vector<double> shifted(kernel.size());
  if (domain.dim == 1) {
    for (int i = 0; i < n; ++i) shifted[(i - half + n) % n] = kernel[i];
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        shifted[static_cast<std::size_t>((i - half + n) % n) * n + (j - half + n) % n] =
            kernel[static_cast<std::size_t>(i) * n + j];
  }
  impl->spectrum = forward_transform(impl->plans, shifted);
  const double factor = weight / static_cast<double>(domain.total_points());
  for (auto& c : impl->spectrum) c *= factor;
  impl_ = std::move(impl);
}

const DomainSpec& PeriodicConvolver::domain() const { return impl_->domain; }

Field PeriodicConvolver::apply(const Field& u) const {
  require_same_grid(u.domain(), impl_->domain, "convolution");
  const PlanPair& plans = impl_->plans;
  RealBuffer r(plans.real_size);
  ComplexBuffer c(plans.spectral_size);
  std::copy(u.values().begin(), u.values().end(), r.data);
  fftw_execute_dft_r2c(plans.forward, r.data, c.data);
  for (std::size_t i = 0; i < plans.spectral_size; ++i) {
    const std::complex<double> v = std::complex<double>(c.data[i][0], c.data[i][1]) * impl_->spectrum[i];
    c.data[i][0] = v.real();
    c.data[i][1] = v.imag();
  }
  fftw_execute_dft_c2r(plans.backward, c.data, r.data);
  return Field(u.domain(), std::vector<double>(r.data, r.data + plans.real_size));
}

Field apply_fourier_multiplier(const Field& u, const std::function<double(int, int)>& symbol) {
  const DomainSpec& domain = u.domain();
  domain.validate();
  const PlanPair plans(domain);
  RealBuffer r(plans.real_size);
  ComplexBuffer c(plans.spectral_size);
  std::copy(u.values().begin(), u.values().end(), r.data);
  fftw_execute_dft_r2c(plans.forward, r.data, c.data);
  const int n = domain.points_per_axis;
  const int cols = n / 2 + 1;
  const double norm = 1.0 / static_cast<double>(domain.total_points());
  for (std::size_t i = 0; i < plans.spectral_size; ++i) {
    const int k0 = domain.dim == 1 ? static_cast<int>(i) : static_cast<int>(i) / cols;
    const int k1 = domain.dim == 1 ? 0 : static_cast<int>(i) % cols;
    const double s = symbol(k0, k1) * norm;
    c.data[i][0] *= s;
    c.data[i][1] *= s;
  }
  fftw_execute_dft_c2r(plans.backward, c.data, r.data);
  return Field(domain, std::vector<double>(r.data, r.data + plans.real_size));
}

}  // namespace fracplap
