#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "fracplap/convolution.hpp"
#include "fracplap/field.hpp"

namespace fracplap {

enum class KernelShape { box, triangle, gaussian };

std::string to_string(KernelShape shape);
KernelShape kernel_shape_from_string(const std::string& name);

/// Competition kernel J sampled on the grid, origin at index n/2.
struct KernelGrid {
  Field values;
  KernelShape shape = KernelShape::box;
  double delta0 = 0.0;
  double eta = 0.0;
  double integral = 0.0;   ///< sum of values times h^dim
  double core_min = 0.0;   ///< min of J over grid points with |x| <= delta0
  std::shared_ptr<const PeriodicConvolver> convolver;
};

/// Profile of `shape` normalized to unit discrete integral.
/// Box is the cell-averaged indicator of [-2 delta0, 2 delta0]^dim, triangle
/// a tensor product of hats of radius 2 delta0, gaussian radial with
/// standard deviation delta0 cut at 6 delta0. Does not check eta.
Field kernel_profile(KernelShape shape, double delta0, const DomainSpec& domain);

/// Minimum of `kernel` over grid points with |x| <= delta0 (Euclidean).
double kernel_core_min(const Field& kernel, double delta0);

/// Builds the normalized kernel and checks core_min > eta.
/// Throws std::invalid_argument unless 0 < delta0 < L/4 and eta > 0, and
/// KernelError when the eta floor fails.
KernelGrid discretize_kernel(KernelShape shape, double delta0, double eta, const DomainSpec& domain);

/// (J * u)(x_i) = h^dim sum_j J(x_i - x_j) u_j on the periodic grid.
Field convolve_kernel(const Field& u, const KernelGrid& kernel);

/// Forward differences (u_{i+e} - u_i)/h per axis. Entry i of axis a is the
/// face between node i and its neighbour along a (periodic wrap).
struct FaceGradients {
  DomainSpec domain;
  std::array<std::vector<double>, 2> axis;
};

FaceGradients gradient_faces(const Field& u);

/// Per-face diffusion coefficients, same layout as FaceGradients.
struct FaceCoefficients {
  DomainSpec domain;
  std::array<std::vector<double>, 2> axis;
};

/// (|grad u|^2 + eps^2)^{(p-2)/2} per face. The normal component is the face
/// difference; in 2D the transverse component is the mean of the centered
/// differences at the two nodes sharing the face. Exactly 1 at p = 2.
FaceCoefficients p_diffusivity(const Field& u, double p, double eps_reg);

/// sum_a (c_{i} (v_{i+e}-v_i) - c_{i-e} (v_i - v_{i-e})) / h^2.
Field apply_face_diffusion(const FaceCoefficients& coeffs, const Field& v);

/// Regularized p-Laplacian in flux form.
Field p_laplacian(const Field& u, double p, double eps_reg);

/// p-Laplacian of max(u,0)^m.
Field p_laplacian_power(const Field& u, double p, double m, double eps_reg);

/// max(u,0)^m pointwise.
Field positive_power(const Field& u, double m);

/// Sum of values times h^dim in storage order.
double global_mass(const Field& u);

/// Integral of f over the box [x - delta, x + delta]^dim for every grid
/// point x, using cell-overlap weights. Throws std::invalid_argument
/// unless 0 < delta < L/2.
Field ball_integral(const Field& f, double delta);

/// Integral of u^2 over the box ball of radius delta around every point.
Field local_l2_ball(const Field& u, double delta);

}  // namespace fracplap
