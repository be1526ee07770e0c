#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracplap {

/// Uniform periodic grid on [-L, L)^dim. Point i along an axis sits at
/// x_i = -L + i*h, so the origin is index n/2.
struct DomainSpec {
  double half_width = 1.0;
  int points_per_axis = 64;
  int dim = 1;

  double spacing() const { return 2.0 * half_width / points_per_axis; }
  std::size_t total_points() const;
  double cell_volume() const;
  double coordinate(int index) const { return -half_width + index * spacing(); }

  /// Throws std::invalid_argument unless n >= 8 is even, L > 0, dim in {1,2}.
  void validate() const;

  bool operator==(const DomainSpec&) const = default;
};

/// A real field sampled on a DomainSpec, row-major (first axis slowest).
class Field {
 public:
  Field() = default;
  explicit Field(const DomainSpec& domain, double fill = 0.0);
  Field(const DomainSpec& domain, std::vector<double> values);

  const DomainSpec& domain() const { return domain_; }
  std::size_t size() const { return values_.size(); }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  double sup_norm() const;
  double min_value() const;
  double l1_norm() const;
  double l2_norm() const;
  bool all_finite() const;

  bool operator==(const Field&) const = default;

 private:
  DomainSpec domain_;
  std::vector<double> values_;
};

/// Throws GridMismatch when the two domains differ.
void require_same_grid(const DomainSpec& a, const DomainSpec& b, const char* what);

}  // namespace fracplap
