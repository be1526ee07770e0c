#include "fracplap/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fracplap/error.hpp"

namespace fracplap {

std::size_t DomainSpec::total_points() const {
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(points_per_axis);
  return total;
}

double DomainSpec::cell_volume() const { return std::pow(spacing(), dim); }

void DomainSpec::validate() const {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw std::invalid_argument("domain half_width must be positive");
  if (points_per_axis < 8 || points_per_axis % 2 != 0)
    throw std::invalid_argument("points_per_axis must be an even integer >= 8");
  if (dim != 1 && dim != 2) throw std::invalid_argument("dim must be 1 or 2");
}

Field::Field(const DomainSpec& domain, double fill)
    : domain_(domain), values_(domain.total_points(), fill) {}

Field::Field(const DomainSpec& domain, std::vector<double> values)
    : domain_(domain), values_(std::move(values)) {
  if (values_.size() != domain_.total_points())
    throw GridMismatch("field has " + std::to_string(values_.size()) + " samples, domain expects " +
                       std::to_string(domain_.total_points()));
}

double Field::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double Field::min_value() const {
  return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end());
}

double Field::l1_norm() const {
  double s = 0.0;
  for (double v : values_) s += std::abs(v);
  return s * domain_.cell_volume();
}

double Field::l2_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s * domain_.cell_volume());
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void require_same_grid(const DomainSpec& a, const DomainSpec& b, const char* what) {
  if (!(a == b)) throw GridMismatch(std::string(what) + ": grids differ");
}

}  // namespace fracplap
