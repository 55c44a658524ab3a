#pragma once

#include <span>
#include <string>
#include <vector>

namespace kdvsat {

// Uniform mesh on [0, L] with n interior nodes x_i = i*h, h = L/(n+1).
// The boundary nodes x_0 = 0 and x_{n+1} = L are not stored; every field on the
// grid carries homogeneous Dirichlet values there by construction.
class SpatialGrid {
public:
  SpatialGrid(double length, int n_interior);

  double length() const noexcept { return length_; }
  int n_interior() const noexcept { return n_; }
  double spacing() const noexcept { return h_; }

  // x-coordinate of interior node i, 0-based: node(0) = h, node(n-1) = L - h.
  double node(int i) const noexcept { return (i + 1) * h_; }
  std::vector<double> nodes() const;

  bool operator==(const SpatialGrid&) const = default;

private:
  double length_;
  int n_;
  double h_;
};

// Nodal values of y(t, .) at the interior nodes of a SpatialGrid.
// y(t,0) = y(t,L) = 0 are implicit; all entries are finite.
class StateField {
public:
  explicit StateField(SpatialGrid grid); // zero field
  StateField(SpatialGrid grid, std::vector<double> values);

  const SpatialGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](int i) const noexcept { return values_[static_cast<size_t>(i)]; }
  int size() const noexcept { return static_cast<int>(values_.size()); }

private:
  SpatialGrid grid_;
  std::vector<double> values_;
};

// sqrt(h * sum y_i^2): composite rectangle quadrature of the L2 norm, exact in
// its boundary terms because the field vanishes there.
double l2_norm(const StateField& y);

// Discrete L2 norm of the first-difference gradient: central differences at the
// interior nodes, one-sided at x=0 and x=L (using the zero boundary values),
// trapezoid weights.
double h1_seminorm(const StateField& y);

// Tabulated initial profiles. Known names: "zero", "one-minus-cos", "gaussian".
// Unknown names raise ConfigError.
StateField named_profile(const std::string& name, const SpatialGrid& grid,
                         double scale = 1.0);

namespace detail {
double l2_norm(std::span<const double> v, double h);
double h1_seminorm(std::span<const double> v, double h);
bool all_finite(std::span<const double> v);
} // namespace detail

} // namespace kdvsat
