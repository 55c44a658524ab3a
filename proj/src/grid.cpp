#include "kdvsat/grid.hpp"

#include <cmath>
#include <utility>

#include "kdvsat/errors.hpp"

namespace kdvsat {

SpatialGrid::SpatialGrid(double length, int n_interior)
    : length_(length), n_(n_interior), h_(length / (n_interior + 1)) {
  if (!(length > 0.0) || !std::isfinite(length))
    throw ConfigError("SpatialGrid: domain length must be positive");
  if (n_interior < 4)
    throw ConfigError("SpatialGrid: need at least 4 interior nodes");
}

std::vector<double> SpatialGrid::nodes() const {
  std::vector<double> x(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) x[static_cast<size_t>(i)] = node(i);
  return x;
}

StateField::StateField(SpatialGrid grid)
    : grid_(grid), values_(static_cast<size_t>(grid.n_interior()), 0.0) {}

StateField::StateField(SpatialGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_.n_interior())
    throw ConfigError("StateField: value count does not match grid");
  if (!detail::all_finite(values_))
    throw ConfigError("StateField: non-finite entry");
}

namespace detail {

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

double l2_norm(std::span<const double> v, double h) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(h * s);
}

double h1_seminorm(std::span<const double> v, double h) {
  const int n = static_cast<int>(v.size());
  auto at = [&](int i) -> double { return (i < 0 || i >= n) ? 0.0 : v[static_cast<size_t>(i)]; };
  // gradient at the two boundary nodes (one-sided) with half trapezoid weight
  const double g0 = at(0) / h;
  const double gL = -at(n - 1) / h;
  double s = 0.5 * (g0 * g0 + gL * gL);
  for (int i = 0; i < n; ++i) {
    const double g = (at(i + 1) - at(i - 1)) / (2.0 * h);
    s += g * g;
  }
  return std::sqrt(h * s);
}

} // namespace detail

double l2_norm(const StateField& y) {
  return detail::l2_norm(y.values(), y.grid().spacing());
}

double h1_seminorm(const StateField& y) {
  return detail::h1_seminorm(y.values(), y.grid().spacing());
}

StateField named_profile(const std::string& name, const SpatialGrid& grid,
                         double scale) {
  const int n = grid.n_interior();
  std::vector<double> v(static_cast<size_t>(n), 0.0);
  if (name == "zero") {
    // all zeros
  } else if (name == "one-minus-cos") {
    for (int i = 0; i < n; ++i)
      v[static_cast<size_t>(i)] = scale * (1.0 - std::cos(grid.node(i)));
  } else if (name == "gaussian") {
    const double L = grid.length();
    const double sigma = L / 12.0;
    for (int i = 0; i < n; ++i) {
      const double d = grid.node(i) - 0.5 * L;
      v[static_cast<size_t>(i)] = scale * std::exp(-d * d / (2.0 * sigma * sigma));
    }
  } else {
    throw ConfigError("named_profile: unknown profile '" + name + "'");
  }
  return StateField(grid, std::move(v));
}

} // namespace kdvsat
