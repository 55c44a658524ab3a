#include "kdvsat/kdv_operator.hpp"

#include <algorithm>

#include "kdvsat/errors.hpp"

namespace kdvsat {

KdvOperator::KdvOperator(const SpatialGrid& grid)
    : grid_(grid), a_(grid.n_interior(), 2, 2) {
  const int n = grid.n_interior();
  const double h = grid.spacing();
  const double c1 = 1.0 / (2.0 * h);
  const double c3 = 1.0 / (2.0 * h * h * h);

  // D1 (central) and D3 (central 5-point) accumulated with sign flipped:
  // A = -(D1 + D3). Out-of-range indices carry the ghost closures.
  auto add = [&](int i, int j, double w) {
    if (j >= 0 && j < n) {
      a_.at(i, j) += -w;
    } else if (j == -2) {
      // ghost y_{-1} = -y_1 (odd reflection; node -1 is column 0)
      a_.at(i, 0) += w;
    } else if (j == n + 1) {
      // ghost y_{n+2} = y_n (mirror from w_x(L) = 0; node n+2 is column n-1)
      a_.at(i, n - 1) += -w;
    }
    // j == -1 and j == n are the boundary nodes, value 0
  };

  for (int i = 0; i < n; ++i) {
    add(i, i - 1, -c1);
    add(i, i + 1, c1);
    add(i, i - 2, -c3);
    add(i, i - 1, 2.0 * c3);
    add(i, i + 1, -2.0 * c3);
    add(i, i + 2, c3);
  }
}

StateField KdvOperator::apply(const StateField& y) const {
  if (!(y.grid() == grid_))
    throw ConfigError("KdvOperator: field grid does not match operator grid");
  return StateField(grid_, a_.mul(y.values()));
}

double KdvOperator::quadratic_form(std::span<const double> y) const {
  std::vector<double> ay = a_.mul(y);
  double s = 0.0;
  for (size_t i = 0; i < ay.size(); ++i) s += y[i] * ay[i];
  return grid_.spacing() * s;
}

void nonlinear_term(std::span<const double> y, double h, std::span<double> out) {
  const int n = static_cast<int>(y.size());
  auto at = [&](int i) -> double { return (i < 0 || i >= n) ? 0.0 : y[static_cast<size_t>(i)]; };
  const double c = 1.0 / (2.0 * h);
  for (int i = 0; i < n; ++i) {
    const double d1y = (at(i + 1) - at(i - 1)) * c;
    const double d1y2 = (at(i + 1) * at(i + 1) - at(i - 1) * at(i - 1)) * c;
    out[static_cast<size_t>(i)] = (at(i) * d1y + d1y2) / 3.0;
  }
}

StateField nonlinear_term(const StateField& y) {
  std::vector<double> out(static_cast<size_t>(y.size()));
  nonlinear_term(y.values(), y.grid().spacing(), out);
  return StateField(y.grid(), std::move(out));
}

void nonlinear_term_plain(std::span<const double> y, double h, std::span<double> out) {
  const int n = static_cast<int>(y.size());
  auto at = [&](int i) -> double { return (i < 0 || i >= n) ? 0.0 : y[static_cast<size_t>(i)]; };
  const double c = 1.0 / (2.0 * h);
  for (int i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] = at(i) * (at(i + 1) - at(i - 1)) * c;
}

StateField nonlinear_term_plain(const StateField& y) {
  std::vector<double> out(static_cast<size_t>(y.size()));
  nonlinear_term_plain(y.values(), y.grid().spacing(), out);
  return StateField(y.grid(), std::move(out));
}

} // namespace kdvsat
