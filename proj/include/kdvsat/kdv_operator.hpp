#pragma once

#include "kdvsat/banded.hpp"
#include "kdvsat/grid.hpp"

namespace kdvsat {

// Pentadiagonal discretization of A: w -> -w' - w''' on the interior nodes,
// with w(0) = w(L) = 0 imposed strongly and w_x(L) = 0 through a mirror ghost
// node. Stencils: central 2nd-order first difference; central 5-point third
// difference (-y_{i-2} + 2y_{i-1} - 2y_{i+1} + y_{i+2}) / (2h^3).
//
// Ghost closures: y_{n+2} = y_n (mirror across x = L, the discrete w_x(L) = 0)
// and y_{-1} = -y_1 (odd reflection across x = 0). The odd ghost makes the
// quadratic form exact:  h y'A y = -(y_1^2 + y_n^2) / (2h^2),
// the discrete version of the -|y_x(0)|^2/2 boundary damping, so the operator
// is dissipative for every field, not just smooth ones.
class KdvOperator {
public:
  explicit KdvOperator(const SpatialGrid& grid);

  const SpatialGrid& grid() const noexcept { return grid_; }
  const BandedMatrix& matrix() const noexcept { return a_; }

  void apply(std::span<const double> y, std::span<double> out) const { a_.mul(y, out); }
  std::vector<double> apply(std::span<const double> y) const { return a_.mul(y); }
  StateField apply(const StateField& y) const;

  // h * y'Ay; <= 0 for all y.
  double quadratic_form(std::span<const double> y) const;

private:
  SpatialGrid grid_;
  BandedMatrix a_;
};

// Skew-symmetric split of the transport nonlinearity:
//   N(y) = (1/3) (y .* D1 y + D1(y .* y)),
// consistent with y y_x and exactly energy-neutral: h <N(y), y> = 0 to
// round-off for zero-boundary fields.
void nonlinear_term(std::span<const double> y, double h, std::span<double> out);
StateField nonlinear_term(const StateField& y);

// Plain central differencing y .* D1 y, kept as an option for comparison.
void nonlinear_term_plain(std::span<const double> y, double h, std::span<double> out);
StateField nonlinear_term_plain(const StateField& y);

} // namespace kdvsat
