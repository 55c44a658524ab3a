#include "kdvsat/banded.hpp"

#include <algorithm>
#include <cmath>

#include "kdvsat/errors.hpp"

namespace kdvsat {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku),
      data_(static_cast<size_t>(n) * static_cast<size_t>(kl + ku + 1), 0.0) {
  if (n < 1 || kl < 0 || ku < 0)
    throw ConfigError("BandedMatrix: invalid dimensions");
}

void BandedMatrix::mul(std::span<const double> x, std::span<double> out) const {
  for (int i = 0; i < n_; ++i) {
    const int jlo = std::max(0, i - kl_);
    const int jhi = std::min(n_ - 1, i + ku_);
    double s = 0.0;
    for (int j = jlo; j <= jhi; ++j) s += data_[idx(i, j)] * x[static_cast<size_t>(j)];
    out[static_cast<size_t>(i)] = s;
  }
}

std::vector<double> BandedMatrix::mul(std::span<const double> x) const {
  std::vector<double> out(static_cast<size_t>(n_));
  mul(x, out);
  return out;
}

BandedLU::BandedLU(const BandedMatrix& m)
    : n_(m.size()), kl_(m.lower_bandwidth()), ku_(m.upper_bandwidth()),
      width_(2 * m.lower_bandwidth() + m.upper_bandwidth() + 1) {
  if (!factor(m, false)) {
    pivoted_ = true;
    if (!factor(m, true))
      throw NumericalError("BandedLU: matrix is singular to tolerance");
  }
}

bool BandedLU::factor(const BandedMatrix& m, bool pivot) {
  lu_.assign(static_cast<size_t>(n_) * static_cast<size_t>(width_), 0.0);
  piv_.assign(static_cast<size_t>(n_), 0);
  for (int i = 0; i < n_; ++i)
    for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + ku_); ++j)
      lu_[idx(i, j)] = m.at(i, j);

  for (int k = 0; k < n_; ++k) {
    const int ilast = std::min(n_ - 1, k + kl_);
    const int jlast = std::min(n_ - 1, k + ku_ + kl_);
    int r = k;
    if (pivot) {
      for (int i = k + 1; i <= ilast; ++i)
        if (std::abs(lu_[idx(i, k)]) > std::abs(lu_[idx(r, k)])) r = i;
    }
    piv_[static_cast<size_t>(k)] = r;
    double rowmax = 0.0;
    for (int j = k; j <= std::min(n_ - 1, k + ku_); ++j)
      rowmax = std::max(rowmax, std::abs(lu_[idx(r, j)]));
    const double p = lu_[idx(r, k)];
    if (std::abs(p) <= 1e-13 * std::max(rowmax, 1e-300)) return false;
    if (r != k)
      for (int j = k; j <= jlast; ++j) std::swap(lu_[idx(k, j)], lu_[idx(r, j)]);
    for (int i = k + 1; i <= ilast; ++i) {
      const double mult = lu_[idx(i, k)] / lu_[idx(k, k)];
      lu_[idx(i, k)] = mult;
      for (int j = k + 1; j <= jlast; ++j)
        lu_[idx(i, j)] -= mult * lu_[idx(k, j)];
    }
  }
  return true;
}

void BandedLU::solve_inplace(std::span<double> x) const {
  for (int k = 0; k < n_; ++k) {
    const int r = piv_[static_cast<size_t>(k)];
    if (r != k) std::swap(x[static_cast<size_t>(k)], x[static_cast<size_t>(r)]);
    const int ilast = std::min(n_ - 1, k + kl_);
    for (int i = k + 1; i <= ilast; ++i)
      x[static_cast<size_t>(i)] -= lu_[idx(i, k)] * x[static_cast<size_t>(k)];
  }
  for (int k = n_ - 1; k >= 0; --k) {
    const int jlast = std::min(n_ - 1, k + ku_ + kl_);
    double s = x[static_cast<size_t>(k)];
    for (int j = k + 1; j <= jlast; ++j)
      s -= lu_[idx(k, j)] * x[static_cast<size_t>(j)];
    x[static_cast<size_t>(k)] = s / lu_[idx(k, k)];
  }
}

std::vector<double> BandedLU::solve(std::span<const double> rhs) const {
  std::vector<double> x(rhs.begin(), rhs.end());
  solve_inplace(x);
  return x;
}

} // namespace kdvsat
