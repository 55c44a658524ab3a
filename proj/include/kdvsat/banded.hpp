#pragma once

#include <span>
#include <vector>

namespace kdvsat {

// Square band matrix with kl sub- and ku superdiagonals, row-major band
// storage. Entries outside the band are structurally zero.
class BandedMatrix {
public:
  BandedMatrix(int n, int kl, int ku);

  int size() const noexcept { return n_; }
  int lower_bandwidth() const noexcept { return kl_; }
  int upper_bandwidth() const noexcept { return ku_; }

  bool in_band(int i, int j) const noexcept {
    return i >= 0 && j >= 0 && i < n_ && j < n_ && j - i <= ku_ && i - j <= kl_;
  }

  // Checked band access; at() aborts outside the band in debug builds and is
  // undefined there otherwise.
  double& at(int i, int j) noexcept { return data_[idx(i, j)]; }
  double at(int i, int j) const noexcept { return data_[idx(i, j)]; }
  // Value access valid for any (i, j): zero outside the band.
  double get(int i, int j) const noexcept {
    return in_band(i, j) ? data_[idx(i, j)] : 0.0;
  }

  void mul(std::span<const double> x, std::span<double> out) const;
  std::vector<double> mul(std::span<const double> x) const;

private:
  size_t idx(int i, int j) const noexcept {
    return static_cast<size_t>(i) * static_cast<size_t>(kl_ + ku_ + 1) +
           static_cast<size_t>(j - i + kl_);
  }

  int n_, kl_, ku_;
  std::vector<double> data_;
};

// LU factorization of a BandedMatrix. Factors without pivoting first (the
// operators here are identity-plus-skew-dominated and do not need it); falls
// back to partial pivoting when a pivot drops below 1e-13 of its row max.
// Raises NumericalError when the matrix is singular to tolerance. The factored
// object is immutable and may be shared across threads for concurrent solves.
class BandedLU {
public:
  explicit BandedLU(const BandedMatrix& m);

  void solve_inplace(std::span<double> x) const;
  std::vector<double> solve(std::span<const double> rhs) const;

  bool pivoted() const noexcept { return pivoted_; }

private:
  bool factor(const BandedMatrix& m, bool pivot);

  int n_, kl_, ku_, width_;
  std::vector<double> lu_;  // row i covers columns [i-kl, i+ku+kl]
  std::vector<int> piv_;
  bool pivoted_ = false;

  size_t idx(int i, int j) const noexcept {
    return static_cast<size_t>(i) * static_cast<size_t>(width_) +
           static_cast<size_t>(j - i + kl_);
  }
};

} // namespace kdvsat
