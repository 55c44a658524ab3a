#include "kdvsat/picard.hpp"

#include <algorithm>
#include <cmath>

#include "kdvsat/errors.hpp"
#include "kdvsat/kdv_operator.hpp"

namespace kdvsat {

namespace {

// minimal dense helpers for the oracle-scale matrices
using Mat = std::vector<double>; // row-major n x n

Mat matmul(const Mat& a, const Mat& b, int n) {
  Mat c(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double aik = a[static_cast<size_t>(i) * n + k];
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j)
        c[static_cast<size_t>(i) * n + j] += aik * b[static_cast<size_t>(k) * n + j];
    }
  return c;
}

void matvec(const Mat& a, std::span<const double> x, std::span<double> out, int n) {
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += a[static_cast<size_t>(i) * n + j] * x[static_cast<size_t>(j)];
    out[static_cast<size_t>(i)] = s;
  }
}

// Solves A X = B for dense X (B row-major, overwritten), partial pivoting.
void dense_solve(Mat a, Mat& b, int n) {
  std::vector<int> piv(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    int r = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a[static_cast<size_t>(i) * n + k]) >
          std::abs(a[static_cast<size_t>(r) * n + k]))
        r = i;
    piv[static_cast<size_t>(k)] = r;
    if (std::abs(a[static_cast<size_t>(r) * n + k]) < 1e-300)
      throw NumericalError("dense_solve: singular matrix");
    if (r != k) {
      for (int j = 0; j < n; ++j) {
        std::swap(a[static_cast<size_t>(k) * n + j], a[static_cast<size_t>(r) * n + j]);
        std::swap(b[static_cast<size_t>(k) * n + j], b[static_cast<size_t>(r) * n + j]);
      }
    }
    for (int i = k + 1; i < n; ++i) {
      const double m = a[static_cast<size_t>(i) * n + k] / a[static_cast<size_t>(k) * n + k];
      a[static_cast<size_t>(i) * n + k] = 0.0;
      if (m == 0.0) continue;
      for (int j = k + 1; j < n; ++j)
        a[static_cast<size_t>(i) * n + j] -= m * a[static_cast<size_t>(k) * n + j];
      for (int j = 0; j < n; ++j)
        b[static_cast<size_t>(i) * n + j] -= m * b[static_cast<size_t>(k) * n + j];
    }
  }
  for (int k = n - 1; k >= 0; --k) {
    const double d = a[static_cast<size_t>(k) * n + k];
    for (int j = 0; j < n; ++j) {
      double s = b[static_cast<size_t>(k) * n + j];
      for (int i = k + 1; i < n; ++i)
        s -= a[static_cast<size_t>(k) * n + i] * b[static_cast<size_t>(i) * n + j];
      b[static_cast<size_t>(k) * n + j] = s / d;
    }
  }
}

double norm1(const Mat& a, int n) {
  double best = 0.0;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::abs(a[static_cast<size_t>(i) * n + j]);
    best = std::max(best, s);
  }
  return best;
}

} // namespace

std::vector<double> dense_matrix_exponential(const std::vector<double>& m, int n) {
  if (static_cast<size_t>(n) * n != m.size())
    throw ConfigError("dense_matrix_exponential: size mismatch");
  // Pade-13 coefficients
  static const double b[] = {64764752532480000.0, 32382376266240000.0,
                             7771770303897600.0,  1187353796428800.0,
                             129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,
                             1323241920.0,        40840800.0,
                             960960.0,            16380.0,
                             182.0,               1.0};
  const double theta13 = 5.371920351148152;

  const double nrm = norm1(m, n);
  int squarings = 0;
  if (nrm > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    squarings = std::max(squarings, 0);
  }
  const double scale = std::ldexp(1.0, -squarings);
  Mat a(m.size());
  for (size_t i = 0; i < m.size(); ++i) a[i] = m[i] * scale;

  Mat ident(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) ident[static_cast<size_t>(i) * n + i] = 1.0;

  const Mat a2 = matmul(a, a, n);
  const Mat a4 = matmul(a2, a2, n);
  const Mat a6 = matmul(a2, a4, n);

  auto lincomb = [&](double c6, const Mat& m6, double c4, const Mat& m4_,
                     double c2, const Mat& m2, double c0) {
    Mat r(static_cast<size_t>(n) * n);
    for (size_t i = 0; i < r.size(); ++i)
      r[i] = c6 * m6[i] + c4 * m4_[i] + c2 * m2[i] + c0 * ident[i];
    return r;
  };

  // U = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
  Mat w1 = lincomb(b[13], a6, b[11], a4, b[9], a2, 0.0);
  Mat w = matmul(a6, w1, n);
  Mat w2 = lincomb(b[7], a6, b[5], a4, b[3], a2, b[1]);
  for (size_t i = 0; i < w.size(); ++i) w[i] += w2[i];
  Mat u = matmul(a, w, n);
  // V = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
  Mat z1 = lincomb(b[12], a6, b[10], a4, b[8], a2, 0.0);
  Mat v = matmul(a6, z1, n);
  Mat z2 = lincomb(b[6], a6, b[4], a4, b[2], a2, b[0]);
  for (size_t i = 0; i < v.size(); ++i) v[i] += z2[i];

  Mat vmu(v.size()), vpu(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    vmu[i] = v[i] - u[i];
    vpu[i] = v[i] + u[i];
  }
  dense_solve(std::move(vmu), vpu, n); // vpu <- (V-U)^{-1}(V+U)

  for (int s = 0; s < squarings; ++s) vpu = matmul(vpu, vpu, n);
  return vpu;
}

namespace {

double bt_distance(const std::vector<std::vector<double>>& za,
                   const std::vector<std::vector<double>>& zb, double h, double dt) {
  const size_t m = za.size();
  double sup = 0.0, integral = 0.0;
  std::vector<double> diff;
  for (size_t k = 0; k < m; ++k) {
    diff.assign(za[k].size(), 0.0);
    for (size_t i = 0; i < diff.size(); ++i) diff[i] = za[k][i] - zb[k][i];
    const double l2 = detail::l2_norm(diff, h);
    const double h1 = detail::h1_seminorm(diff, h);
    sup = std::max(sup, l2);
    const double w = (k == 0 || k + 1 == m) ? 0.5 * dt : dt;
    integral += w * (l2 * l2 + h1 * h1);
  }
  return sup + std::sqrt(integral);
}

} // namespace

PicardResult picard_mild_solution(const StateField& y0, const FeedbackLaw& law,
                                  double T, double tol, int n_time_steps,
                                  NonlinearForm form, int max_iterations) {
  const SpatialGrid& grid = y0.grid();
  const int n = grid.n_interior();
  if (n > 64)
    throw ConfigError("picard_mild_solution: oracle-scale only, need n_interior <= 64");
  if (!(T > 0.0) || !(tol > 0.0) || n_time_steps < 2 || max_iterations < 1)
    throw ConfigError("picard_mild_solution: invalid arguments");
  const double h = grid.spacing();
  const double dt = T / n_time_steps;
  const int K = n_time_steps;

  // dense propagator E = exp(dt A)
  KdvOperator op(grid);
  Mat a(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 2); ++j)
      a[static_cast<size_t>(i) * n + j] = dt * op.matrix().at(i, j);
  const Mat e = dense_matrix_exponential(a, n);

  // W(t_k) y0
  std::vector<std::vector<double>> wy(static_cast<size_t>(K + 1));
  wy[0].assign(y0.values().begin(), y0.values().end());
  for (int k = 1; k <= K; ++k) {
    wy[static_cast<size_t>(k)].resize(static_cast<size_t>(n));
    matvec(e, wy[static_cast<size_t>(k - 1)], wy[static_cast<size_t>(k)], n);
  }

  auto eval_g = [&](const std::vector<double>& z, std::vector<double>& g) {
    g.assign(static_cast<size_t>(n), 0.0);
    if (form == NonlinearForm::SkewSymmetric) nonlinear_term(z, h, g);
    else if (form == NonlinearForm::PlainCentral) nonlinear_term_plain(z, h, g);
    std::vector<double> f(static_cast<size_t>(n));
    detail::control_apply(law, z, h, f);
    for (int i = 0; i < n; ++i)
      g[static_cast<size_t>(i)] = -g[static_cast<size_t>(i)] - f[static_cast<size_t>(i)];
  };

  std::vector<std::vector<double>> z(static_cast<size_t>(K + 1), wy[0]);
  PicardResult result;
  std::vector<std::vector<double>> gs(static_cast<size_t>(K + 1));
  std::vector<double> integral(static_cast<size_t>(n)), eg(static_cast<size_t>(n)),
      ei(static_cast<size_t>(n));

  double first_diff = -1.0;
  for (int it = 0; it < max_iterations; ++it) {
    for (int k = 0; k <= K; ++k) eval_g(z[static_cast<size_t>(k)], gs[static_cast<size_t>(k)]);
    std::vector<std::vector<double>> znew(static_cast<size_t>(K + 1));
    znew[0] = wy[0];
    std::fill(integral.begin(), integral.end(), 0.0);
    for (int k = 1; k <= K; ++k) {
      matvec(e, integral, ei, n);
      matvec(e, gs[static_cast<size_t>(k - 1)], eg, n);
      for (int i = 0; i < n; ++i)
        integral[static_cast<size_t>(i)] =
            ei[static_cast<size_t>(i)] +
            0.5 * dt * (eg[static_cast<size_t>(i)] + gs[static_cast<size_t>(k)][static_cast<size_t>(i)]);
      znew[static_cast<size_t>(k)].resize(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i)
        znew[static_cast<size_t>(k)][static_cast<size_t>(i)] =
            wy[static_cast<size_t>(k)][static_cast<size_t>(i)] + integral[static_cast<size_t>(i)];
    }
    const double d = bt_distance(znew, z, h, dt);
    result.contraction_history.push_back(d);
    result.iterations = it + 1;
    z = std::move(znew);
    if (!std::isfinite(d) || (first_diff > 0.0 && d > 1e6 * first_diff))
      throw NumericalError("picard_mild_solution: iteration diverges; shrink T");
    if (first_diff < 0.0) first_diff = d;
    if (d < tol) {
      for (int k = 0; k <= K; ++k) {
        result.trajectory.times.push_back(k * dt);
        result.trajectory.states.emplace_back(grid, z[static_cast<size_t>(k)]);
      }
      return result;
    }
  }
  throw NumericalError(
      "picard_mild_solution: no contraction to tolerance within " +
      std::to_string(max_iterations) + " iterations; shrink T");
}

} // namespace kdvsat
