#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kdvsat/errors.hpp"
#include "kdvsat/grid.hpp"

using namespace kdvsat;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// composite Simpson oracle for L2 norms of functions, independent of the grid code
template <class F>
double l2_of_function(F f, double length, int panels = 200000) {
  const double h = length / panels;
  double s = f(0.0) * f(0.0) + f(length) * f(length);
  for (int i = 1; i < panels; ++i) {
    const double w = (i % 2 == 1) ? 4.0 : 2.0;
    const double v = f(i * h);
    s += w * v * v;
  }
  return std::sqrt(s * h / 3.0);
}

} // namespace

TEST_CASE("grid validation and geometry") {
  CHECK_THROWS_AS(SpatialGrid(0.0, 16), ConfigError);
  CHECK_THROWS_AS(SpatialGrid(-1.0, 16), ConfigError);
  CHECK_THROWS_AS(SpatialGrid(1.0, 3), ConfigError);
  SpatialGrid g(kTwoPi, 16);
  CHECK(g.spacing() == doctest::Approx(kTwoPi / 17.0));
  CHECK(g.node(0) == doctest::Approx(g.spacing()));
  CHECK(g.node(15) == doctest::Approx(kTwoPi - g.spacing()));
  const auto xs = g.nodes();
  for (size_t i = 0; i < xs.size(); ++i) {
    CHECK(xs[i] > 0.0);
    CHECK(xs[i] < g.length());
    if (i > 0) CHECK(xs[i] > xs[i - 1]);
  }
  CHECK(16 * g.spacing() < g.length());
}

TEST_CASE("state field validation") {
  SpatialGrid g(1.0, 8);
  CHECK_THROWS_AS(StateField(g, std::vector<double>(7, 0.0)), ConfigError);
  std::vector<double> bad(8, 0.0);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(StateField(g, bad), ConfigError);
  StateField zero(g);
  CHECK(zero.size() == 8);
  for (int i = 0; i < 8; ++i) CHECK(zero[i] == 0.0);
}

TEST_CASE("l2 norm: zero and analytic values") {
  SpatialGrid g(kTwoPi, 256);
  CHECK(l2_norm(StateField(g)) == 0.0);

  // int_0^{2pi} (1 - cos x)^2 dx = 3 pi; the rectangle sum is exact for this
  // trigonometric polynomial
  StateField y = named_profile("one-minus-cos", g);
  CHECK(l2_norm(y) == doctest::Approx(std::sqrt(3.0 * std::numbers::pi)).epsilon(1e-13));
  CHECK(l2_norm(y) ==
        doctest::Approx(l2_of_function([](double x) { return 1.0 - std::cos(x); }, kTwoPi))
            .epsilon(1e-10));

  // constant 1 on the interior: h * n = L - h, first-order boundary deficit
  StateField c1(g, std::vector<double>(256, 1.0));
  CHECK(l2_norm(c1) == doctest::Approx(std::sqrt(g.spacing() * 256)).epsilon(1e-14));
  CHECK(l2_norm(c1) == doctest::Approx(std::sqrt(kTwoPi)).epsilon(5e-3));
}

TEST_CASE("l2 norm: homogeneity and triangle inequality on random fields") {
  SpatialGrid g(5.0, 64);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(64), b(64);
    for (auto& v : a) v = gauss(rng);
    for (auto& v : b) v = gauss(rng);
    const double c = gauss(rng);
    std::vector<double> ca(64), apb(64);
    for (int i = 0; i < 64; ++i) {
      ca[static_cast<size_t>(i)] = c * a[static_cast<size_t>(i)];
      apb[static_cast<size_t>(i)] = a[static_cast<size_t>(i)] + b[static_cast<size_t>(i)];
    }
    StateField fa(g, a), fb(g, b), fca(g, ca), fapb(g, apb);
    CHECK(l2_norm(fca) == doctest::Approx(std::abs(c) * l2_norm(fa)).epsilon(1e-13));
    CHECK(l2_norm(fapb) <= l2_norm(fa) + l2_norm(fb) + 1e-12);
  }
}

TEST_CASE("l2 norm converges to the integral under refinement") {
  // x(L - x) vanishes at the boundary; exact value sqrt(L^5/30)
  const double L = 3.0;
  const double exact = std::sqrt(std::pow(L, 5) / 30.0);
  double prev_err = 0.0, first_err = 0.0, last_err = 0.0;
  int level = 0;
  for (int n : {32, 64, 128, 256}) {
    SpatialGrid g(L, n);
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = g.node(i) * (L - g.node(i));
    const double err = std::abs(l2_norm(StateField(g, v)) - exact);
    if (level == 0) first_err = err;
    last_err = err;
    if (level > 0) CHECK(err < prev_err);
    prev_err = err;
    ++level;
  }
  const double slope = std::log2(first_err / last_err) / 3.0;
  CHECK(slope >= 1.8); // at least second order
}

TEST_CASE("h1 seminorm: zero, sin, refinement") {
  SpatialGrid g(kTwoPi, 256);
  CHECK(h1_seminorm(StateField(g)) == 0.0);

  std::vector<double> v(256);
  for (int i = 0; i < 256; ++i) v[static_cast<size_t>(i)] = std::sin(g.node(i));
  CHECK(h1_seminorm(StateField(g, v)) ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(2e-4));

  // order >= 1 under refinement: d/dx[x(L-x)] = L - 2x, int (L-2x)^2 = L^3/3
  const double L = 4.0;
  const double exact = std::sqrt(L * L * L / 3.0);
  double e0 = 0.0, e1 = 0.0;
  for (int lev = 0; lev < 2; ++lev) {
    const int n = lev == 0 ? 128 : 512;
    SpatialGrid gg(L, n);
    std::vector<double> w(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] = gg.node(i) * (L - gg.node(i));
    const double err = std::abs(h1_seminorm(StateField(gg, w)) - exact);
    (lev == 0 ? e0 : e1) = err;
  }
  CHECK(std::log2(e0 / e1) / 2.0 >= 0.9);
}

TEST_CASE("named profiles") {
  SpatialGrid g(kTwoPi, 255); // odd count: x = pi is a node
  CHECK(l2_norm(named_profile("zero", g)) == 0.0);

  StateField y = named_profile("one-minus-cos", g);
  CHECK(y[127] == doctest::Approx(2.0).epsilon(1e-12)); // 1 - cos(pi)

  StateField s = named_profile("one-minus-cos", g, 0.25);
  CHECK(s[127] == doctest::Approx(0.5).epsilon(1e-12));

  StateField gau = named_profile("gaussian", g);
  CHECK(gau[127] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gau[0] < 1e-7); // flat at the boundary

  CHECK_THROWS_AS(named_profile("no-such-profile", g), ConfigError);
}
