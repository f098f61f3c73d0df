#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "appemo/kernels.hpp"
#include "appemo/statistics.hpp"
#include "support.hpp"

using namespace appemo::stats;
using doctest::Approx;

namespace {

// Textbook forms, kept independent of the library's kernels.
double oracle_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

double oracle_quantile(std::vector<double> xs, double q) {
  std::sort(xs.begin(), xs.end());
  const double h = (static_cast<double>(xs.size()) - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = static_cast<std::size_t>(std::ceil(h));
  return xs[lo] + (h - std::floor(h)) * (xs[hi] - xs[lo]);
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = appemo::testing::unit_uniform(rng) * 20 - 10;
  return v;
}

}  // namespace

TEST_CASE("kernel backend in use") {
  MESSAGE("kernels: " << appemo::kernels::backend_name(appemo::kernels::active_backend()));
}

TEST_CASE("mean, sd and median") {
  const std::vector<double> xs{2, 4, 4, 4, 5, 5, 7, 9};
  CHECK(mean(xs) == Approx(5.0));
  CHECK(sample_sd(xs) == Approx(std::sqrt(32.0 / 7.0)).epsilon(1e-12));
  CHECK(median(xs) == Approx(4.5));
  const std::vector<double> one{5};
  CHECK(sample_sd(one) == 0.0);
  CHECK(median(one) == 5.0);
  CHECK_THROWS_AS(mean(std::vector<double>{}), StatsError);
}

TEST_CASE("type-7 quantiles against a sort-based oracle") {
  const std::vector<double> xs{7, 1, 3, 9, 4, 4, 12, 0};
  for (double q : {0.0, 0.1, 0.25, 0.5, 0.6, 0.75, 0.9, 1.0}) {
    CHECK(quantile(xs, q) == Approx(oracle_quantile(xs, q)).epsilon(1e-12));
  }
  CHECK(quantile(xs, 0.25) == Approx(2.5));
  CHECK(quantile(xs, 0.75) == Approx(7.5));
  CHECK_THROWS(quantile(xs, 1.5));
}

TEST_CASE("average ranks share ties") {
  const std::vector<double> xs{1, 2, 2, 3};
  CHECK(average_ranks(xs) == std::vector<double>{1, 2.5, 2.5, 4});
  const std::vector<double> ys{5, 5, 5};
  CHECK(average_ranks(ys) == std::vector<double>{2, 2, 2});
  const std::vector<double> zs{3, 1, 2};
  CHECK(average_ranks(zs) == std::vector<double>{3, 1, 2});
}

TEST_CASE("pearson and spearman on small sets") {
  const std::vector<double> x{1, 2, 3, 4}, y{1, 3, 2, 4};
  CHECK(pearson(x, y) == Approx(oracle_pearson(x, y)).epsilon(1e-12));
  CHECK(pearson(x, y) == Approx(0.8));
  CHECK(spearman(x, y) == Approx(0.8));

  const std::vector<double> up{2, 4, 6, 8}, down{8, 6, 4, 2}, squares{1, 4, 9, 16};
  CHECK(pearson(x, up) == Approx(1.0));
  CHECK(pearson(x, down) == Approx(-1.0));
  CHECK(spearman(x, squares) == Approx(1.0));
  CHECK(pearson(x, squares) < 1.0);
}

TEST_CASE("correlation errors") {
  const std::vector<double> a{1, 2, 3}, b{1, 2}, c{4, 4, 4}, one{1};
  CHECK_THROWS_AS(pearson(a, b), StatsError);
  CHECK_THROWS_AS(pearson(one, one), StatsError);
  CHECK_THROWS_AS(pearson(a, c), StatsError);
  CHECK_THROWS_AS(spearman(c, a), StatsError);
}

TEST_CASE("property: pearson matches the oracle, is symmetric, bounded and affine invariant") {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 2 + rng() % 60;
    auto x = random_vector(rng, n), y = random_vector(rng, n);
    const double r = pearson(x, y);
    CHECK(r == Approx(oracle_pearson(x, y)).epsilon(1e-9));
    CHECK(r == Approx(pearson(y, x)).epsilon(1e-12));
    CHECK(std::abs(r) <= 1.0 + 1e-12);

    const double a = appemo::testing::unit_uniform(rng) * 5 + 0.1;
    const double b = appemo::testing::unit_uniform(rng) * 10 - 5;
    std::vector<double> ax(x);
    for (auto& v : ax) v = a * v + b;
    CHECK(pearson(ax, y) == Approx(r).epsilon(1e-9));
    for (auto& v : ax) v = -v;
    CHECK(pearson(ax, y) == Approx(-r).epsilon(1e-9));
  }
}

TEST_CASE("property: spearman is invariant under increasing transforms") {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 2 + rng() % 40;
    auto x = random_vector(rng, n), y = random_vector(rng, n);
    // Introduce ties now and then.
    if (iter % 3 == 0) {
      for (auto& v : x) v = std::round(v / 4);
    }
    const auto rx = average_ranks(x);
    if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); })) continue;
    const double rho = spearman(x, y);
    CHECK(rho == Approx(pearson(rx, average_ranks(y))).epsilon(1e-12));
    std::vector<double> tx(x);
    for (auto& v : tx) v = std::exp(v / 5) * 3 + 1;
    CHECK(spearman(tx, y) == Approx(rho).epsilon(1e-12));
    CHECK(std::abs(rho) <= 1.0 + 1e-12);
  }
}

TEST_CASE("five-number summary with Tukey whiskers") {
  const std::vector<double> xs{1, 2, 3, 4, 5, 6, 7, 8, 50};
  const auto f = five_number_summary(xs);
  CHECK(f.n == 9);
  CHECK(f.min == 1);
  CHECK(f.q1 == Approx(3));
  CHECK(f.median == Approx(5));
  CHECK(f.q3 == Approx(7));
  CHECK(f.max == 50);
  CHECK(f.lower_whisker == 1);
  CHECK(f.upper_whisker == 8);
  CHECK(f.n_outliers == 1);

  const std::vector<double> one{-3};
  const auto g = five_number_summary(one);
  CHECK(g.q1 == -3);
  CHECK(g.upper_whisker == -3);
  CHECK(g.n_outliers == 0);
}

TEST_CASE("least squares") {
  const std::vector<double> x{0, 1, 2, 3, 4}, y{1, 3, 5, 7, 9};
  const auto fit = least_squares(x, y);
  CHECK(fit.slope == Approx(2));
  CHECK(fit.intercept == Approx(1));
  CHECK(fit.r_squared == Approx(1));

  const std::vector<double> flat{2, 2, 2, 2, 2};
  const auto f2 = least_squares(x, flat);
  CHECK(f2.slope == Approx(0));
  CHECK(f2.r_squared == 0);

  std::mt19937_64 rng(4);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 3 + rng() % 30;
    auto xs = random_vector(rng, n), ys = random_vector(rng, n);
    const auto f = least_squares(xs, ys);
    const double r = pearson(xs, ys);
    CHECK(f.r_squared == Approx(r * r).epsilon(1e-9));
    CHECK(f.r_squared >= -1e-12);
    CHECK(f.r_squared <= 1 + 1e-12);
  }
  const std::vector<double> cx{1, 1, 1};
  CHECK_THROWS_AS(least_squares(cx, std::vector<double>{1, 2, 3}), StatsError);
}
