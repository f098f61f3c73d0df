#include "appemo/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "appemo/kernels.hpp"

namespace appemo::stats {

namespace {

void require_nonempty(std::span<const double> xs, const char* what) {
  if (xs.empty()) throw StatsError(std::string(what) + " of an empty sample");
}

void require_pairs(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw StatsError("correlation: length mismatch");
  if (xs.size() < 2) throw StatsError("correlation: need at least 2 pairs");
}

}  // namespace

double mean(std::span<const double> xs) {
  require_nonempty(xs, "mean");
  return kernels::sum(xs) / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs) {
  require_nonempty(xs, "standard deviation");
  if (xs.size() == 1) return 0.0;
  const double m = mean(xs);
  return std::sqrt(kernels::sum_sq_dev(xs, m) / static_cast<double>(xs.size() - 1));
}

double quantile_sorted(std::span<const double> sorted, double q) {
  require_nonempty(sorted, "quantile");
  if (q < 0.0 || q > 1.0) throw StatsError("quantile outside [0,1]");
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double quantile(std::span<const double> xs, double q) {
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  return quantile_sorted(sorted, q);
}

double median(std::span<const double> xs) { return quantile(xs, 0.5); }

std::vector<double> average_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    // Positions i..j (0-based) share rank mean((i+1)..(j+1)).
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  require_pairs(xs, ys);
  const double mx = mean(xs);
  const double my = mean(ys);
  const double sxx = kernels::sum_sq_dev(xs, mx);
  const double syy = kernels::sum_sq_dev(ys, my);
  if (sxx == 0.0 || syy == 0.0) throw StatsError("correlation: zero variance");
  const double sxy = kernels::sum_cross_dev(xs, ys, mx, my);
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  require_pairs(xs, ys);
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  return pearson(rx, ry);
}

FiveNumber five_number_summary(std::span<const double> xs) {
  require_nonempty(xs, "five-number summary");
  std::vector<double> s(xs.begin(), xs.end());
  std::sort(s.begin(), s.end());
  FiveNumber f;
  f.n = s.size();
  f.min = s.front();
  f.max = s.back();
  f.q1 = quantile_sorted(s, 0.25);
  f.median = quantile_sorted(s, 0.5);
  f.q3 = quantile_sorted(s, 0.75);
  const double fence = 1.5 * (f.q3 - f.q1);
  const double lo = f.q1 - fence;
  const double hi = f.q3 + fence;
  f.lower_whisker = *std::lower_bound(s.begin(), s.end(), lo);
  f.upper_whisker = *std::prev(std::upper_bound(s.begin(), s.end(), hi));
  f.n_outliers = static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [&](double v) { return v < lo || v > hi; }));
  return f;
}

LinearFit least_squares(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw StatsError("least squares: length mismatch");
  if (xs.size() < 2) throw StatsError("least squares: need at least 2 points");
  const double mx = mean(xs);
  const double my = mean(ys);
  const double sxx = kernels::sum_sq_dev(xs, mx);
  if (sxx == 0.0) throw StatsError("least squares: constant regressor");
  const double sxy = kernels::sum_cross_dev(xs, ys, mx, my);
  const double syy = kernels::sum_sq_dev(ys, my);
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 0.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return fit;
}

}  // namespace appemo::stats
