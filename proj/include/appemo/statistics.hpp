#pragma once

// Descriptive statistics and correlation coefficients. Sample standard
// deviation uses n - 1 (n = 1 gives 0). Quantiles interpolate linearly
// between order statistics (h = (n - 1) q).

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace appemo::stats {

class StatsError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

double mean(std::span<const double> xs);
double sample_sd(std::span<const double> xs);
double median(std::span<const double> xs);

// `sorted` must be ascending and nonempty; q in [0,1].
double quantile_sorted(std::span<const double> sorted, double q);
double quantile(std::span<const double> xs, double q);

// 1-based ranks; tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> xs);

// Throws StatsError on length mismatch, fewer than 2 pairs, or a constant
// argument.
double pearson(std::span<const double> xs, std::span<const double> ys);
double spearman(std::span<const double> xs, std::span<const double> ys);

// Box-plot summary with Tukey whiskers (furthest points within 1.5 IQR).
struct FiveNumber {
  std::size_t n = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
  double lower_whisker = 0, upper_whisker = 0;
  std::size_t n_outliers = 0;
};
FiveNumber five_number_summary(std::span<const double> xs);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;  // 0 when ys is constant
};
// Ordinary least squares of ys on xs. Needs >= 2 points and non-constant xs.
LinearFit least_squares(std::span<const double> xs, std::span<const double> ys);

}  // namespace appemo::stats
