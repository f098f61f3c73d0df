#include "appemo/kernels.hpp"

namespace appemo::kernels::scalar {

double sum(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

double sum_sq_dev(std::span<const double> x, double center) {
  double s = 0.0;
  for (double v : x) {
    const double d = v - center;
    s += d * d;
  }
  return s;
}

double sum_cross_dev(std::span<const double> x, std::span<const double> y,
                     double cx, double cy) {
  double s = 0.0;
  const std::size_t n = x.size() < y.size() ? x.size() : y.size();
  for (std::size_t i = 0; i < n; ++i) s += (x[i] - cx) * (y[i] - cy);
  return s;
}

}  // namespace appemo::kernels::scalar
