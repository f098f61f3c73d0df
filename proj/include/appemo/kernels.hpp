#pragma once

// Moment kernels behind the statistics code: plain sums and centered
// (co)variance sums over contiguous double arrays. A scalar reference
// implementation is always built; an AVX2 variant is built on x86-64 and
// selected at runtime when the CPU supports it.
//
// Set APPEMO_KERNELS=scalar in the environment to force the reference path.

#include <span>
#include <string_view>

namespace appemo::kernels {

enum class Backend { Scalar, Avx2 };

struct KernelTable {
  double (*sum)(std::span<const double>);
  // sum of (x - center)^2
  double (*sum_sq_dev)(std::span<const double>, double center);
  // sum of (x - cx) * (y - cy); x and y have equal length
  double (*sum_cross_dev)(std::span<const double>, std::span<const double>,
                          double cx, double cy);
};

namespace scalar {
double sum(std::span<const double> x);
double sum_sq_dev(std::span<const double> x, double center);
double sum_cross_dev(std::span<const double> x, std::span<const double> y,
                     double cx, double cy);
}  // namespace scalar

#if defined(APPEMO_HAVE_AVX2)
namespace avx2 {
double sum(std::span<const double> x);
double sum_sq_dev(std::span<const double> x, double center);
double sum_cross_dev(std::span<const double> x, std::span<const double> y,
                     double cx, double cy);
}  // namespace avx2
#endif

bool backend_available(Backend b);
const KernelTable& table_for(Backend b);

// The table chosen for this process (resolved once).
const KernelTable& active();
Backend active_backend();
std::string_view backend_name(Backend b);

inline double sum(std::span<const double> x) { return active().sum(x); }
inline double sum_sq_dev(std::span<const double> x, double center) {
  return active().sum_sq_dev(x, center);
}
inline double sum_cross_dev(std::span<const double> x,
                            std::span<const double> y, double cx, double cy) {
  return active().sum_cross_dev(x, y, cx, cy);
}

}  // namespace appemo::kernels
