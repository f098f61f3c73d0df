#include <cstdlib>
#include <string_view>

#include "appemo/kernels.hpp"

namespace appemo::kernels {
namespace {

constexpr KernelTable kScalar{&scalar::sum, &scalar::sum_sq_dev,
                              &scalar::sum_cross_dev};
#if defined(APPEMO_HAVE_AVX2)
constexpr KernelTable kAvx2{&avx2::sum, &avx2::sum_sq_dev,
                            &avx2::sum_cross_dev};
#endif

Backend resolve() {
  if (const char* forced = std::getenv("APPEMO_KERNELS")) {
    if (std::string_view(forced) == "scalar") return Backend::Scalar;
  }
  return backend_available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

}  // namespace

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(APPEMO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table_for(Backend b) {
#if defined(APPEMO_HAVE_AVX2)
  if (b == Backend::Avx2 && backend_available(b)) return kAvx2;
#endif
  (void)b;
  return kScalar;
}

Backend active_backend() {
  static const Backend chosen = resolve();
  return chosen;
}

const KernelTable& active() {
  static const KernelTable& t = table_for(active_backend());
  return t;
}

std::string_view backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

}  // namespace appemo::kernels
