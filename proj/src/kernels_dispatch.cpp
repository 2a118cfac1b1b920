#include <atomic>

#include "olsen/kernels.hpp"

namespace olsen::kernels {

namespace {

bool detect_avx2() {
#if defined(OLSEN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{detect_avx2() ? Backend::avx2 : Backend::scalar};
  return slot;
}

}  // namespace

bool avx2_supported() {
  static const bool supported = detect_avx2();
  return supported;
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

bool force_backend(Backend backend) {
  if (backend == Backend::avx2 && !avx2_supported()) return false;
  backend_slot().store(backend, std::memory_order_relaxed);
  return true;
}

void expand_cyclic(const double* parent, std::size_t n_parent, const double* table,
                   std::size_t period, std::size_t fanout, double* child) {
#if defined(OLSEN_HAVE_AVX2)
  if (active_backend() == Backend::avx2) {
    avx2::expand_cyclic(parent, n_parent, table, period, fanout, child);
    return;
  }
#endif
  scalar::expand_cyclic(parent, n_parent, table, period, fanout, child);
}

double max_abs_adjacent_diff(const double* x, std::size_t n) {
#if defined(OLSEN_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::max_abs_adjacent_diff(x, n);
#endif
  return scalar::max_abs_adjacent_diff(x, n);
}

double reduce_max(const double* x, std::size_t n) {
#if defined(OLSEN_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::reduce_max(x, n);
#endif
  return scalar::reduce_max(x, n);
}

}  // namespace olsen::kernels
