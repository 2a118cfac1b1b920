#include <cmath>
#include <limits>

#include "olsen/kernels.hpp"

namespace olsen::kernels::scalar {

void expand_cyclic(const double* parent, std::size_t n_parent, const double* table,
                   std::size_t period, std::size_t fanout, double* child) {
  std::size_t row = 0;
  for (std::size_t i = 0; i < n_parent; ++i) {
    const double p = parent[i];
    const double* t = table + row * fanout;
    double* out = child + i * fanout;
    for (std::size_t j = 0; j < fanout; ++j) out[j] = p + t[j];
    if (++row == period) row = 0;
  }
}

double max_abs_adjacent_diff(const double* x, std::size_t n) {
  if (n < 2) return 0.0;
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = std::fabs(x[i + 1] - x[i]);
    if (d > best) best = d;
  }
  return best;
}

double reduce_max(const double* x, std::size_t n) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    if (x[i] > best) best = x[i];
  return best;
}

}  // namespace olsen::kernels::scalar
