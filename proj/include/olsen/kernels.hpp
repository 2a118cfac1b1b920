#pragma once

#include <cstddef>

namespace olsen::kernels {

// Flat per-level sweeps over cylinder/interval arrays. Each operation has a
// scalar reference implementation and an AVX2 variant; the public entry
// points dispatch on the backend selected at startup (or forced by tests).
// All variants are exact: they perform the same IEEE adds/subtracts/max
// operations, so scalar and SIMD results are bit-identical.

// child[i*fanout + j] = parent[i] + table[(i % period) * fanout + j]
// table holds period*fanout entries. Used to roll level-n log masses down
// to level n+1, with the table row encoding how the appended digit is
// permuted by the enumeration code.
void expand_cyclic(const double* parent, std::size_t n_parent, const double* table,
                   std::size_t period, std::size_t fanout, double* child);

// max_i |x[i+1] - x[i]|; 0 when n < 2. In log space this is the adjacent
// mass-ratio statistic.
double max_abs_adjacent_diff(const double* x, std::size_t n);

// max_i x[i]; -inf when n == 0.
double reduce_max(const double* x, std::size_t n);

enum class Backend { scalar, avx2 };

Backend active_backend();
// Returns false (and leaves the backend unchanged) if the host cannot run
// the requested variant.
bool force_backend(Backend backend);
bool avx2_supported();

namespace scalar {
void expand_cyclic(const double* parent, std::size_t n_parent, const double* table,
                   std::size_t period, std::size_t fanout, double* child);
double max_abs_adjacent_diff(const double* x, std::size_t n);
double reduce_max(const double* x, std::size_t n);
}  // namespace scalar

#if defined(OLSEN_HAVE_AVX2)
namespace avx2 {
void expand_cyclic(const double* parent, std::size_t n_parent, const double* table,
                   std::size_t period, std::size_t fanout, double* child);
double max_abs_adjacent_diff(const double* x, std::size_t n);
double reduce_max(const double* x, std::size_t n);
}  // namespace avx2
#endif

}  // namespace olsen::kernels
