#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace olsen {

// log(sum_i exp(x[i])), stable against over/underflow. Empty input -> -inf.
inline double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  double m = xs[0];
  for (double x : xs)
    if (x > m) m = x;
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

// log(sum_i exp(scale * x[i]))
inline double log_sum_exp_scaled(std::span<const double> xs, double scale) {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  double m = scale * xs[0];
  for (double x : xs) {
    const double sx = scale * x;
    if (sx > m) m = sx;
  }
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(scale * x - m);
  return m + std::log(s);
}

}  // namespace olsen
