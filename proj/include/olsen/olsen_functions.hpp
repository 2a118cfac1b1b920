#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "olsen/measure.hpp"

namespace olsen {

// Normalized log moment sum of a probability vector:
//   value(q) = log(sum_i p_i^q) / log_base.
// Strictly convex and strictly decreasing unless the vector is uniform,
// in which case it degenerates to 1 - q. With log_base = ln(size) (the
// only base the constructor accepts), value(0) = 1 and value(1) = 0.
class FreeEnergyCurve {
 public:
  explicit FreeEnergyCurve(ProbabilityVector probs);
  FreeEnergyCurve(ProbabilityVector probs, double log_base);

  double value(double q) const;
  double derivative(double q) const;         // exact analytic derivative
  double second_derivative(double q) const;  // softmax variance of log p
  // Open range of the derivative: (log p_min, log p_max) / log_base.
  // Collapses to a point for uniform vectors.
  std::pair<double, double> derivative_range() const;

  const ProbabilityVector& probs() const { return probs_; }
  double log_base() const { return log_base_; }

 private:
  ProbabilityVector probs_;
  double log_base_;
};

struct OneSidedDerivative {
  double left;
  double right;
  bool distinct;  // true at a transversal crossing of the two curves
};

// The envelope pair of two free-energy curves: B is the pointwise max,
// b the pointwise min. At crossing points the envelopes are not
// differentiable and the one-sided derivatives are reported separately.
struct OlsenPair {
  FreeEnergyCurve curve_a;
  FreeEnergyCurve curve_b;

  double B(double q) const;
  double b(double q) const;
  OneSidedDerivative B_derivative(double q) const;
  OneSidedDerivative b_derivative(double q) const;
};

// Finite-depth partition exponent of the measure: the solution of
//   sum_{|w|=n} mu(w)^q = (c1^{N_n} c2^{n-N_n})^{tau_n(q)}.
double tau_n(const MeasureSpec& spec, double q, std::uint64_t n);

// The q-tilted companion distribution p_i^q / sum_j p_j^q.
ProbabilityVector tilted_probabilities(const ProbabilityVector& probs, double q);

// Shannon entropy -sum p_i log(p_i) / log_base.
double entropy(const ProbabilityVector& probs, double log_base);

enum class LegendreStatus { ok, undefined, failed };

struct LegendreResult {
  LegendreStatus status;
  double value;  // inf_q (alpha q + f(q)) when ok
  double q;      // the minimizing q
};

struct LegendreOptions {
  double tolerance = 1e-13;  // on |f'(q) + alpha|
  unsigned max_iterations = 200;
};

// Legendre transform f*(alpha) = inf_q (alpha q + f(q)) of a convex curve
// with a monotone derivative oracle, by safeguarded Newton on
// f'(q) = -alpha. Undefined when -alpha falls outside the closure of the
// derivative range; NumericError-grade failure is reported in the status,
// never conflated with undefined.
template <class Curve>
LegendreResult legendre(const Curve& f, double alpha, const LegendreOptions& opts = {});

struct SpectrumPoint {
  double alpha;
  double dim;  // b*(alpha)
  double Dim;  // B*(alpha)
  double q_a;  // B'(q_a) = -alpha
  double q_b;  // b'(q_b) = -alpha
};

// Pair the two vectors so curve_a (the upper envelope B for tangent pairs)
// belongs to the vector with the smaller minimum entry. Both vectors must
// share one base.
OlsenPair make_spectrum_pair(ProbabilityVector first, ProbabilityVector second);

// Admissible exponents (-log_c max(b_i), -log_c min(b_i)) taken from the
// lower curve's vector.
std::pair<double, double> spectrum_window(const OlsenPair& pair);

// Dimension spectrum at alpha: solves B'(q_a) = b'(q_b) = -alpha, returns
// dim = b(q_b) + q_b alpha and Dim = B(q_a) + q_a alpha, and cross-checks
// both against the entropies of the matching tilted distributions to 1e-10.
SpectrumPoint spectrum(const OlsenPair& pair, double alpha);

// Closed-form auxiliary free energy
//   log_base^{-1} log max{ sum_i pa_i^x ta_i, sum_i pb_i^x tb_i }.
// Vanishes at x = 0; when the tilted vectors match one exponent alpha, both
// branch derivatives at 0 equal -alpha.
double auxiliary_free_energy(const ProbabilityVector& pa, const ProbabilityVector& pb,
                             const ProbabilityVector& ta, const ProbabilityVector& tb,
                             double x, double log_base);

// Analytic derivatives of the two branches at x, for one-sided analysis of
// the max envelope.
std::pair<double, double> auxiliary_free_energy_branch_derivatives(
    const ProbabilityVector& pa, const ProbabilityVector& pb, const ProbabilityVector& ta,
    const ProbabilityVector& tb, double x, double log_base);

// --- template implementation ---

template <class Curve>
LegendreResult legendre(const Curve& f, double alpha, const LegendreOptions& opts) {
  const auto [d_lo, d_hi] = f.derivative_range();
  const double target = -alpha;
  const double span = d_hi - d_lo;
  if (span <= 1e-15 * std::max(1.0, std::fabs(d_lo))) {
    // Linear curve: the transform is finite only at alpha = -slope.
    if (std::fabs(target - d_lo) <= 1e-12 * std::max(1.0, std::fabs(d_lo)))
      return {LegendreStatus::ok, f.value(0.0), 0.0};
    return {LegendreStatus::undefined, 0.0, 0.0};
  }
  if (!(target > d_lo) || !(target < d_hi)) return {LegendreStatus::undefined, 0.0, 0.0};

  // Bracket f'(q) = target; f' is increasing.
  double q_lo = -1.0, q_hi = 1.0;
  unsigned guard = 0;
  while (f.derivative(q_lo) >= target) {
    q_lo *= 2.0;
    if (++guard > 60) return {LegendreStatus::failed, 0.0, q_lo};
  }
  guard = 0;
  while (f.derivative(q_hi) <= target) {
    q_hi *= 2.0;
    if (++guard > 60) return {LegendreStatus::failed, 0.0, q_hi};
  }

  double q = 0.5 * (q_lo + q_hi);
  for (unsigned it = 0; it < opts.max_iterations; ++it) {
    const double g = f.derivative(q) - target;
    if (std::fabs(g) < opts.tolerance) return {LegendreStatus::ok, alpha * q + f.value(q), q};
    if (g > 0.0)
      q_hi = q;
    else
      q_lo = q;
    const double curvature = f.second_derivative(q);
    double next = q - g / curvature;
    if (!(curvature > 0.0) || !(next > q_lo) || !(next < q_hi)) next = 0.5 * (q_lo + q_hi);
    q = next;
  }
  return {LegendreStatus::failed, 0.0, q};
}

}  // namespace olsen
