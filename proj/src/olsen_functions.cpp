#include "olsen/olsen_functions.hpp"

#include <cmath>
#include <string>

#include "olsen/errors.hpp"
#include "olsen/numeric.hpp"

namespace olsen {

namespace {

// Softmax weights of q * log p, written onto w.
void tilt_weights(const std::vector<double>& logs, double q, std::vector<double>& w) {
  const std::size_t n = logs.size();
  w.resize(n);
  double m = q * logs[0];
  for (double l : logs) m = std::max(m, q * l);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::exp(q * logs[i] - m);
    sum += w[i];
  }
  for (double& x : w) x /= sum;
}

constexpr double kCrossingValueTol = 1e-9;
constexpr double kCrossingSlopeTol = 1e-6;

}  // namespace

FreeEnergyCurve::FreeEnergyCurve(ProbabilityVector probs)
    : probs_(std::move(probs)), log_base_(std::log(static_cast<double>(probs_.size()))) {}

FreeEnergyCurve::FreeEnergyCurve(ProbabilityVector probs, double log_base)
    : probs_(std::move(probs)), log_base_(log_base) {
  if (!(log_base > 0.0)) throw InputError("free energy: log_base must be positive");
  if (std::fabs(log_base - std::log(static_cast<double>(probs_.size()))) > 1e-9)
    throw InputError("free energy: log_base must match the vector length");
}

double FreeEnergyCurve::value(double q) const {
  return log_sum_exp_scaled(probs_.log_entries(), q) / log_base_;
}

double FreeEnergyCurve::derivative(double q) const {
  const auto& logs = probs_.log_entries();
  std::vector<double> w;
  tilt_weights(logs, q, w);
  double acc = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) acc += w[i] * logs[i];
  return acc / log_base_;
}

double FreeEnergyCurve::second_derivative(double q) const {
  const auto& logs = probs_.log_entries();
  std::vector<double> w;
  tilt_weights(logs, q, w);
  double mean = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) mean += w[i] * logs[i];
  double var = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const double d = logs[i] - mean;
    var += w[i] * d * d;
  }
  return var / log_base_;
}

std::pair<double, double> FreeEnergyCurve::derivative_range() const {
  return {std::log(probs_.min_entry()) / log_base_, std::log(probs_.max_entry()) / log_base_};
}

double OlsenPair::B(double q) const { return std::max(curve_a.value(q), curve_b.value(q)); }

double OlsenPair::b(double q) const { return std::min(curve_a.value(q), curve_b.value(q)); }

namespace {

OneSidedDerivative envelope_derivative(const OlsenPair& pair, double q, bool upper) {
  const double va = pair.curve_a.value(q);
  const double vb = pair.curve_b.value(q);
  const double da = pair.curve_a.derivative(q);
  const double db = pair.curve_b.derivative(q);
  const double gap = va - vb;
  if (std::fabs(gap) > kCrossingValueTol * std::max({1.0, std::fabs(va), std::fabs(vb)})) {
    const double d = (gap > 0.0) == upper ? da : db;
    return {d, d, false};
  }
  // Curves meet at q. Just right of q the larger derivative wins the upper
  // envelope; just left the smaller one does.
  const OneSidedDerivative out{upper ? std::min(da, db) : std::max(da, db),
                               upper ? std::max(da, db) : std::min(da, db),
                               std::fabs(da - db) > kCrossingSlopeTol};
  return out;
}

}  // namespace

OneSidedDerivative OlsenPair::B_derivative(double q) const {
  return envelope_derivative(*this, q, true);
}

OneSidedDerivative OlsenPair::b_derivative(double q) const {
  return envelope_derivative(*this, q, false);
}

double tau_n(const MeasureSpec& spec, double q, std::uint64_t n) {
  if (n == 0) throw InputError("tau_n: depth must be positive");
  const std::uint64_t n1 = count_first_alphabet(spec.space, n);
  const double ma = log_sum_exp_scaled(spec.probs_a.log_entries(), q);
  const double mb = log_sum_exp_scaled(spec.probs_b.log_entries(), q);
  const double num = static_cast<double>(n1) * ma + static_cast<double>(n - n1) * mb;
  const double den = static_cast<double>(n1) * std::log(spec.space.alphabet_1.size) +
                     static_cast<double>(n - n1) * std::log(spec.space.alphabet_2.size);
  return num / den;
}

ProbabilityVector tilted_probabilities(const ProbabilityVector& probs, double q) {
  std::vector<double> w;
  tilt_weights(probs.log_entries(), q, w);
  return ProbabilityVector(std::move(w));
}

double entropy(const ProbabilityVector& probs, double log_base) {
  if (!(log_base > 0.0)) throw InputError("entropy: log_base must be positive");
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) acc -= probs[i] * probs.log_entries()[i];
  return acc / log_base;
}

OlsenPair make_spectrum_pair(ProbabilityVector first, ProbabilityVector second) {
  if (first.size() != second.size())
    throw InputError("spectrum pair: vectors must share one base");
  if (first.min_entry() <= second.min_entry())
    return {FreeEnergyCurve(std::move(first)), FreeEnergyCurve(std::move(second))};
  return {FreeEnergyCurve(std::move(second)), FreeEnergyCurve(std::move(first))};
}

std::pair<double, double> spectrum_window(const OlsenPair& pair) {
  const auto [d_lo, d_hi] = pair.curve_b.derivative_range();
  return {-d_hi, -d_lo};
}

SpectrumPoint spectrum(const OlsenPair& pair, double alpha) {
  const auto [lo, hi] = spectrum_window(pair);
  if (!(alpha > lo) || !(alpha < hi))
    throw InputError("spectrum: alpha outside the admissible window (" + std::to_string(lo) +
                     ", " + std::to_string(hi) + ")");

  const LegendreResult ra = legendre(pair.curve_a, alpha);
  const LegendreResult rb = legendre(pair.curve_b, alpha);
  if (ra.status != LegendreStatus::ok || rb.status != LegendreStatus::ok)
    throw NumericError("spectrum: Legendre solve did not converge");

  for (double q : {ra.q, rb.q}) {
    const double gap = pair.curve_a.value(q) - pair.curve_b.value(q);
    const double slope_gap = pair.curve_a.derivative(q) - pair.curve_b.derivative(q);
    if (std::fabs(gap) < kCrossingValueTol && std::fabs(slope_gap) > kCrossingSlopeTol)
      throw InputError("spectrum: alpha maps onto a transversal crossing of the curves");
  }

  // Entropy route through the tilted distributions must agree with the
  // Legendre route.
  const double log_base = pair.curve_a.log_base();
  const double h_a = entropy(tilted_probabilities(pair.curve_a.probs(), ra.q), log_base);
  const double h_b = entropy(tilted_probabilities(pair.curve_b.probs(), rb.q), log_base);
  if (std::fabs(h_a - ra.value) > 1e-10 || std::fabs(h_b - rb.value) > 1e-10)
    throw NumericError("spectrum: entropy cross-check failed");

  return {alpha, rb.value, ra.value, ra.q, rb.q};
}

namespace {

double branch_log_moment(const ProbabilityVector& p, const ProbabilityVector& t, double x) {
  // log sum_i p_i^x t_i
  std::vector<double> terms(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    terms[i] = x * p.log_entries()[i] + t.log_entries()[i];
  return log_sum_exp(terms);
}

double branch_log_moment_derivative(const ProbabilityVector& p, const ProbabilityVector& t,
                                    double x) {
  std::vector<double> terms(p.size());
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    terms[i] = x * p.log_entries()[i] + t.log_entries()[i];
    m = std::max(m, terms[i]);
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double w = std::exp(terms[i] - m);
    num += w * p.log_entries()[i];
    den += w;
  }
  return num / den;
}

}  // namespace

double auxiliary_free_energy(const ProbabilityVector& pa, const ProbabilityVector& pb,
                             const ProbabilityVector& ta, const ProbabilityVector& tb,
                             double x, double log_base) {
  if (pa.size() != ta.size() || pb.size() != tb.size())
    throw InputError("auxiliary free energy: tilted vectors must match their bases");
  const double la = branch_log_moment(pa, ta, x);
  const double lb = branch_log_moment(pb, tb, x);
  return std::max(la, lb) / log_base;
}

std::pair<double, double> auxiliary_free_energy_branch_derivatives(
    const ProbabilityVector& pa, const ProbabilityVector& pb, const ProbabilityVector& ta,
    const ProbabilityVector& tb, double x, double log_base) {
  return {branch_log_moment_derivative(pa, ta, x) / log_base,
          branch_log_moment_derivative(pb, tb, x) / log_base};
}

}  // namespace olsen
