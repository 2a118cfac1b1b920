#include "olsen/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "olsen/errors.hpp"

namespace olsen {

namespace {

constexpr double kExponentMergeTol = 1e-12;

}  // namespace

DirichletPolynomial::DirichletPolynomial(std::vector<DirichletTerm> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const DirichletTerm& a, const DirichletTerm& b) { return a.exponent > b.exponent; });
  for (const DirichletTerm& t : terms) {
    if (!std::isfinite(t.coefficient) || !std::isfinite(t.exponent))
      throw InputError("dirichlet: coefficients and exponents must be finite");
    if (!terms_.empty() &&
        terms_.back().exponent - t.exponent <=
            kExponentMergeTol * std::max(1.0, std::fabs(t.exponent))) {
      terms_.back().coefficient += t.coefficient;
      continue;
    }
    terms_.push_back(t);
  }
  std::erase_if(terms_, [](const DirichletTerm& t) { return t.coefficient == 0.0; });
}

DirichletPolynomial DirichletPolynomial::power_sum_difference(const std::vector<double>& plus,
                                                              const std::vector<double>& minus) {
  std::vector<DirichletTerm> terms;
  terms.reserve(plus.size() + minus.size());
  for (double v : plus) {
    if (!(v > 0.0)) throw InputError("dirichlet: power-sum bases must be positive");
    terms.push_back({1.0, std::log(v)});
  }
  for (double v : minus) {
    if (!(v > 0.0)) throw InputError("dirichlet: power-sum bases must be positive");
    terms.push_back({-1.0, std::log(v)});
  }
  return DirichletPolynomial(std::move(terms));
}

DirichletPolynomial::ScaledValue DirichletPolynomial::evaluate_scaled(double x, unsigned m) const {
  double log_max = -std::numeric_limits<double>::infinity();
  for (const DirichletTerm& t : terms_) {
    if (m > 0 && t.exponent == 0.0) continue;
    const double l = t.exponent * x + (m > 0 ? m * std::log(std::fabs(t.exponent)) : 0.0);
    if (l > log_max) log_max = l;
  }
  ScaledValue out;
  if (!std::isfinite(log_max)) return out;  // no surviving terms
  out.log_scale = log_max;
  for (const DirichletTerm& t : terms_) {
    if (m > 0 && t.exponent == 0.0) continue;
    const double l = t.exponent * x + (m > 0 ? m * std::log(std::fabs(t.exponent)) : 0.0);
    const double mag = std::fabs(t.coefficient) * std::exp(l - log_max);
    const bool negative = (t.coefficient < 0.0) != (t.exponent < 0.0 && m % 2 == 1);
    out.mantissa += negative ? -mag : mag;
    out.abs_sum += mag;
  }
  return out;
}

double DirichletPolynomial::evaluate(double x, unsigned m) const {
  const ScaledValue v = evaluate_scaled(x, m);
  if (v.abs_sum == 0.0) return 0.0;
  return v.mantissa * std::exp(v.log_scale);
}

bool is_bipartite(const DirichletPolynomial& f) {
  std::size_t plus = 0, minus = 0;
  for (const DirichletTerm& t : f.terms()) {
    if (t.coefficient == 1.0)
      ++plus;
    else if (t.coefficient == -1.0)
      ++minus;
    else
      return false;
  }
  return plus == minus && plus > 0;
}

std::optional<unsigned> jameson_bound(const DirichletPolynomial& f) {
  if (!is_bipartite(f)) return std::nullopt;
  return static_cast<unsigned>(f.length() / 2);
}

namespace {

// Decisive sign of F(x): +1/-1 when the mantissa clears the noise floor of
// the term sum, 0 otherwise.
int decisive_sign(const DirichletPolynomial& f, double x) {
  const auto v = f.evaluate_scaled(x);
  if (v.abs_sum == 0.0) return 0;
  if (std::fabs(v.mantissa) <= 1e-13 * v.abs_sum) return 0;
  return v.mantissa > 0.0 ? 1 : -1;
}

int raw_sign(const DirichletPolynomial& f, double x) {
  const auto v = f.evaluate_scaled(x);
  if (v.mantissa == 0.0) return 0;
  return v.mantissa > 0.0 ? 1 : -1;
}

bool below_zero_threshold(const DirichletPolynomial& f, double x, double factor) {
  const auto v = f.evaluate_scaled(x);
  if (v.abs_sum == 0.0) return true;
  return std::fabs(v.mantissa) <= factor * v.abs_sum;
}

double refine_bracket(const DirichletPolynomial& f, double s, double e, int sign_s,
                      double rel_tol) {
  for (unsigned it = 0; it < 120; ++it) {
    const double mid = 0.5 * (s + e);
    if (e - s <= rel_tol * std::max(1.0, std::fabs(mid))) return mid;
    const int sm = raw_sign(f, mid);
    if (sm == 0) return mid;
    if (sm == sign_s)
      s = mid;
    else
      e = mid;
  }
  return 0.5 * (s + e);
}

// G'(x) where G(x) = F(x) e^{-p_top x}: same zeros as F', one term fewer.
DirichletPolynomial normalized_derivative(const DirichletPolynomial& f) {
  const double top = f.terms().front().exponent;
  std::vector<DirichletTerm> terms;
  terms.reserve(f.length());
  for (const DirichletTerm& t : f.terms()) {
    const double p = t.exponent - top;
    if (p == 0.0) continue;
    terms.push_back({t.coefficient * p, p});
  }
  return DirichletPolynomial(std::move(terms));
}

// Distinct real zero locations of f in [lo, hi]. Breakpoints between which
// the top-normalized form of f is monotone come from the recursive
// critical-point set, so f changes sign at most once per gap: walking the
// decisive signs at the breakpoints and bracketing flips between them finds
// every odd-order zero (including zeros sitting exactly on a breakpoint,
// which are skipped as ambiguous and bracketed from both sides). Zeros
// without a sign change are critical points where |f| stays below the
// threshold.
std::vector<double> real_zeros(const DirichletPolynomial& f, double lo, double hi,
                               unsigned depth, const ZeroSearchOptions& opts,
                               bool* truncated) {
  std::vector<double> zeros;
  if (f.length() <= 1) return zeros;

  std::vector<double> breaks = {lo, hi};
  if (depth < opts.recursion_cap) {
    const DirichletPolynomial g = normalized_derivative(f);
    std::vector<double> crit = real_zeros(g, lo, hi, depth + 1, opts, truncated);
    for (double c : crit) {
      breaks.push_back(c);
      if (!below_zero_threshold(f, c, opts.zero_admission_factor)) continue;
      // A decisive sign flip across the critical point means the flanking
      // simple zeros carry the count and this point is only a near-zero dip.
      const double delta = opts.cluster_radius * std::max(1.0, std::fabs(c));
      const int s_left = decisive_sign(f, c - delta);
      const int s_right = decisive_sign(f, c + delta);
      if (s_left != 0 && s_right != 0 && s_left != s_right) continue;
      zeros.push_back(c);
    }
  } else {
    *truncated = true;
    const unsigned n = 2048;
    for (unsigned i = 1; i < n; ++i) breaks.push_back(lo + (hi - lo) * i / n);
  }
  if (depth == 0) {
    const unsigned n = 64;
    for (unsigned i = 1; i < n; ++i) breaks.push_back(lo + (hi - lo) * i / n);
  }
  for (double end : {lo, hi})
    if (below_zero_threshold(f, end, opts.zero_admission_factor)) zeros.push_back(end);
  std::sort(breaks.begin(), breaks.end());

  int last_sign = 0;
  double last_x = 0.0;
  for (double x : breaks) {
    const int sg = decisive_sign(f, x);
    if (sg == 0) continue;
    if (last_sign != 0 && sg != last_sign)
      zeros.push_back(refine_bracket(f, last_x, x, last_sign, opts.refine_tolerance));
    last_sign = sg;
    last_x = x;
  }

  std::sort(zeros.begin(), zeros.end());
  // collapse the same zero found through both routes
  std::vector<double> out;
  for (double z : zeros) {
    if (!out.empty() && z - out.back() <= 4.0 * opts.refine_tolerance * std::max(1.0, std::fabs(z)))
      continue;
    out.push_back(z);
  }
  return out;
}

struct ProbedOrder {
  unsigned order = 0;
  bool at_ceiling = false;
};

ProbedOrder probe_order(const DirichletPolynomial& f, double x, const ZeroSearchOptions& opts) {
  for (unsigned m = 0; m <= opts.derivative_ceiling; ++m) {
    const auto v = f.evaluate_scaled(x, m);
    if (v.abs_sum == 0.0) continue;
    if (std::fabs(v.mantissa) > opts.order_threshold_factor * v.abs_sum) return {m, false};
  }
  return {opts.derivative_ceiling, true};
}

// Dominance of the extreme-exponent term at the window end; monotone in x,
// so once dominant it stays dominant beyond the end.
bool tail_dominant(const DirichletPolynomial& f, double x, bool largest_exponent) {
  if (f.length() == 1) return true;
  const DirichletTerm& lead = largest_exponent ? f.terms().front() : f.terms().back();
  double rest = 0.0;
  for (const DirichletTerm& t : f.terms()) {
    if (&t == &lead) continue;
    rest += std::fabs(t.coefficient) * std::exp((t.exponent - lead.exponent) * x);
  }
  return std::fabs(lead.coefficient) > rest;
}

}  // namespace

ZeroReport count_zeros(const DirichletPolynomial& f, double lo, double hi,
                       const ZeroSearchOptions& options) {
  if (!(lo < hi)) throw InputError("count_zeros: need lo < hi");
  ZeroReport report;
  report.lo = lo;
  report.hi = hi;
  report.options = options;
  if (f.empty()) {
    report.degenerate = true;
    return report;
  }

  bool truncated = false;
  const std::vector<double> locations = real_zeros(f, lo, hi, 0, options, &truncated);
  report.recursion_truncated = truncated;

  struct Candidate {
    double location;
    ProbedOrder probed;
  };
  std::vector<Candidate> candidates;
  for (double x : locations) {
    const ProbedOrder p = probe_order(f, x, options);
    if (p.order == 0) continue;  // threshold noise, not a zero
    candidates.push_back({x, p});
  }

  // Cluster chained candidates within the merge radius. A probed order of
  // two or more is authoritative for the whole cluster (a split tangency
  // shows up as nearby order-1 brackets plus the true even-order probe);
  // clusters of plain order-1 zeros add up.
  std::size_t i = 0;
  while (i < candidates.size()) {
    std::size_t j = i + 1;
    while (j < candidates.size() &&
           candidates[j].location - candidates[j - 1].location <= options.cluster_radius)
      ++j;
    unsigned max_order = 0, sum_order = 0;
    bool at_ceiling = false;
    double where = candidates[i].location;
    for (std::size_t k = i; k < j; ++k) {
      const auto& c = candidates[k];
      sum_order += c.probed.order;
      if (c.probed.order > max_order) {
        max_order = c.probed.order;
        where = c.location;
      }
      at_ceiling = at_ceiling || c.probed.at_ceiling;
    }
    const unsigned order = max_order >= 2 ? max_order : sum_order;
    report.zeros.push_back({where, order, at_ceiling});
    report.total_order += order;
    i = j;
  }

  report.tail_certified_right = tail_dominant(f, hi, true);
  report.tail_certified_left = tail_dominant(f, lo, false);
  return report;
}

}  // namespace olsen
