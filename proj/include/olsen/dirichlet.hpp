#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace olsen {

struct DirichletTerm {
  double coefficient;
  double exponent;
};

// F(x) = sum_j a_j exp(p_j x). Terms are kept with exponents strictly
// descending; terms whose exponents agree within 1e-12 are merged at
// construction and vanishing coefficients are dropped, so the identically
// zero function is represented by an empty term list.
class DirichletPolynomial {
 public:
  DirichletPolynomial() = default;
  explicit DirichletPolynomial(std::vector<DirichletTerm> terms);

  // sum_i plus[i]^x - sum_i minus[i]^x for positive bases: the comparison
  // polynomial of two parameter groups.
  static DirichletPolynomial power_sum_difference(const std::vector<double>& plus,
                                                  const std::vector<double>& minus);

  bool empty() const { return terms_.empty(); }
  std::size_t length() const { return terms_.size(); }
  const std::vector<DirichletTerm>& terms() const { return terms_; }

  // F^{(m)}(x) = sum_j a_j p_j^m exp(p_j x), evaluated with the dominant
  // exponent factored out. m = 0 is the plain value.
  double evaluate(double x, unsigned m = 0) const;

  // F^{(m)}(x) = mantissa * exp(log_scale); abs_sum is the same sum with
  // every term made positive, so |mantissa| <= abs_sum and thresholds can
  // be taken relative to the local term scale without overflow.
  struct ScaledValue {
    double mantissa = 0.0;
    double abs_sum = 0.0;
    double log_scale = 0.0;
  };
  ScaledValue evaluate_scaled(double x, unsigned m = 0) const;

 private:
  std::vector<DirichletTerm> terms_;
};

// Every coefficient +1 or -1, equally many of each.
bool is_bipartite(const DirichletPolynomial& f);

// Half the length for bipartite polynomials: an upper bound on the number
// of real zeros counted with orders. Empty result when not bipartite.
std::optional<unsigned> jameson_bound(const DirichletPolynomial& f);

struct Zero {
  double location;
  unsigned order;
  // The order probe hit the derivative ceiling without a decisive value;
  // the true order is >= the recorded one.
  bool order_at_ceiling = false;
};

struct ZeroSearchOptions {
  double order_threshold_factor = 1e-8;  // |F^(m)| vs this times the term scale
  // Admission of a sign-preserving zero at a critical point. Much tighter
  // than the order threshold: a genuine even-order zero evaluates at noise
  // level there, while a near-tangency dip between two simple zeros can sit
  // right at the order-probe scale.
  double zero_admission_factor = 1e-11;
  double cluster_radius = 1e-6;    // closer roots merge into one zero
  double refine_tolerance = 1e-12; // relative bisection width target
  unsigned derivative_ceiling = 8;
  unsigned recursion_cap = 16;     // critical-point recursion depth bound
};

struct ZeroReport {
  std::vector<Zero> zeros;  // locations strictly increasing
  unsigned total_order = 0;
  double lo = 0.0;
  double hi = 0.0;
  bool degenerate = false;            // identically zero input
  bool recursion_truncated = false;   // grid fallback was used at the cap
  // Sign of the dominant term certified to persist beyond the endpoint, so
  // no zeros escape on that side.
  bool tail_certified_left = false;
  bool tail_certified_right = false;
  ZeroSearchOptions options;
};

// All real zeros of F in [lo, hi] with orders. Odd-order zeros come from
// bracketed sign changes refined by bisection; zeros without a sign change
// surface as critical points where |F| stays below the scale-relative
// threshold, and successive derivatives are probed to assign the order.
ZeroReport count_zeros(const DirichletPolynomial& f, double lo, double hi,
                       const ZeroSearchOptions& options = {});

}  // namespace olsen
