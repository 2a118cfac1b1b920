#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "olsen/dirichlet.hpp"
#include "olsen/measure.hpp"

namespace olsen {

// Anchor quadruple (a,b,c,d) on the open simplex for the perturbation
// family (a+t, b, c, d-t) versus (a+u, b+v, c+w, d-(u+v+w)). Construction
// verifies the 2x2 block d(entropy_gap, log_product_gap)/d(u,v) at the
// origin, [[log(d/a), log(d/b)], [1/d-1/a, 1/d-1/b]], is nonsingular.
struct BaseQuadruple {
  double a, b, c, d;

  BaseQuadruple(double a, double b, double c, double d);

  // Built-in anchors: "paper-110" = (1/10, 2/10, 3/10, 4/10) and
  // "paper-9" = (1/9, 2/9, 2/9, 4/9).
  static BaseQuadruple preset(std::string_view name);
};

struct PerturbationState {
  double t = 0.0, u = 0.0, v = 0.0, w = 0.0;
};

// The two perturbed groups; throws InputError unless every entry lies
// strictly in (0,1).
std::array<double, 4> group_one(const PerturbationState& s, const BaseQuadruple& base);
std::array<double, 4> group_two(const PerturbationState& s, const BaseQuadruple& base);

// Difference of sum_i x_i log x_i between the groups: the q = 1 moment
// derivative gap, scaled by the base logarithm.
double entropy_gap(const PerturbationState& s, const BaseQuadruple& base);

// Difference of sum_i log x_i between the groups: the q = 0 gap.
double log_product_gap(const PerturbationState& s, const BaseQuadruple& base);

// Rows (entropy_gap, log_product_gap), columns (t, u, v, w).
std::array<std::array<double, 4>, 2> gap_jacobian(const PerturbationState& s,
                                                  const BaseQuadruple& base);

// The (u,v) block of gap_jacobian.
std::array<std::array<double, 2>, 2> jacobian_uv(const PerturbationState& s,
                                                 const BaseQuadruple& base);

struct SolveOutcome {
  enum class Status { converged, diverged, left_domain } status;
  double u = 0.0, v = 0.0;
  double residual = 0.0;  // max(|entropy_gap|, |log_product_gap|) at the iterate
  unsigned iterations = 0;
  std::vector<double> residual_history;
};

struct SolveOptions {
  double tolerance = 1e-13;
  unsigned max_iterations = 100;
  unsigned max_halvings = 30;
};

// Damped Newton iteration from (u,v) = (0,0) on the two gap functions with
// t, w held fixed. Convergence is promised for |t|, |w| <= 0.02; outside
// that box the outcome reports whatever happened.
SolveOutcome solve_uv(double t, double w, const BaseQuadruple& base,
                      const SolveOptions& opts = {});

// Runs solve_uv and packages both groups as probability vectors. Throws
// NumericError when the solve fails and DegeneratePairError when the two
// groups coincide as multisets.
std::pair<ProbabilityVector, ProbabilityVector> build_measure_pair(double t, double w,
                                                                   const BaseQuadruple& base);

struct TangencyCertificate {
  std::vector<double> params_a;
  std::vector<double> params_b;
  // |F| and |F'| at 0 and 1 for F(q) = sum a_i^q - sum b_i^q
  double f_at_0 = 0.0, f_prime_at_0 = 0.0;
  double f_at_1 = 0.0, f_prime_at_1 = 0.0;
  double curvature_at_0 = 0.0, curvature_at_1 = 0.0;  // F'' values
  int grid_sign = 0;        // sign of F away from the contact points
  bool single_signed = false;
  ZeroReport zero_report;
};

struct CertifyOutcome {
  enum class Status { certified, degenerate, failed } status;
  TangencyCertificate certificate;
  std::string failure;  // offending measurement, empty when certified
};

struct CertifyOptions {
  double residual_tolerance = 1e-10;
  double curvature_floor = 1e-6;
  double window_lo = -20.0;
  double window_hi = 20.0;
  unsigned grid_points = 2000;
  double contact_exclusion = 1e-4;   // grid neighborhood dropped around 0 and 1
  double multiset_tolerance = 1e-12;
};

// Checks that the comparison polynomial of the two groups vanishes to
// second order at 0 and 1 and nowhere else: residuals below tolerance,
// curvatures above the floor, count_zeros reporting exactly {0,1} with
// order 2 each, and a single sign on the sampling grid off the contacts.
// Vectors of equal length are compared in their common base; a length-4
// and a length-2 vector are compared by squaring the binary one.
CertifyOutcome certify_tangency(const std::vector<double>& params_a,
                                const std::vector<double>& params_b,
                                const CertifyOptions& opts = {});

}  // namespace olsen
