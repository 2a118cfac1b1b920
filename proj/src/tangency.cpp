#include "olsen/tangency.hpp"

#include <algorithm>
#include <cmath>

#include "olsen/errors.hpp"

namespace olsen {

namespace {

double xlogx(double x) { return x * std::log(x); }

void require_open_unit(const std::array<double, 4>& xs) {
  for (double x : xs)
    if (!(x > 0.0) || !(x < 1.0))
      throw InputError("perturbation: entries must stay strictly inside (0,1)");
}

bool multiset_equal(std::vector<double> x, std::vector<double> y, double tol) {
  if (x.size() != y.size()) return false;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::fabs(x[i] - y[i]) > tol) return false;
  return true;
}

}  // namespace

BaseQuadruple::BaseQuadruple(double a_, double b_, double c_, double d_)
    : a(a_), b(b_), c(c_), d(d_) {
  for (double x : {a, b, c, d})
    if (!(x > 0.0) || !(x < 1.0))
      throw InputError("base quadruple: entries must lie strictly in (0,1)");
  if (std::fabs(a + b + c + d - 1.0) > 1e-14)
    throw InputError("base quadruple: entries must sum to 1 within 1e-14");
  const double det = std::log(d / a) * (1.0 / d - 1.0 / b) -
                     std::log(d / b) * (1.0 / d - 1.0 / a);
  if (std::fabs(det) <= 1e-9)
    throw InputError("base quadruple: the (u,v) origin block is singular");
}

BaseQuadruple BaseQuadruple::preset(std::string_view name) {
  if (name == "paper-110") return BaseQuadruple(0.1, 0.2, 0.3, 0.4);
  if (name == "paper-9")
    return BaseQuadruple(1.0 / 9.0, 2.0 / 9.0, 2.0 / 9.0, 4.0 / 9.0);
  throw InputError("unknown base preset: " + std::string(name));
}

std::array<double, 4> group_one(const PerturbationState& s, const BaseQuadruple& base) {
  const std::array<double, 4> g{base.a + s.t, base.b, base.c, base.d - s.t};
  require_open_unit(g);
  return g;
}

std::array<double, 4> group_two(const PerturbationState& s, const BaseQuadruple& base) {
  const std::array<double, 4> g{base.a + s.u, base.b + s.v, base.c + s.w,
                                base.d - (s.u + s.v + s.w)};
  require_open_unit(g);
  return g;
}

double entropy_gap(const PerturbationState& s, const BaseQuadruple& base) {
  const auto g1 = group_one(s, base);
  const auto g2 = group_two(s, base);
  double acc = 0.0;
  for (double x : g1) acc += xlogx(x);
  for (double x : g2) acc -= xlogx(x);
  return acc;
}

double log_product_gap(const PerturbationState& s, const BaseQuadruple& base) {
  const auto g1 = group_one(s, base);
  const auto g2 = group_two(s, base);
  double acc = 0.0;
  for (double x : g1) acc += std::log(x);
  for (double x : g2) acc -= std::log(x);
  return acc;
}

std::array<std::array<double, 4>, 2> gap_jacobian(const PerturbationState& s,
                                                  const BaseQuadruple& base) {
  const auto g1 = group_one(s, base);
  const auto g2 = group_two(s, base);
  const double at = g1[0], dt = g1[3];
  const double au = g2[0], bv = g2[1], cw = g2[2], rem = g2[3];
  return {{
      {std::log(at / dt), std::log(rem / au), std::log(rem / bv), std::log(rem / cw)},
      {1.0 / at - 1.0 / dt, 1.0 / rem - 1.0 / au, 1.0 / rem - 1.0 / bv, 1.0 / rem - 1.0 / cw},
  }};
}

std::array<std::array<double, 2>, 2> jacobian_uv(const PerturbationState& s,
                                                 const BaseQuadruple& base) {
  const auto full = gap_jacobian(s, base);
  return {{{full[0][1], full[0][2]}, {full[1][1], full[1][2]}}};
}

namespace {

bool in_domain(const PerturbationState& s, const BaseQuadruple& base) {
  for (double x : {base.a + s.t, base.b, base.c, base.d - s.t, base.a + s.u, base.b + s.v,
                   base.c + s.w, base.d - (s.u + s.v + s.w)})
    if (!(x > 0.0) || !(x < 1.0)) return false;
  return true;
}

double residual_norm(const PerturbationState& s, const BaseQuadruple& base) {
  return std::max(std::fabs(entropy_gap(s, base)), std::fabs(log_product_gap(s, base)));
}

}  // namespace

SolveOutcome solve_uv(double t, double w, const BaseQuadruple& base, const SolveOptions& opts) {
  SolveOutcome out{SolveOutcome::Status::diverged, 0.0, 0.0, 0.0, 0, {}};
  PerturbationState s{t, 0.0, 0.0, w};
  if (!in_domain(s, base)) {
    out.status = SolveOutcome::Status::left_domain;
    return out;
  }
  double res = residual_norm(s, base);
  out.residual_history.push_back(res);

  for (unsigned it = 0; it < opts.max_iterations; ++it) {
    out.iterations = it;
    out.u = s.u;
    out.v = s.v;
    out.residual = res;
    if (res < opts.tolerance) {
      out.status = SolveOutcome::Status::converged;
      return out;
    }

    const auto jac = jacobian_uv(s, base);
    const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    if (std::fabs(det) < 1e-14) {
      out.status = SolveOutcome::Status::diverged;
      return out;
    }
    const double f0 = entropy_gap(s, base);
    const double f1 = log_product_gap(s, base);
    const double du = -(jac[1][1] * f0 - jac[0][1] * f1) / det;
    const double dv = -(-jac[1][0] * f0 + jac[0][0] * f1) / det;

    // Step halving whenever the full step exits the domain or worsens the
    // residual; the log terms blow up at the simplex boundary.
    double lambda = 1.0;
    bool accepted = false;
    for (unsigned h = 0; h <= opts.max_halvings; ++h) {
      PerturbationState trial{t, s.u + lambda * du, s.v + lambda * dv, w};
      if (in_domain(trial, base)) {
        const double trial_res = residual_norm(trial, base);
        if (trial_res < res || res < 1e-12) {
          s = trial;
          res = trial_res;
          accepted = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      out.status = SolveOutcome::Status::diverged;
      return out;
    }
    out.residual_history.push_back(res);
  }
  out.u = s.u;
  out.v = s.v;
  out.residual = res;
  out.status = res < opts.tolerance ? SolveOutcome::Status::converged
                                    : SolveOutcome::Status::diverged;
  return out;
}

std::pair<ProbabilityVector, ProbabilityVector> build_measure_pair(double t, double w,
                                                                   const BaseQuadruple& base) {
  const SolveOutcome sol = solve_uv(t, w, base);
  if (sol.status != SolveOutcome::Status::converged)
    throw NumericError("build_measure_pair: solver did not converge (residual " +
                       std::to_string(sol.residual) + ")");
  const PerturbationState s{t, sol.u, sol.v, w};
  const auto g1 = group_one(s, base);
  const auto g2 = group_two(s, base);
  std::vector<double> p1(g1.begin(), g1.end());
  std::vector<double> p2(g2.begin(), g2.end());
  if (multiset_equal(p1, p2, 1e-12))
    throw DegeneratePairError("build_measure_pair: the two groups coincide as multisets");
  return {ProbabilityVector(std::move(p1)), ProbabilityVector(std::move(p2))};
}

namespace {

// Lift a binary vector (e1, e2) into base 4 as (e1^2, 2 e1 e2, e2^2): the
// squared moment sum has the same intersections in the larger base.
std::vector<DirichletTerm> comparison_terms(const std::vector<double>& params,
                                            double sign, bool square) {
  std::vector<DirichletTerm> terms;
  if (!square) {
    for (double p : params) terms.push_back({sign, std::log(p)});
    return terms;
  }
  terms.push_back({sign, 2.0 * std::log(params[0])});
  terms.push_back({2.0 * sign, std::log(params[0]) + std::log(params[1])});
  terms.push_back({sign, 2.0 * std::log(params[1])});
  return terms;
}

void validate_params(const std::vector<double>& p) {
  if (p.size() < 2) throw InputError("certify: parameter groups need at least 2 entries");
  double sum = 0.0;
  for (double x : p) {
    if (!(x > 0.0) || !(x < 1.0))
      throw ProbabilityEntryError("certify: parameters must lie strictly in (0,1)");
    sum += x;
  }
  if (std::fabs(sum - 1.0) > 1e-10)
    throw ProbabilitySumError("certify: parameters must sum to 1");
}

}  // namespace

CertifyOutcome certify_tangency(const std::vector<double>& params_a,
                                const std::vector<double>& params_b,
                                const CertifyOptions& opts) {
  validate_params(params_a);
  validate_params(params_b);

  const bool mixed_42 = (params_a.size() == 4 && params_b.size() == 2) ||
                        (params_a.size() == 2 && params_b.size() == 4);
  if (params_a.size() != params_b.size() && !mixed_42)
    throw InputError("certify: groups must share a length, or be the 4-and-2 mixed case");

  CertifyOutcome out;
  out.certificate.params_a = params_a;
  out.certificate.params_b = params_b;

  std::vector<double> ea = params_a;
  std::vector<double> eb = params_b;
  auto square_vector = [](const std::vector<double>& e) {
    return std::vector<double>{e[0] * e[0], 2.0 * e[0] * e[1], e[1] * e[1]};
  };
  if (mixed_42) {
    if (ea.size() == 2) ea = square_vector(ea);
    if (eb.size() == 2) eb = square_vector(eb);
  }
  if (multiset_equal(ea, eb, opts.multiset_tolerance)) {
    out.status = CertifyOutcome::Status::degenerate;
    out.failure = "the two groups define the same comparison polynomial";
    return out;
  }

  std::vector<DirichletTerm> terms =
      comparison_terms(params_a, 1.0, mixed_42 && params_a.size() == 2);
  const auto more = comparison_terms(params_b, -1.0, mixed_42 && params_b.size() == 2);
  terms.insert(terms.end(), more.begin(), more.end());
  const DirichletPolynomial f(std::move(terms));
  if (f.empty()) {
    out.status = CertifyOutcome::Status::degenerate;
    out.failure = "comparison polynomial is identically zero";
    return out;
  }

  TangencyCertificate& cert = out.certificate;
  cert.f_at_0 = std::fabs(f.evaluate(0.0));
  cert.f_prime_at_0 = std::fabs(f.evaluate(0.0, 1));
  cert.f_at_1 = std::fabs(f.evaluate(1.0));
  cert.f_prime_at_1 = std::fabs(f.evaluate(1.0, 1));
  cert.curvature_at_0 = f.evaluate(0.0, 2);
  cert.curvature_at_1 = f.evaluate(1.0, 2);

  std::string failure;
  auto fail = [&failure](const std::string& what) {
    if (failure.empty()) failure = what;
  };

  for (auto [name, value] : {std::pair<const char*, double>{"|F(0)|", cert.f_at_0},
                             {"|F'(0)|", cert.f_prime_at_0},
                             {"|F(1)|", cert.f_at_1},
                             {"|F'(1)|", cert.f_prime_at_1}}) {
    if (!(value < opts.residual_tolerance))
      fail(std::string(name) + " = " + std::to_string(value) + " above residual tolerance");
  }
  for (auto [name, value] :
       {std::pair<const char*, double>{"|F''(0)|", std::fabs(cert.curvature_at_0)},
        {"|F''(1)|", std::fabs(cert.curvature_at_1)}}) {
    if (!(value > opts.curvature_floor))
      fail(std::string(name) + " = " + std::to_string(value) + " below curvature floor");
  }

  cert.zero_report = count_zeros(f, opts.window_lo, opts.window_hi);
  const auto& zr = cert.zero_report;
  const bool zeros_ok = !zr.degenerate && zr.zeros.size() == 2 && zr.total_order == 4 &&
                        std::fabs(zr.zeros[0].location) <= 1e-6 &&
                        std::fabs(zr.zeros[1].location - 1.0) <= 1e-6 &&
                        zr.zeros[0].order == 2 && zr.zeros[1].order == 2;
  if (!zeros_ok) fail("zero set is not {0, 1} with order 2 each");

  if (failure.empty()) {
    // Sign scan off the contact points.
    int sign = 0;
    bool single = true;
    for (unsigned i = 0; i < opts.grid_points; ++i) {
      const double x =
          opts.window_lo + (opts.window_hi - opts.window_lo) * i / (opts.grid_points - 1.0);
      if (std::fabs(x) < opts.contact_exclusion || std::fabs(x - 1.0) < opts.contact_exclusion)
        continue;
      const double value = f.evaluate(x);
      const int s = value > 0.0 ? 1 : (value < 0.0 ? -1 : 0);
      if (s == 0) {
        single = false;
        break;
      }
      if (sign == 0) sign = s;
      if (s != sign) {
        single = false;
        break;
      }
    }
    cert.grid_sign = sign;
    cert.single_signed = single;
    if (!single) fail("comparison polynomial changes sign off the contact points");
  }

  out.failure = failure;
  out.status =
      failure.empty() ? CertifyOutcome::Status::certified : CertifyOutcome::Status::failed;
  return out;
}

}  // namespace olsen
