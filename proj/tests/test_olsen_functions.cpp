#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "olsen/errors.hpp"
#include "olsen/olsen_functions.hpp"
#include "olsen/tangency.hpp"
#include "oracles.hpp"

using namespace olsen;

namespace {

const std::vector<double> kProbs1234{0.1, 0.2, 0.3, 0.4};

MeasureSpec make_spec(std::uint32_t c1, std::uint32_t c2, std::vector<double> pa,
                      std::vector<double> pb) {
  return MeasureSpec(MixedSpaceSpec(Alphabet(c1), Alphabet(c2), EpochSchedule::factorial()),
                     ProbabilityVector(std::move(pa)), ProbabilityVector(std::move(pb)));
}

std::pair<ProbabilityVector, ProbabilityVector> tangent_pair() {
  return build_measure_pair(1e-3, 1e-3, BaseQuadruple::preset("paper-110"));
}

}  // namespace

TEST_CASE("free energy curve basics") {
  const FreeEnergyCurve theta((ProbabilityVector(kProbs1234)));
  CHECK(theta.value(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(theta.value(1.0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(theta.value(2.0) ==
        doctest::Approx(std::log(0.30) / std::log(4.0)).epsilon(1e-14));

  SUBCASE("strictly decreasing and convex on a grid") {
    double prev = theta.value(-20.0);
    double prev_d = theta.derivative(-20.0);
    for (int i = 1; i <= 400; ++i) {
      const double q = -20.0 + 40.0 * i / 400.0;
      const double cur = theta.value(q);
      const double cur_d = theta.derivative(q);
      CHECK(cur < prev);
      CHECK(cur_d >= prev_d - 1e-12);
      CHECK(theta.second_derivative(q) >= 0.0);
      prev = cur;
      prev_d = cur_d;
    }
  }

  SUBCASE("derivative matches centered differences") {
    for (double q = -20.0; q <= 20.0; q += 0.25) {
      const double h = 1e-6;
      const double fd = (theta.value(q + h) - theta.value(q - h)) / (2.0 * h);
      CHECK(theta.derivative(q) == doctest::Approx(fd).epsilon(1e-6));
    }
  }

  SUBCASE("derivative range brackets the derivative") {
    const auto [lo, hi] = theta.derivative_range();
    CHECK(lo == doctest::Approx(std::log(0.1) / std::log(4.0)));
    CHECK(hi == doctest::Approx(std::log(0.4) / std::log(4.0)));
    for (double q : {-50.0, -1.0, 0.0, 3.0, 50.0}) {
      CHECK(theta.derivative(q) > lo);
      CHECK(theta.derivative(q) < hi);
    }
  }

  SUBCASE("uniform vector degenerates to 1 - q") {
    const FreeEnergyCurve flat(ProbabilityVector({0.25, 0.25, 0.25, 0.25}));
    for (double q : {-3.0, 0.0, 2.5})
      CHECK(flat.value(q) == doctest::Approx(1.0 - q).epsilon(1e-13));
    const auto [lo, hi] = flat.derivative_range();
    CHECK(lo == hi);
  }

  SUBCASE("the base must match the vector length") {
    CHECK_THROWS_AS(FreeEnergyCurve(ProbabilityVector({0.5, 0.5}), std::log(4.0)), InputError);
  }
}

TEST_CASE("finite-depth partition exponents") {
  const auto spec = make_spec(4, 4, kProbs1234, {0.2, 0.2, 0.25, 0.35});
  const FreeEnergyCurve theta_a(spec.probs_a);

  for (std::uint64_t n : {1u, 2u, 7u, 100u}) {
    CHECK(tau_n(spec, 1.0, n) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tau_n(spec, 0.0, n) == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (double q : {-2.0, 0.5, 3.0})
    CHECK(tau_n(spec, q, 1) == doctest::Approx(theta_a.value(q)).epsilon(1e-12));

  SUBCASE("matches the brute-force partition sum, mixed bases included") {
    const auto mixed = make_spec(2, 3, {0.3, 0.7}, {0.2, 0.3, 0.5});
    for (double q : {-1.5, 0.3, 2.0}) {
      for (std::uint64_t n : {1u, 2u, 5u, 8u}) {
        const double sum = oracles::brute_partition_sum(mixed, n, q);
        const std::uint64_t n1 = count_first_alphabet(mixed.space, n);
        const double log_scale = n1 * std::log(2.0) + (n - n1) * std::log(3.0);
        CHECK(tau_n(mixed, q, n) == doctest::Approx(std::log(sum) / log_scale).epsilon(1e-12));
      }
    }
  }

  SUBCASE("deep epochs pull tau_n toward the active curve") {
    const FreeEnergyCurve theta_b(spec.probs_b);
    const double q = 2.0;
    // n = T_8 - 1: the odd block [5040, 40320) dominates
    const double tau = tau_n(spec, q, 40319);
    CHECK(std::fabs(tau - theta_a.value(q)) < 0.05);
    // n = T_7 - 1: the even block [720, 5040) dominates
    const double tau_even = tau_n(spec, q, 5039);
    CHECK(std::fabs(tau_even - theta_b.value(q)) < 0.05);
  }
}

TEST_CASE("envelope pair") {
  SUBCASE("identical uniform curves coincide with 1 - q") {
    const OlsenPair pair{FreeEnergyCurve(ProbabilityVector({0.25, 0.25, 0.25, 0.25})),
                         FreeEnergyCurve(ProbabilityVector({0.25, 0.25, 0.25, 0.25}))};
    for (double q : {-4.0, 0.0, 1.0, 3.0}) {
      CHECK(pair.B(q) == doctest::Approx(1.0 - q).epsilon(1e-13));
      CHECK(pair.b(q) == doctest::Approx(pair.B(q)).epsilon(1e-14));
    }
  }

  SUBCASE("tangent parameters touch exactly at 0 and 1") {
    const auto [pa, pb] = tangent_pair();
    const OlsenPair pair = make_spectrum_pair(pa, pb);
    for (double q : {-5.0, 0.5, 3.0}) CHECK(pair.B(q) > pair.b(q));
    for (double q : {0.0, 1.0}) {
      CHECK(pair.B(q) == doctest::Approx(pair.b(q)).epsilon(1e-11));
      const auto dB = pair.B_derivative(q);
      const auto db = pair.b_derivative(q);
      CHECK_FALSE(dB.distinct);  // slopes agree at a tangency
      CHECK(dB.right == doctest::Approx(db.right).epsilon(1e-9));
    }
    CHECK(pair.B(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pair.B(1.0) == doctest::Approx(0.0).epsilon(1e-11));
  }

  SUBCASE("a transversal crossing is flagged with one-sided slopes") {
    // curves of (0.1,0.2,0.3,0.4) and a reshuffled-mass vector cross at 1
    const OlsenPair pair{FreeEnergyCurve(ProbabilityVector(kProbs1234)),
                         FreeEnergyCurve(ProbabilityVector({0.15, 0.15, 0.3, 0.4}))};
    const auto d = pair.B_derivative(1.0);
    CHECK(d.distinct);
    CHECK(d.left < d.right + 1e-12);
    CHECK(d.left == doctest::Approx(std::min(pair.curve_a.derivative(1.0),
                                             pair.curve_b.derivative(1.0))));
  }
}

TEST_CASE("tilted distributions and entropy") {
  const ProbabilityVector probs(kProbs1234);
  const FreeEnergyCurve theta(probs);

  SUBCASE("endpoints of the tilt") {
    const auto flat = tilted_probabilities(probs, 0.0);
    for (std::size_t i = 0; i < 4; ++i) CHECK(flat[i] == doctest::Approx(0.25).epsilon(1e-14));
    const auto same = tilted_probabilities(probs, 1.0);
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(same[i] == doctest::Approx(probs[i]).epsilon(1e-13));
  }

  SUBCASE("tilted mean of log p equals the derivative") {
    for (double q = -6.0; q <= 6.0; q += 0.5) {
      const auto tilt = tilted_probabilities(probs, q);
      double mean = 0.0;
      for (std::size_t i = 0; i < 4; ++i) mean -= tilt[i] * probs.log_entries()[i];
      CHECK(mean / std::log(4.0) == doctest::Approx(-theta.derivative(q)).epsilon(1e-12));
    }
  }

  SUBCASE("entropy values") {
    CHECK(entropy(ProbabilityVector({0.25, 0.25, 0.25, 0.25}), std::log(4.0)) ==
          doctest::Approx(1.0).epsilon(1e-14));
    const double eps = 1e-9;
    const double h = entropy(ProbabilityVector({1.0 - 3 * eps, eps, eps, eps}), std::log(4.0));
    CHECK(h > 0.0);
    CHECK(h < 1e-6);
    CHECK_THROWS_AS(entropy(probs, 0.0), InputError);
  }

  SUBCASE("entropy agrees with an independent summation order") {
    // pairwise sum in reversed order with long-double accumulation
    long double acc = 0.0L;
    for (std::size_t i = probs.size(); i-- > 0;)
      acc -= static_cast<long double>(probs[i]) * std::log(static_cast<long double>(probs[i]));
    CHECK(entropy(probs, std::log(4.0)) ==
          doctest::Approx(static_cast<double>(acc / std::log(4.0L))).epsilon(1e-14));
  }

  SUBCASE("entropy of the tilt equals theta(q) - q theta'(q)") {
    for (double q = -8.0; q <= 8.0; q += 0.5) {
      const auto tilt = tilted_probabilities(probs, q);
      CHECK(entropy(tilt, std::log(4.0)) ==
            doctest::Approx(theta.value(q) - q * theta.derivative(q)).epsilon(1e-10));
    }
  }
}

namespace {

// Linear test curve f(q) = 1 - q with a degenerate derivative range.
struct LinearCurve {
  double value(double q) const { return 1.0 - q; }
  double derivative(double) const { return -1.0; }
  double second_derivative(double) const { return 0.0; }
  std::pair<double, double> derivative_range() const { return {-1.0, -1.0}; }
};

}  // namespace

TEST_CASE("legendre transform") {
  SUBCASE("linear curve is finite only at the matching slope") {
    const LinearCurve f;
    const auto ok = legendre(f, 1.0);
    REQUIRE(ok.status == LegendreStatus::ok);
    CHECK(ok.value == doctest::Approx(1.0));
    CHECK(legendre(f, 0.5).status == LegendreStatus::undefined);
    CHECK(legendre(f, 1.5).status == LegendreStatus::undefined);
  }

  SUBCASE("duality along the curve") {
    const FreeEnergyCurve theta((ProbabilityVector(kProbs1234)));
    for (double q = -10.0; q <= 10.0; q += 0.5) {
      const double alpha = -theta.derivative(q);
      const auto r = legendre(theta, alpha);
      REQUIRE(r.status == LegendreStatus::ok);
      CHECK(r.value ==
            doctest::Approx(theta.value(q) - q * theta.derivative(q)).epsilon(1e-10));
      CHECK(r.q == doctest::Approx(q).epsilon(1e-7));
    }
  }

  SUBCASE("transform at the zero-slope image recovers the value at zero") {
    const FreeEnergyCurve theta((ProbabilityVector(kProbs1234)));
    const auto r = legendre(theta, -theta.derivative(0.0));
    REQUIRE(r.status == LegendreStatus::ok);
    CHECK(r.value == doctest::Approx(theta.value(0.0)).epsilon(1e-12));
  }

  SUBCASE("out-of-range targets are undefined, not failures") {
    const FreeEnergyCurve theta((ProbabilityVector(kProbs1234)));
    CHECK(legendre(theta, -std::log(0.05) / std::log(4.0)).status == LegendreStatus::undefined);
    CHECK(legendre(theta, -std::log(0.9) / std::log(4.0)).status == LegendreStatus::undefined);
  }
}

TEST_CASE("dimension spectrum") {
  SUBCASE("identical vectors give a coinciding spectrum") {
    const OlsenPair pair = make_spectrum_pair(ProbabilityVector(kProbs1234),
                                              ProbabilityVector(kProbs1234));
    const auto [lo, hi] = spectrum_window(pair);
    for (int i = 1; i < 20; ++i) {
      const double alpha = lo + (hi - lo) * i / 20.0;
      const auto pt = spectrum(pair, alpha);
      CHECK(pt.dim == doctest::Approx(pt.Dim).epsilon(1e-10));
      CHECK(pt.q_a == doctest::Approx(pt.q_b).epsilon(1e-7));
    }
  }

  SUBCASE("tangent pair: both routes agree and dim <= Dim on a grid") {
    const auto [pa, pb] = tangent_pair();
    const OlsenPair pair = make_spectrum_pair(pa, pb);
    const auto [lo, hi] = spectrum_window(pair);
    const double log_base = std::log(4.0);
    for (int i = 0; i < 100; ++i) {
      const double alpha = lo + (hi - lo) * (i + 0.5) / 100.0;
      const auto pt = spectrum(pair, alpha);
      CHECK(pt.dim <= pt.Dim + 1e-12);
      const double h_b = entropy(tilted_probabilities(pair.curve_b.probs(), pt.q_b), log_base);
      const double h_a = entropy(tilted_probabilities(pair.curve_a.probs(), pt.q_a), log_base);
      CHECK(pt.dim == doctest::Approx(h_b).epsilon(1e-10));
      CHECK(pt.Dim == doctest::Approx(h_a).epsilon(1e-10));
    }
  }

  SUBCASE("the exponent of the shared tangency recovers both marginals") {
    const auto [pa, pb] = tangent_pair();
    const OlsenPair pair = make_spectrum_pair(pa, pb);
    const double alpha = -pair.curve_a.derivative(1.0);  // = -b'(1) at a tangency
    const auto pt = spectrum(pair, alpha);
    CHECK(pt.q_a == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(pt.q_b == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(pt.dim == doctest::Approx(pt.Dim).epsilon(1e-8));
  }

  SUBCASE("window violations raise a domain error") {
    const auto [pa, pb] = tangent_pair();
    const OlsenPair pair = make_spectrum_pair(pa, pb);
    const auto [lo, hi] = spectrum_window(pair);
    CHECK_THROWS_AS(spectrum(pair, lo - 0.01), InputError);
    CHECK_THROWS_AS(spectrum(pair, hi + 0.01), InputError);
  }

  SUBCASE("solves landing on a transversal crossing are refused") {
    // two simplex vectors always cross at q = 1; these do so with
    // distinct slopes, and the exponent -B'(1) lands the solve there
    const OlsenPair pair = make_spectrum_pair(ProbabilityVector(kProbs1234),
                                              ProbabilityVector({0.15, 0.15, 0.3, 0.4}));
    const double alpha = -pair.curve_a.derivative(1.0);
    CHECK_THROWS_AS(spectrum(pair, alpha), InputError);
  }
}

TEST_CASE("auxiliary free energy") {
  const auto [pa, pb] = tangent_pair();
  const double log_base = std::log(4.0);
  const OlsenPair pair = make_spectrum_pair(pa, pb);
  const auto [lo, hi] = spectrum_window(pair);
  const double alpha = 0.5 * (lo + hi);
  const auto pt = spectrum(pair, alpha);
  const auto ta = tilted_probabilities(pair.curve_a.probs(), pt.q_a);
  const auto tb = tilted_probabilities(pair.curve_b.probs(), pt.q_b);

  SUBCASE("vanishes at the origin") {
    CHECK(auxiliary_free_energy(pair.curve_a.probs(), pair.curve_b.probs(), ta, tb, 0.0,
                                log_base) == doctest::Approx(0.0).epsilon(1e-14));
  }

  SUBCASE("matched tilts make the origin slope -alpha on both branches") {
    const auto [da, db] = auxiliary_free_energy_branch_derivatives(
        pair.curve_a.probs(), pair.curve_b.probs(), ta, tb, 0.0, log_base);
    CHECK(da == doctest::Approx(-alpha).epsilon(1e-10));
    CHECK(db == doctest::Approx(-alpha).epsilon(1e-10));
  }

  SUBCASE("closed form agrees with the free-energy difference identity") {
    // with the tilt of p at q, the branch value at x is theta(x+q) - theta(q)
    const FreeEnergyCurve theta(pair.curve_a.probs());
    for (double x : {-1.0, -0.3, 0.0, 0.4, 2.0}) {
      double direct = 0.0;
      for (std::size_t i = 0; i < 4; ++i)
        direct += std::pow(pair.curve_a.probs()[i], x) * ta[i];
      const double branch = std::log(direct) / log_base;
      CHECK(branch ==
            doctest::Approx(theta.value(x + pt.q_a) - theta.value(pt.q_a)).epsilon(1e-11));
    }
  }
}

TEST_CASE("olsen property suite for a certified pair") {
  const auto [pa, pb] = tangent_pair();
  const OlsenPair pair = make_spectrum_pair(pa, pb);
  const int points = 400;
  std::vector<double> bs(points), Bs(points);
  for (int i = 0; i < points; ++i) {
    const double q = -20.0 + 40.0 * i / (points - 1.0);
    bs[i] = pair.b(q);
    Bs[i] = pair.B(q);
    CHECK(bs[i] <= Bs[i] + 1e-12);
  }
  for (int i = 1; i < points; ++i) {
    CHECK(bs[i] <= bs[i - 1] + 1e-12);
    CHECK(Bs[i] <= Bs[i - 1] + 1e-12);
  }
  for (int i = 1; i + 1 < points; ++i)
    CHECK(Bs[i - 1] - 2.0 * Bs[i] + Bs[i + 1] >= -1e-10);
  CHECK(pair.B(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pair.b(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pair.B(1.0) == doctest::Approx(0.0).epsilon(1e-11));
  CHECK(pair.b(1.0) == doctest::Approx(0.0).epsilon(1e-11));
}
