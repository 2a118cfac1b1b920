#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "olsen/errors.hpp"
#include "olsen/graycode.hpp"
#include "olsen/numeric.hpp"
#include "olsen/tangency.hpp"

using namespace olsen;

namespace {

MeasureSpec equal_base_spec(std::uint32_t c, std::vector<double> pa, std::vector<double> pb) {
  return MeasureSpec(MixedSpaceSpec(Alphabet(c), Alphabet(c), EpochSchedule::factorial()),
                     ProbabilityVector(std::move(pa)), ProbabilityVector(std::move(pb)));
}

std::uint64_t pow_u64(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST_CASE("code examples") {
  const Alphabet c2(2), c3(3);
  CHECK(gray_code(Word::parse("10"), c2) == Word::parse("11"));
  CHECK(gray_code(Word::parse("11"), c2) == Word::parse("10"));
  CHECK(gray_code(Word::parse("12"), c3) == Word::parse("11"));
  CHECK(gray_code(Word::parse("222"), c3) == Word::parse("200"));
  CHECK(gray_code_inverse(Word::parse("11"), c2) == Word::parse("10"));

  // reflected variant: single letters fixed, parity drives the reflection
  CHECK(gray_code_reflected(Word::parse("1"), c3) == Word::parse("1"));
  CHECK(gray_code_reflected(Word::parse("10"), c3) == Word::parse("12"));

  CHECK(gray_code(Word(), c3) == Word());
  CHECK_THROWS_AS(gray_code(Word::parse("3"), c3), InputError);
}

TEST_CASE("code properties, exhaustively per level") {
  for (std::uint32_t c : {2u, 3u, 4u}) {
    const Alphabet alpha(c);
    for (std::uint32_t n = 1; n <= 8; ++n) {
      const std::uint64_t count = pow_u64(c, n);
      std::vector<bool> seen_g(count, false), seen_r(count, false);
      Word prev_g, prev_r;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        const Word w = word_from_index(idx, n, alpha);
        const Word g = gray_code(w, alpha);
        const Word r = gray_code_reflected(w, alpha);

        // bijectivity via the permutation check
        const std::uint64_t gi = enumerate_index(g, alpha);
        const std::uint64_t ri = enumerate_index(r, alpha);
        REQUIRE_FALSE(seen_g[gi]);
        REQUIRE_FALSE(seen_r[ri]);
        seen_g[gi] = true;
        seen_r[ri] = true;

        // round trips
        REQUIRE(gray_code_inverse(g, alpha) == w);
        REQUIRE(gray_code_reflected_inverse(r, alpha) == w);

        // prefix monotonicity
        REQUIRE(gray_code(w.prefix(n - 1), alpha).is_prefix_of(g));
        REQUIRE(gray_code_reflected(w.prefix(n - 1), alpha).is_prefix_of(r));

        // contiguous words differ in exactly one digit after coding
        if (idx > 0) {
          auto one_digit_apart = [n](const Word& x, const Word& y) {
            std::size_t diff = 0;
            for (std::size_t i = 0; i < n; ++i) diff += x[i] != y[i];
            return diff == 1;
          };
          REQUIRE(one_digit_apart(prev_g, g));
          REQUIRE(one_digit_apart(prev_r, r));
        }
        prev_g = g;
        prev_r = r;

        // the classical binary code is the c = 2 special case of both
        if (c == 2) REQUIRE(g == r);
      }
    }
  }
}

TEST_CASE("codes are isometries on random pairs") {
  std::mt19937_64 rng(1357);
  for (std::uint32_t c : {2u, 3u, 4u}) {
    const Alphabet alpha(c);
    for (int trial = 0; trial < 10000; ++trial) {
      const std::size_t len = 1 + rng() % 12;
      auto sample = [&]() {
        std::vector<std::uint8_t> d(len);
        for (auto& x : d) x = static_cast<std::uint8_t>(rng() % c);
        return Word(std::move(d));
      };
      const Word x = sample(), y = sample();
      CHECK(common_prefix_length(gray_code(x, alpha), gray_code(y, alpha)) ==
            common_prefix_length(x, y));
      CHECK(common_prefix_length(gray_code_reflected(x, alpha),
                                 gray_code_reflected(y, alpha)) == common_prefix_length(x, y));
    }
  }
}

TEST_CASE("cylinder intervals") {
  const Alphabet c4(4);
  const auto leftmost = cylinder_interval(Word::parse("000"), c4);
  CHECK(leftmost.lower() == std::pair<std::uint64_t, std::uint64_t>{0, 64});
  CHECK(leftmost.upper() == std::pair<std::uint64_t, std::uint64_t>{1, 64});

  const auto right = cylinder_interval(Word::parse("3"), c4);
  CHECK(right.lower_value() == doctest::Approx(0.75));
  CHECK(right.upper_value() == doctest::Approx(1.0));

  // adjacent indices abut
  const auto a = cylinder_interval(Word::parse("102"), c4);
  const auto b = cylinder_interval(Word::parse("103"), c4);
  CHECK(a.upper() == b.lower());

  CHECK_THROWS_AS(CadicInterval(3, 64, 4), InputError);
  CHECK_THROWS_AS(CadicInterval(64, 0, 4), InputError);
}

TEST_CASE("pushforward masses") {
  const auto spec = equal_base_spec(4, {0.1, 0.2, 0.3, 0.4}, {0.1, 0.2, 0.3, 0.4});

  SUBCASE("level masses sum to one for every code, levels up to 10") {
    for (CodeKind code : {CodeKind::gray, CodeKind::gray_reflected, CodeKind::identity}) {
      const PushforwardMeasure pf(spec, code);
      for (std::uint32_t level = 1; level <= 10; ++level) {
        const auto logs = level_log_masses(pf, level);
        CHECK(std::exp(log_sum_exp(logs)) == doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }

  SUBCASE("per-interval mass agrees with the level sweep") {
    for (CodeKind code : {CodeKind::gray, CodeKind::gray_reflected, CodeKind::identity}) {
      const PushforwardMeasure pf(spec, code);
      for (std::uint32_t level = 1; level <= 5; ++level) {
        const auto logs = level_log_masses(pf, level);
        for (std::uint64_t idx = 0; idx < logs.size(); ++idx) {
          const CadicInterval interval(level, idx, 4);
          REQUIRE(pushforward_log_mass(pf, interval) ==
                  doctest::Approx(logs[idx]).epsilon(1e-12));
        }
      }
    }
  }

  SUBCASE("uniform source puts equal mass on every interval") {
    const auto uniform = equal_base_spec(4, {0.25, 0.25, 0.25, 0.25}, {0.25, 0.25, 0.25, 0.25});
    const PushforwardMeasure pf(uniform, CodeKind::gray);
    for (std::uint32_t level : {1u, 3u, 5u}) {
      const auto logs = level_log_masses(pf, level);
      for (double l : logs)
        CHECK(l == doctest::Approx(-double(level) * std::log(4.0)).epsilon(1e-13));
    }
  }

  SUBCASE("parent mass is the sum of its children") {
    const PushforwardMeasure pf(spec, CodeKind::gray);
    for (std::uint32_t level = 1; level <= 5; ++level) {
      const auto parents = level_log_masses(pf, level - 1);
      const auto children = level_log_masses(pf, level);
      for (std::uint64_t i = 0; i < parents.size(); ++i) {
        double sum = 0.0;
        for (std::uint64_t j = 0; j < 4; ++j) sum += std::exp(children[4 * i + j]);
        CHECK(std::exp(parents[i]) == doctest::Approx(sum).epsilon(1e-12));
      }
    }
  }

  SUBCASE("interval and measure base must match") {
    const PushforwardMeasure pf(spec, CodeKind::gray);
    CHECK_THROWS_AS(pushforward_log_mass(pf, CadicInterval(2, 1, 3)), InputError);
  }

  SUBCASE("mixed alphabets are rejected") {
    CHECK_THROWS_AS(PushforwardMeasure(
                        MeasureSpec(MixedSpaceSpec(Alphabet(2), Alphabet(4),
                                                   EpochSchedule::factorial()),
                                    ProbabilityVector({0.3, 0.7}),
                                    ProbabilityVector({0.1, 0.2, 0.3, 0.4})),
                        CodeKind::gray),
                    InputError);
  }
}

TEST_CASE("doubling statistic") {
  SUBCASE("uniform source is flat") {
    const auto uniform = equal_base_spec(4, {0.25, 0.25, 0.25, 0.25}, {0.25, 0.25, 0.25, 0.25});
    const auto report = doubling_estimate(PushforwardMeasure(uniform, CodeKind::gray), 8);
    for (double r : report.per_level_ratio) CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("coded masses stay within the odds-ratio bound; identity does not") {
    const auto spec = equal_base_spec(4, {0.1, 0.2, 0.3, 0.4}, {0.1, 0.2, 0.3, 0.4});
    const double bound = 0.4 / 0.1;
    for (CodeKind code : {CodeKind::gray, CodeKind::gray_reflected}) {
      const auto report = doubling_estimate(PushforwardMeasure(spec, code), 9);
      for (double r : report.per_level_ratio) CHECK(r <= bound * (1.0 + 1e-12));
      CHECK(report.overall <= bound * (1.0 + 1e-12));
    }

    const auto plain = doubling_estimate(PushforwardMeasure(spec, CodeKind::identity), 9);
    CHECK(plain.overall > bound);
    // the unsaturated statistic keeps growing with the level
    for (std::size_t m = 2; m < plain.per_level_ratio.size(); ++m)
      CHECK(plain.per_level_ratio[m] > plain.per_level_ratio[m - 1]);
  }

  SUBCASE("certified tangent parameters saturate at their own odds ratio") {
    const auto [pa, pb] = build_measure_pair(1e-3, 1e-3, BaseQuadruple::preset("paper-110"));
    const auto spec = MeasureSpec(
        MixedSpaceSpec(Alphabet(4), Alphabet(4), EpochSchedule::factorial()), pa, pb);
    const double bound =
        std::max(pa.max_entry() / pa.min_entry(), pb.max_entry() / pb.min_entry());
    const auto report = doubling_estimate(PushforwardMeasure(spec, CodeKind::gray), 9);
    for (double r : report.per_level_ratio) CHECK(r <= bound * (1.0 + 1e-12));
  }

  SUBCASE("the exhaustive ceiling is enforced") {
    const auto spec = equal_base_spec(4, {0.1, 0.2, 0.3, 0.4}, {0.1, 0.2, 0.3, 0.4});
    CHECK_THROWS_AS(doubling_estimate(PushforwardMeasure(spec, CodeKind::gray), 13),
                    InputError);
  }
}
