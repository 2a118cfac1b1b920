#pragma once

#include <cstdint>
#include <vector>

#include "olsen/space.hpp"

namespace olsen {

// Entries strictly inside (0,1), summing to 1 within 1e-12. Boundary
// entries raise ProbabilityEntryError, bad sums ProbabilitySumError.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> entries);

  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<double>& entries() const { return entries_; }
  const std::vector<double>& log_entries() const { return logs_; }
  double min_entry() const;
  double max_entry() const;

  friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

 private:
  std::vector<double> entries_;
  std::vector<double> logs_;
};

// Product measure on a mixed space: positions in odd blocks draw digit
// probabilities from probs_a, even blocks from probs_b, so
// mu(e_1...e_n) = prod_j p_j with p_j the selected family's entry e_j.
struct MeasureSpec {
  MixedSpaceSpec space;
  ProbabilityVector probs_a;
  ProbabilityVector probs_b;

  MeasureSpec(MixedSpaceSpec space_, ProbabilityVector a, ProbabilityVector b);

  const ProbabilityVector& probs_at(std::uint64_t pos) const {
    return space.uses_first_alphabet(pos) ? probs_a : probs_b;
  }
  double log_prob(std::uint64_t pos, std::uint8_t digit) const;
};

// ln mu(w); 0 for the empty word. All mass arithmetic stays in log space.
double log_cylinder_mass(const MeasureSpec& spec, const Word& w);

// -ln mu(x|n) / (N_n ln c1 + (n - N_n) ln c2): the local exponent of the
// measure at the depth-n cylinder around x.
double running_exponent(const MeasureSpec& spec, const Word& x, std::uint64_t n);

// Finite-depth tilted companion of a measure: at its depth n the mass of a
// level-n word w is mu(w)^q * (c1^{N_n} c2^{n-N_n})^{-tau_n(q)}, extended
// to coarser words by summation and to finer words by uniform splitting.
// Level-n masses sum to 1 by construction.
class TiltedMeasure {
 public:
  TiltedMeasure(MeasureSpec base, double q, std::uint64_t depth);

  double q() const { return q_; }
  std::uint64_t depth() const { return depth_; }
  const MeasureSpec& base() const { return base_; }

  double log_mass(const Word& x) const;
  double mass(const Word& x) const;

 private:
  MeasureSpec base_;
  double q_;
  std::uint64_t depth_;
  double log_moment_a_;   // ln sum_i a_i^q
  double log_moment_b_;   // ln sum_i b_i^q
  double log_norm_;       // n tau_n(q) * mixed log scale
};

// Draws a word of the given depth with probability mu(w), one inverse-CDF
// digit at a time. The generator is std::mt19937_64 seeded as given and
// uniforms take the high 53 bits of each draw, so outputs are reproducible
// bit for bit across platforms.
Word sample_word(const MeasureSpec& spec, std::uint64_t depth, std::uint64_t seed);

// Consecutive draws from one generator; sample_words(spec, d, n, s)[0]
// equals sample_word(spec, d, s).
std::vector<Word> sample_words(const MeasureSpec& spec, std::uint64_t depth,
                               std::size_t count, std::uint64_t seed);

}  // namespace olsen
