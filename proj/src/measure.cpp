#include "olsen/measure.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "olsen/errors.hpp"
#include "olsen/numeric.hpp"

namespace olsen {

ProbabilityVector::ProbabilityVector(std::vector<double> entries)
    : entries_(std::move(entries)) {
  if (entries_.size() < 2) throw InputError("probability vector: need at least 2 entries");
  double sum = 0.0;
  for (double p : entries_) {
    if (!(p > 0.0) || !(p < 1.0))
      throw ProbabilityEntryError("probability vector: entries must lie strictly in (0,1)");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw ProbabilitySumError("probability vector: entries must sum to 1 within 1e-12");
  logs_.reserve(entries_.size());
  for (double p : entries_) logs_.push_back(std::log(p));
}

double ProbabilityVector::min_entry() const {
  return *std::min_element(entries_.begin(), entries_.end());
}

double ProbabilityVector::max_entry() const {
  return *std::max_element(entries_.begin(), entries_.end());
}

MeasureSpec::MeasureSpec(MixedSpaceSpec space_, ProbabilityVector a, ProbabilityVector b)
    : space(std::move(space_)), probs_a(std::move(a)), probs_b(std::move(b)) {
  if (probs_a.size() != space.alphabet_1.size)
    throw InputError("measure: probs_a length must equal the first alphabet size");
  if (probs_b.size() != space.alphabet_2.size)
    throw InputError("measure: probs_b length must equal the second alphabet size");
}

double MeasureSpec::log_prob(std::uint64_t pos, std::uint8_t digit) const {
  const ProbabilityVector& p = probs_at(pos);
  if (digit >= p.size())
    throw InputError("measure: digit out of range at position " + std::to_string(pos));
  return p.log_entries()[digit];
}

double log_cylinder_mass(const MeasureSpec& spec, const Word& w) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += spec.log_prob(i + 1, w[i]);
  return acc;
}

double running_exponent(const MeasureSpec& spec, const Word& x, std::uint64_t n) {
  if (n == 0 || n > x.size()) throw InputError("running_exponent: need 1 <= n <= |x|");
  double log_mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) log_mass += spec.log_prob(i + 1, x[i]);
  const std::uint64_t n1 = count_first_alphabet(spec.space, n);
  const double scale = static_cast<double>(n1) * std::log(spec.space.alphabet_1.size) +
                       static_cast<double>(n - n1) * std::log(spec.space.alphabet_2.size);
  return -log_mass / scale;
}

TiltedMeasure::TiltedMeasure(MeasureSpec base, double q, std::uint64_t depth)
    : base_(std::move(base)), q_(q), depth_(depth) {
  if (depth == 0) throw InputError("tilted measure: depth must be positive");
  log_moment_a_ = log_sum_exp_scaled(base_.probs_a.log_entries(), q);
  log_moment_b_ = log_sum_exp_scaled(base_.probs_b.log_entries(), q);
  const std::uint64_t n1 = count_first_alphabet(base_.space, depth);
  // ln sum_{|w|=n} mu(w)^q = N_n ln(sum a^q) + (n-N_n) ln(sum b^q)
  log_norm_ = static_cast<double>(n1) * log_moment_a_ +
              static_cast<double>(depth - n1) * log_moment_b_;
}

double TiltedMeasure::log_mass(const Word& x) const {
  base_.space.validate(x);
  const std::uint64_t m = x.size();
  const std::uint64_t n = depth_;
  if (m <= n) {
    // sum over the level-n extensions of x factorizes through the epochs
    const std::uint64_t n1_m = count_first_alphabet(base_.space, m);
    const std::uint64_t n1_n = count_first_alphabet(base_.space, n);
    const double da = static_cast<double>(n1_n - n1_m);
    const double db = static_cast<double>((n - n1_n) - (m - n1_m));
    return q_ * log_cylinder_mass(base_, x) + da * log_moment_a_ + db * log_moment_b_ -
           log_norm_;
  }
  // below the tilt depth the mass of the level-n prefix splits uniformly
  double split = 0.0;
  for (std::uint64_t pos = n + 1; pos <= m; ++pos)
    split += std::log(base_.space.alphabet_at(pos).size);
  return log_mass(x.prefix(n)) - split;
}

double TiltedMeasure::mass(const Word& x) const { return std::exp(log_mass(x)); }

namespace {

// High 53 bits of a 64-bit draw, mapped to [0,1).
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Word draw_word(const MeasureSpec& spec, std::uint64_t depth, std::mt19937_64& rng) {
  std::vector<std::uint8_t> digits;
  digits.reserve(depth);
  for (std::uint64_t pos = 1; pos <= depth; ++pos) {
    const ProbabilityVector& p = spec.probs_at(pos);
    const double u = unit_uniform(rng);
    double cdf = 0.0;
    std::uint8_t digit = static_cast<std::uint8_t>(p.size() - 1);
    for (std::size_t k = 0; k < p.size(); ++k) {
      cdf += p[k];
      if (u < cdf) {
        digit = static_cast<std::uint8_t>(k);
        break;
      }
    }
    digits.push_back(digit);
  }
  return Word(std::move(digits));
}

}  // namespace

Word sample_word(const MeasureSpec& spec, std::uint64_t depth, std::uint64_t seed) {
  if (depth == 0) throw InputError("sample_word: depth must be positive");
  std::mt19937_64 rng(seed);
  return draw_word(spec, depth, rng);
}

std::vector<Word> sample_words(const MeasureSpec& spec, std::uint64_t depth,
                               std::size_t count, std::uint64_t seed) {
  if (depth == 0) throw InputError("sample_words: depth must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Word> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(draw_word(spec, depth, rng));
  return out;
}

}  // namespace olsen
