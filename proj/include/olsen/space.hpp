#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "olsen/schedule.hpp"

namespace olsen {

// Letters are 0..size-1. Digits are stored in a byte, so size <= 256.
struct Alphabet {
  std::uint32_t size;

  explicit Alphabet(std::uint32_t c);
};

// A finite word: a digit sequence over one alphabet, or over the
// position-dependent alphabets of a mixed space. The empty word is valid.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {}

  // One character per digit, '0'..'9'; only bases up to 10 round-trip as text.
  static Word parse(std::string_view text);
  std::string str() const;

  std::size_t size() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return digits_[i]; }
  const std::vector<std::uint8_t>& digits() const { return digits_; }

  void push_back(std::uint8_t d) { digits_.push_back(d); }
  Word prefix(std::size_t n) const;
  bool is_prefix_of(const Word& other) const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<std::uint8_t> digits_;
};

std::size_t common_prefix_length(const Word& w, const Word& v);

// Base-c positional value of w; bijective from level-n words onto
// 0..c^n-1. Throws InputError when a digit is out of range or the value
// would not fit in 64 bits.
std::uint64_t enumerate_index(const Word& w, const Alphabet& alphabet);

// Digits of an index at a given level, inverse of enumerate_index.
Word word_from_index(std::uint64_t index, std::size_t level, const Alphabet& alphabet);

// Two alphabets alternating along an epoch schedule: positions in odd
// blocks use alphabet_1, positions in even blocks alphabet_2.
struct MixedSpaceSpec {
  Alphabet alphabet_1;
  Alphabet alphabet_2;
  EpochSchedule schedule;

  MixedSpaceSpec(Alphabet a1, Alphabet a2, EpochSchedule sched)
      : alphabet_1(a1), alphabet_2(a2), schedule(std::move(sched)) {}

  bool uses_first_alphabet(std::uint64_t pos) const {
    return schedule.position_uses_first_alphabet(pos);
  }
  const Alphabet& alphabet_at(std::uint64_t pos) const {
    return uses_first_alphabet(pos) ? alphabet_1 : alphabet_2;
  }

  // Digit bounds per position; throws InputError on violation.
  void validate(const Word& w) const;
};

// N_n: how many of the positions 1..n use the first alphabet.
std::uint64_t count_first_alphabet(const MixedSpaceSpec& spec, std::uint64_t n);

// Ultrametric on the space. With n the longest-common-prefix length,
// d(w,v) = c1^{-N_n} * c2^{-(n-N_n)}; this reduces to c^{-n} when the
// alphabets coincide. Words where one is a prefix of the other stand in
// for the same infinite digit stream and get distance 0.
double mixed_distance(const Word& w, const Word& v, const MixedSpaceSpec& spec);

// -log d(w,v); +inf for the distance-0 case. Exact at depths where the
// linear form underflows.
double mixed_distance_neglog(const Word& w, const Word& v, const MixedSpaceSpec& spec);

}  // namespace olsen
