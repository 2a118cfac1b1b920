#pragma once

#include <cstdint>
#include <vector>

#include "olsen/measure.hpp"
#include "olsen/space.hpp"

namespace olsen {

// Generalized Gray code: g(j) = j on single letters and
// g(e_1...e_n) = g(e_1...e_{n-1}) . k with k = (e_n - e_{n-1}) mod c.
// Length-preserving, prefix-monotone and bijective on every level;
// index-adjacent words map to words differing in exactly one digit. For
// c = 2 this is the classical reflected binary code.
Word gray_code(const Word& w, const Alphabet& alphabet);

// Reflected variant: appending j to w maps to k = c-1-j when the
// enumeration index of w is odd and k = j when it is even. Same adjacency,
// prefix and isometry properties as gray_code.
Word gray_code_reflected(const Word& w, const Alphabet& alphabet);

// Inverse of gray_code by prefix recursion e_n = (k_n + e_{n-1}) mod c.
Word gray_code_inverse(const Word& w, const Alphabet& alphabet);

Word gray_code_reflected_inverse(const Word& w, const Alphabet& alphabet);

enum class CodeKind { gray, gray_reflected, identity };

Word apply_code(CodeKind code, const Word& w, const Alphabet& alphabet);

// [index / base^level, (index+1) / base^level], endpoints exact rationals.
// Intervals at one level are treated as half-open on the right (the last
// one closed), so they tile [0,1]; the base-adic endpoints carry no mass
// because every digit probability is strictly below one.
struct CadicInterval {
  std::uint64_t level;
  std::uint64_t index;
  std::uint32_t base;

  CadicInterval(std::uint64_t level, std::uint64_t index, std::uint32_t base);

  std::uint64_t denominator() const;  // base^level; throws past 64 bits
  std::pair<std::uint64_t, std::uint64_t> lower() const { return {index, denominator()}; }
  std::pair<std::uint64_t, std::uint64_t> upper() const { return {index + 1, denominator()}; }
  double lower_value() const;
  double upper_value() const;
};

// The c-adic interval a cylinder maps onto: level |w|, index the
// enumeration value of w.
CadicInterval cylinder_interval(const Word& w, const Alphabet& alphabet);

// Image of a measure on [0,1] through the enumeration map composed with
// the inverse code: the mass of the level-n interval with index i is the
// source mass of the coded word for index i. The source must use one
// alphabet on every position (c1 = c2).
struct PushforwardMeasure {
  MeasureSpec source;
  CodeKind code;

  PushforwardMeasure(MeasureSpec source_, CodeKind code_);
};

double pushforward_log_mass(const PushforwardMeasure& pf, const CadicInterval& interval);
double pushforward_mass(const PushforwardMeasure& pf, const CadicInterval& interval);

// Log masses of every level-n interval in index order, computed by rolling
// the parent level down one digit at a time (kernel-backed sweep).
std::vector<double> level_log_masses(const PushforwardMeasure& pf, std::uint32_t level);

struct DoublingReport {
  // ratio[m-1]: max over adjacent same-level pairs at level m of
  // mass(I)/mass(I'), the larger over the smaller.
  std::vector<double> per_level_ratio;
  std::vector<double> running_max;  // running max across levels
  double overall = 1.0;
};

// Exhaustive adjacent-interval mass-ratio sweep over levels 1..max_level.
// Levels are capped so base^level stays within desk scale (documented
// ceiling 14; 12 is the practical bound for base 4).
DoublingReport doubling_estimate(const PushforwardMeasure& pf, std::uint32_t max_level);

}  // namespace olsen
