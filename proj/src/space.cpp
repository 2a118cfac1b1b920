#include "olsen/space.hpp"

#include <cmath>
#include <limits>

#include "olsen/errors.hpp"

namespace olsen {

Alphabet::Alphabet(std::uint32_t c) : size(c) {
  if (c < 2) throw InputError("alphabet: size must be at least 2");
  if (c > 256) throw InputError("alphabet: size above 256 is not supported");
}

Word Word::parse(std::string_view text) {
  std::vector<std::uint8_t> digits;
  digits.reserve(text.size());
  for (char ch : text) {
    if (ch < '0' || ch > '9') throw InputError("word: expected digits 0-9");
    digits.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return Word(std::move(digits));
}

std::string Word::str() const {
  std::string out;
  out.reserve(digits_.size());
  for (std::uint8_t d : digits_) {
    if (d > 9) throw InputError("word: digit above 9 has no single-character form");
    out.push_back(static_cast<char>('0' + d));
  }
  return out;
}

Word Word::prefix(std::size_t n) const {
  return Word(std::vector<std::uint8_t>(digits_.begin(), digits_.begin() + n));
}

bool Word::is_prefix_of(const Word& other) const {
  if (size() > other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (digits_[i] != other[i]) return false;
  return true;
}

std::size_t common_prefix_length(const Word& w, const Word& v) {
  const std::size_t n = std::min(w.size(), v.size());
  std::size_t i = 0;
  while (i < n && w[i] == v[i]) ++i;
  return i;
}

std::uint64_t enumerate_index(const Word& w, const Alphabet& alphabet) {
  const std::uint64_t c = alphabet.size;
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::uint8_t d = w[i];
    if (d >= c) throw InputError("enumerate_index: digit out of range");
    if (index > (std::numeric_limits<std::uint64_t>::max() - d) / c)
      throw InputError("enumerate_index: value exceeds 64 bits");
    index = index * c + d;
  }
  return index;
}

Word word_from_index(std::uint64_t index, std::size_t level, const Alphabet& alphabet) {
  std::vector<std::uint8_t> digits(level);
  for (std::size_t i = level; i-- > 0;) {
    digits[i] = static_cast<std::uint8_t>(index % alphabet.size);
    index /= alphabet.size;
  }
  if (index != 0) throw InputError("word_from_index: index out of range for level");
  return Word(std::move(digits));
}

void MixedSpaceSpec::validate(const Word& w) const {
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& alpha = alphabet_at(i + 1);
    if (w[i] >= alpha.size)
      throw InputError("word: digit out of range at position " + std::to_string(i + 1));
  }
}

std::uint64_t count_first_alphabet(const MixedSpaceSpec& spec, std::uint64_t n) {
  return spec.schedule.count_first_alphabet(n);
}

double mixed_distance_neglog(const Word& w, const Word& v, const MixedSpaceSpec& spec) {
  const std::size_t n = common_prefix_length(w, v);
  if (n == w.size() || n == v.size())
    return std::numeric_limits<double>::infinity();
  const std::uint64_t n1 = count_first_alphabet(spec, n);
  return static_cast<double>(n1) * std::log(spec.alphabet_1.size) +
         static_cast<double>(n - n1) * std::log(spec.alphabet_2.size);
}

double mixed_distance(const Word& w, const Word& v, const MixedSpaceSpec& spec) {
  const double neglog = mixed_distance_neglog(w, v, spec);
  return std::isinf(neglog) ? 0.0 : std::exp(-neglog);
}

}  // namespace olsen
