#include "olsen/graycode.hpp"

#include <cmath>
#include <limits>

#include "olsen/errors.hpp"
#include "olsen/kernels.hpp"

namespace olsen {

namespace {

void validate_digits(const Word& w, const Alphabet& alphabet) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] >= alphabet.size) throw InputError("gray code: digit out of range");
}

}  // namespace

Word gray_code(const Word& w, const Alphabet& alphabet) {
  validate_digits(w, alphabet);
  const std::uint32_t c = alphabet.size;
  std::vector<std::uint8_t> out(w.size());
  std::uint32_t prev = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] = static_cast<std::uint8_t>((w[i] + c - prev) % c);
    prev = w[i];
  }
  return Word(std::move(out));
}

Word gray_code_inverse(const Word& w, const Alphabet& alphabet) {
  validate_digits(w, alphabet);
  const std::uint32_t c = alphabet.size;
  std::vector<std::uint8_t> out(w.size());
  std::uint32_t prev = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    prev = (w[i] + prev) % c;
    out[i] = static_cast<std::uint8_t>(prev);
  }
  return Word(std::move(out));
}

Word gray_code_reflected(const Word& w, const Alphabet& alphabet) {
  validate_digits(w, alphabet);
  const std::uint32_t c = alphabet.size;
  std::vector<std::uint8_t> out(w.size());
  // Only the parity of the prefix index matters.
  std::uint32_t parity = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(parity ? c - 1 - w[i] : w[i]);
    parity = (parity * c + w[i]) % 2;
  }
  return Word(std::move(out));
}

Word gray_code_reflected_inverse(const Word& w, const Alphabet& alphabet) {
  validate_digits(w, alphabet);
  const std::uint32_t c = alphabet.size;
  std::vector<std::uint8_t> out(w.size());
  std::uint32_t parity = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(parity ? c - 1 - w[i] : w[i]);
    parity = (parity * c + out[i]) % 2;
  }
  return Word(std::move(out));
}

Word apply_code(CodeKind code, const Word& w, const Alphabet& alphabet) {
  switch (code) {
    case CodeKind::gray:
      return gray_code(w, alphabet);
    case CodeKind::gray_reflected:
      return gray_code_reflected(w, alphabet);
    case CodeKind::identity:
      validate_digits(w, alphabet);
      return w;
  }
  throw InputError("unknown code kind");
}

CadicInterval::CadicInterval(std::uint64_t level_, std::uint64_t index_, std::uint32_t base_)
    : level(level_), index(index_), base(base_) {
  if (base < 2) throw InputError("interval: base must be at least 2");
  if (index >= denominator()) throw InputError("interval: index out of range for level");
}

std::uint64_t CadicInterval::denominator() const {
  std::uint64_t den = 1;
  for (std::uint64_t i = 0; i < level; ++i) {
    if (den > std::numeric_limits<std::uint64_t>::max() / base)
      throw InputError("interval: base^level exceeds 64 bits");
    den *= base;
  }
  return den;
}

double CadicInterval::lower_value() const {
  return static_cast<double>(index) / static_cast<double>(denominator());
}

double CadicInterval::upper_value() const {
  return static_cast<double>(index + 1) / static_cast<double>(denominator());
}

CadicInterval cylinder_interval(const Word& w, const Alphabet& alphabet) {
  return CadicInterval(w.size(), enumerate_index(w, alphabet), alphabet.size);
}

PushforwardMeasure::PushforwardMeasure(MeasureSpec source_, CodeKind code_)
    : source(std::move(source_)), code(code_) {
  if (source.space.alphabet_1.size != source.space.alphabet_2.size)
    throw InputError("pushforward: the two alphabets must have equal size");
}

double pushforward_log_mass(const PushforwardMeasure& pf, const CadicInterval& interval) {
  const Alphabet& alpha = pf.source.space.alphabet_1;
  if (interval.base != alpha.size)
    throw InputError("pushforward: interval base does not match the measure");
  const Word w = word_from_index(interval.index, interval.level, alpha);
  return log_cylinder_mass(pf.source, apply_code(pf.code, w, alpha));
}

double pushforward_mass(const PushforwardMeasure& pf, const CadicInterval& interval) {
  return std::exp(pushforward_log_mass(pf, interval));
}

namespace {

// Table rows for one level step: row r (the parent index mod the period)
// lists the log probability picked up by appended digit j.
struct StepTable {
  std::vector<double> values;
  std::size_t period;
};

StepTable step_table(const PushforwardMeasure& pf, std::uint64_t position) {
  const std::uint32_t c = pf.source.space.alphabet_1.size;
  const auto& logs = pf.source.probs_at(position).log_entries();
  StepTable table;
  switch (pf.code) {
    case CodeKind::identity:
      table.period = 1;
      table.values = logs;
      break;
    case CodeKind::gray: {
      // appended code digit is (j - parent_last_digit) mod c
      table.period = c;
      table.values.resize(static_cast<std::size_t>(c) * c);
      for (std::uint32_t r = 0; r < c; ++r)
        for (std::uint32_t j = 0; j < c; ++j)
          table.values[r * c + j] = logs[(j + c - r) % c];
      break;
    }
    case CodeKind::gray_reflected: {
      // appended code digit reflects when the parent index is odd
      table.period = 2;
      table.values.resize(2 * static_cast<std::size_t>(c));
      for (std::uint32_t j = 0; j < c; ++j) {
        table.values[j] = logs[j];
        table.values[c + j] = logs[c - 1 - j];
      }
      break;
    }
  }
  return table;
}

}  // namespace

std::vector<double> level_log_masses(const PushforwardMeasure& pf, std::uint32_t level) {
  const std::uint32_t c = pf.source.space.alphabet_1.size;
  if (level * std::log2(static_cast<double>(c)) > 25.0)
    throw InputError("level_log_masses: level too deep for an exhaustive sweep");
  std::vector<double> current{0.0};  // the empty word
  std::vector<double> next;
  for (std::uint32_t m = 1; m <= level; ++m) {
    const StepTable table = step_table(pf, m);
    next.resize(current.size() * c);
    kernels::expand_cyclic(current.data(), current.size(), table.values.data(), table.period, c,
                           next.data());
    current.swap(next);
  }
  return current;
}

DoublingReport doubling_estimate(const PushforwardMeasure& pf, std::uint32_t max_level) {
  const std::uint32_t c = pf.source.space.alphabet_1.size;
  if (max_level > 14 || max_level * std::log2(static_cast<double>(c)) > 25.0)
    throw InputError("doubling_estimate: max_level above the exhaustive ceiling");
  DoublingReport report;
  std::vector<double> current{0.0};
  std::vector<double> next;
  double overall = 1.0;
  for (std::uint32_t m = 1; m <= max_level; ++m) {
    const StepTable table = step_table(pf, m);
    next.resize(current.size() * c);
    kernels::expand_cyclic(current.data(), current.size(), table.values.data(), table.period, c,
                           next.data());
    current.swap(next);
    const double ratio =
        std::exp(kernels::max_abs_adjacent_diff(current.data(), current.size()));
    report.per_level_ratio.push_back(ratio);
    overall = std::max(overall, ratio);
    report.running_max.push_back(overall);
  }
  report.overall = overall;
  return report;
}

}  // namespace olsen
