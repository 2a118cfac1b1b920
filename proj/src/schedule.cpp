#include "olsen/schedule.hpp"

#include <algorithm>
#include <limits>

#include "olsen/errors.hpp"

namespace olsen {

EpochSchedule::EpochSchedule(Kind kind, std::vector<std::uint64_t> boundaries)
    : kind_(kind), boundaries_(std::move(boundaries)) {}

EpochSchedule EpochSchedule::factorial() {
  std::vector<std::uint64_t> t;
  std::uint64_t value = 1;
  std::uint64_t k = 1;
  // 21! overflows uint64, so the materialized prefix ends at 20!.
  while (true) {
    t.push_back(value);
    ++k;
    if (value > std::numeric_limits<std::uint64_t>::max() / k) break;
    value *= k;
  }
  return EpochSchedule(Kind::factorial, std::move(t));
}

EpochSchedule EpochSchedule::explicit_list(std::vector<std::uint64_t> boundaries) {
  if (boundaries.empty()) throw InputError("schedule: boundary list is empty");
  if (boundaries.front() != 1) throw InputError("schedule: T_1 must equal 1");
  for (std::size_t i = 1; i < boundaries.size(); ++i) {
    if (boundaries[i] <= boundaries[i - 1])
      throw InputError("schedule: boundaries must be strictly increasing");
  }
  return EpochSchedule(Kind::explicit_list, std::move(boundaries));
}

std::size_t EpochSchedule::block_of_position(std::uint64_t pos) const {
  if (pos == 0) throw InputError("schedule: positions are 1-based");
  auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), pos);
  return static_cast<std::size_t>(it - boundaries_.begin());  // >= 1 since T_1 = 1
}

bool EpochSchedule::position_uses_first_alphabet(std::uint64_t pos) const {
  return block_of_position(pos) % 2 == 1;
}

std::uint64_t EpochSchedule::count_first_alphabet(std::uint64_t n) const {
  std::uint64_t count = 0;
  for (std::size_t m = 0; m < boundaries_.size(); m += 2) {  // blocks 1, 3, 5, ...
    const std::uint64_t lo = boundaries_[m];
    if (lo > n) break;
    const std::uint64_t hi =
        (m + 1 < boundaries_.size()) ? boundaries_[m + 1] - 1 : n;  // last block open-ended
    count += std::min(hi, n) - lo + 1;
  }
  return count;
}

}  // namespace olsen
