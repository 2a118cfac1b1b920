#pragma once

#include <cstdint>
#include <vector>

namespace olsen {

// Strictly increasing epoch boundaries T_1 = 1 < T_2 < T_3 < ...
// Positions j with T_m <= j < T_{m+1} form block m; odd blocks use the
// first alphabet of a mixed space, even blocks the second.
//
// The factorial schedule T_k = k! is the default; its boundaries are
// materialized up to the 64-bit ceiling (20!) at construction, so instances
// are immutable and safe to share across threads. Explicit schedules keep
// the given boundaries and treat the final block as open-ended. The growth
// condition T_{k+1}/T_k -> infinity cannot be checked on a finite prefix
// and is not asserted for explicit schedules.
class EpochSchedule {
 public:
  enum class Kind { factorial, explicit_list };

  static EpochSchedule factorial();
  static EpochSchedule explicit_list(std::vector<std::uint64_t> boundaries);

  Kind kind() const { return kind_; }
  const std::vector<std::uint64_t>& boundaries() const { return boundaries_; }

  // 1-based block index m with T_m <= pos < T_{m+1}; pos >= 1.
  std::size_t block_of_position(std::uint64_t pos) const;

  // True when pos lies in an odd block.
  bool position_uses_first_alphabet(std::uint64_t pos) const;

  // #{ j in [1, n] : position j lies in an odd block }
  std::uint64_t count_first_alphabet(std::uint64_t n) const;

 private:
  EpochSchedule(Kind kind, std::vector<std::uint64_t> boundaries);

  Kind kind_;
  std::vector<std::uint64_t> boundaries_;
};

}  // namespace olsen
