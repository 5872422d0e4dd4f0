#pragma once

#include <cstdint>

#include "circov/bigint.hpp"
#include "circov/schedule.hpp"
#include "circov/sequence.hpp"

namespace circov {

struct LocalCountInstance {
  unsigned j = 1;
  BigRat B;
  /// Block Delta_j = (N_{j-1}, N_j] taken from this schedule.
  CoveringSchedule schedule{BigRat(1000)};
  /// Explicit block override (first, last), both inclusive; empty block when first > last.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> block;
  /// Upper limit on |block|^2 * 2^{2j} enumerated (h, k, l, m) skeletons.
  std::uint64_t budget = 200'000'000;
};

struct LocalCountResult {
  BigRat sum;    // sum of c(h)c(k) over admissible (l, m, h, k)
  BigRat bound;  // 20 N_j 2^j
  bool within_bound = false;
  std::uint64_t solutions = 0;  // number of admissible quadruples
  std::uint64_t block_first = 0, block_last = 0;
  std::uint64_t N_j = 0;
};

/// Exhaustive evaluation of
///   sum_{l, m in Delta_j} sum_{1 <= h, k <= 2^{2j}, |k q_m - h q_l - B| < q_{N_{j-1}}/4} c(h) c(k)
/// with c(h) = min(1, 2^{j+1}/h). For each (l, m, k) the admissible h form an
/// interval found by exact integer division, so the sum is exact.
LocalCountResult local_count_sum(const LocalCountInstance& inst, const SequenceSpec& seq);

/// The same sum by direct enumeration of all (l, m, h, k); a test oracle.
LocalCountResult local_count_bruteforce(const LocalCountInstance& inst, const SequenceSpec& seq);

}  // namespace circov
