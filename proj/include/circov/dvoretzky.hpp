#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "circov/arcset.hpp"
#include "circov/lengths.hpp"
#include "circov/rng.hpp"

namespace circov {

struct DvoretzkyTrial {
  ArcSet uncovered;
  std::vector<double> measures;  // uncovered measure after each arc, when recorded
  std::uint64_t arcs_used = 0;   // stops early once everything is covered
};

/// Subtracts arcs of length l_n centred at i.i.d. uniform 64-bit points
/// X_1..X_N from the full circle. Identical rng state gives an identical
/// result, bit for bit.
DvoretzkyTrial dvoretzky_trial(const LengthSequence& lengths, std::uint64_t N, Rng& rng, bool record_steps = false);

struct ExpectedUncovered {
  std::optional<BigRat> exact;  // when every factor is rational
  std::string decimal;          // 40 significant digits
  double value = 0.0;
};

/// prod_{n <= N} (1 - l_n): exact rationals for rational families (up to
/// `exact_limit` factors), otherwise a 100-digit binary float.
ExpectedUncovered expected_uncovered(const LengthSequence& lengths, std::uint64_t N, std::uint64_t exact_limit = 20000);

struct GridCoverage {
  std::vector<std::uint32_t> counts;  // per grid point: windows containing a covering arc
  std::uint32_t windows = 0;
  std::uint32_t min_count = 0;
};

/// For grid points i/m and dyadic windows (2^k, 2^{k+1}] within [1, N],
/// counts how many windows have an arc covering the point. Membership in
/// the half-open arcs is decided exactly.
GridCoverage grid_covered_infinitely_often(const LengthSequence& lengths,
                                           const std::function<std::uint64_t(std::uint64_t)>& center,
                                           std::uint64_t N, std::uint64_t m);

}  // namespace circov
