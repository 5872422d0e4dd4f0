#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "circov/bigint.hpp"
#include "circov/schedule.hpp"
#include "circov/sequence.hpp"

namespace circov {

struct ThinningResult {
  std::uint64_t stride = 1;
  RealDescriptor observed_ratio;  // min consecutive ratio on the prefix
  std::vector<Term> terms;        // a_N = q_{N * stride}
  std::vector<std::uint64_t> source_index;
};

/// a_N = q_{N s} with s = floor(log r_target / log r) + 1, where r is the
/// least consecutive ratio of the prefix. Computed as the least s with
/// r^s > r_target, which is the same integer but decided exactly.
ThinningResult thin_to_ratio(const std::vector<Term>& prefix, const BigRat& r_target);

struct SeparationResult {
  std::vector<Term> terms;                // b_1, b_2, ...
  std::vector<std::uint64_t> source_index;  // position in the input of each b_N
  std::vector<std::uint64_t> skips;       // skip before level n (index n; skips[0] = 0)
  std::vector<std::uint64_t> level_end;   // N_n in the output indexing
  bool verified = false;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> violation;  // (M, N)
};

/// Builds b by appending the level-n block of the schedule after skipping
/// floor(100 log N_n / log 10) further input terms, for levels 1..levels-1
/// (level 0 is appended without a skip). Then checks b_N / b_M >= N^100
/// whenever M and N lie in different levels.
SeparationResult separate_levels(const std::vector<Term>& prefix, const CoveringSchedule& schedule, unsigned levels);

/// Input length separate_levels needs for the given schedule.
std::uint64_t separation_input_length(const CoveringSchedule& schedule, unsigned levels);

struct GapProfile {
  double eps = 0.0;
  std::vector<double> ratio_minus_one;  // index n-1 holds q_{n+1}/q_n - 1
  std::vector<double> phi;              // 1/(q_{n+1}/q_n - 1)
  double min_scaled_gap = 0.0;          // min_n (ratio - 1) n^{1-eps}
  double tail_scaled_gap = 0.0;         // same minimum over the second half
  double gap_decay_exponent = 0.0;      // fitted slope of log(ratio-1) vs log n, last decade
  double phi_exponent = 0.0;            // fitted slope of log phi vs log n, last decade
  bool hadamard = false;                // ratios stay bounded away from 1
  bool gap_condition = false;           // (ratio-1) > n^{-(1-eps)} on the tail
  bool phi_subpolynomial = false;       // phi exponent <= phi_tolerance
};

GapProfile gap_profile(const std::vector<Term>& prefix, double eps, double phi_tolerance = 0.1);

}  // namespace circov
