#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circov/digit_set.hpp"
#include "circov/sequence.hpp"
#include "circov/unit_point.hpp"

namespace circov {

/// Finite proxy for E((q_n), x, nu): points within n^{-nu} of {q_n x} for some
/// n in the tail (N0, N1].
struct LimsupConfig {
  SequenceSpec seq = SequenceSpec::power(BigInt(2));
  UnitPoint x;
  double nu = 1.0;
  std::uint64_t N0 = 0;
  std::uint64_t N1 = 0;
};

/// Arc radius n^{-nu} in units of 2^-64 (exact floor for integer nu).
std::uint64_t limsup_radius_units(std::uint64_t n, double nu);

/// Depth-j base-b G-cylinders meeting the union of [c_n - r_n, c_n + r_n)
/// over the tail, with c_n = floor({q_n x} 2^64) 2^-64. The x in cfg must
/// carry required_precision(seq, N1) bits.
std::uint64_t box_hits(const LimsupConfig& cfg, const DigitSet& G, unsigned j);

/// Same count from precomputed centers (indices N0+1 .. N0+centers.size()).
std::uint64_t box_hits_centers(const std::vector<std::uint64_t>& centers, std::uint64_t first_index, double nu,
                               const DigitSet& G, unsigned j);

struct DimensionOptions {
  double nu = 1.0;
  unsigned dyadic_min = 8;   // scales 2^-dyadic_max .. 2^-dyadic_min
  unsigned dyadic_max = 18;
  /// Tail at base-b depth j is (floor(b^{j/nu}/window), floor(b^{j/nu})], so
  /// the arcs counted at a scale have radius comparable to that scale.
  double window = 2.0;
  std::size_t seeds = 8;
  std::uint64_t master_seed = 1;
};

struct ScaleCount {
  unsigned depth = 0;       // base-b depth
  double log_scale = 0.0;   // depth * log b
  std::uint64_t N0 = 0, N1 = 0;
  std::vector<std::uint64_t> counts;  // one per seed
};

struct DimensionEstimate {
  bool empty = false;            // every count was zero
  double slope = 0.0;            // mean of per-seed slopes
  double intercept = 0.0;
  double residual = 0.0;         // RMS residual of the pooled fit
  double slope_spread = 0.0;     // sample std of per-seed slopes
  std::vector<double> seed_slopes;
  std::vector<ScaleCount> scales;
  unsigned depth_min = 0, depth_max = 0;
  std::string evidence;
};

/// Base-b depths j with b^{-j} inside [2^-dyadic_max, 2^-dyadic_min].
std::vector<unsigned> depths_for(const DigitSet& G, unsigned dyadic_min, unsigned dyadic_max);

/// Least-squares slope of log count on depth * log b, per seed and pooled.
DimensionEstimate estimate_dimension(const SequenceSpec& seq, const DigitSet& G, const DimensionOptions& opt);

}  // namespace circov
