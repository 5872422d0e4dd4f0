#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "circov/bigint.hpp"
#include "circov/unit_point.hpp"

namespace circov {

/// Circle coordinates on the 2^-64 grid. Interval ends run up to 2^64, so
/// they are held in 128 bits.
using u128 = unsigned __int128;
inline constexpr u128 kCircle = static_cast<u128>(1) << 64;

/// Half-open arc [start, start + length) modulo 1, endpoints on the 2^-64 grid.
struct Arc {
  std::uint64_t start = 0;
  u128 length = 0;  // in [0, 2^64]; 2^64 is the whole circle

  /// (center - len/2, center + len/2) with the half-width floor(len 2^63).
  /// Lengths are clipped to [0, 1].
  static Arc centered(std::uint64_t center, double len);
  static Arc centered(const UnitPoint& center, double len) { return centered(center.top64(), len); }
  static Arc full() { return Arc{0, kCircle}; }

  double measure() const;
};

/// Sorted, pairwise disjoint, non-adjacent half-open intervals of [0, 2^64).
/// A component crossing 0 is stored as two intervals touching 0 and 2^64.
class ArcSet {
 public:
  ArcSet() = default;
  static ArcSet full_circle();
  static ArcSet from_intervals(std::vector<std::pair<u128, u128>> parts);

  void subtract(const Arc& a);
  void add(const Arc& a);
  bool contains(std::uint64_t point) const;

  bool empty() const { return parts_.empty(); }
  /// Exact measure in units of 2^-64.
  u128 measure_units() const { return measure_; }
  double measure() const;
  BigRat measure_exact() const;
  /// Connected components on the circle (wrap-around joins the two ends).
  std::size_t components() const;
  const std::vector<std::pair<u128, u128>>& intervals() const { return parts_; }

  /// Checks ordering, disjointness, non-adjacency and the cached measure.
  bool check_invariants() const;
  bool operator==(const ArcSet& o) const { return parts_ == o.parts_; }

 private:
  void subtract_linear(u128 a, u128 b);
  void add_linear(u128 a, u128 b);

  std::vector<std::pair<u128, u128>> parts_;
  u128 measure_ = 0;
};

/// Functional form of ArcSet::subtract.
ArcSet subtract_arc(ArcSet set, const Arc& a);

std::string to_decimal_string(u128 units);

}  // namespace circov
