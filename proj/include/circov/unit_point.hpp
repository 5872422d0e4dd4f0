#pragma once

#include <cstdint>
#include <string>

#include "circov/bigint.hpp"
#include "circov/real.hpp"
#include "circov/rng.hpp"

namespace circov {

/// Exact element of the circle [0,1): value = numerator / 2^precision.
class UnitPoint {
 public:
  static constexpr unsigned kMinPrecision = 64;

  explicit UnitPoint(unsigned precision = kMinPrecision);
  UnitPoint(const BigInt& numerator, unsigned precision);

  /// floor({x} * 2^precision) / 2^precision, exact.
  static UnitPoint from_real(const RealDescriptor& x, unsigned precision);
  /// The exact dyadic closest from below to a decimal or fraction string.
  static UnitPoint parse(const std::string& text, unsigned precision);
  /// Uniform random dyadic with `precision` random bits.
  static UnitPoint random(Rng& rng, unsigned precision);

  const BigInt& numerator() const { return num_; }
  unsigned precision() const { return bits_; }

  /// floor(value * 2^64).
  std::uint64_t top64() const;
  /// floor(value * 2^k) for k <= precision.
  BigInt top_bits(unsigned k) const;

  /// {q * value} exactly, at the same precision.
  UnitPoint times(const BigInt& q) const;
  /// floor({2^s * value} * 2^64); requires s + 64 <= precision, otherwise the
  /// low bits would have to be invented.
  std::uint64_t shifted_top64(unsigned long s) const;

  BigRat to_rational() const;
  double to_double() const;
  std::string to_decimal() const;
  RealDescriptor to_real() const { return RealDescriptor::rational(to_rational()); }

  bool operator==(const UnitPoint& o) const;

 private:
  BigInt num_;
  unsigned bits_;
};

}  // namespace circov
