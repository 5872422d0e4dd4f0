#pragma once

#include <cstdint>

#include "circov/bigint.hpp"
#include "circov/real.hpp"

namespace circov {

/// Distance to the nearest integer, exact for rationals.
BigRat nearest_int_dist(const BigRat& t);
/// Double version; rejects NaN and infinities.
double nearest_int_dist(double t);
/// Enclosure of the distance over every t in [t.lo/t.den, t.hi/t.den].
/// The result has denominator 2*t.den.
ScaledInterval nearest_int_dist(const ScaledInterval& t);

/// Walks n*alpha - gamma (mod 1) for n = 1, 2, ... with a guaranteed
/// enclosure. Rational inputs are tracked exactly over their common
/// denominator; otherwise over 2^F with F large enough for n_max steps.
class RotationOrbit {
 public:
  RotationOrbit(const RealDescriptor& alpha, const RealDescriptor& gamma, std::uint64_t n_max,
                unsigned precision_bits = 4096);

  /// Moves from n to n+1; the orbit starts at n = 0.
  void advance();
  /// Jumps straight to index n (any n >= 0).
  void seek(std::uint64_t n);
  std::uint64_t n() const { return n_; }
  bool exact() const { return exact_; }
  const BigInt& denominator() const { return den_; }

  /// Enclosure of {n*alpha - gamma} as [lo, lo + width] over denominator.
  ScaledInterval position() const;
  /// Enclosure of ||n*alpha - gamma||.
  ScaledInterval distance() const;
  /// Decides ||n*alpha - gamma|| < eps; raises PrecisionExhausted when the
  /// enclosure straddles eps.
  bool distance_less(const BigRat& eps) const;
  double distance_double() const;
  double position_double() const;

 private:
  void check_width() const;

  BigInt den_;
  BigInt a_lo_, a_w_;  // alpha*den in [a_lo, a_lo + a_w], a_lo reduced mod den
  BigInt g_lo_, g_w_;  // gamma*den in [g_lo, g_lo + g_w]
  BigInt pos_;         // lower end of the current position, in [0, den)
  BigInt width_;
  std::uint64_t n_ = 0;
  std::uint64_t n_max_;
  bool exact_;
};

}  // namespace circov
