#pragma once

#include <string>
#include <string_view>

#include "circov/bigint.hpp"

namespace circov {

/// Closed interval [lo/den, hi/den] with integer endpoints. When lo == hi the
/// value is known exactly.
struct ScaledInterval {
  BigInt lo;
  BigInt hi;
  BigInt den;

  bool exact() const { return lo == hi; }
};

/// A real number given symbolically: either an exact rational or a quadratic
/// surd (p + q*sqrt(d))/r with d > 1 not a perfect square. Evaluation happens
/// lazily to any requested scale.
class RealDescriptor {
 public:
  RealDescriptor();  // zero
  static RealDescriptor rational(const BigRat& v);
  static RealDescriptor surd(const BigInt& p, const BigInt& q, const BigInt& d, const BigInt& r);

  /// Accepts "3/7", "0.25", "-1e-3", "golden" ((sqrt5-1)/2), "sqrt2-1",
  /// "sqrt(d)", and "surd(p,q,d,r)".
  static RealDescriptor parse(std::string_view text);

  bool is_rational() const { return q_ == 0; }
  /// Exact value; only valid when is_rational().
  BigRat rational_value() const;

  /// floor(x*D) and ceil(x*D); D must be positive.
  ScaledInterval scaled(const BigInt& D) const;
  /// Same with D = 2^bits.
  ScaledInterval fixed(unsigned long bits) const;

  /// Exact floor(x).
  BigInt floor() const;
  int sign() const;

  RealDescriptor operator-() const;
  RealDescriptor operator+(const RealDescriptor& o) const;
  RealDescriptor operator*(const RealDescriptor& o) const;
  RealDescriptor pow(unsigned long k) const;
  /// 1/x via the conjugate; raises InvalidInput for zero.
  RealDescriptor inverse() const;
  /// Exact three-way comparison (same radicand or rational operands).
  int compare(const RealDescriptor& o) const { return (*this + -o).sign(); }

  double to_double() const;
  std::string to_string() const;

  const BigInt& p() const { return p_; }
  const BigInt& q() const { return q_; }
  const BigInt& d() const { return d_; }
  const BigInt& r() const { return r_; }

 private:
  void normalize();

  // value = (p + q*sqrt(d)) / r, r > 0; q == 0 means rational (d == 0 then).
  BigInt p_, q_, d_, r_;
};

}  // namespace circov
