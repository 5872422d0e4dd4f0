#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "circov/bigint.hpp"
#include "circov/real.hpp"
#include "circov/unit_point.hpp"

namespace circov {

/// One term of a sequence. Integer and algebraic terms are exact; the
/// stretched-exponential variant is only known through its logarithm.
struct Term {
  RealDescriptor value;
  bool log_only = false;
  double log_value = 0.0;

  bool is_integer() const;
  BigInt integer() const;  // raises InvalidInput unless is_integer()
  double log() const;
  std::string to_string() const;
};

class SequenceSpec {
 public:
  enum class Variant {
    GeometricReal,         // q0 r^(n-1)
    IntegerLacunary,       // base^n, floor(r^n) or a linear recurrence
    Polynomial,            // P(n + shift)
    PrimePower,            // p_n^d
    PiatetskiShapiro,      // floor(n^c)
    Explicit,              // user list
    StretchedExponential,  // exp(c n^theta), logarithm only
  };
  enum class LacunaryRule { Power, FloorPower, Recurrence };

  static SequenceSpec geometric_real(const RealDescriptor& q0, const RealDescriptor& r);
  static SequenceSpec power(const BigInt& base);
  static SequenceSpec floor_power(const BigRat& r);
  static SequenceSpec recurrence(std::vector<BigInt> coeffs, std::vector<BigInt> init);
  static SequenceSpec polynomial(std::vector<BigInt> coeffs_low_to_high);
  static SequenceSpec prime_power(unsigned d);
  static SequenceSpec piatetski_shapiro(const BigRat& c);
  static SequenceSpec explicit_list(std::vector<BigInt> terms);
  static SequenceSpec stretched_exponential(double c, double theta);
  /// Reads newline-separated decimal integers; blank lines and '#' comments
  /// are skipped.
  static SequenceSpec from_file(const std::string& path);

  /// Short forms: pow2, pow:B, n^2, poly:c0,c1,.., primepow:D, ps:C,
  /// geom:Q0,R, floorpow:R, fib, rec:c1,..;i1,.., list:a,b,.., file:PATH,
  /// exp_sqrt, stretched:C,THETA.
  static SequenceSpec parse(const std::string& text);

  Variant variant() const { return variant_; }
  bool integer_valued() const;
  /// Index offset of the polynomial variant: q_n = P(n + shift).
  std::uint64_t shift() const { return shift_; }
  std::string describe() const;
  /// Free-form gap metadata carried for reports.
  std::string claimed_gap;

  /// Terms q_first .. q_last (1-based, inclusive).
  std::vector<Term> terms(std::uint64_t first, std::uint64_t last) const;
  /// When the sequence is base^n with base a power of two, that exponent.
  int power_of_two_exponent() const;

 private:
  Variant variant_ = Variant::Explicit;
  LacunaryRule rule_ = LacunaryRule::Power;
  RealDescriptor q0_, r_;
  BigInt base_;
  BigRat ratio_;
  std::vector<BigInt> coeffs_, init_, list_;
  unsigned d_ = 1;
  double c_ = 1.0, theta_ = 1.0;
  std::uint64_t shift_ = 0;
};

/// First N terms; verifies strict increase and positivity.
std::vector<Term> generate(const SequenceSpec& spec, std::size_t N);
std::vector<BigInt> generate_integers(const SequenceSpec& spec, std::size_t N);

/// floor({q_n x} 2^64) for n = first..last. Raises PrecisionExhausted when
/// the leading `exact_bits` bits are not determined, including the case
/// where x carries fewer than bitlen(q_n) + exact_bits bits.
std::vector<std::uint64_t> fractional_points(const SequenceSpec& spec, const UnitPoint& x, std::uint64_t first,
                                             std::uint64_t last, unsigned exact_bits = 64);

/// Bits x needs so that fractional_points over 1..last is exact to
/// exact_bits bits.
unsigned required_precision(const SequenceSpec& spec, std::uint64_t last, unsigned exact_bits = 64);

}  // namespace circov
