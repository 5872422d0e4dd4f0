#include "circov/unit_point.hpp"

#include "circov/errors.hpp"

namespace circov {

namespace {

void check_precision(unsigned bits) {
  if (bits < UnitPoint::kMinPrecision)
    throw InvalidInput("UnitPoint precision must be at least 64 bits, got " + std::to_string(bits));
}

}  // namespace

UnitPoint::UnitPoint(unsigned precision) : num_(0), bits_(precision) { check_precision(precision); }

UnitPoint::UnitPoint(const BigInt& numerator, unsigned precision) : num_(numerator), bits_(precision) {
  check_precision(precision);
  BigInt m = pow2(precision);
  mpz_fdiv_r(num_.get_mpz_t(), num_.get_mpz_t(), m.get_mpz_t());
}

UnitPoint UnitPoint::from_real(const RealDescriptor& x, unsigned precision) {
  return UnitPoint(x.fixed(precision).lo, precision);
}

UnitPoint UnitPoint::parse(const std::string& text, unsigned precision) {
  return from_real(RealDescriptor::parse(text), precision);
}

UnitPoint UnitPoint::random(Rng& rng, unsigned precision) {
  check_precision(precision);
  const unsigned words = (precision + 63) / 64;
  BigInt v = 0;
  for (unsigned i = 0; i < words; ++i) {
    v <<= 64;
    v += to_bigint(rng());
  }
  const unsigned extra = words * 64 - precision;
  if (extra) v >>= extra;
  return UnitPoint(v, precision);
}

std::uint64_t UnitPoint::top64() const { return to_u64(BigInt(num_ >> (bits_ - 64))); }

BigInt UnitPoint::top_bits(unsigned k) const {
  if (k > bits_) throw PrecisionExhausted("requested " + std::to_string(k) + " bits of a " + std::to_string(bits_) + "-bit point");
  return num_ >> (bits_ - k);
}

UnitPoint UnitPoint::times(const BigInt& q) const { return UnitPoint(BigInt(num_ * q), bits_); }

std::uint64_t UnitPoint::shifted_top64(unsigned long s) const {
  if (s + 64 > bits_)
    throw PrecisionExhausted("{2^" + std::to_string(s) + " x} needs " + std::to_string(s + 64) + " bits, point has " +
                             std::to_string(bits_));
  // bits [bits_-s-64, bits_-s) of the numerator
  const unsigned long lo_bit = bits_ - s - 64;
  std::uint64_t out = 0;
  const mp_bitcnt_t limb_bits = GMP_NUMB_BITS;
  static_assert(GMP_NUMB_BITS == 64, "64-bit limbs expected");
  const std::size_t limb = lo_bit / limb_bits;
  const unsigned off = static_cast<unsigned>(lo_bit % limb_bits);
  const std::uint64_t w0 = mpz_getlimbn(num_.get_mpz_t(), static_cast<mp_size_t>(limb));
  const std::uint64_t w1 = mpz_getlimbn(num_.get_mpz_t(), static_cast<mp_size_t>(limb + 1));
  out = off == 0 ? w0 : (w0 >> off) | (w1 << (64 - off));
  return out;
}

BigRat UnitPoint::to_rational() const {
  BigRat v(num_, pow2(bits_));
  v.canonicalize();
  return v;
}

double UnitPoint::to_double() const { return to_rational().get_d(); }

std::string UnitPoint::to_decimal() const { return circov::to_decimal(to_rational(), bits_); }

bool UnitPoint::operator==(const UnitPoint& o) const { return to_rational() == o.to_rational(); }

}  // namespace circov
