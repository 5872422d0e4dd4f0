#include "circov/rotation.hpp"

#include <cmath>

#include "circov/errors.hpp"

namespace circov {

BigRat nearest_int_dist(const BigRat& t) {
  BigRat frac = t - BigRat(floor_of(t));
  BigRat other = BigRat(1) - frac;
  BigRat r = frac < other ? frac : other;
  r.canonicalize();
  return r;
}

double nearest_int_dist(double t) {
  if (!std::isfinite(t)) throw InvalidInput("nearest_int_dist of a non-finite value");
  double frac = t - std::floor(t);
  return std::min(frac, 1.0 - frac);
}

ScaledInterval nearest_int_dist(const ScaledInterval& t) {
  const BigInt& D = t.den;
  if (t.hi - t.lo >= D) {
    return ScaledInterval{0, D, 2 * D};
  }
  BigInt lo = t.lo;
  mpz_fdiv_r(lo.get_mpz_t(), lo.get_mpz_t(), D.get_mpz_t());
  BigInt hi = lo + (t.hi - t.lo);
  auto f2 = [&](const BigInt& v) {  // 2 * dist, v in [0, 2D)
    BigInt m = v;
    if (m >= D) m -= D;
    BigInt a = 2 * m, b = 2 * (D - m);
    return a < b ? a : b;
  };
  BigInt flo = f2(lo), fhi = f2(hi);
  BigInt dl = flo < fhi ? flo : fhi;
  BigInt dh = flo < fhi ? fhi : flo;
  // interior extrema: zeros at multiples of D, peaks at odd multiples of D/2
  if (hi >= D) dl = 0;
  BigInt lo2 = 2 * lo, hi2 = 2 * hi;
  if ((lo2 <= D && D <= hi2) || (lo2 <= 3 * D && 3 * D <= hi2)) dh = D;
  return ScaledInterval{dl, dh, 2 * D};
}

RotationOrbit::RotationOrbit(const RealDescriptor& alpha, const RealDescriptor& gamma, std::uint64_t n_max,
                             unsigned precision_bits)
    : n_max_(n_max) {
  exact_ = alpha.is_rational() && gamma.is_rational();
  if (exact_) {
    BigRat a = alpha.rational_value(), g = gamma.rational_value();
    mpz_lcm(den_.get_mpz_t(), a.get_den_mpz_t(), g.get_den_mpz_t());
  } else {
    unsigned long f = precision_bits + bit_length(to_bigint(n_max + 1)) + 8;
    den_ = pow2(f);
  }
  ScaledInterval a = alpha.scaled(den_);
  ScaledInterval g = gamma.scaled(den_);
  a_w_ = a.hi - a.lo;
  g_w_ = g.hi - g.lo;
  a_lo_ = a.lo;
  mpz_fdiv_r(a_lo_.get_mpz_t(), a_lo_.get_mpz_t(), den_.get_mpz_t());
  g_lo_ = g.lo;
  // position at n = 0 is -gamma: interval [-g_hi, -g_lo]
  pos_ = -(g_lo_ + g_w_);
  mpz_fdiv_r(pos_.get_mpz_t(), pos_.get_mpz_t(), den_.get_mpz_t());
  width_ = g_w_;
}

void RotationOrbit::advance() {
  mpz_add(pos_.get_mpz_t(), pos_.get_mpz_t(), a_lo_.get_mpz_t());
  if (pos_ >= den_) mpz_sub(pos_.get_mpz_t(), pos_.get_mpz_t(), den_.get_mpz_t());
  if (a_w_ != 0) mpz_add(width_.get_mpz_t(), width_.get_mpz_t(), a_w_.get_mpz_t());
  ++n_;
}

void RotationOrbit::seek(std::uint64_t n) {
  BigInt nn = to_bigint(n);
  pos_ = nn * a_lo_ - (g_lo_ + g_w_);
  mpz_fdiv_r(pos_.get_mpz_t(), pos_.get_mpz_t(), den_.get_mpz_t());
  width_ = nn * a_w_ + g_w_;
  n_ = n;
}

void RotationOrbit::check_width() const {
  if (2 * width_ >= den_) throw PrecisionExhausted("rotation orbit enclosure grew beyond half a turn at n = " + std::to_string(n_));
}

ScaledInterval RotationOrbit::position() const {
  check_width();
  return ScaledInterval{pos_, pos_ + width_, den_};
}

ScaledInterval RotationOrbit::distance() const { return nearest_int_dist(position()); }

bool RotationOrbit::distance_less(const BigRat& eps) const {
  ScaledInterval d = distance();
  // d/(2den) < e/f  <=>  d*f < e*2den
  BigInt lhs_hi = d.hi * eps.get_den();
  BigInt lhs_lo = d.lo * eps.get_den();
  BigInt rhs = eps.get_num() * d.den;
  if (lhs_hi < rhs) return true;
  if (lhs_lo >= rhs) return false;
  throw PrecisionExhausted("cannot decide ||n alpha - gamma|| < eps at n = " + std::to_string(n_));
}

double RotationOrbit::distance_double() const {
  ScaledInterval d = distance();
  BigRat v(d.lo + d.hi, 2 * d.den);
  return v.get_d();
}

double RotationOrbit::position_double() const {
  BigRat v(2 * pos_ + width_, 2 * den_);
  return v.get_d();
}

}  // namespace circov
