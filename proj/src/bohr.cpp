#include "circov/bohr.hpp"

#include <cmath>

#include "circov/errors.hpp"
#include "circov/rotation.hpp"

namespace circov {

namespace {

void check_query(const BohrQuery& q) {
  if (q.N < 1) throw InvalidInput("Bohr query needs N >= 1");
  if (q.eps <= 0) throw InvalidInput("Bohr query needs eps > 0");
}

}  // namespace

std::uint64_t bohr_count(const BohrQuery& q) {
  check_query(q);
  RotationOrbit orbit(q.alpha, q.gamma, q.N, q.precision_bits);
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= q.N; ++n) {
    orbit.advance();
    if (orbit.distance_less(q.eps)) ++count;
  }
  return count;
}

BohrPreconditions bohr_preconditions(const BohrQuery& q) {
  check_query(q);
  BohrPreconditions out;
  BigRat two_eps = 2 * q.eps;
  out.lower_ok = BigRat(1, to_bigint(q.N)) < two_eps;
  ContinuedFractionExpansion cf = continued_fraction(q.alpha, q.alpha.is_rational() ? kAllQuotients : 2, q.precision_bits);
  if (cf.depth() < 2) {
    out.upper_ok = false;
    return out;
  }
  out.q2 = cf.q(2);
  RotationOrbit orbit(q.alpha, RealDescriptor(), 1, q.precision_bits);
  orbit.seek(to_u64(out.q2));
  // 2 eps < ||q2 alpha|| is "not (||q2 alpha|| < 2 eps)" unless equal
  ScaledInterval d = orbit.distance();
  BigRat lo(d.lo, d.den), hi(d.hi, d.den);
  out.norm_q2_alpha = orbit.distance_double();
  if (two_eps < lo)
    out.upper_ok = true;
  else if (two_eps >= hi)
    out.upper_ok = false;
  else
    throw PrecisionExhausted("cannot compare 2 eps with ||q_2 alpha||");
  return out;
}

BohrBracket bohr_bracket(const BohrQuery& q) {
  BohrPreconditions pre = bohr_preconditions(q);
  if (!pre.lower_ok) throw PreconditionViolation("lower", "need 1/N < 2 eps");
  if (!pre.upper_ok) throw PreconditionViolation("upper", "need 2 eps < ||q_2 alpha||");
  const BigInt N = to_bigint(q.N);
  ContinuedFractionExpansion cf = continued_fraction_past(q.alpha, N, q.precision_bits);
  BohrBracket out;
  long K = 0;
  while (K + 1 <= static_cast<long>(cf.depth()) && cf.q(K + 1) <= N) ++K;
  if (K + 1 > static_cast<long>(cf.depth()))
    throw PreconditionViolation("upper", "rational alpha has no denominator above N");
  out.K = K;
  out.qK = cf.q(K);
  out.qK1 = cf.q(K + 1);
  BigRat a = q.eps * BigRat(N);
  BigRat b1 = q.eps * BigRat(out.qK1);
  BigRat b2(N, 2 * out.qK);
  b2.canonicalize();
  BigRat inner = b1 < b2 ? b1 : b2;
  out.M = a > inner ? a : inner;
  out.lower = floor_of(out.M);
  out.upper = 32 * out.M;
  return out;
}

AnnulusReport annulus_count(const BohrQuery& q, const AnnulusOptions& opt) {
  check_query(q);
  if (q.b < 300) throw InvalidInput("annulus ratio b must be at least 300");
  AnnulusReport out;
  ContinuedFractionExpansion cf = continued_fraction_past(q.alpha, to_bigint(q.N), q.precision_bits);
  out.max_partial_quotient = cf.max_partial_quotient();
  out.badly_approximable_proxy = out.max_partial_quotient <= opt.quotient_cap;
  out.K_alpha_b = opt.K_override ? *opt.K_override : BigInt(10 * to_bigint(q.b) * out.max_partial_quotient);
  out.precondition_met = q.eps >= BigRat(out.K_alpha_b, to_bigint(q.N));

  const BigRat inner = q.eps / BigRat(to_bigint(q.b));
  if (inner <= BigRat(1, 2)) {
    RotationOrbit orbit(q.alpha, q.gamma, q.N, q.precision_bits);
    for (std::uint64_t n = 1; n <= q.N; ++n) {
      orbit.advance();
      if (orbit.distance_less(q.eps) && !orbit.distance_less(inner)) ++out.count;
    }
  }
  out.ratio = BigRat(to_bigint(out.count)) / (BigRat(to_bigint(q.N)) * q.eps);
  out.ratio.canonicalize();
  out.in_band = opt.c1 <= out.ratio && out.ratio <= opt.c2;
  return out;
}

WindowSum exp_window_sum(const Psi& psi, unsigned N, double c, std::uint64_t horizon) {
  if (!(c > 1.0)) throw InvalidInput("exp_window_sum needs c > 1");
  if (N >= 63) throw InvalidInput("exp_window_sum needs N < 63");
  WindowSum out;
  out.first = 1ULL << N;
  out.log2_last_requested = std::pow(c, static_cast<double>(N));
  std::uint64_t last;
  if (out.log2_last_requested >= 63.0) {
    last = horizon;
    out.capped = true;
  } else {
    last = static_cast<std::uint64_t>(std::floor(std::exp2(out.log2_last_requested)));
    if (last > horizon) {
      last = horizon;
      out.capped = true;
    }
  }
  out.last_used = last;
  if (psi.kind() == Psi::Kind::Zero) return out;
  long double sum = 0.0L, comp = 0.0L;
  for (std::uint64_t n = out.first; n <= last; ++n) {
    long double y = static_cast<long double>(psi(n)) - comp;
    long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  out.value = static_cast<double>(sum);
  return out;
}

}  // namespace circov
