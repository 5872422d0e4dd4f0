#include "circov/contfrac.hpp"

#include <cmath>
#include <stdexcept>

#include "circov/errors.hpp"

namespace circov {

BigInt ContinuedFractionExpansion::q(long k) const {
  if (k == -1) return 0;
  if (k == 0) return 1;
  return denominators.at(static_cast<std::size_t>(k - 1));
}

BigInt ContinuedFractionExpansion::p(long k) const {
  if (k == -1) return 1;
  if (k == 0) return a0;
  return numerators.at(static_cast<std::size_t>(k - 1));
}

BigInt ContinuedFractionExpansion::max_partial_quotient() const {
  BigInt m = 0;
  for (const auto& a : partial_quotients)
    if (a > m) m = a;
  return m;
}

namespace {

// Quotients shared by every real in [lo/den, hi/den] (lo < hi), after a0.
std::vector<BigInt> interval_quotients(BigInt p1, BigInt q1, BigInt p2, BigInt q2, std::size_t want) {
  std::vector<BigInt> out;
  bool first = true;
  while (out.size() < want) {
    BigInt a1 = floor_div(p1, q1), a2 = floor_div(p2, q2);
    if (a1 != a2) break;
    BigInt r1 = p1 - a1 * q1, r2 = p2 - a2 * q2;
    if (!first) out.push_back(a1);
    first = false;
    if (r1 == 0 || r2 == 0) break;  // next complete quotient unbounded on the interval
    p1 = q1;
    q1 = r1;
    p2 = q2;
    q2 = r2;
  }
  return out;
}

void fill_convergents(ContinuedFractionExpansion& cf) {
  BigInt pm2 = 1, pm1 = cf.a0;  // p_{-1}, p_0
  BigInt qm2 = 0, qm1 = 1;      // q_{-1}, q_0
  cf.numerators.clear();
  cf.denominators.clear();
  cf.levy_sup = 0.0;
  for (std::size_t k = 0; k < cf.partial_quotients.size(); ++k) {
    const BigInt& a = cf.partial_quotients[k];
    BigInt pk = a * pm1 + pm2, qk = a * qm1 + qm2;
    cf.numerators.push_back(pk);
    cf.denominators.push_back(qk);
    double ratio = log_abs(qk) / static_cast<double>(k + 1);
    if (k == 0 || ratio > cf.levy_sup) cf.levy_sup = ratio;
    pm2 = pm1;
    pm1 = pk;
    qm2 = qm1;
    qm1 = qk;
  }
}

}  // namespace

ContinuedFractionExpansion continued_fraction(const RealDescriptor& alpha, std::size_t K,
                                              unsigned long max_precision_bits) {
  ContinuedFractionExpansion cf;
  cf.alpha = alpha;
  cf.a0 = alpha.floor();
  if (alpha.is_rational()) {
    BigRat v = alpha.rational_value();
    BigInt num = v.get_num(), den = v.get_den();
    BigInt r = num - cf.a0 * den;
    num = den;
    den = r;
    while (den != 0 && cf.partial_quotients.size() < K) {
      BigInt a = floor_div(num, den);
      cf.partial_quotients.push_back(a);
      BigInt rem = num - a * den;
      num = den;
      den = rem;
    }
    cf.finite = den == 0;
    cf.precision_bits = 0;
    fill_convergents(cf);
    return cf;
  }
  if (K == kAllQuotients) throw InvalidInput("an irrational number has infinitely many partial quotients");
  // one extra quotient so the approximation inequality can be checked at depth K
  const std::size_t want = K + 1;
  for (unsigned long bits = 128;; bits *= 2) {
    if (bits > max_precision_bits) bits = max_precision_bits;
    ScaledInterval iv = alpha.fixed(bits);
    std::vector<BigInt> qs = interval_quotients(iv.lo, iv.den, iv.hi, iv.den, want + 1);
    if (qs.size() >= want) {
      qs.resize(K);
      cf.partial_quotients = std::move(qs);
      cf.precision_bits = bits;
      fill_convergents(cf);
      return cf;
    }
    if (bits >= max_precision_bits)
      throw PrecisionExhausted("only " + std::to_string(qs.size() > 0 ? qs.size() - 1 : 0) +
                               " partial quotients are certain at " + std::to_string(bits) + " bits, " +
                               std::to_string(K) + " requested");
  }
}

ContinuedFractionExpansion continued_fraction_past(const RealDescriptor& alpha, const BigInt& bound,
                                                   unsigned long max_precision_bits) {
  std::size_t K = 16;
  while (true) {
    ContinuedFractionExpansion cf = continued_fraction(alpha, alpha.is_rational() ? kAllQuotients : K, max_precision_bits);
    if (cf.finite || (cf.depth() > 0 && cf.denominators.back() > bound)) {
      if (!cf.finite) {
        std::size_t keep = 0;
        while (cf.denominators[keep] <= bound) ++keep;
        cf.partial_quotients.resize(keep + 1);
        fill_convergents(cf);
      }
      return cf;
    }
    K *= 2;
  }
}

void verify_expansion(const ContinuedFractionExpansion& cf) {
  const long K = static_cast<long>(cf.depth());
  for (long k = 1; k <= K; ++k) {
    const BigInt& a = cf.partial_quotients[static_cast<std::size_t>(k - 1)];
    if (cf.q(k) != a * cf.q(k - 1) + cf.q(k - 2)) throw std::logic_error("denominator recursion broken at k=" + std::to_string(k));
    if (cf.p(k) != a * cf.p(k - 1) + cf.p(k - 2)) throw std::logic_error("numerator recursion broken at k=" + std::to_string(k));
    if (k >= 2 && cf.q(k) <= cf.q(k - 1)) throw std::logic_error("denominators not increasing at k=" + std::to_string(k));
  }
  // |alpha - p_k/q_k| < 1/(q_k q_{k+1}) for k < K, at the expansion's precision
  if (K < 2) return;
  unsigned long bits = cf.precision_bits ? cf.precision_bits : 64;
  ScaledInterval iv = cf.alpha.fixed(bits);
  if (cf.alpha.is_rational()) iv = cf.alpha.scaled(cf.alpha.rational_value().get_den());
  BigRat lo(iv.lo, iv.den), hi(iv.hi, iv.den);
  // a terminated rational expansion meets the bound with equality at K-1
  const long k_end = cf.finite ? K - 1 : K;
  for (long k = 1; k < k_end; ++k) {
    BigRat conv(cf.p(k), cf.q(k));
    BigRat e1 = abs(lo - conv), e2 = abs(hi - conv);
    BigRat err = e1 > e2 ? e1 : e2;
    BigRat bound(BigInt(1), cf.q(k) * cf.q(k + 1));
    if (!(err < bound)) throw std::logic_error("approximation inequality fails at k=" + std::to_string(k));
  }
}

}  // namespace circov
