#include "circov/psi_regime.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "circov/errors.hpp"
#include "circov/rotation.hpp"

namespace circov {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::CoveringLike:
      return "COVERING-LIKE";
    case Regime::NoncoveringLike:
      return "NONCOVERING-LIKE";
    case Regime::Indeterminate:
      return "INDETERMINATE";
  }
  return "?";
}

double asymptotic_window(const Psi& psi, double v) {
  if (psi.kind() == Psi::Kind::Zero) return 0.0;
  if (psi.kind() != Psi::Kind::IteratedLog) throw InvalidInput("asymptotic window needs the iterated-log family");
  if (psi.coef() <= 0) return 0.0;
  if (psi.a0() < 1.0) return INFINITY;  // psi(n) n -> infinity
  // n = 2^N gives log log n = log N + log log 2 = e^v + log log 2
  const double U = std::exp(v) + std::log(std::log(2.0));
  // log of psi(n) n log n at u = log log n, with n = exp(e^u)
  auto log_integrand = [&](double u) {
    double e = std::log(psi.coef()) + (1.0 - psi.a1()) * u;
    if (psi.a0() != 1.0) e += (1.0 - psi.a0()) * std::exp(u);
    if (psi.a2() != 0) e -= psi.a2() * std::log(u);
    if (psi.a3() != 0) e -= psi.a3() * std::log(std::log(u));
    return e;
  };
  // integrate in w = log u so the long range stays well resolved
  auto f = [&](double w) {
    const double u = std::exp(w);
    return std::exp(log_integrand(u) + w);
  };
  double err = 0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, std::log(v), std::log(U), 15, 1e-10, &err);
}

bool psi_below_critical(const Psi& psi) {
  if (psi.kind() == Psi::Kind::Zero) return true;
  auto crit = [](double n) { return 1.0 / (n * std::log(n)); };
  // direct check below start and on a log-spaced grid
  const std::uint64_t s = psi.kind() == Psi::Kind::IteratedLog ? psi.start() : 1;
  for (std::uint64_t n = 2; n <= std::max<std::uint64_t>(s, 64); ++n)
    if (psi(n) > crit(static_cast<double>(n))) return false;
  for (double x = 64; x < 1e18; x *= 1.07)
    if (psi.eval(x) > crit(x)) return false;
  if (psi.kind() != Psi::Kind::IteratedLog) return true;
  // beyond start every log base is >= 1, so nonnegative exponents only shrink psi
  return psi.a0() >= 1.0 && psi.a1() >= 1.0 && psi.a2() >= 0.0 && psi.a3() >= 0.0 && psi.coef() <= 1.0;
}

void recompute_T(const std::vector<std::uint64_t>& sizes, std::uint64_t b, std::uint64_t& T1, BigRat& T2_cov,
                 BigRat& T2_noncov) {
  T1 = 0;
  T2_cov = 0;
  T2_noncov = 0;
  BigInt bl = 1;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const BigInt prev = bl;  // b^{l-1}
    bl *= static_cast<unsigned long>(b);  // b^l
    T1 += sizes[i];
    T2_cov += BigRat(to_bigint(sizes[i]), bl);
    T2_noncov += BigRat(to_bigint(sizes[i]), prev);
  }
  T2_cov.canonicalize();
  T2_noncov.canonicalize();
}

namespace {

// psi replaced by a power of two below its value at the right end of the
// b-adic block containing n.
double snapped_psi(const Psi& psi, std::uint64_t n, std::uint64_t b) {
  long double top = 1;
  while (top < static_cast<long double>(n)) top *= static_cast<long double>(b);
  const double v = psi.eval(static_cast<double>(top));
  if (v <= 0) return 0.0;
  return std::ldexp(1.0, static_cast<int>(std::floor(std::log2(v))));
}

// b^e capped at `cap` + 1.
std::uint64_t capped_pow(std::uint64_t b, long double e, std::uint64_t cap) {
  long double v = std::pow(static_cast<long double>(b), e);
  if (v > static_cast<long double>(cap)) return cap + 1;
  return static_cast<std::uint64_t>(std::llround(v));
}

bool nondecreasing_tail(const std::vector<WindowPoint>& w) {
  for (std::size_t i = w.size() / 2 + 1; i < w.size(); ++i)
    if (w[i].value < w[i - 1].value) return false;
  return w.size() >= 2;
}
bool nonincreasing_tail(const std::vector<WindowPoint>& w) {
  for (std::size_t i = w.size() / 2 + 1; i < w.size(); ++i)
    if (w[i].value > w[i - 1].value) return false;
  return w.size() >= 2;
}

}  // namespace

RegimeDiagnostics psi_regime(const RealDescriptor& alpha, const RealDescriptor& gamma, const Psi& psi,
                             std::uint64_t b, unsigned L, const RegimeOptions& opt) {
  if (b < 2) throw InvalidInput("psi_regime needs b >= 2");
  if (L < 1) throw InvalidInput("psi_regime needs L >= 1");
  RegimeDiagnostics d;
  d.b = b;
  d.L = L;
  d.horizon = opt.horizon;
  d.snapped = opt.snap;
  d.S_ell_sizes.assign(L, 0);
  d.S_ell_capped.assign(L, false);

  // ranges (b^{2l}, b^{b^l}] for l = 1..L, cut at the horizon
  std::vector<std::uint64_t> lo(L), hi(L);
  for (unsigned l = 1; l <= L; ++l) {
    lo[l - 1] = capped_pow(b, 2.0L * l, opt.horizon);
    const long double bl = std::pow(static_cast<long double>(b), static_cast<long double>(l));
    hi[l - 1] = capped_pow(b, bl, opt.horizon);
    if (hi[l - 1] > opt.horizon) {
      d.S_ell_capped[l - 1] = true;
      hi[l - 1] = opt.horizon;
    }
  }
  const std::uint64_t start = lo[0] + 1;
  std::uint64_t end = 0;
  for (unsigned l = 0; l < L; ++l)
    if (lo[l] < hi[l]) end = std::max(end, hi[l]);

  // streaming accumulators: T2 scaled by b^L is an integer
  std::uint64_t t1_stream = 0;
  BigInt t2_scaled = 0;
  std::vector<BigInt> bpow(L + 1, 1);
  for (unsigned i = 1; i <= L; ++i) bpow[i] = bpow[i - 1] * static_cast<unsigned long>(b);

  if (end >= start) {
    RotationOrbit orb(alpha, gamma, end, opt.precision_bits);
    orb.seek(start - 1);
    const double logb = std::log(static_cast<double>(b));
    for (std::uint64_t n = start; n <= end; ++n) {
      orb.advance();
      const double dist = orb.distance_double();
      const double p = opt.snap ? snapped_psi(psi, n, b) : psi(n);
      if (p <= 0 || dist <= 0) continue;  // ratio 0 or infinite: no bucket
      const double ratio = p / dist;
      if (ratio >= 1.0) continue;
      // b^{-l} <= ratio < b^{-(l-1)}
      long l = static_cast<long>(std::floor(-std::log(ratio) / logb)) + 1;
      if (std::pow(static_cast<double>(b), -static_cast<double>(l)) > ratio) ++l;
      if (l >= 2 && std::pow(static_cast<double>(b), -static_cast<double>(l - 1)) <= ratio) --l;
      if (l < 1 || l > static_cast<long>(L)) continue;
      if (n <= lo[l - 1] || n > hi[l - 1]) continue;
      ++d.S_ell_sizes[l - 1];
      ++t1_stream;
      t2_scaled += bpow[L - l];
    }
  }
  recompute_T(d.S_ell_sizes, b, d.T1, d.T2_covering, d.T2_noncovering);
  BigRat t2_from_stream(t2_scaled, bpow[L]);
  t2_from_stream.canonicalize();
  d.accumulators_consistent = t1_stream == d.T1 && t2_from_stream == d.T2_covering;

  // window sums
  d.pointwise_ok = psi_below_critical(psi);
  std::ostringstream ev;
  if (psi.kind() == Psi::Kind::IteratedLog || psi.kind() == Psi::Kind::Zero) {
    d.windows_asymptotic = true;
    for (double v = 4; v <= 512; v *= 2) d.windows.push_back({v, asymptotic_window(psi, v)});
  } else {
    // direct sums; a window N < n <= 2^N completes only when 2^N <= horizon
    for (unsigned N = 2; N < 64 && (std::uint64_t{1} << N) <= opt.horizon; ++N) {
      long double s = 0;
      for (std::uint64_t n = N + 1; n <= (std::uint64_t{1} << N); ++n) s += psi(n);
      d.windows.push_back({static_cast<double>(N), static_cast<double>(s)});
    }
  }
  if (d.windows.empty()) {
    d.classification = Regime::Indeterminate;
    ev << "horizon " << opt.horizon << " completes no window";
    d.evidence = ev.str();
    return d;
  }
  const double last = d.windows.back().value;
  ev << "window sum " << last << " at " << (d.windows_asymptotic ? "log log N = " : "N = ") << d.windows.back().v;
  if (last > opt.C && nondecreasing_tail(d.windows)) {
    d.classification = Regime::CoveringLike;
    ev << " exceeds C = " << opt.C << " and is increasing";
  } else if (d.pointwise_ok && last < opt.eps && nonincreasing_tail(d.windows)) {
    d.classification = Regime::NoncoveringLike;
    ev << " is below eps = " << opt.eps << ", decreasing, and psi <= 1/(n log n)";
  } else {
    d.classification = Regime::Indeterminate;
    ev << " meets neither rule";
  }
  d.evidence = ev.str();
  return d;
}

}  // namespace circov
