#include "circov/dvoretzky.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "circov/errors.hpp"

namespace circov {

DvoretzkyTrial dvoretzky_trial(const LengthSequence& lengths, std::uint64_t N, Rng& rng, bool record_steps) {
  DvoretzkyTrial t;
  t.uncovered = ArcSet::full_circle();
  if (record_steps) t.measures.reserve(N);
  for (std::uint64_t n = 1; n <= N; ++n) {
    const std::uint64_t center = rng();
    t.uncovered.subtract(Arc::centered(center, lengths(n)));
    t.arcs_used = n;
    if (record_steps) t.measures.push_back(t.uncovered.measure());
    if (t.uncovered.empty()) {
      if (record_steps) t.measures.resize(N, 0.0);
      break;
    }
  }
  return t;
}

ExpectedUncovered expected_uncovered(const LengthSequence& lengths, std::uint64_t N, std::uint64_t exact_limit) {
  using Float = boost::multiprecision::cpp_bin_float_100;
  ExpectedUncovered out;
  bool rational = N <= exact_limit;
  for (std::uint64_t n = 1; rational && n <= N; ++n) rational = lengths.exact(n).has_value();
  if (rational) {
    BigRat prod = 1;
    for (std::uint64_t n = 1; n <= N; ++n) {
      prod *= BigRat(1) - *lengths.exact(n);
      if (prod == 0) break;
    }
    prod.canonicalize();
    out.exact = prod;
    out.value = prod.get_d();
    Float f = Float(prod.get_num().get_str()) / Float(prod.get_den().get_str());
    out.decimal = f.str(40);
    return out;
  }
  Float log_sum = 0;
  bool zero = false;
  for (std::uint64_t n = 1; n <= N; ++n) {
    double l = lengths(n);
    if (l >= 1.0) {
      zero = true;
      break;
    }
    log_sum += boost::multiprecision::log1p(Float(-l));
  }
  Float v = zero ? Float(0) : boost::multiprecision::exp(log_sum);
  out.value = v.convert_to<double>();
  out.decimal = v.str(40);
  return out;
}

GridCoverage grid_covered_infinitely_often(const LengthSequence& lengths,
                                           const std::function<std::uint64_t(std::uint64_t)>& center,
                                           std::uint64_t N, std::uint64_t m) {
  if (m == 0 || m > (1ULL << 24)) throw InvalidInput("grid resolution must lie in 1..2^24");
  GridCoverage g;
  g.counts.assign(m, 0);
  std::vector<std::int32_t> diff(m + 1);
  // Grid point i/m lies in [a, b) (units 2^-64, 0 <= a < b <= 2^64) iff
  // a m <= i 2^64 < b m, i.e. ceil(a m / 2^64) <= i < ceil(b m / 2^64).
  auto ceil_scaled = [m](u128 a) -> std::uint64_t {
    u128 v = a * m;
    return static_cast<std::uint64_t>((v >> 64) + ((v & (kCircle - 1)) != 0 ? 1 : 0));
  };
  auto mark = [&](u128 a, u128 b) {
    std::uint64_t i0 = ceil_scaled(a), i1 = ceil_scaled(b);
    if (i0 < i1) {
      diff[i0] += 1;
      diff[i1] -= 1;
    }
  };
  for (std::uint64_t lo = 1; lo < N; lo *= 2) {
    const std::uint64_t hi = std::min(2 * lo, N);  // window (lo, hi]
    std::fill(diff.begin(), diff.end(), 0);
    for (std::uint64_t n = lo + 1; n <= hi; ++n) {
      Arc a = Arc::centered(center(n), lengths(n));
      if (a.length == 0) continue;
      if (a.length >= kCircle) {
        mark(0, kCircle);
        continue;
      }
      const u128 s = a.start, e = s + a.length;
      if (e <= kCircle) {
        mark(s, e);
      } else {
        mark(s, kCircle);
        mark(0, e - kCircle);
      }
    }
    std::int64_t run = 0;
    for (std::uint64_t i = 0; i < m; ++i) {
      run += diff[i];
      if (run > 0) ++g.counts[i];
    }
    ++g.windows;
    if (hi == N) break;
  }
  g.min_count = m ? *std::min_element(g.counts.begin(), g.counts.end()) : 0;
  return g;
}

}  // namespace circov
