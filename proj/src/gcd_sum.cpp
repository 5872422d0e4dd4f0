#include "circov/gcd_sum.hpp"

#include <cmath>
#include <numeric>

#include "circov/arithmetic_functions.hpp"
#include "circov/errors.hpp"

namespace circov {

double eval_slow(SlowFunction f, double N) {
  switch (f) {
    case SlowFunction::One:
      return 1.0;
    case SlowFunction::Log:
      return std::log(N);
    case SlowFunction::LogLog:
      return std::log(std::log(N));
  }
  return 1.0;
}

SlowFunction parse_slow(const std::string& s) {
  if (s == "1" || s == "one") return SlowFunction::One;
  if (s == "log") return SlowFunction::Log;
  if (s == "loglog") return SlowFunction::LogLog;
  throw InvalidInput("slow function must be one of 1, log, loglog: " + s);
}

std::string to_string(SlowFunction f) {
  switch (f) {
    case SlowFunction::One:
      return "1";
    case SlowFunction::Log:
      return "log";
    case SlowFunction::LogLog:
      return "loglog";
  }
  return "?";
}

GcdSumResult gcd_sum(const SequenceSpec& seq, const GcdSumHypothesis& hyp, std::uint64_t N) {
  if (!seq.integer_valued()) throw InvalidInput("gcd_sum needs an integer-valued sequence");
  GcdSumResult out;
  out.N = N;
  if (N == 0) return out;
  const double Nd = static_cast<double>(N);
  const double loglogN = std::log(std::log(Nd));
  const double cap = std::pow(Nd, 1.0 - hyp.nu - hyp.eps * hyp.nu);

  // indices n_k for k = N+1 .. 2N
  std::vector<std::uint64_t> idx;
  if (hyp.index_rule == IndexRule::All) {
    for (std::uint64_t k = N + 1; k <= 2 * N; ++k) idx.push_back(k);
    out.index_density = eval_slow(hyp.f, 2 * Nd);
  } else {
    std::vector<std::uint64_t> ps = first_primes(2 * N);
    idx.assign(ps.begin() + static_cast<long>(N), ps.end());
    out.index_density = static_cast<double>(2 * N) * eval_slow(hyp.f, static_cast<double>(ps.back())) /
                        static_cast<double>(ps.back());
  }
  const std::uint64_t max_index = idx.back();
  std::vector<Term> all = seq.terms(1, max_index);
  std::vector<BigInt> q;
  q.reserve(idx.size());
  for (std::uint64_t n : idx) q.push_back(all[n - 1].integer());

  bool small = true;
  for (const auto& v : q)
    if (bit_length(v) > 63) small = false;
  std::vector<std::uint64_t> qs;
  std::vector<double> lq;
  for (const auto& v : q) {
    if (small) qs.push_back(to_u64(v));
    lq.push_back(log_abs(v));
  }

  const std::size_t K = q.size();
  long double total = 0.0L;
  out.cumulative.reserve(K);
  for (std::size_t m = 0; m < K; ++m) {
    long double row = 0.0L;
    for (std::size_t k = 0; k < m; ++k) {  // the diagonal contributes log(1) = 0
      double g_over_q;
      if (small) {
        std::uint64_t g = std::gcd(qs[m], qs[k]);
        g_over_q = static_cast<double>(g) / static_cast<double>(qs[m]);
      } else {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), q[m].get_mpz_t(), q[k].get_mpz_t());
        g_over_q = std::exp(log_abs(g) - lq[m]);
      }
      double lr = lq[m] - lq[k];
      double term = std::min(g_over_q * std::min(lr, loglogN), cap);
      row += term;
    }
    out.pairs += m + 1;
    total += row;
    out.cumulative.push_back(static_cast<double>(total));
  }
  out.sum = static_cast<double>(total);
  out.bound = std::pow(Nd, 2.0 - hyp.nu) / (eval_slow(hyp.psi, Nd) * std::pow(eval_slow(hyp.f, Nd), hyp.nu));
  out.ratio = out.sum / out.bound;
  return out;
}

GcdTrend gcd_sum_trend(const SequenceSpec& seq, const GcdSumHypothesis& hyp, const std::vector<std::uint64_t>& Ns,
                       double shape_log_power, double shape_power, double band, double slope_tolerance) {
  GcdTrend t;
  std::vector<double> lx, ly;
  for (std::uint64_t N : Ns) {
    GcdSumResult r = gcd_sum(seq, hyp, N);
    const double Nd = static_cast<double>(N);
    double shape = r.sum * std::pow(std::log(Nd), shape_log_power) / std::pow(Nd, shape_power);
    t.points.push_back(r);
    t.shape.push_back(shape);
    t.max_shape = std::max(t.max_shape, shape);
    lx.push_back(std::log(Nd));
    ly.push_back(std::log(shape));
  }
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    t.log_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  t.bounded = t.max_shape <= band && t.log_slope <= slope_tolerance;
  return t;
}

}  // namespace circov
