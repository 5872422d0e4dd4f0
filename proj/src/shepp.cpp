#include "circov/shepp.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "circov/errors.hpp"

namespace circov {

std::string to_string(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::Diverges:
      return "DIVERGES";
    case SeriesVerdict::Converges:
      return "CONVERGES";
    case SeriesVerdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

std::optional<SeriesVerdict> shepp_closed_form(const LengthSequence& lengths) {
  using F = LengthSequence::Family;
  switch (lengths.family()) {
    case F::Constant:
      // t_n = n^{-2} e^{n l}: diverges iff l > 0
      return lengths(1) > 0 ? SeriesVerdict::Diverges : SeriesVerdict::Converges;
    case F::Harmonic:
      // t_n ~ n^{c-2}
      return lengths.c() >= 1 ? SeriesVerdict::Diverges : SeriesVerdict::Converges;
    case F::SheppCritical: {
      const BigRat& c = lengths.c();
      if (c > 1) return SeriesVerdict::Diverges;
      if (c < 1) return SeriesVerdict::Converges;
      const double beta = lengths.beta(), a = lengths.a();
      if (beta <= 0) return SeriesVerdict::Diverges;
      // With c = 1: t_n ~ n^{-1} exp(-beta sum 1/(k (log k)^a)).
      if (a > 1) return SeriesVerdict::Diverges;                       // correction stays bounded
      if (a == 1) return beta <= 1 ? SeriesVerdict::Diverges : SeriesVerdict::Converges;  // ~ 1/(n (log n)^beta)
      return SeriesVerdict::Converges;  // exp(-beta (log n)^{1-a}/(1-a)) beats every power of log n
    }
    case F::Explicit:
      return std::nullopt;
  }
  return std::nullopt;
}

SheppReport shepp_terms(const LengthSequence& lengths, std::uint64_t N, const SheppOptions& opt) {
  using Float = boost::multiprecision::cpp_bin_float_50;
  if (N < 1) throw InvalidInput("shepp_terms needs N >= 1");
  SheppReport r;
  // log-spaced sample schedule
  std::vector<std::uint64_t> marks;
  const double lnN = std::log(static_cast<double>(N));
  for (std::size_t i = 0; i < opt.samples; ++i) {
    double x = std::exp(lnN * static_cast<double>(i) / static_cast<double>(opt.samples - 1));
    std::uint64_t n = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(x)));
    n = std::min(n, N);
    if (marks.empty() || n > marks.back()) marks.push_back(n);
  }
  Float S = 0;
  Float partial = 0;
  std::size_t next = 0;
  double prev_len = INFINITY;
  const double ln10 = std::log(10.0);
  for (std::uint64_t n = 1; n <= N; ++n) {
    const double l = lengths(n);
    S += l;
    if (next < marks.size() && n == marks[next]) {
      double logt = S.convert_to<double>() - 2.0 * std::log(static_cast<double>(n));
      r.n.push_back(n);
      r.log10_terms.push_back(logt / ln10);
      if (n >= 16) {
        if (l > prev_len) r.monotone_spot_check = false;
        prev_len = l;
      }
      ++next;
    }
    if (n <= 100000 || (n % 64) == 0) {
      // partial sum, subsampled beyond 1e5 with weight 64 as a cheap magnitude
      Float t = boost::multiprecision::exp(S - 2 * boost::multiprecision::log(Float(n)));
      partial += (n <= 100000) ? t : t * 64;
    }
  }
  r.log10_partial_sum = boost::multiprecision::log10(partial).convert_to<double>();

  // least-squares slope of log t against log n over the last decades
  const double lo = static_cast<double>(N) / std::pow(10.0, opt.decades);
  double sx = 0, sy = 0, sxx = 0, sxy = 0, k = 0;
  for (std::size_t i = 0; i < r.n.size(); ++i) {
    if (static_cast<double>(r.n[i]) < lo) continue;
    double x = std::log(static_cast<double>(r.n[i])), y = r.log10_terms[i] * ln10;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    k += 1;
  }
  if (k >= 2 && (k * sxx - sx * sx) > 0) {
    r.fitted_s = -(k * sxy - sx * sy) / (k * sxx - sx * sx);
    if (r.fitted_s <= opt.diverge_below)
      r.numeric = SeriesVerdict::Diverges;
    else if (r.fitted_s >= opt.converge_above)
      r.numeric = SeriesVerdict::Converges;
  }
  r.closed_form = shepp_closed_form(lengths);
  r.verdict = r.closed_form ? *r.closed_form : r.numeric;
  return r;
}

}  // namespace circov
