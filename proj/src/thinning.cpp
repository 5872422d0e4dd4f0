#include "circov/thinning.hpp"

#include <cmath>

#include "circov/errors.hpp"

namespace circov {

namespace {

RealDescriptor ratio_of(const Term& next, const Term& prev) {
  if (next.log_only || prev.log_only) throw InvalidInput("exact ratios need exactly known terms");
  return next.value * prev.value.inverse();
}

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  if (x.size() < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double den = n * sxx - sx * sx;
  return den == 0 ? 0.0 : (n * sxy - sx * sy) / den;
}

}  // namespace

ThinningResult thin_to_ratio(const std::vector<Term>& prefix, const BigRat& r_target) {
  if (r_target <= 1) throw InvalidInput("target ratio must exceed 1");
  if (prefix.size() < 2) throw InvalidInput("thinning needs at least two terms");
  ThinningResult out;
  const RealDescriptor one = RealDescriptor::rational(BigRat(1));
  for (std::size_t i = 1; i < prefix.size(); ++i) {
    RealDescriptor r = ratio_of(prefix[i], prefix[i - 1]);
    if (r.compare(one) <= 0)
      throw InvalidInput("ratio hypothesis violated: q_" + std::to_string(i + 1) + "/q_" + std::to_string(i) + " <= 1");
    if (i == 1 || r.compare(out.observed_ratio) < 0) out.observed_ratio = r;
  }
  const RealDescriptor target = RealDescriptor::rational(r_target);
  std::uint64_t s = 1;
  RealDescriptor power = out.observed_ratio;
  while (power.compare(target) <= 0) {
    power = power * out.observed_ratio;
    ++s;
  }
  out.stride = s;
  for (std::uint64_t N = 1; N * s <= prefix.size(); ++N) {
    out.terms.push_back(prefix[N * s - 1]);
    out.source_index.push_back(N * s);
  }
  for (std::size_t i = 1; i < out.terms.size(); ++i) {
    if (ratio_of(out.terms[i], out.terms[i - 1]).compare(target) <= 0)
      throw std::logic_error("thinned ratio not above target at output index " + std::to_string(i + 1));
  }
  return out;
}

namespace {

// floor(100 log10 N), decided exactly.
std::uint64_t skip_length(std::uint64_t N) {
  BigInt p = ipow(to_bigint(N), 100);
  std::uint64_t s = 0;
  BigInt ten = 10;
  while (ten <= p) {
    ten *= 10;
    ++s;
  }
  return s;
}

}  // namespace

std::uint64_t separation_input_length(const CoveringSchedule& schedule, unsigned levels) {
  if (levels == 0) return 0;
  std::uint64_t total = schedule.cutoff(0);
  for (unsigned n = 1; n < levels; ++n) total += skip_length(schedule.cutoff(n)) + schedule.block_size(n);
  return total;
}

SeparationResult separate_levels(const std::vector<Term>& prefix, const CoveringSchedule& schedule, unsigned levels) {
  SeparationResult out;
  if (levels == 0) {
    out.terms = prefix;
    for (std::size_t i = 0; i < prefix.size(); ++i) out.source_index.push_back(i + 1);
    out.verified = true;
    return out;
  }
  const RealDescriptor ten = RealDescriptor::rational(BigRat(10));
  for (std::size_t i = 1; i < prefix.size(); ++i) {
    if (ratio_of(prefix[i], prefix[i - 1]).compare(ten) < 0)
      throw InvalidInput("consecutive ratio below 10 at input index " + std::to_string(i + 1));
  }
  const std::uint64_t need = separation_input_length(schedule, levels);
  if (prefix.size() < need)
    throw InvalidInput("separation needs " + std::to_string(need) + " input terms, got " + std::to_string(prefix.size()));
  std::uint64_t cursor = 0;  // input terms consumed
  for (unsigned n = 0; n < levels; ++n) {
    std::uint64_t skip = n == 0 ? 0 : skip_length(schedule.cutoff(n));
    out.skips.push_back(skip);
    cursor += skip;
    for (std::uint64_t k = 0; k < schedule.block_size(n); ++k) {
      out.terms.push_back(prefix[cursor]);
      out.source_index.push_back(cursor + 1);
      ++cursor;
    }
    out.level_end.push_back(out.terms.size());
  }
  // b_N >= N^100 b_M for M <= N_n < N; the binding M is N_n itself.
  out.verified = true;
  for (unsigned n = 0; n + 1 < levels && out.verified; ++n) {
    const std::uint64_t M = out.level_end[n];
    if (M == 0) continue;
    const RealDescriptor& bM = out.terms[M - 1].value;
    for (std::uint64_t N = M + 1; N <= out.terms.size(); ++N) {
      RealDescriptor rhs = bM * RealDescriptor::rational(BigRat(ipow(to_bigint(N), 100)));
      if (out.terms[N - 1].value.compare(rhs) < 0) {
        out.verified = false;
        out.violation = std::make_pair(M, N);
        break;
      }
    }
  }
  return out;
}

GapProfile gap_profile(const std::vector<Term>& prefix, double eps, double phi_tolerance) {
  if (prefix.size() < 2) throw InvalidInput("gap profile needs N >= 2");
  GapProfile g;
  g.eps = eps;
  const std::size_t N = prefix.size() - 1;  // number of ratios
  g.min_scaled_gap = INFINITY;
  g.tail_scaled_gap = INFINITY;
  double min_gap = INFINITY;
  for (std::size_t i = 0; i < N; ++i) {
    double d = std::expm1(prefix[i + 1].log() - prefix[i].log());
    g.ratio_minus_one.push_back(d);
    g.phi.push_back(1.0 / d);
    const double n = static_cast<double>(i + 1);
    double scaled = d * std::pow(n, 1.0 - eps);
    g.min_scaled_gap = std::min(g.min_scaled_gap, scaled);
    if (i >= N / 2) g.tail_scaled_gap = std::min(g.tail_scaled_gap, scaled);
    min_gap = std::min(min_gap, d);
  }
  std::vector<double> lx, lg, lp;
  const std::size_t from = N >= 20 ? N / 10 : 0;
  for (std::size_t i = from; i < N; ++i) {
    lx.push_back(std::log(static_cast<double>(i + 1)));
    lg.push_back(std::log(g.ratio_minus_one[i]));
    lp.push_back(std::log(g.phi[i]));
  }
  g.gap_decay_exponent = fit_slope(lx, lg);
  g.phi_exponent = fit_slope(lx, lp);
  g.hadamard = min_gap > 0 && g.gap_decay_exponent > -phi_tolerance;
  g.gap_condition = g.tail_scaled_gap > 1.0;
  g.phi_subpolynomial = g.phi_exponent <= phi_tolerance;
  return g;
}

}  // namespace circov
