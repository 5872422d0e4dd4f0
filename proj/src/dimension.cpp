#include "circov/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "circov/errors.hpp"
#include "circov/rng.hpp"

namespace circov {

namespace {

constexpr u128 kOne = static_cast<u128>(1) << 64;

u128 ipow_u128(std::uint64_t n, unsigned e) {
  u128 v = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (v > (~static_cast<u128>(0)) / n) return ~static_cast<u128>(0);
    v *= n;
  }
  return v;
}

struct Fit {
  double slope = 0, intercept = 0, rms = 0;
  bool ok = false;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  Fit f;
  const double k = static_cast<double>(x.size());
  if (x.size() < 2) return f;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = k * sxx - sx * sx;
  if (den <= 0) return f;
  f.slope = (k * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / k;
  double r2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double e = y[i] - (f.intercept + f.slope * x[i]);
    r2 += e * e;
  }
  f.rms = std::sqrt(r2 / k);
  f.ok = true;
  return f;
}

}  // namespace

std::uint64_t limsup_radius_units(std::uint64_t n, double nu) {
  if (n == 0) throw InvalidInput("radius needs n >= 1");
  if (nu == std::floor(nu) && nu >= 1 && nu <= 16) {
    u128 p = ipow_u128(n, static_cast<unsigned>(nu));
    if (p == 1) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(kOne / p);
  }
  long double r = std::pow(static_cast<long double>(n), -static_cast<long double>(nu));
  long double u = std::floor(std::ldexp(r, 64));
  if (u >= std::ldexp(1.0L, 64)) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(u);
}

std::uint64_t box_hits_centers(const std::vector<std::uint64_t>& centers, std::uint64_t first_index, double nu,
                               const DigitSet& G, unsigned j) {
  const u128 bj = G.cells(j);
  // closed ranges of cylinder indices touched by arcs
  std::vector<std::pair<u128, u128>> ranges;
  ranges.reserve(centers.size() + 8);
  auto cyl = [&](u128 pos) { return pos * bj >> 64; };  // pos < 2^64
  auto add_linear = [&](u128 lo, u128 hi) {             // [lo, hi) inside [0, 2^64)
    if (lo >= hi) return;
    ranges.push_back({cyl(lo), cyl(hi - 1)});
  };
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const std::uint64_t n = first_index + i;
    const u128 r = limsup_radius_units(n, nu);
    if (2 * r >= kOne) {
      ranges.push_back({0, bj - 1});
      continue;
    }
    const u128 c = centers[i];
    // arc [c - r, c + r) on the circle of circumference 2^64
    if (c >= r && c + r <= kOne) {
      add_linear(c - r, c + r);
    } else if (c < r) {
      add_linear(0, c + r);
      add_linear(kOne - (r - c), kOne);
    } else {
      add_linear(c - r, kOne);
      add_linear(0, c + r - kOne);
    }
  }
  if (ranges.empty()) return 0;
  std::sort(ranges.begin(), ranges.end());
  u128 total = 0;
  u128 a = ranges[0].first, b = ranges[0].second;
  auto flush = [&] { total += G.count_admissible_below(b + 1, j) - G.count_admissible_below(a, j); };
  for (std::size_t i = 1; i < ranges.size(); ++i) {
    if (ranges[i].first <= b + 1) {
      b = std::max(b, ranges[i].second);
    } else {
      flush();
      a = ranges[i].first;
      b = ranges[i].second;
    }
  }
  flush();
  return static_cast<std::uint64_t>(total);
}

std::uint64_t box_hits(const LimsupConfig& cfg, const DigitSet& G, unsigned j) {
  if (cfg.N1 <= cfg.N0) return 0;
  std::vector<std::uint64_t> c = fractional_points(cfg.seq, cfg.x, cfg.N0 + 1, cfg.N1, 64);
  return box_hits_centers(c, cfg.N0 + 1, cfg.nu, G, j);
}

std::vector<unsigned> depths_for(const DigitSet& G, unsigned dyadic_min, unsigned dyadic_max) {
  std::vector<unsigned> out;
  const double lb = std::log2(static_cast<double>(G.base()));
  for (unsigned j = 1; j * lb <= dyadic_max + 1e-9; ++j)
    if (j * lb >= dyadic_min - 1e-9) out.push_back(j);
  return out;
}

DimensionEstimate estimate_dimension(const SequenceSpec& seq, const DigitSet& G, const DimensionOptions& opt) {
  if (!(opt.nu >= 1.0)) throw InvalidInput("estimate_dimension needs nu >= 1");
  if (opt.seeds < 5) throw InvalidInput("estimate_dimension needs at least 5 seeds");
  if (!(opt.window > 1.0)) throw InvalidInput("tail window factor must exceed 1");
  DimensionEstimate est;
  const std::vector<unsigned> depths = depths_for(G, opt.dyadic_min, opt.dyadic_max);
  if (depths.size() < 3) throw InvalidInput("estimate_dimension needs at least 3 scales in the depth range");
  est.depth_min = depths.front();
  est.depth_max = depths.back();
  const double logb = std::log(static_cast<double>(G.base()));

  std::uint64_t Nmax = 0;
  for (unsigned j : depths) {
    ScaleCount sc;
    sc.depth = j;
    sc.log_scale = j * logb;
    const double top = std::floor(std::pow(static_cast<double>(G.base()), j / opt.nu) + 1e-9);
    sc.N1 = static_cast<std::uint64_t>(top);
    sc.N0 = static_cast<std::uint64_t>(std::floor(top / opt.window));
    Nmax = std::max(Nmax, sc.N1);
    est.scales.push_back(sc);
  }
  const unsigned bits = required_precision(seq, Nmax, 64);

  for (std::size_t s = 0; s < opt.seeds; ++s) {
    Rng rng = make_rng(opt.master_seed, s);
    UnitPoint x = UnitPoint::random(rng, bits);
    for (auto& sc : est.scales) {
      LimsupConfig cfg{seq, x, opt.nu, sc.N0, sc.N1};
      sc.counts.push_back(box_hits(cfg, G, sc.depth));
    }
  }

  std::vector<double> px, py;
  for (std::size_t s = 0; s < opt.seeds; ++s) {
    std::vector<double> x, y;
    for (const auto& sc : est.scales) {
      if (sc.counts[s] == 0) continue;
      x.push_back(sc.log_scale);
      y.push_back(std::log(static_cast<double>(sc.counts[s])));
    }
    px.insert(px.end(), x.begin(), x.end());
    py.insert(py.end(), y.begin(), y.end());
    Fit f = least_squares(x, y);
    if (f.ok) est.seed_slopes.push_back(f.slope);
  }
  if (px.empty()) {
    est.empty = true;
    est.evidence = "all box counts are zero over depths " + std::to_string(est.depth_min) + ".." +
                   std::to_string(est.depth_max) + " and " + std::to_string(opt.seeds) + " seeds";
    return est;
  }
  Fit pooled = least_squares(px, py);
  est.intercept = pooled.intercept;
  est.residual = pooled.rms;
  if (est.seed_slopes.empty()) {
    est.empty = true;
    est.evidence = "fewer than two nonzero scales in every seed";
    return est;
  }
  const double k = static_cast<double>(est.seed_slopes.size());
  est.slope = std::accumulate(est.seed_slopes.begin(), est.seed_slopes.end(), 0.0) / k;
  double v = 0;
  for (double sl : est.seed_slopes) v += (sl - est.slope) * (sl - est.slope);
  est.slope_spread = k > 1 ? std::sqrt(v / (k - 1)) : 0.0;
  return est;
}

}  // namespace circov
