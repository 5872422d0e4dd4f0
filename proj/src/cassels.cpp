#include "circov/cassels.hpp"

#include <algorithm>
#include <cmath>

#include "circov/errors.hpp"
#include "circov/rotation.hpp"

namespace circov {

ProductMinima product_minima(const CasselsInstance& inst) {
  if (inst.N < 2) throw InvalidInput("product_minima needs N >= 2");
  RotationOrbit oa(inst.alpha, inst.gamma, inst.N, inst.precision_bits);
  RotationOrbit ob(inst.beta, inst.delta, inst.N, inst.precision_bits);
  oa.advance();
  ob.advance();
  ProductMinima out;
  bool have = false;
  for (std::uint64_t n = 2; n <= inst.N; ++n) {
    oa.advance();
    ob.advance();
    ProductRecord r;
    r.n = n;
    r.dist_alpha = oa.distance_double();
    r.dist_beta = ob.distance_double();
    const long double nn = static_cast<long double>(n);
    const long double p = nn * r.dist_alpha * r.dist_beta;
    r.product = static_cast<double>(p);
    r.normalized = static_cast<double>(p * std::log(nn));
    if (!have) {
      out.minimum = out.min_plain = r;
      out.records.push_back(r);
      have = true;
      continue;
    }
    if (r.normalized < out.records.back().normalized) {
      out.records.push_back(r);
      out.minimum = r;
    }
    if (r.product < out.min_plain.product) out.min_plain = r;
  }
  return out;
}

InhomApprox best_inhom_approx(const RealDescriptor& alpha, const RealDescriptor& gamma, std::uint64_t A,
                              unsigned precision_bits) {
  if (A < 1) throw InvalidInput("best_inhom_approx needs A >= 1");
  RotationOrbit orb(alpha, gamma, 2 * A, precision_bits);
  orb.seek(A);
  ScaledInterval best;
  std::uint64_t best_n = 0;
  for (std::uint64_t n = A + 1; n <= 2 * A; ++n) {
    orb.advance();
    ScaledInterval d = orb.distance();
    if (best_n == 0) {
      best = d;
      best_n = n;
      continue;
    }
    if (d.hi < best.lo) {
      best = d;
      best_n = n;
    } else if (d.lo > best.hi) {
      continue;
    } else if (!(d.exact() && best.exact())) {
      // overlapping enclosures: the order is undecided at this precision
      throw PrecisionExhausted("cannot order ||n alpha - gamma|| for n = " + std::to_string(best_n) + " and " +
                               std::to_string(n) + " at " + std::to_string(precision_bits) + " bits");
    }
  }
  InhomApprox r;
  r.n = best_n;
  BigRat v(best.lo, best.den);
  v.canonicalize();
  r.distance = v.get_d();
  r.distance_decimal = best.exact() ? to_decimal(v, 30) : to_decimal(v, 30) + "...";
  return r;
}

std::vector<InhomApprox> chain_best_inhom(const RealDescriptor& alpha, const RealDescriptor& gamma, std::uint64_t A0,
                                          unsigned blocks, unsigned precision_bits) {
  std::vector<InhomApprox> out;
  std::uint64_t A = A0;
  for (unsigned k = 0; k < blocks; ++k) {
    out.push_back(best_inhom_approx(alpha, gamma, A, precision_bits));
    A *= 2;
  }
  return out;
}

std::vector<double> orbit_distances(const RealDescriptor& alpha, const RealDescriptor& gamma, std::uint64_t N,
                                    unsigned precision_bits) {
  std::vector<double> d(N + 1, 0.0);
  RotationOrbit orb(alpha, gamma, N, precision_bits);
  for (std::uint64_t n = 1; n <= N; ++n) {
    orb.advance();
    d[n] = orb.distance_double();
  }
  return d;
}

DeltaCheck uniform_delta_check(const std::vector<double>& alpha_dist, const RealDescriptor& beta, std::uint64_t N,
                               double C, std::uint64_t m, std::uint64_t n_min, unsigned precision_bits) {
  if (m == 0 || m > (std::uint64_t{1} << 20)) throw InvalidInput("delta grid size must lie in [1, 2^20]");
  if (alpha_dist.size() < N + 1) throw InvalidInput("alpha distances shorter than N");
  if (!(C > 0)) throw InvalidInput("C must be positive");
  n_min = std::max<std::uint64_t>(n_min, 2);
  DeltaCheck r;
  r.m = m;
  r.n_min = n_min;
  r.first_n.assign(m, 0);
  std::uint64_t unresolved = m;
  RotationOrbit ob(beta, RealDescriptor(), N, precision_bits);
  if (n_min > 1) ob.seek(n_min - 1);
  const long double M = static_cast<long double>(m);
  for (std::uint64_t n = n_min; n <= N && unresolved > 0; ++n) {
    ob.advance();
    const long double a = alpha_dist[n];
    const long double nn = static_cast<long double>(n);
    const long double w = nn * std::log(nn) * a;
    // ||n beta - delta|| <= rho covers every delta within rho of {n beta}
    long double rho = w > 0 ? static_cast<long double>(C) / w : 1.0L;
    std::int64_t lo, hi;
    if (rho >= 0.5L) {
      lo = 0;
      hi = static_cast<std::int64_t>(m) - 1;
    } else {
      const long double c = ob.position_double();
      lo = static_cast<std::int64_t>(std::ceil((c - rho) * M));
      hi = static_cast<std::int64_t>(std::floor((c + rho) * M));
      if (hi - lo + 1 > static_cast<std::int64_t>(m)) {
        lo = 0;
        hi = static_cast<std::int64_t>(m) - 1;
      }
    }
    for (std::int64_t i = lo; i <= hi; ++i) {
      std::int64_t k = ((i % static_cast<std::int64_t>(m)) + static_cast<std::int64_t>(m)) % static_cast<std::int64_t>(m);
      if (r.first_n[k] == 0) {
        r.first_n[k] = n;
        --unresolved;
      }
    }
  }
  r.failures = unresolved;
  for (std::uint64_t i = 0; i < m; ++i) {
    if (r.first_n[i] == 0) {
      r.worst_index = i;
      r.worst_n = 0;
      break;
    }
    if (r.first_n[i] > r.worst_n) {
      r.worst_n = r.first_n[i];
      r.worst_index = i;
    }
  }
  return r;
}

DeltaCheck uniform_delta_check(const RealDescriptor& alpha, const RealDescriptor& gamma, const RealDescriptor& beta,
                               std::uint64_t N, double C, std::uint64_t m, std::uint64_t n_min,
                               unsigned precision_bits) {
  return uniform_delta_check(orbit_distances(alpha, gamma, N, precision_bits), beta, N, C, m, n_min, precision_bits);
}

LengthSequence random_model_lengths(const RealDescriptor& alpha, const RealDescriptor& gamma, const Psi& psi,
                                    std::uint64_t N, unsigned precision_bits) {
  std::vector<double> d = orbit_distances(alpha, gamma, N, precision_bits);
  std::vector<double> l(N);
  for (std::uint64_t n = 1; n <= N; ++n) {
    const double p = psi(n);
    l[n - 1] = d[n] > 0 ? std::min(1.0, p / d[n]) : (p > 0 ? 1.0 : 0.0);
  }
  return LengthSequence::explicit_values(std::move(l), "psi/||n alpha - gamma||");
}

DvoretzkyTrial random_model_trial(const RealDescriptor& alpha, const RealDescriptor& gamma, const Psi& psi,
                                  std::uint64_t N, Rng& rng, unsigned precision_bits) {
  return dvoretzky_trial(random_model_lengths(alpha, gamma, psi, N, precision_bits), N, rng);
}

}  // namespace circov
