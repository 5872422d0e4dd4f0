// Acceptance runner. Usage: circov_acceptance [criterion ...]
// With no arguments every criterion runs. Prints one PASS/FAIL line each and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "circov/bohr.hpp"
#include "circov/cassels.hpp"
#include "circov/dimension.hpp"
#include "circov/dvoretzky.hpp"
#include "circov/gcd_sum.hpp"
#include "circov/local_count.hpp"
#include "circov/parallel.hpp"
#include "circov/psi_regime.hpp"
#include "circov/shepp.hpp"
#include "circov/tree_engine.hpp"

using namespace circov;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// 1. Closed-form Shepp verdicts for the four reference families.
Outcome criterion1() {
  struct Case {
    const char* family;
    SeriesVerdict expect;
  };
  const Case cases[] = {{"harmonic:1", SeriesVerdict::Diverges},
                        {"harmonic:0.9", SeriesVerdict::Converges},
                        {"shepp:1,1,1", SeriesVerdict::Diverges},
                        {"shepp:1,1,0.5", SeriesVerdict::Converges}};
  Outcome o{true, ""};
  for (const auto& c : cases) {
    auto v = shepp_closed_form(LengthSequence::parse(c.family));
    const bool ok = v && *v == c.expect;
    o.pass = o.pass && ok;
    o.detail += std::string(c.family) + "=" + (v ? to_string(*v) : "none") + " ";
  }
  return o;
}

// 2. Monte Carlo mean of the uncovered measure against the exact product.
Outcome criterion2() {
  const std::uint64_t N = 10000, T = 10000;
  Outcome o{true, ""};
  for (int ci = 0; ci < 2; ++ci) {
    const BigRat c = ci == 0 ? BigRat(1, 2) : BigRat(3, 2);
    auto L = LengthSequence::harmonic(c);
    auto m = parallel_map(T, threads(), [&](std::size_t t) {
      Rng rng = make_rng(2000 + ci, t);
      return dvoretzky_trial(L, N, rng).uncovered.measure();
    });
    double s = 0, s2 = 0;
    for (double v : m) {
      s += v;
      s2 += v * v;
    }
    const double mean = s / T;
    const double se = std::sqrt(std::max(0.0, s2 / T - mean * mean) / (T - 1));
    const double exact = expected_uncovered(L, N).value;
    const double z = se > 0 ? std::fabs(mean - exact) / se : (mean == exact ? 0.0 : INFINITY);
    o.pass = o.pass && z <= 4.0;
    o.detail += "c=" + to_string(c) + " mean=" + fmt(mean) + " exact=" + fmt(exact) + " z=" + fmt(z) + " ";
  }
  return o;
}

// 3. Frequency of A(n, n) for i.i.d. points at L = 1013 against the union bound.
Outcome criterion3() {
  const std::uint64_t T = 200;
  CoveringSchedule sched(BigRat(1013));
  Outcome o{true, ""};
  for (int n : {8, 10, 12}) {
    auto hits = parallel_map(T, threads(), [&](std::size_t t) {
      Rng rng = make_rng(3000 + n, t);
      return event_A_trial(TreeSource::iid(), sched, n, n, rng) ? 1 : 0;
    });
    double k = 0;
    for (int h : hits) k += h;
    const double p = k / T;
    const double se = std::sqrt(p * (1 - p) / T);
    const auto bound = iid_event_bound(n, n, BigRat(1013));
    const bool ok = p <= bound.value + 4 * se;
    o.pass = o.pass && ok;
    o.detail += "n=" + std::to_string(n) + " freq=" + fmt(p) + " log10bound=" + fmt(bound.log10) + " ";
  }
  return o;
}

// 4. Thick survival through level 24 at L = 1/4096, base 1.2.
Outcome criterion4() {
  const std::uint64_t T = 200;
  CoveringSchedule sched(BigRat(1, 4096));
  Outcome o{true, ""};
  double prev = -1;
  for (int n0 : {8, 12, 16}) {
    auto s = parallel_map(T, threads(), [&](std::size_t t) {
      Rng rng = make_rng(4000 + n0, t);
      return thick_survival_trial(TreeSource::iid(), sched, n0, 24, 1.2, rng).survived ? 1 : 0;
    });
    double k = 0;
    for (int v : s) k += v;
    const double f = k / T;
    o.pass = o.pass && f >= prev;
    if (n0 == 16) o.pass = o.pass && f > 0.9;
    prev = f;
    o.detail += "n0=" + std::to_string(n0) + " survival=" + fmt(f) + " ";
  }
  return o;
}

// 5. Bohr-set bracket and the shift inequality on exact counts.
Outcome criterion5() {
  Outcome o{true, ""};
  for (const char* a : {"golden", "sqrt2-1"}) {
    const RealDescriptor alpha = RealDescriptor::parse(a);
    Rng rng = make_rng(5000, a[0]);
    int made = 0, bracket_ok = 0, shift_ok = 0, tries = 0;
    while (made < 50 && tries < 100000) {
      ++tries;
      BohrQuery q;
      q.alpha = alpha;
      q.N = 50 + rng() % 20000;
      // eps = k / 2^20, drawn until the preconditions hold
      q.eps = BigRat(static_cast<long>(1 + rng() % (1 << 18)), 1L << 20);
      q.eps.canonicalize();
      if (!bohr_preconditions(q).ok()) continue;
      ++made;
      const auto br = bohr_bracket(q);
      const BigInt c0 = to_bigint(bohr_count(q));
      if (br.lower <= c0 && BigRat(c0) <= br.upper) ++bracket_ok;

      BohrQuery g = q;
      g.gamma = RealDescriptor::rational(BigRat(static_cast<long>(rng() % 1000003), 1000003));
      BohrQuery d = q;
      d.eps = 2 * q.eps;
      if (bohr_count(g) <= bohr_count(d) + 1) ++shift_ok;
    }
    o.pass = o.pass && made == 50 && bracket_ok == 50 && shift_ok == 50;
    o.detail += std::string(a) + ": instances=" + std::to_string(made) + " bracket=" + std::to_string(bracket_ok) +
                " shift=" + std::to_string(shift_ok) + " ";
  }
  return o;
}

// 6. Box-counting slopes and the empty regime.
Outcome criterion6() {
  struct Case {
    const char* seq;
    double nu;
    const char* G;
    double target, tol;
  };
  const Case cases[] = {{"pow:2", 1.0, "full", 1.0, 0.1},
                        {"pow:2", 2.0, "full", 0.5, 0.1},
                        {"pow:2", 1.0, "cantor", 0.631, 0.12},
                        {"poly:0,0,1", 1.0, "full", 1.0, 0.1}};
  Outcome o{true, ""};
  for (const auto& c : cases) {
    DimensionOptions opt;
    opt.nu = c.nu;
    opt.seeds = 8;
    opt.dyadic_min = 8;
    opt.dyadic_max = 18;
    opt.master_seed = 6000;
    auto est = estimate_dimension(SequenceSpec::parse(c.seq), DigitSet::parse(c.G), opt);
    const bool ok = !est.empty && std::fabs(est.slope - c.target) <= c.tol;
    o.pass = o.pass && ok;
    o.detail += std::string(c.seq) + "/nu=" + fmt(c.nu) + "/" + c.G + " slope=" + fmt(est.slope) + " ";
  }

  // Empty regime: nu = 3 on the Cantor set. Tail (N0, 2 N0], base-3 depth
  // matching the dyadic depth floor(nu log2 N0).
  const DigitSet G = DigitSet::cantor();
  const auto seq = SequenceSpec::power(BigInt(2));
  const double nu = 3.0;
  bool decreasing = true, vanish = true;
  std::string counts;
  for (std::size_t s = 0; s < 8; ++s) {
    std::uint64_t prev = UINT64_MAX;
    for (unsigned e : {8u, 10u, 12u}) {
      const std::uint64_t N0 = std::uint64_t{1} << e;
      const unsigned dyadic = static_cast<unsigned>(std::floor(nu * e));
      const unsigned j = static_cast<unsigned>(std::lround(dyadic * std::log(2.0) / std::log(3.0)));
      Rng rng = make_rng(6100, s);
      LimsupConfig cfg;
      cfg.seq = seq;
      cfg.nu = nu;
      cfg.N0 = N0;
      cfg.N1 = 2 * N0;
      cfg.x = UnitPoint::random(rng, required_precision(seq, cfg.N1));
      const std::uint64_t h = box_hits(cfg, G, j);
      decreasing = decreasing && h <= prev;
      prev = h;
      counts += std::to_string(h) + (e == 12 ? ";" : ",");
    }
    vanish = vanish && prev == 0;
  }
  o.pass = o.pass && decreasing && vanish;
  o.detail += "empty-regime hits per seed (N0=2^8,2^10,2^12): " + counts;
  return o;
}

// 7. gcd sums for squares of primes against the N^{2-d}/(log N)^d shape, d = 2.
Outcome criterion7() {
  GcdSumHypothesis h;
  std::vector<std::uint64_t> Ns;
  for (unsigned e = 8; e <= 12; ++e) Ns.push_back(std::uint64_t{1} << e);
  // band: the shape must stay within a fixed constant; slope: no upward drift
  // beyond what a slowly varying factor can produce on this window.
  const double band = 1.0, slope_tolerance = 0.25;
  auto tr = gcd_sum_trend(SequenceSpec::prime_power(2), h, Ns, 2.0, 0.0, band, slope_tolerance);
  Outcome o{tr.bounded, ""};
  for (std::size_t i = 0; i < Ns.size(); ++i) o.detail += "N=" + std::to_string(Ns[i]) + ":" + fmt(tr.shape[i]) + " ";
  o.detail += "slope=" + fmt(tr.log_slope);
  return o;
}

// 8. Exhaustive local counting sums at L = 4 for q_n = 10^n.
Outcome criterion8() {
  const auto seq = SequenceSpec::power(BigInt(10));
  CoveringSchedule sched(BigRat(4));
  Outcome o{true, ""};
  std::uint64_t instances = 0, ok = 0, nonzero = 0;
  for (unsigned j : {2u, 3u, 4u}) {
    Rng rng = make_rng(8000, j);
    const auto first = sched.cutoff(j - 1) + 1, last = sched.cutoff(j);
    const auto q = generate_integers(seq, last);
    for (int b = 0; b < 20; ++b) {
      LocalCountInstance inst;
      inst.j = j;
      inst.schedule = sched;
      if (b < 10) {
        // B near a lattice value k q_m - h q_l so that solutions exist
        const auto m = first + rng() % (last - first + 1), l = first + rng() % (last - first + 1);
        const long k = 1 + static_cast<long>(rng() % (1u << (2 * j))), hh = 1 + static_cast<long>(rng() % (1u << (2 * j)));
        inst.B = BigRat(BigInt(k) * q[m - 1] - BigInt(hh) * q[l - 1] + BigInt(static_cast<long>(rng() % 1000)));
      } else {
        BigInt span = q[last - 1] * BigInt(1L << (2 * j));
        BigInt r = BigInt(static_cast<unsigned long>(rng()));
        inst.B = BigRat(r % span - span / 2);
      }
      auto res = local_count_sum(inst, seq);
      ++instances;
      ok += res.within_bound;
      nonzero += res.solutions > 0;
    }
  }
  o.pass = ok == instances;
  o.detail = "within bound " + std::to_string(ok) + "/" + std::to_string(instances) + ", instances with solutions " +
             std::to_string(nonzero);
  return o;
}

// 9. Uniform-in-delta Cassels check for random beta.
Outcome criterion9() {
  const std::uint64_t N = 1000000, m = 1000, n_min = 1000;
  const double C = 10.0;
  const auto alpha = RealDescriptor::parse("golden");
  const auto gamma = RealDescriptor::rational(BigRat(0));
  const auto dist = orbit_distances(alpha, gamma, N);
  auto res = parallel_map(20, threads(), [&](std::size_t s) {
    Rng rng = make_rng(9000, s);
    BigInt num = 0;
    for (int w = 0; w < 4; ++w) num = num * pow2(64) + to_bigint(rng());
    auto beta = RealDescriptor::rational(BigRat(num, pow2(256)));
    return uniform_delta_check(dist, beta, N, C, m, n_min);
  });
  int passed = 0;
  std::uint64_t worst = 0;
  for (const auto& r : res) {
    passed += r.all_pass();
    worst = std::max(worst, r.worst_n);
  }
  return {passed >= 19, "passing beta " + std::to_string(passed) + "/20, largest first n " + std::to_string(worst)};
}

// 10. The three psi families.
Outcome criterion10() {
  const auto alpha = RealDescriptor::parse("golden");
  const auto gamma = RealDescriptor::rational(BigRat(0));
  struct Case {
    Psi psi;
    Regime expect;
    const char* name;
  };
  const Case cases[] = {{Psi::iterated_log(1, 1, 1, 1), Regime::CoveringLike, "1/(n log n loglog n)"},
                        {Psi::iterated_log(1, 1, 1, 1.5), Regime::NoncoveringLike, "1/(n log n (loglog n)^1.5)"},
                        {Psi::iterated_log(1, 1, 2), Regime::NoncoveringLike, "1/(n log^2 n)"}};
  Outcome o{true, ""};
  for (const auto& c : cases) {
    auto d = psi_regime(alpha, gamma, c.psi, 2, 4);
    o.pass = o.pass && d.classification == c.expect;
    o.detail += std::string(c.name) + "=" + to_string(d.classification) + " ";
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> all = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                     criterion6, criterion7, criterion8, criterion9, criterion10};
  // Wall-clock budgets in seconds, one per criterion.
  const double budget[] = {1, 120, 300, 600, 60, 1200, 300, 120, 600, 60};
  std::vector<int> pick;
  for (int i = 1; i < argc; ++i) pick.push_back(std::atoi(argv[i]));
  if (pick.empty())
    for (int i = 1; i <= 10; ++i) pick.push_back(i);
  int failures = 0;
  for (int k : pick) {
    if (k < 1 || k > 10) {
      std::fprintf(stderr, "unknown criterion %d\n", k);
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[k - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget[k - 1]) {
      o.pass = false;
      o.detail += " over budget of " + fmt(budget[k - 1]) + "s";
    }
    std::printf("%s criterion %d (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", k, secs, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
