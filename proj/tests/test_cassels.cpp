#include <doctest.h>

#include <cmath>
#include <set>

#include "circov/cassels.hpp"
#include "circov/errors.hpp"
#include "circov/psi_regime.hpp"

using namespace circov;

namespace {
RealDescriptor golden() { return RealDescriptor::parse("golden"); }
RealDescriptor zero() { return RealDescriptor::rational(BigRat(0)); }
}  // namespace

TEST_SUITE("cassels") {
  TEST_CASE("alpha = 0 gives zero products") {
    CasselsInstance inst{zero(), golden(), zero(), zero(), 200};
    auto pm = product_minima(inst);
    CHECK(pm.minimum.product == 0.0);
    CHECK(pm.minimum.n == 2);
  }

  TEST_CASE("golden pair minima sit on Fibonacci numbers") {
    CasselsInstance inst{golden(), golden(), zero(), zero(), 10000};
    auto pm = product_minima(inst);
    const std::set<std::uint64_t> fib{2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987, 1597, 2584, 4181, 6765};
    CHECK(fib.count(pm.min_plain.n) == 1);
    CHECK(fib.count(pm.minimum.n) == 1);
    for (std::size_t i = 1; i < pm.records.size(); ++i) CHECK(pm.records[i].normalized < pm.records[i - 1].normalized);
    CHECK(pm.minimum.normalized < 0.2);
  }

  TEST_CASE("minimum is invariant under integer shifts of gamma and nonincreasing in N") {
    auto beta = RealDescriptor::parse("sqrt2-1");
    CasselsInstance a{golden(), beta, RealDescriptor::rational(BigRat(1, 3)), zero(), 3000};
    CasselsInstance b = a;
    b.gamma = RealDescriptor::rational(BigRat(4, 3));
    CHECK(product_minima(a).minimum.n == product_minima(b).minimum.n);
    CHECK(product_minima(a).minimum.normalized == product_minima(b).minimum.normalized);
    double prev = 1e9;
    for (std::uint64_t N : {100, 500, 1000, 3000}) {
      a.N = N;
      double v = product_minima(a).minimum.normalized;
      CHECK(v <= prev);
      prev = v;
    }
  }

  TEST_CASE("best inhomogeneous approximations") {
    CHECK(best_inhom_approx(golden(), zero(), 50).n == 89);
    auto r = best_inhom_approx(RealDescriptor::rational(BigRat(3, 7)), zero(), 10);
    CHECK(r.distance == 0.0);
    CHECK(r.n == 14);
    auto chain = chain_best_inhom(golden(), RealDescriptor::rational(BigRat(1, 5)), 4, 14);
    REQUIRE(chain.size() == 14);
    double worst = 0;
    for (std::size_t k = 1; k < chain.size(); ++k) {
      const double ratio = static_cast<double>(chain[k].n) / static_cast<double>(chain[k - 1].n);
      CHECK(ratio > 1.0);
      CHECK(ratio < 4.0);
    }
    for (auto& c : chain) worst = std::max(worst, c.distance * static_cast<double>(c.n));
    CHECK(worst <= 8.0);
  }

  TEST_CASE("uniform delta check") {
    auto beta = RealDescriptor::parse("sqrt2-1");
    const std::uint64_t N = 1000;
    auto trivial = uniform_delta_check(golden(), zero(), beta, N, N * std::log(N) / 4, 50);
    CHECK(trivial.all_pass());
    for (auto n : trivial.first_n) CHECK(n == 2);

    // beta = 1/2: ||n beta - delta|| is at least ~1/4 for delta near 1/4, and
    // ||n alpha|| n log n is not small enough with a tiny C.
    auto rational = uniform_delta_check(golden(), zero(), RealDescriptor::rational(BigRat(1, 2)), N, 0.01, 40);
    CHECK_FALSE(rational.all_pass());
    CHECK(rational.first_n[10] == 0);

    auto dist = orbit_distances(golden(), zero(), N);
    auto again = uniform_delta_check(dist, beta, N, 10.0, 100, 31);
    auto direct = uniform_delta_check(golden(), zero(), beta, N, 10.0, 100, 31);
    CHECK(again.first_n == direct.first_n);
    for (auto n : again.first_n) CHECK((n == 0 || n >= 31));
  }

  TEST_CASE("random model") {
    Rng r0 = make_rng(5, 0);
    auto none = random_model_trial(golden(), zero(), Psi::zero(), 500, r0);
    CHECK(none.uncovered.measure() == 1.0);

    auto lens = random_model_lengths(golden(), zero(), Psi::custom([](double) { return 1.0; }, "one"), 100);
    for (std::uint64_t n = 1; n <= 100; ++n) CHECK(lens(n) == 1.0);
    Rng r1 = make_rng(5, 1);
    auto full = random_model_trial(golden(), zero(), Psi::custom([](double) { return 1.0; }, "one"), 100, r1);
    CHECK(full.uncovered.empty());
    CHECK(full.arcs_used == 1);

    const double g = (std::sqrt(5.0) - 1) / 2;
    auto self = random_model_lengths(golden(), zero(), Psi::custom([g](double n) {
      double t = n * g;
      t -= std::floor(t);
      return std::min(t, 1 - t);
    }, "dist"), 60);
    for (std::uint64_t n = 1; n <= 60; ++n) CHECK(self(n) == doctest::Approx(1.0).epsilon(1e-9));

    auto psi = Psi::parse("1/(n log^2 n)");
    auto lengths = random_model_lengths(golden(), zero(), psi, 2000);
    Rng a = make_rng(3, 3), b = make_rng(3, 3);
    auto ta = random_model_trial(golden(), zero(), psi, 2000, a);
    auto tb = dvoretzky_trial(lengths, 2000, b);
    CHECK(ta.uncovered == tb.uncovered);
  }

  TEST_CASE("psi regime families") {
    auto cov = psi_regime(golden(), zero(), Psi::iterated_log(1, 1, 1, 1), 2, 4);
    CHECK(cov.classification == Regime::CoveringLike);
    auto nc1 = psi_regime(golden(), zero(), Psi::iterated_log(1, 1, 1, 1.5), 2, 4);
    CHECK(nc1.classification == Regime::NoncoveringLike);
    auto nc2 = psi_regime(golden(), zero(), Psi::iterated_log(1, 1, 2), 2, 4);
    CHECK(nc2.classification == Regime::NoncoveringLike);
    CHECK(nc2.pointwise_ok);
    CHECK(cov.pointwise_ok);  // below 1/(n log n) and still covering-like
    CHECK(asymptotic_window(Psi::iterated_log(1, 1, 2), 64) < asymptotic_window(Psi::iterated_log(1, 1, 2), 8));
  }

  TEST_CASE("S_l buckets are consistent") {
    for (std::uint64_t b : {2, 3}) {
      auto d = psi_regime(golden(), RealDescriptor::rational(BigRat(1, 3)), Psi::iterated_log(1, 1, 1, 1), b, 4);
      CHECK(d.accumulators_consistent);
      std::uint64_t T1 = 0;
      BigRat c, nc;
      recompute_T(d.S_ell_sizes, b, T1, c, nc);
      CHECK(T1 == d.T1);
      CHECK(c == d.T2_covering);
      CHECK(nc == d.T2_noncovering);
      CHECK(nc == c * BigRat(b) );
    }
  }

  TEST_CASE("a direct-sum psi is handled") {
    auto d = psi_regime(golden(), zero(), Psi::custom([](double n) { return 1.0 / (n * n); }, "1/n^2", 1), 2, 3);
    CHECK_FALSE(d.windows_asymptotic);
    CHECK(d.classification != Regime::CoveringLike);
  }
}
