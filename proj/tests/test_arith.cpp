#include <doctest.h>

#include <cmath>
#include <limits>

#include "circov/bohr.hpp"
#include "circov/contfrac.hpp"
#include "circov/errors.hpp"
#include "circov/rotation.hpp"
#include "circov/unit_point.hpp"

using namespace circov;

namespace {
RealDescriptor R(const char* s) { return RealDescriptor::parse(s); }
BigRat Q(const char* s) { return parse_rational(s); }

BohrQuery query(const char* alpha, const char* gamma, std::uint64_t N, const char* eps) {
  BohrQuery q;
  q.alpha = R(alpha);
  q.gamma = R(gamma);
  q.N = N;
  q.eps = Q(eps);
  return q;
}
}  // namespace

TEST_SUITE("arith") {
  TEST_CASE("nearest integer distance examples") {
    CHECK(nearest_int_dist(Q("0.5")) == Q("1/2"));
    CHECK(nearest_int_dist(Q("3.25")) == Q("1/4"));
    CHECK(nearest_int_dist(Q("-0.1")) == Q("1/10"));
    CHECK(nearest_int_dist(3.25) == doctest::Approx(0.25));
    CHECK_THROWS_AS(nearest_int_dist(std::numeric_limits<double>::quiet_NaN()), InvalidInput);
    CHECK_THROWS_AS(nearest_int_dist(INFINITY), InvalidInput);
  }

  TEST_CASE("nearest integer distance is invariant under integer shifts") {
    for (const char* t : {"0.37", "-2/9", "7/3", "0.5", "0"})
      for (int m = -5; m <= 5; ++m) CHECK(nearest_int_dist(Q(t) + m) == nearest_int_dist(Q(t)));
  }

  TEST_CASE("unit points are exact dyadics") {
    UnitPoint p = UnitPoint::parse("0.75", 64);
    CHECK(p.top64() == (std::uint64_t{3} << 62));
    CHECK(p.times(BigInt(3)).to_rational() == Q("1/4"));
    CHECK_THROWS_AS(UnitPoint(32), InvalidInput);
    Rng a = make_rng(5, 1), b = make_rng(5, 1);
    CHECK(UnitPoint::random(a, 256) == UnitPoint::random(b, 256));
  }

  TEST_CASE("golden ratio expansion gives Fibonacci denominators") {
    auto cf = continued_fraction(R("golden"), 10);
    std::vector<long> q = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
    REQUIRE(cf.depth() == 10);
    for (std::size_t k = 0; k < 10; ++k) {
      CHECK(cf.partial_quotients[k] == 1);
      CHECK(cf.denominators[k] == q[k]);
    }
    CHECK_NOTHROW(verify_expansion(cf));
    CHECK(cf.levy_sup > 0.0);
  }

  TEST_CASE("sqrt2 - 1 is periodic with quotient 2") {
    auto cf = continued_fraction(R("sqrt2-1"), 5);
    std::vector<long> q = {2, 5, 12, 29, 70};
    for (std::size_t k = 0; k < 5; ++k) {
      CHECK(cf.partial_quotients[k] == 2);
      CHECK(cf.denominators[k] == q[k]);
    }
    CHECK_NOTHROW(verify_expansion(cf));
  }

  TEST_CASE("rational expansion terminates with a flag") {
    auto cf = continued_fraction(R("3/7"), kAllQuotients);
    CHECK(cf.finite);
    // 3/7 = [0; 2, 3]
    REQUIRE(cf.depth() == 2);
    CHECK(cf.partial_quotients[0] == 2);
    CHECK(cf.partial_quotients[1] == 3);
    CHECK(cf.denominators.back() == 7);
    CHECK(cf.numerators.back() == 3);
    CHECK_NOTHROW(verify_expansion(cf));
  }

  TEST_CASE("recursion holds for deep expansions of several surds") {
    for (const char* a : {"golden", "sqrt2-1", "sqrt(7)", "surd(1,2,3,5)"}) {
      auto cf = continued_fraction(R(a), 60);
      for (long k = 1; k < static_cast<long>(cf.depth()); ++k)
        CHECK(cf.q(k + 1) == cf.partial_quotients[k] * cf.q(k) + cf.q(k - 1));
      CHECK_NOTHROW(verify_expansion(cf));
    }
  }

  TEST_CASE("precision exhaustion is reported") {
    CHECK_THROWS_AS(continued_fraction(R("golden"), 2000, 128), PrecisionExhausted);
  }

  TEST_CASE("bohr count examples") {
    auto g = query("golden", "0", 100, "0.05");
    std::uint64_t c = bohr_count(g);
    CHECK(c >= 5);
    CHECK(c <= 160);
    CHECK(bohr_count(query("1/2", "0", 10, "0.1")) == 5);
    CHECK(bohr_count(query("golden", "0.3", 37, "0.5")) == 37);
    CHECK(bohr_count(query("golden", "0.3", 37, "0.75")) == 37);
  }

  TEST_CASE("bohr bracket on the golden instance") {
    auto br = bohr_bracket(query("golden", "0", 100, "0.05"));
    CHECK(br.lower == 5);
    CHECK(br.upper == 160);
    CHECK(br.qK == 89);
    CHECK(br.qK1 == 144);
  }

  TEST_CASE("bohr bracket boundary precondition names the side") {
    try {
      bohr_bracket(query("golden", "0", 100, "1/200"));
      FAIL("expected a precondition violation");
    } catch (const PreconditionViolation& e) {
      CHECK(e.side() == "lower");
    }
    try {
      bohr_bracket(query("golden", "0", 100, "0.2"));
      FAIL("expected a precondition violation");
    } catch (const PreconditionViolation& e) {
      CHECK(e.side() == "upper");
    }
  }

  TEST_CASE("bohr bracket contains the count for sqrt2 - 1") {
    auto q = query("sqrt2-1", "0", 70, "0.02");
    auto br = bohr_bracket(q);
    BigInt c = to_bigint(bohr_count(q));
    CHECK(br.lower <= c);
    CHECK(BigRat(c) <= br.upper);
  }

  TEST_CASE("inhomogeneous count bounded by doubled homogeneous count plus one") {
    for (const char* a : {"golden", "sqrt2-1"})
      for (const char* g : {"0.1", "0.37", "0.5", "2/3"})
        for (std::uint64_t N : {50, 500, 3000})
          for (const char* e : {"0.003", "0.01", "0.04"}) {
            std::uint64_t lhs = bohr_count(query(a, g, N, e));
            BigRat e2 = Q(e) * 2;
            auto q0 = query(a, "0", N, e);
            q0.eps = e2;
            CHECK(lhs <= bohr_count(q0) + 1);
          }
  }

  TEST_CASE("annulus count on the golden ratio") {
    auto q = query("golden", "0.3", 10000, "0.01");
    auto rep = annulus_count(q);
    CHECK(rep.in_band);
    CHECK(rep.badly_approximable_proxy);
    CHECK(rep.K_alpha_b == 3000);
    CHECK_FALSE(rep.precondition_met);
    auto big = query("golden", "0.3", 100, "0.9");
    big.b = 300;
    // eps/b still < 1/2 here, so only the clipped upper edge matters
    CHECK(annulus_count(big).count <= 100);
    auto tiny = query("golden", "0.3", 100, "1/1000000");
    CHECK_FALSE(annulus_count(tiny).precondition_met);
    auto bad_b = q;
    bad_b.b = 299;
    CHECK_THROWS_AS(annulus_count(bad_b), InvalidInput);
  }

  TEST_CASE("annulus is empty when eps / b exceeds 1/2") {
    auto q = query("golden", "0.3", 100, "200");
    CHECK(annulus_count(q).count == 0);
  }

  TEST_CASE("annulus count is monotone in N") {
    std::uint64_t prev = 0;
    for (std::uint64_t N = 100; N <= 5000; N += 350) {
      auto c = annulus_count(query("sqrt2-1", "0.21", N, "0.02")).count;
      CHECK(c >= prev);
      prev = c;
    }
  }

  TEST_CASE("exponential window sums") {
    auto w = exp_window_sum(Psi::harmonic(1.0), 3, 2.0);
    double direct = 0;
    for (int n = 8; n <= 256; ++n) direct += 1.0 / n;
    CHECK(w.value == doctest::Approx(direct).epsilon(1e-12));
    // log(256/8) plus the Euler-Maclaurin end correction
    CHECK(std::fabs(w.value - (std::log(256.0 / 8) + 0.5 / 8)) < 0.1);
    CHECK(exp_window_sum(Psi::zero(), 4, 2.0).value == 0.0);
    double prev = INFINITY;
    for (unsigned N = 3; N <= 10; ++N) {
      auto s = exp_window_sum(Psi::iterated_log(1.0, 1.0, 2.0), N, 2.0, 1ULL << 22);
      CHECK(s.value < prev);
      prev = s.value;
    }
    auto capped = exp_window_sum(Psi::harmonic(1.0), 6, 2.0, 1000);
    CHECK(capped.capped);
    CHECK(capped.last_used == 1000);
  }

  TEST_CASE("rotation orbit decides distances exactly or raises") {
    RotationOrbit orb(R("1/3"), R("0"), 10);
    orb.seek(3);
    CHECK(orb.exact());
    CHECK(orb.distance_less(Q("1/100")));
    RotationOrbit g(R("golden"), R("0"), 200, 256);
    g.seek(89);
    CHECK(g.distance_less(Q("0.01")));
  }
}
