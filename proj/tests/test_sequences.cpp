#include <doctest.h>

#include <numeric>

#include "circov/arithmetic_functions.hpp"
#include "circov/errors.hpp"
#include "circov/gcd_sum.hpp"
#include "circov/local_count.hpp"
#include "circov/sequence.hpp"
#include "circov/thinning.hpp"

using namespace circov;

namespace {
std::vector<long> ints(const std::vector<Term>& t) {
  std::vector<long> out;
  for (const auto& x : t) out.push_back(x.integer().get_si());
  return out;
}
}  // namespace

TEST_SUITE("sequences") {
  TEST_CASE("generation examples") {
    CHECK(ints(generate(SequenceSpec::parse("geom:1,2"), 5)) == std::vector<long>{1, 2, 4, 8, 16});
    CHECK(ints(generate(SequenceSpec::prime_power(2), 4)) == std::vector<long>{4, 9, 25, 49});
    CHECK(ints(generate(SequenceSpec::parse("ps:1.5"), 5)) == std::vector<long>{1, 2, 5, 8, 11});
    CHECK(ints(generate(SequenceSpec::parse("fib"), 6)) == std::vector<long>{1, 2, 3, 5, 8, 13});
    CHECK_THROWS_AS(generate(SequenceSpec::parse("list:1,3,2"), 3), InvalidInput);
  }

  TEST_CASE("polynomial start index is shifted to the increasing positive range") {
    // P(n) = n^2 - 10 n + 30 decreases until n = 5
    auto spec = SequenceSpec::parse("poly:30,-10,1");
    auto t = generate(spec, 4);
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i].integer() > t[i - 1].integer());
    CHECK(t[0].integer() > 0);
  }

  TEST_CASE("fractional points of powers of two are shifts of x") {
    UnitPoint x = UnitPoint::parse("0.7182818284590452353602874713526624977572", 256);
    auto pts = fractional_points(SequenceSpec::parse("pow2"), x, 1, 5);
    for (unsigned n = 1; n <= 5; ++n) CHECK(pts[n - 1] == x.times(pow2(n)).top64());
    auto sq = fractional_points(SequenceSpec::parse("n^2"), x, 1, 50);
    for (unsigned n = 1; n <= 50; ++n) CHECK(sq[n - 1] == x.times(BigInt(n * n)).top64());
    UnitPoint short_x = UnitPoint::parse("0.3", 64);
    CHECK_THROWS_AS(fractional_points(SequenceSpec::parse("pow2"), short_x, 1, 10), PrecisionExhausted);
  }

  TEST_CASE("thinning strides") {
    auto p2 = generate(SequenceSpec::parse("pow2"), 40);
    auto t = thin_to_ratio(p2, BigRat(10));
    CHECK(t.stride == 4);
    for (std::size_t N = 1; N <= t.terms.size(); ++N) CHECK(t.terms[N - 1].integer() == pow2(4 * N));
    CHECK(thin_to_ratio(generate(SequenceSpec::parse("pow:3"), 30), BigRat(10)).stride == 3);
    CHECK(thin_to_ratio(generate(SequenceSpec::parse("pow:11"), 10), BigRat(10)).stride == 1);
    auto out = thin_to_ratio(generate(SequenceSpec::parse("fib"), 90), BigRat(10)).terms;
    for (std::size_t i = 1; i < out.size(); ++i) CHECK(out[i].integer() > 10 * out[i - 1].integer());
    CHECK_THROWS_AS(thin_to_ratio(generate(SequenceSpec::explicit_list({1, 5, 5, 9}), 4), BigRat(10)), InvalidInput);
    // q_n = n passes the prefix check but needs a stride beyond the prefix
    CHECK(thin_to_ratio(generate(SequenceSpec::parse("n"), 10), BigRat(10)).terms.empty());
  }

  TEST_CASE("level separation") {
    CoveringSchedule s(BigRat(1));
    auto in = generate(SequenceSpec::parse("pow:10"), separation_input_length(s, 3));
    auto r = separate_levels(in, s, 3);
    CHECK(r.verified);
    CHECK(r.level_end == std::vector<std::uint64_t>{1, 3, 7});
    CHECK(r.skips[1] == 47);  // floor(100 log10 3)
    auto id = separate_levels(in, s, 0);
    CHECK(id.terms.size() == in.size());
    CHECK(id.verified);
    // ratio exactly 10 is accepted; the check decides
    CHECK_NOTHROW(separate_levels(in, s, 2));
    CHECK_THROWS_AS(separate_levels(generate(SequenceSpec::parse("pow:9"), 200), s, 2), InvalidInput);
  }

  TEST_CASE("gap profiles") {
    auto g = gap_profile(generate(SequenceSpec::parse("pow2"), 200), 0.1);
    CHECK(g.hadamard);
    CHECK(g.gap_condition);
    CHECK(g.phi_subpolynomial);
    auto e = gap_profile(generate(SequenceSpec::parse("exp_sqrt"), 20000), 0.1);
    CHECK_FALSE(e.phi_subpolynomial);
    CHECK(e.phi_exponent == doctest::Approx(0.5).epsilon(0.05));
    auto k = gap_profile(generate(SequenceSpec::parse("n"), 2000), 0.1);
    CHECK_FALSE(k.hadamard);
    CHECK_FALSE(k.gap_condition);
    CHECK_FALSE(k.phi_subpolynomial);
  }

  TEST_CASE("divisor and root counts") {
    CHECK(divisor_count(12) == 6);
    CHECK(divisor_count(1) == 1);
    std::vector<BigInt> x2p1 = {1, 0, 1};
    CHECK(root_count(x2p1, 5) == 2);
    CHECK(root_count(x2p1, 3) == 0);
    CHECK(root_count(x2p1, 15) == 0);
    for (std::uint64_t a = 2; a <= 60; ++a)
      for (std::uint64_t b = 2; a * b <= 10000 && b <= 200; ++b)
        if (std::gcd(a, b) == 1) CHECK(root_count(x2p1, a * b) == root_count(x2p1, a) * root_count(x2p1, b));
  }

  TEST_CASE("prime powers are pairwise coprime") {
    auto q = generate_integers(SequenceSpec::prime_power(3), 60);
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = i + 1; j < q.size(); ++j) CHECK(gcd(q[i], q[j]) == 1);
  }

  TEST_CASE("gcd sums") {
    GcdSumHypothesis h;
    h.nu = 2.0;
    auto pp = gcd_sum(SequenceSpec::prime_power(2), h, 64);
    CHECK(pp.sum >= 0);
    CHECK(pp.ratio < 1.0);
    CHECK(pp.pairs == 64 * 65 / 2);
    CHECK(gcd_sum(SequenceSpec::prime_power(2), h, 0).sum == 0.0);
    // q_n = 6n shares the factor 6 everywhere
    auto bad = gcd_sum(SequenceSpec::parse("poly:0,6"), h, 64);
    CHECK(bad.sum > pp.sum);
    CHECK(bad.ratio > 1.0);
    std::vector<double> cum = bad.cumulative;
    for (std::size_t i = 1; i < cum.size(); ++i) CHECK(cum[i] >= cum[i - 1]);
  }

  TEST_CASE("local count examples") {
    LocalCountInstance inst;
    inst.j = 3;
    inst.B = 0;
    inst.schedule = CoveringSchedule(BigRat(4));
    auto seq = SequenceSpec::parse("pow:10");
    auto r = local_count_sum(inst, seq);
    CHECK(r.within_bound);
    CHECK(r.N_j == 60);
    CHECK(r.bound == BigRat(20 * 60 * 8));
    auto empty = inst;
    empty.block = std::make_pair<std::uint64_t, std::uint64_t>(5, 4);
    CHECK(local_count_sum(empty, seq).sum == 0);
    auto far = inst;
    far.B = BigRat(ipow(BigInt(10), 80));
    CHECK(local_count_sum(far, seq).sum == 0);
  }

  TEST_CASE("local count agrees with brute force and is symmetric in B") {
    auto seq = SequenceSpec::parse("pow:10");
    for (unsigned j : {2u, 3u}) {
      for (long b : {0L, 7L, -7L, 120L, 99999L}) {
        LocalCountInstance inst;
        inst.j = j;
        inst.B = BigRat(b) * BigRat(ipow(BigInt(10), j == 2 ? 11 : 27));
        inst.schedule = CoveringSchedule(BigRat(4));
        auto fast = local_count_sum(inst, seq);
        auto slow = local_count_bruteforce(inst, seq);
        CHECK(fast.sum == slow.sum);
        CHECK(fast.solutions == slow.solutions);
        auto neg = inst;
        neg.B = -inst.B;
        CHECK(local_count_sum(neg, seq).sum == fast.sum);
      }
    }
  }

  TEST_CASE("local count budget") {
    LocalCountInstance inst;
    inst.j = 2;
    inst.B = 0;
    inst.budget = 10;
    CHECK_THROWS_AS(local_count_sum(inst, SequenceSpec::parse("pow:10")), BudgetExceeded);
  }
}
