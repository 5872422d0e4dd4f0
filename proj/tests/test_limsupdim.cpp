#include <doctest.h>

#include <cmath>

#include "circov/dimension.hpp"
#include "circov/errors.hpp"

using namespace circov;

namespace {

// Exact brute force over admissible cylinders against half-open arcs in 2^-64 units.
std::uint64_t brute_hits(const std::vector<std::uint64_t>& centers, std::uint64_t first, double nu, const DigitSet& G,
                         unsigned j) {
  std::vector<std::pair<u128, u128>> arcs;
  const u128 one = static_cast<u128>(1) << 64;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const u128 r = limsup_radius_units(first + i, nu);
    const u128 c = centers[i] + one;  // shift so c - r stays nonnegative
    u128 a = c - r, b = c + r;
    if (b - a >= one) {
      arcs.push_back({0, one});
      continue;
    }
    a %= one;
    b = a + (b - (c - r));
    if (b <= one) {
      arcs.push_back({a, b});
    } else {
      arcs.push_back({a, one});
      arcs.push_back({0, b - one});
    }
  }
  const std::uint64_t cells = G.cells(j);
  std::uint64_t hits = 0;
  for (std::uint64_t k = 0; k < cells; ++k) {
    if (!G.admissible(k, j)) continue;
    for (auto [a, b] : arcs) {
      if (static_cast<u128>(k) * one < b * cells && a * cells < static_cast<u128>(k + 1) * one) {
        ++hits;
        break;
      }
    }
  }
  return hits;
}

}  // namespace

TEST_SUITE("limsupdim") {
  TEST_CASE("predicted dimension") {
    const double s = std::log(2.0) / std::log(3.0);
    CHECK(predicted_dimension(2.0, 1.0).value == doctest::Approx(0.5));
    CHECK_FALSE(predicted_dimension(2.0, 1.0).empty);
    CHECK(predicted_dimension(1.0, s).value == doctest::Approx(s));
    auto e = predicted_dimension(3.0, s);
    CHECK(e.empty);
    CHECK(e.threshold == doctest::Approx(2.709511).epsilon(1e-6));
    CHECK(std::isinf(predicted_dimension(5.0, 1.0).threshold));
  }

  TEST_CASE("digit sets") {
    DigitSet c = DigitSet::cantor();
    CHECK(c.s() == doctest::Approx(std::log(2.0) / std::log(3.0)));
    CHECK(c.admissible(0, 3));
    CHECK_FALSE(c.admissible(1, 1));
    CHECK(c.admissible(8, 2));  // digits 2,2
    CHECK_FALSE(c.admissible(5, 2));  // digits 1,2
    CHECK(c.count_admissible_below(9, 2) == 4);
    CHECK(DigitSet::parse("5:0,4").base() == 5);
    CHECK(DigitSet::parse("full:10").is_full());
    CHECK_THROWS_AS(DigitSet::parse("3:0,7"), InvalidInput);
    CHECK_THROWS_AS(DigitSet::full(2).cells(70), InvalidInput);
  }

  TEST_CASE("frostman grid counts") {
    for (unsigned n = 1; n <= 20; ++n) CHECK(frostman_grid(DigitSet::full(), n).count == (std::uint64_t{1} << n));
    for (unsigned m = 1; m <= 12; ++m)
      CHECK(frostman_grid(DigitSet::cantor(), m, 3).count == (std::uint64_t{1} << m));
    for (unsigned n = 4; n <= 20; ++n) {
      auto f = frostman_grid(DigitSet::cantor(), n);
      CHECK(f.ratio >= 0.125);
      CHECK(f.ratio <= 8.0);
    }
  }

  TEST_CASE("box hits edge cases") {
    LimsupConfig cfg;
    Rng rng = make_rng(4, 0);
    cfg.x = UnitPoint::random(rng, required_precision(cfg.seq, 64));
    cfg.N0 = 10;
    cfg.N1 = 10;
    CHECK(box_hits(cfg, DigitSet::full(), 8) == 0);
    cfg.N0 = 0;
    cfg.N1 = 4;
    CHECK(box_hits(cfg, DigitSet::full(), 8) == 256);
    CHECK(box_hits(cfg, DigitSet::cantor(), 5) == 32);
  }

  TEST_CASE("box hits are monotone in the tail") {
    LimsupConfig cfg;
    Rng rng = make_rng(4, 1);
    cfg.x = UnitPoint::random(rng, required_precision(cfg.seq, 600));
    cfg.N0 = 64;
    std::uint64_t prev = 0;
    for (std::uint64_t N1 : {80, 128, 256, 600}) {
      cfg.N1 = N1;
      auto h = box_hits(cfg, DigitSet::full(), 12);
      CHECK(h >= prev);
      prev = h;
    }
  }

  TEST_CASE("box hits match exact enumeration") {
    auto seq = SequenceSpec::power(BigInt(2));
    for (std::uint64_t t = 0; t < 2; ++t) {
      Rng rng = make_rng(12, t);
      UnitPoint x = UnitPoint::random(rng, required_precision(seq, 1 << 16));
      auto centers = fractional_points(seq, x, 257, 1 << 16);
      CHECK(box_hits_centers(centers, 257, 1.0, DigitSet::cantor(), 10) ==
            brute_hits(centers, 257, 1.0, DigitSet::cantor(), 10));
      auto few = fractional_points(seq, x, 65, 400);
      CHECK(box_hits_centers(few, 65, 2.0, DigitSet::full(), 14) == brute_hits(few, 65, 2.0, DigitSet::full(), 14));
      CHECK(box_hits_centers(few, 65, 1.0, DigitSet::parse("5:0,2,4"), 6) ==
            brute_hits(few, 65, 1.0, DigitSet::parse("5:0,2,4"), 6));
    }
  }

  TEST_CASE("depth mapping") {
    CHECK(depths_for(DigitSet::full(), 8, 18) == std::vector<unsigned>{8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18});
    CHECK(depths_for(DigitSet::cantor(), 8, 18) == std::vector<unsigned>{6, 7, 8, 9, 10, 11});
  }

  TEST_CASE("small slope estimate") {
    DimensionOptions opt;
    opt.seeds = 5;
    opt.dyadic_min = 8;
    opt.dyadic_max = 13;
    auto est = estimate_dimension(SequenceSpec::power(BigInt(2)), DigitSet::full(), opt);
    CHECK_FALSE(est.empty);
    CHECK(est.slope == doctest::Approx(1.0).epsilon(0.15));
    CHECK(est.seed_slopes.size() == 5);
    opt.seeds = 2;
    CHECK_THROWS_AS(estimate_dimension(SequenceSpec::power(BigInt(2)), DigitSet::full(), opt), InvalidInput);
  }
}
