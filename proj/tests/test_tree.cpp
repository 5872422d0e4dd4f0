#include <doctest.h>

#include <cmath>

#include "circov/errors.hpp"
#include "circov/tree_engine.hpp"

using namespace circov;

namespace {
std::uint64_t top_of(double x) { return static_cast<std::uint64_t>(std::ldexp(x, 64)); }
}  // namespace

TEST_SUITE("tree") {
  TEST_CASE("runset algebra") {
    RunSet a = RunSet::from_indices({5, 1, 2, 3, 3, 9});
    CHECK(a.count() == 5);
    CHECK(a.runs().size() == 3);
    CHECK(a.indices() == std::vector<std::uint64_t>{1, 2, 3, 5, 9});
    CHECK(a.nth(3) == 5);
    RunSet b = RunSet::from_runs({{2, 6}});
    CHECK(a.minus(b).indices() == std::vector<std::uint64_t>{1, 9});
    CHECK(a.intersect(b).indices() == std::vector<std::uint64_t>{2, 3, 5});
    CHECK(a.intersect(b).subset_of(a));
    CHECK(RunSet::from_indices({0}).dilate_cyclic(16).indices() == std::vector<std::uint64_t>{0, 1, 15});
    CHECK(RunSet::from_indices({1, 4}).children().indices() == std::vector<std::uint64_t>{2, 3, 8, 9});
  }

  TEST_CASE("color_level examples") {
    auto [f1, s1] = color_level_top64(Frontier::all(4, TreeMode::Plain), {});
    CHECK(f1.count() == 2 * 16);
    CHECK(s1.remaining == 16);

    auto [f2, s2] = color_level(Frontier::all(1, TreeMode::Plain), {UnitPoint::parse("0.3", 64)});
    CHECK(f2.level() == 2);
    CHECK(f2.indices() == std::vector<std::uint64_t>{2, 3});
    CHECK(s2.colored_hits == 1);

    // 4.5/8 lies in I_{3,4}.
    auto [f3, s3] = color_level_top64(Frontier::all(3, TreeMode::Thick), {top_of(4.5 / 8)});
    CHECK(s3.remaining == 5);
    for (std::uint64_t k : {3, 4, 5}) {
      CHECK_FALSE(f3.contains(2 * k));
      CHECK_FALSE(f3.contains(2 * k + 1));
    }
    CHECK(f3.count() == 10);

    auto [f4, s4] = color_level_top64(Frontier::all(3, TreeMode::Thick), {top_of(0.01)});
    CHECK_FALSE(f4.contains(14));
    CHECK_FALSE(f4.contains(15));
  }

  TEST_CASE("children invariant and recursion bounds") {
    for (TreeMode mode : {TreeMode::Plain, TreeMode::Thick}) {
      Rng rng = make_rng(5, static_cast<std::uint64_t>(mode));
      Frontier f = Frontier::all(3, mode);
      for (int level = 3; level < 20 && f.count() > 0; ++level) {
        std::vector<std::uint64_t> pts(static_cast<std::size_t>(std::ldexp(0.3, level)));
        for (auto& p : pts) p = rng();
        auto [next, st] = color_level_top64(f, pts);
        for (std::uint64_t i : next.indices()) CHECK(f.contains(i / 2));
        const std::uint64_t mult = mode == TreeMode::Thick ? 3 : 1;
        const std::uint64_t lost = std::min(st.survivor_count, mult * st.colored_hits);
        CHECK(next.count() >= 2 * (st.survivor_count - lost));
        CHECK(next.count() == 2 * st.remaining);
        f = next;
      }
    }
  }

  TEST_CASE("uncolored path examples") {
    ColoringRecord all;
    std::vector<std::uint64_t> every;
    for (std::uint64_t k = 0; k < 32; ++k) every.push_back(k << 59);
    all.add_full_level(5, every);
    all.add_full_level(6, {});
    CHECK_FALSE(uncolored_path_exists(all, 5, 1));

    ColoringRecord none;
    for (int l = 4; l <= 8; ++l) none.add_full_level(l, {});
    CHECK(uncolored_path_exists(none, 4, 4));

    ColoringRecord single;
    Rng rng = make_rng(8, 0);
    for (int l = 3; l <= 9; ++l) single.add_full_level(l, {rng()});
    CHECK(uncolored_path_exists(single, 3, 6));

    CHECK_THROWS_AS(uncolored_path_exists(single, 3, 9), InvalidInput);
  }

  TEST_CASE("iid event bound") {
    auto b0 = iid_event_bound(4, 3, BigRat(0));
    CHECK(b0.value == doctest::Approx(256.0));
    auto b1 = iid_event_bound(5, 0, BigRat(1013));
    const double expect = std::log10(64.0) + 32416 * std::log10(31.0 / 32.0);
    CHECK(b1.log10 == doctest::Approx(expect).epsilon(1e-12));
    CHECK(b1.log10 == doctest::Approx(std::log10(64.0) - 1029.2 / std::log(10.0)).epsilon(1e-4));
    double prev = 1e300;
    for (int L : {0, 1, 2, 5, 20, 100}) {
      double v = iid_event_bound(6, 2, BigRat(L)).log10;
      CHECK(v <= prev);
      prev = v;
    }
  }

  TEST_CASE("buffer accounting") {
    CoveringSchedule s(BigRat(4), 1.0, 0.5);
    TreeOptions opt;
    opt.mode = TreeMode::Thick;
    opt.n0 = 3;
    opt.n_max = 10;
    opt.stop_when_extinct = false;
    Rng rng = make_rng(1, 1);
    TreeRun run = run_tree(TreeSource::iid(), s, opt, rng);
    REQUIRE(run.levels.size() == 8);
    for (const auto& st : run.levels) {
      const auto blk = s.main_block(st.level);
      CHECK(st.points_placed == blk.second - blk.first + 1);
      CHECK(s.buffer_size(st.level) + st.points_placed == s.block_size(st.level));
      CHECK(s.buffer_size(st.level) ==
            static_cast<std::uint64_t>(std::floor(4 * std::pow(2.0, 0.75 * st.level))));
    }
  }

  TEST_CASE("runs are reproducible") {
    CoveringSchedule s(BigRat(1, 8));
    TreeOptions opt;
    opt.mode = TreeMode::Thick;
    opt.n0 = 6;
    opt.n_max = 18;
    Rng a = make_rng(77, 3), b = make_rng(77, 3);
    auto ra = run_tree(TreeSource::iid(), s, opt, a);
    auto rb = run_tree(TreeSource::iid(), s, opt, b);
    REQUIRE(ra.levels.size() == rb.levels.size());
    for (std::size_t i = 0; i < ra.levels.size(); ++i) CHECK(ra.levels[i].remaining == rb.levels[i].remaining);
  }

  TEST_CASE("plain i.i.d. extinction at L = 1013") {
    CoveringSchedule s(BigRat(1013));
    for (std::uint64_t t = 0; t < 10; ++t) {
      Rng rng = make_rng(7, t);
      CHECK_FALSE(event_A_trial(TreeSource::iid(), s, 8, 8, rng));
    }
  }

  TEST_CASE("lacunary sequence source behaves like i.i.d. at L = 1013") {
    CoveringSchedule s(BigRat(1013));
    for (std::uint64_t t = 0; t < 3; ++t) {
      Rng rng = make_rng(9, t);
      CHECK_FALSE(event_A_trial(TreeSource::sequence(SequenceSpec::power(BigInt(2))), s, 8, 6, rng));
    }
  }

  TEST_CASE("fixed x with too little precision raises") {
    CoveringSchedule s(BigRat(2));
    TreeOptions opt;
    opt.n0 = 4;
    opt.n_max = 14;
    Rng rng = make_rng(1, 0);
    auto src = TreeSource::sequence(SequenceSpec::power(BigInt(2)), UnitPoint::parse("0.3", 64));
    CHECK_THROWS_AS(run_tree(src, s, opt, rng), PrecisionExhausted);
  }

  TEST_CASE("thick survival examples") {
    Rng r0 = make_rng(1, 0);
    CHECK(thick_survival_trial(TreeSource::iid(), CoveringSchedule(BigRat(0)), 4, 20, 1.2, r0).survived);
    int fails = 0;
    for (std::uint64_t t = 0; t < 5; ++t) {
      Rng r = make_rng(2, t);
      fails += !thick_survival_trial(TreeSource::iid(), CoveringSchedule(BigRat(1013)), 4, 20, 1.2, r).survived;
    }
    CHECK(fails == 5);
  }

  TEST_CASE("extinction implies grid coverage") {
    const int n0 = 6, n_max = 10;
    CoveringSchedule s(BigRat(64));
    TreeOptions opt;
    opt.n0 = n0;
    opt.n_max = n_max;
    opt.history_window = 0;
    for (std::uint64_t t = 0; t < 3; ++t) {
      Rng rng = make_rng(31, t);
      auto seq = SequenceSpec::power(BigInt(2));
      UnitPoint x = UnitPoint::random(rng, required_precision(seq, s.cutoff(n_max)));
      Rng unused = make_rng(0, 0);
      TreeRun run = run_tree(TreeSource::sequence(seq, x), s, opt, unused);
      if (!run.extinct) continue;
      const std::uint64_t first = s.cutoff(n0 - 1) + 1, last = s.cutoff(run.extinct_level);
      auto pts = fractional_points(seq, x, first, last);
      const long cells = 1L << n_max;
      std::vector<long> diff(cells + 1, 0);
      auto mark = [&](long a, long b) {  // inclusive, a <= b, within one period
        diff[a] += 1;
        diff[b + 1] -= 1;
      };
      for (std::uint64_t i = 0; i < pts.size(); ++i) {
        const double r = 4.0 * 64 / static_cast<double>(first + i);
        const double c = std::ldexp(static_cast<double>(pts[i]), -64);
        long lo = static_cast<long>(std::floor((c - r) * cells)) + 1;
        long hi = static_cast<long>(std::ceil((c + r) * cells)) - 1;
        if (hi - lo + 1 >= cells) {
          mark(0, cells - 1);
          continue;
        }
        const long a = ((lo % cells) + cells) % cells, b = ((hi % cells) + cells) % cells;
        if (a <= b) {
          mark(a, b);
        } else {
          mark(a, cells - 1);
          mark(0, b);
        }
      }
      std::vector<char> close(cells, 0);
      long acc = 0;
      for (long k = 0; k < cells; ++k) close[k] = (acc += diff[k]) > 0;
      for (char v : close) CHECK(v);
    }
  }
}
