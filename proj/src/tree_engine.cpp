#include "circov/tree_engine.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <random>
#include <sstream>

#include "circov/errors.hpp"

namespace circov {

namespace {

bool meets_threshold(std::uint64_t survivors, int level, double base) {
  long double need = std::pow(static_cast<long double>(base), static_cast<long double>(level));
  return static_cast<long double>(survivors) >= need;
}

// Explicit uniform points are generated up to this many per level; beyond it
// only the cells that can remove a survivor are sampled.
constexpr std::uint64_t kExplicitPointLimit = std::uint64_t{1} << 20;

// Maps sorted positions within `w` (0-based ranks) to cell indices.
RunSet ranks_to_cells(const RunSet& w, std::vector<std::uint64_t> ranks) {
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  std::vector<std::uint64_t> cells;
  cells.reserve(ranks.size());
  std::size_t k = 0;
  std::uint64_t base = 0;
  for (const auto& r : w.runs()) {
    std::uint64_t len = r.second - r.first;
    while (k < ranks.size() && ranks[k] < base + len) {
      cells.push_back(r.first + (ranks[k] - base));
      ++k;
    }
    base += len;
  }
  return RunSet::from_indices(std::move(cells));
}

struct Coloring {
  RunSet colored;
  RunSet tracked;  // region on which `colored` is exact
};

// K i.i.d. uniform points at the frontier's level.
Coloring iid_coloring(const Frontier& f, std::uint64_t K, Rng& rng) {
  const int n = f.level();
  if (K <= kExplicitPointLimit) {
    std::vector<std::uint64_t> cells(K);
    for (auto& c : cells) c = cell_of(rng(), n);
    return {RunSet::from_indices(std::move(cells)), RunSet::full(f.size())};
  }
  RunSet w = f.watched();
  const std::uint64_t wc = w.count();
  if (wc == 0) return {RunSet{}, w};
  // Number of points falling in the watched cells.
  std::uint64_t M = K;
  if (wc < f.size()) {
    std::binomial_distribution<std::uint64_t> bin(K, static_cast<double>(wc) / static_cast<double>(f.size()));
    M = bin(rng);
  }
  if (M <= 2 * wc) {
    std::uniform_int_distribution<std::uint64_t> pick(0, wc - 1);
    std::vector<std::uint64_t> ranks(M);
    for (auto& r : ranks) r = pick(rng);
    return {ranks_to_cells(w, std::move(ranks)), w};
  }
  // Multinomial over the watched cells by sequential binomials.
  std::vector<std::uint64_t> ranks;
  std::uint64_t rem = M;
  for (std::uint64_t i = 0; i < wc && rem > 0; ++i) {
    std::uint64_t h;
    if (i + 1 == wc) {
      h = rem;
    } else {
      std::binomial_distribution<std::uint64_t> bin(rem, 1.0 / static_cast<double>(wc - i));
      h = bin(rng);
    }
    if (h > 0) ranks.push_back(i);
    rem -= h;
  }
  return {ranks_to_cells(w, std::move(ranks)), w};
}

}  // namespace

std::pair<Frontier, LevelStats> color_cells(const Frontier& f, const RunSet& colored, std::uint64_t points_placed,
                                            double threshold_base) {
  LevelStats s;
  s.level = f.level();
  s.survivor_count = f.count();
  s.points_placed = points_placed;
  s.colored_hits = colored.intersect(f.watched()).count();
  RunSet remaining = f.survivors().minus(f.killed_by(colored));
  s.remaining = remaining.count();
  s.threshold_met = meets_threshold(s.survivor_count, s.level, threshold_base);
  return {Frontier(f.level() + 1, f.mode(), remaining.children()), s};
}

std::pair<Frontier, LevelStats> color_level_top64(const Frontier& f, const std::vector<std::uint64_t>& points,
                                                  double threshold_base) {
  std::vector<std::uint64_t> cells;
  cells.reserve(points.size());
  for (std::uint64_t p : points) cells.push_back(cell_of(p, f.level()));
  return color_cells(f, RunSet::from_indices(std::move(cells)), points.size(), threshold_base);
}

std::pair<Frontier, LevelStats> color_level(const Frontier& f, const std::vector<UnitPoint>& points,
                                            double threshold_base) {
  std::vector<std::uint64_t> top;
  top.reserve(points.size());
  for (const auto& p : points) top.push_back(p.top64());
  return color_level_top64(f, top, threshold_base);
}

void ColoringRecord::push(LevelColoring c) {
  levels.push_back(std::move(c));
  if (window > 0)
    while (levels.size() > window) levels.pop_front();
}

const LevelColoring* ColoringRecord::find(int level) const {
  for (const auto& l : levels)
    if (l.level == level) return &l;
  return nullptr;
}

void ColoringRecord::add_full_level(int level, const std::vector<std::uint64_t>& points_top64) {
  if (level < 0 || level > Frontier::kMaxLevel) throw InvalidInput("level out of range");
  std::vector<std::uint64_t> cells;
  for (std::uint64_t p : points_top64) cells.push_back(cell_of(p, level));
  push({level, RunSet::full(std::uint64_t{1} << level), RunSet::from_indices(std::move(cells))});
}

bool uncolored_path_exists(const ColoringRecord& record, int n, int R) {
  if (n < 0 || R < 0) throw InvalidInput("uncolored_path_exists needs n, R >= 0");
  if (n + R > Frontier::kMaxLevel) throw InvalidInput("path leaves the supported level range");
  RunSet alive = RunSet::full(std::uint64_t{1} << n);
  for (int m = n; m <= n + R; ++m) {
    const LevelColoring* lc = record.find(m);
    if (!lc) throw InvalidInput("coloring record has no level " + std::to_string(m) + " (window too short)");
    if (!alive.subset_of(lc->watched))
      throw InvalidInput("coloring record did not track every cell needed at level " + std::to_string(m));
    alive = alive.minus(lc->colored);
    if (alive.empty()) return false;
    if (m < n + R) alive = alive.children();
  }
  return true;
}

TreeSource TreeSource::sequence(SequenceSpec s, std::optional<UnitPoint> x) {
  TreeSource t;
  t.kind = Kind::Sequence;
  t.seq = std::move(s);
  t.x = std::move(x);
  return t;
}

std::string TreeSource::describe() const {
  if (kind == Kind::Iid) return "iid";
  std::string s = "sequence:" + seq->describe();
  s += x ? ",x=fixed" : ",x=random";
  return s;
}

TreeRun run_tree(const TreeSource& source, const CoveringSchedule& schedule, const TreeOptions& opt, Rng& rng) {
  if (opt.n0 < 0 || opt.n_max < opt.n0) throw InvalidInput("run_tree needs 0 <= n0 <= n_max");
  if (opt.n_max >= Frontier::kMaxLevel) throw InvalidInput("run_tree supports levels below 62");
  if (!(opt.threshold_base > 0)) throw InvalidInput("threshold base must be positive");
  if (source.kind == TreeSource::Kind::Sequence && !source.seq) throw InvalidInput("sequence source without a sequence");

  TreeRun run;
  run.history.window = opt.history_window;
  Frontier f = Frontier::all(opt.n0, opt.mode);
  std::optional<UnitPoint> x = source.x;
  std::uint64_t budget_used = 0;

  for (int n = opt.n0; n <= opt.n_max; ++n) {
    std::uint64_t first, last;
    if (opt.include_buffer) {
      first = schedule.cutoff(n - 1) + 1;
      last = schedule.cutoff(n);
    } else {
      std::tie(first, last) = schedule.main_block(n);
    }
    const std::uint64_t K = last >= first ? last - first + 1 : 0;

    Coloring col;
    if (source.kind == TreeSource::Kind::Iid) {
      col = iid_coloring(f, K, rng);
    } else {
      col.tracked = RunSet::full(f.size());
      if (K > 0) {
        budget_used += K;
        if (budget_used > opt.point_budget)
          throw BudgetExceeded("sequence source needs more than " + std::to_string(opt.point_budget) +
                               " explicit points by level " + std::to_string(n));
        const unsigned need = required_precision(*source.seq, last, 64);
        if (!x) x = UnitPoint::random(rng, std::max(need, UnitPoint::kMinPrecision));
        if (x->precision() < need) {
          if (source.x)
            throw PrecisionExhausted("x carries " + std::to_string(x->precision()) + " bits, level " +
                                     std::to_string(n) + " needs " + std::to_string(need));
          // Extending a random x by fresh random low bits keeps it uniform.
          const unsigned extra = std::max(need - x->precision(), UnitPoint::kMinPrecision);
          UnitPoint low = UnitPoint::random(rng, extra);
          BigInt num = x->numerator();
          mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), extra);
          num += low.numerator();
          x = UnitPoint(num, x->precision() + extra);
        }
        std::vector<std::uint64_t> pts = fractional_points(*source.seq, *x, first, last, 64);
        std::vector<std::uint64_t> cells;
        cells.reserve(pts.size());
        for (std::uint64_t p : pts) cells.push_back(cell_of(p, n));
        col.colored = RunSet::from_indices(std::move(cells));
      }
    }

    if (opt.history_window > 0) run.history.push({n, col.tracked, col.colored});
    auto [next, stats] = color_cells(f, col.colored, K, opt.threshold_base);
    run.levels.push_back(stats);
    f = std::move(next);
    if (stats.remaining == 0) {
      run.extinct = true;
      run.extinct_level = n;
      if (opt.stop_when_extinct) break;
    }
    if (opt.stop_on_threshold_failure && !stats.threshold_met) break;
  }
  if (x) run.x_precision = x->precision();
  return run;
}

EventBound iid_event_bound(int n, int R, const BigRat& L) {
  using Float = boost::multiprecision::cpp_bin_float_100;
  if (n < 0 || R < 0) throw InvalidInput("iid_event_bound needs n, R >= 0");
  CoveringSchedule sched(L);
  Float logv = Float(n + R + 1) * boost::multiprecision::log(Float(2));
  EventBound b;
  for (int j = 0; j <= R; ++j) {
    const int m = n + j;
    const std::uint64_t K = sched.block_size(m);
    if (K == 0) continue;
    if (m == 0) {
      // a single cell receiving K >= 1 points is always colored
      b.log10 = -INFINITY;
      b.value = 0.0;
      b.decimal = "0";
      return b;
    }
    Float p = boost::multiprecision::ldexp(Float(1), -m);
    logv += Float(K) * boost::multiprecision::log1p(-p);
  }
  Float l10 = logv / boost::multiprecision::log(Float(10));
  b.log10 = l10.convert_to<double>();
  Float v = boost::multiprecision::exp(logv);
  b.value = v.convert_to<double>();
  b.decimal = v.str(30, std::ios_base::scientific);
  return b;
}

SurvivalTrial thick_survival_trial(const TreeSource& source, const CoveringSchedule& schedule, int n0, int n_max,
                                   double threshold_base, Rng& rng, TreeMode mode) {
  if (!(threshold_base > 1.0 && threshold_base < 2.0)) throw InvalidInput("threshold base must lie in (1, 2)");
  TreeOptions opt;
  opt.mode = mode;
  opt.n0 = n0;
  opt.n_max = n_max;
  opt.threshold_base = threshold_base;
  opt.stop_on_threshold_failure = true;
  SurvivalTrial t;
  t.run = run_tree(source, schedule, opt, rng);
  const auto& lv = t.run.levels;
  t.survived = static_cast<int>(lv.size()) == n_max - n0 + 1 &&
               std::all_of(lv.begin(), lv.end(), [](const LevelStats& s) { return s.threshold_met; });
  return t;
}

bool event_A_trial(const TreeSource& source, const CoveringSchedule& schedule, int n, int R, Rng& rng) {
  TreeOptions opt;
  opt.mode = TreeMode::Plain;
  opt.n0 = n;
  opt.n_max = n + R;
  TreeRun r = run_tree(source, schedule, opt, rng);
  return !r.extinct && static_cast<int>(r.levels.size()) == R + 1;
}

}  // namespace circov
