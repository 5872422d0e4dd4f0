#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "circov/frontier.hpp"
#include "circov/rng.hpp"
#include "circov/schedule.hpp"
#include "circov/sequence.hpp"
#include "circov/unit_point.hpp"

namespace circov {

struct LevelStats {
  int level = 0;
  std::uint64_t survivor_count = 0;  // #I_n before the level's points are applied
  std::uint64_t colored_hits = 0;    // C_n: distinct colored cells able to remove a survivor
  std::uint64_t points_placed = 0;
  std::uint64_t remaining = 0;       // survivors left after coloring; level n+1 has twice as many
  bool threshold_met = false;        // survivor_count >= base^level
};

/// Apply one level of points. Plain mode removes every survivor containing a
/// point, thick mode also removes both cyclic neighbours of a colored cell.
/// The returned frontier is one level deeper.
std::pair<Frontier, LevelStats> color_level(const Frontier& f, const std::vector<UnitPoint>& points,
                                            double threshold_base = 1.2);
/// Same, with points given as floor(x 2^64).
std::pair<Frontier, LevelStats> color_level_top64(const Frontier& f, const std::vector<std::uint64_t>& points,
                                                  double threshold_base = 1.2);
/// Same, with the set of colored cells already known.
std::pair<Frontier, LevelStats> color_cells(const Frontier& f, const RunSet& colored, std::uint64_t points_placed,
                                            double threshold_base = 1.2);

/// Colored cells of one level restricted to the cells that were tracked.
struct LevelColoring {
  int level = 0;
  RunSet watched;
  RunSet colored;
};

/// Bounded window of per-level colorings kept for path queries.
struct ColoringRecord {
  std::size_t window = 0;  // 0 keeps every level
  std::deque<LevelColoring> levels;

  void push(LevelColoring c);
  const LevelColoring* find(int level) const;
  /// Convenience for explicit experiments: every cell of the level tracked.
  void add_full_level(int level, const std::vector<std::uint64_t>& points_top64);
};

/// True iff some vertex at level n starts an all-uncolored chain through
/// levels n .. n+R. Raises InvalidInput when the record lacks a level of the
/// window or did not track a cell the query depends on.
bool uncolored_path_exists(const ColoringRecord& record, int n, int R);

/// Where the points of index N come from.
struct TreeSource {
  enum class Kind { Iid, Sequence };
  Kind kind = Kind::Iid;
  std::optional<SequenceSpec> seq;
  /// Fixed x; when absent a uniform x is drawn from the trial rng and extended
  /// with further random bits as deeper levels need them.
  std::optional<UnitPoint> x;

  static TreeSource iid() { return {}; }
  static TreeSource sequence(SequenceSpec s, std::optional<UnitPoint> x = std::nullopt);
  std::string describe() const;
};

struct TreeOptions {
  TreeMode mode = TreeMode::Plain;
  int n0 = 0;
  int n_max = 0;
  double threshold_base = 1.2;
  /// Include the buffer block of each level in the coloring. Off by default:
  /// buffer points are ignored.
  bool include_buffer = false;
  /// Levels of coloring history to retain (0 = none).
  std::size_t history_window = 0;
  /// Stop once the frontier is empty.
  bool stop_when_extinct = true;
  /// Stop at the first level whose threshold fails.
  bool stop_on_threshold_failure = false;
  /// Upper bound on explicit points generated for sequence sources.
  std::uint64_t point_budget = 200'000'000;
};

struct TreeRun {
  std::vector<LevelStats> levels;
  bool extinct = false;        // frontier became empty at or before n_max
  int extinct_level = -1;      // level whose coloring emptied the frontier
  ColoringRecord history;
  unsigned x_precision = 0;    // bits of x used (sequence sources)
};

/// Runs levels n0 .. n_max from the full frontier at n0. Deterministic given
/// the rng state (and x for sequence sources).
TreeRun run_tree(const TreeSource& source, const CoveringSchedule& schedule, const TreeOptions& opt, Rng& rng);

/// 2^{n+R+1} prod_{j=0}^{R} (1 - 2^{-(n+j)})^{floor(L 2^{n+j})}.
struct EventBound {
  double log10 = 0.0;
  double value = 0.0;  // underflows to 0 for tiny bounds; log10 is exact enough
  std::string decimal;  // 30 significant digits
};
EventBound iid_event_bound(int n, int R, const BigRat& L);

struct SurvivalTrial {
  bool survived = false;
  TreeRun run;
};
/// survivor_count(n) >= base^n for every n0 <= n <= n_max, starting from the
/// full frontier at n0.
SurvivalTrial thick_survival_trial(const TreeSource& source, const CoveringSchedule& schedule, int n0, int n_max,
                                   double threshold_base, Rng& rng, TreeMode mode = TreeMode::Thick);

/// A(n, R) under the schedule: a plain run from level n with all roots,
/// asking whether anything is left after level n+R.
bool event_A_trial(const TreeSource& source, const CoveringSchedule& schedule, int n, int R, Rng& rng);

}  // namespace circov
