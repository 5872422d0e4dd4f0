#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace circov {

/// Sorted, disjoint, non-adjacent half-open runs [a, b) of cell indices in
/// {0 .. 2^level - 1}. Frontiers at deep levels are mostly long runs broken
/// by a few colored cells, so this stays proportional to the number of
/// colorings rather than to the number of survivors.
class RunSet {
 public:
  using Run = std::pair<std::uint64_t, std::uint64_t>;

  RunSet() = default;
  static RunSet full(std::uint64_t size);
  /// Sorted or unsorted, duplicates allowed.
  static RunSet from_indices(std::vector<std::uint64_t> idx);
  /// Runs may overlap or touch; they are normalised.
  static RunSet from_runs(std::vector<Run> runs);

  std::uint64_t count() const;
  bool empty() const { return runs_.empty(); }
  bool contains(std::uint64_t i) const;
  const std::vector<Run>& runs() const { return runs_; }
  std::vector<std::uint64_t> indices() const;

  RunSet minus(const RunSet& other) const;
  RunSet intersect(const RunSet& other) const;
  bool subset_of(const RunSet& other) const;
  /// [a, b) -> [2a, 2b).
  RunSet children() const;
  /// Union with the cyclic neighbours i-1, i+1 (mod size).
  RunSet dilate_cyclic(std::uint64_t size) const;
  /// The k-th smallest element (0-based), k < count().
  std::uint64_t nth(std::uint64_t k) const;

  bool operator==(const RunSet& o) const { return runs_ == o.runs_; }

 private:
  std::vector<Run> runs_;
};

enum class TreeMode { Plain, Thick };
std::string to_string(TreeMode m);
TreeMode parse_tree_mode(const std::string& s);

/// Surviving dyadic intervals I_{n,k} = [k/2^n, (k+1)/2^n) at one level.
class Frontier {
 public:
  static constexpr int kMaxLevel = 62;

  Frontier(int level, TreeMode mode, RunSet survivors);
  /// Every vertex of the level survives.
  static Frontier all(int level, TreeMode mode);
  static Frontier from_indices(int level, TreeMode mode, std::vector<std::uint64_t> idx);

  int level() const { return level_; }
  TreeMode mode() const { return mode_; }
  std::uint64_t size() const { return std::uint64_t{1} << level_; }
  const RunSet& survivors() const { return survivors_; }
  std::uint64_t count() const { return survivors_.count(); }
  bool contains(std::uint64_t i) const { return survivors_.contains(i); }
  std::vector<std::uint64_t> indices() const { return survivors_.indices(); }

  /// Cells whose coloring can remove a survivor: the survivors themselves in
  /// plain mode, survivors and their cyclic neighbours in thick mode.
  RunSet watched() const;
  /// Cells removed when the given colored cells are applied.
  RunSet killed_by(const RunSet& colored) const;

 private:
  int level_;
  TreeMode mode_;
  RunSet survivors_;
};

/// Level n cell of floor(x 2^64).
inline std::uint64_t cell_of(std::uint64_t top64, int level) {
  return level == 0 ? 0 : top64 >> (64 - level);
}

}  // namespace circov
