#include "circov/frontier.hpp"

#include <algorithm>

#include "circov/errors.hpp"

namespace circov {

RunSet RunSet::full(std::uint64_t size) {
  RunSet r;
  if (size > 0) r.runs_.push_back({0, size});
  return r;
}

RunSet RunSet::from_indices(std::vector<std::uint64_t> idx) {
  std::sort(idx.begin(), idx.end());
  RunSet r;
  for (std::uint64_t i : idx) {
    if (!r.runs_.empty() && i <= r.runs_.back().second) {
      r.runs_.back().second = std::max(r.runs_.back().second, i + 1);
    } else {
      r.runs_.push_back({i, i + 1});
    }
  }
  return r;
}

RunSet RunSet::from_runs(std::vector<Run> runs) {
  std::sort(runs.begin(), runs.end());
  RunSet r;
  for (const Run& x : runs) {
    if (x.first >= x.second) continue;
    if (!r.runs_.empty() && x.first <= r.runs_.back().second) {
      r.runs_.back().second = std::max(r.runs_.back().second, x.second);
    } else {
      r.runs_.push_back(x);
    }
  }
  return r;
}

std::uint64_t RunSet::count() const {
  std::uint64_t c = 0;
  for (const Run& r : runs_) c += r.second - r.first;
  return c;
}

bool RunSet::contains(std::uint64_t i) const {
  auto it = std::upper_bound(runs_.begin(), runs_.end(), i,
                             [](std::uint64_t v, const Run& r) { return v < r.first; });
  if (it == runs_.begin()) return false;
  --it;
  return i < it->second;
}

std::vector<std::uint64_t> RunSet::indices() const {
  std::vector<std::uint64_t> out;
  out.reserve(count());
  for (const Run& r : runs_)
    for (std::uint64_t i = r.first; i < r.second; ++i) out.push_back(i);
  return out;
}

RunSet RunSet::minus(const RunSet& other) const {
  RunSet out;
  std::size_t j = 0;
  const auto& o = other.runs_;
  for (Run r : runs_) {
    std::uint64_t a = r.first;
    while (j < o.size() && o[j].second <= a) ++j;
    std::size_t k = j;
    while (a < r.second) {
      if (k >= o.size() || o[k].first >= r.second) {
        out.runs_.push_back({a, r.second});
        break;
      }
      if (o[k].first > a) out.runs_.push_back({a, o[k].first});
      a = std::max(a, o[k].second);
      ++k;
    }
  }
  return out;
}

RunSet RunSet::intersect(const RunSet& other) const {
  RunSet out;
  std::size_t i = 0, j = 0;
  const auto& o = other.runs_;
  while (i < runs_.size() && j < o.size()) {
    std::uint64_t a = std::max(runs_[i].first, o[j].first);
    std::uint64_t b = std::min(runs_[i].second, o[j].second);
    if (a < b) out.runs_.push_back({a, b});
    if (runs_[i].second < o[j].second)
      ++i;
    else
      ++j;
  }
  return out;
}

bool RunSet::subset_of(const RunSet& other) const { return minus(other).empty(); }

RunSet RunSet::children() const {
  RunSet out;
  out.runs_.reserve(runs_.size());
  for (const Run& r : runs_) out.runs_.push_back({2 * r.first, 2 * r.second});
  return out;
}

RunSet RunSet::dilate_cyclic(std::uint64_t size) const {
  if (runs_.empty()) return {};
  std::vector<Run> parts;
  parts.reserve(runs_.size() + 2);
  for (const Run& r : runs_) {
    std::uint64_t a = r.first == 0 ? 0 : r.first - 1;
    std::uint64_t b = std::min(size, r.second + 1);
    parts.push_back({a, b});
  }
  if (runs_.front().first == 0) parts.push_back({size - 1, size});
  if (runs_.back().second == size) parts.push_back({0, 1});
  return from_runs(std::move(parts));
}

std::uint64_t RunSet::nth(std::uint64_t k) const {
  for (const Run& r : runs_) {
    std::uint64_t len = r.second - r.first;
    if (k < len) return r.first + k;
    k -= len;
  }
  throw InvalidInput("RunSet::nth index out of range");
}

std::string to_string(TreeMode m) { return m == TreeMode::Plain ? "plain" : "thick"; }

TreeMode parse_tree_mode(const std::string& s) {
  if (s == "plain") return TreeMode::Plain;
  if (s == "thick") return TreeMode::Thick;
  throw InvalidInput("unknown tree mode '" + s + "' (expected plain or thick)");
}

Frontier::Frontier(int level, TreeMode mode, RunSet survivors)
    : level_(level), mode_(mode), survivors_(std::move(survivors)) {
  if (level < 0 || level > kMaxLevel) throw InvalidInput("frontier level out of range [0, 62]");
  if (!survivors_.empty() && survivors_.runs().back().second > size())
    throw InvalidInput("frontier index exceeds 2^level - 1");
}

Frontier Frontier::all(int level, TreeMode mode) {
  if (level < 0 || level > kMaxLevel) throw InvalidInput("frontier level out of range [0, 62]");
  return Frontier(level, mode, RunSet::full(std::uint64_t{1} << level));
}

Frontier Frontier::from_indices(int level, TreeMode mode, std::vector<std::uint64_t> idx) {
  return Frontier(level, mode, RunSet::from_indices(std::move(idx)));
}

RunSet Frontier::watched() const {
  return mode_ == TreeMode::Plain ? survivors_ : survivors_.dilate_cyclic(size());
}

RunSet Frontier::killed_by(const RunSet& colored) const {
  RunSet reach = mode_ == TreeMode::Plain ? colored : colored.dilate_cyclic(size());
  return survivors_.intersect(reach);
}

}  // namespace circov
