#include "circov/arcset.hpp"

#include <algorithm>
#include <cmath>

namespace circov {

Arc Arc::centered(std::uint64_t center, double len) {
  if (!(len > 0.0)) return Arc{center, 0};
  if (len >= 1.0) return full();
  const u128 half = static_cast<u128>(std::ldexp(len, 63));
  if (2 * half >= kCircle) return full();
  return Arc{static_cast<std::uint64_t>(center - static_cast<std::uint64_t>(half)), 2 * half};
}

double Arc::measure() const { return std::ldexp(static_cast<double>(length), -64); }

ArcSet ArcSet::full_circle() {
  ArcSet s;
  s.parts_.push_back({0, kCircle});
  s.measure_ = kCircle;
  return s;
}

ArcSet ArcSet::from_intervals(std::vector<std::pair<u128, u128>> parts) {
  ArcSet s;
  for (auto [a, b] : parts) s.add_linear(a, std::min(b, kCircle));
  return s;
}

void ArcSet::subtract_linear(u128 a, u128 b) {
  if (a >= b || parts_.empty()) return;
  auto it = std::upper_bound(parts_.begin(), parts_.end(), a,
                             [](u128 v, const std::pair<u128, u128>& p) { return v < p.second; });
  while (it != parts_.end() && it->first < b) {
    const u128 lo = it->first, hi = it->second;
    const u128 cut_lo = std::max(lo, a), cut_hi = std::min(hi, b);
    measure_ -= cut_hi - cut_lo;
    if (lo < a && hi > b) {
      it->second = a;
      parts_.insert(it + 1, {b, hi});
      return;
    }
    if (lo < a) {
      it->second = a;
      ++it;
    } else if (hi > b) {
      it->first = b;
      ++it;
    } else {
      it = parts_.erase(it);
    }
  }
}

void ArcSet::add_linear(u128 a, u128 b) {
  if (a >= b) return;
  // remove the overlap first so the measure stays exact, then merge
  subtract_linear(a, b);
  auto it = std::lower_bound(parts_.begin(), parts_.end(), a,
                             [](const std::pair<u128, u128>& p, u128 v) { return p.first < v; });
  it = parts_.insert(it, {a, b});
  measure_ += b - a;
  if (it + 1 != parts_.end() && (it + 1)->first == it->second) {
    it->second = (it + 1)->second;
    parts_.erase(it + 1);
  }
  if (it != parts_.begin() && (it - 1)->second == it->first) {
    (it - 1)->second = it->second;
    parts_.erase(it);
  }
}

void ArcSet::subtract(const Arc& a) {
  if (a.length == 0) return;
  if (a.length >= kCircle) {
    parts_.clear();
    measure_ = 0;
    return;
  }
  const u128 s = a.start, e = s + a.length;
  if (e <= kCircle) {
    subtract_linear(s, e);
  } else {
    subtract_linear(s, kCircle);
    subtract_linear(0, e - kCircle);
  }
}

void ArcSet::add(const Arc& a) {
  if (a.length == 0) return;
  if (a.length >= kCircle) {
    *this = full_circle();
    return;
  }
  const u128 s = a.start, e = s + a.length;
  if (e <= kCircle) {
    add_linear(s, e);
  } else {
    add_linear(s, kCircle);
    add_linear(0, e - kCircle);
  }
}

bool ArcSet::contains(std::uint64_t point) const {
  const u128 p = point;
  auto it = std::upper_bound(parts_.begin(), parts_.end(), p,
                             [](u128 v, const std::pair<u128, u128>& q) { return v < q.second; });
  return it != parts_.end() && it->first <= p;
}

double ArcSet::measure() const { return std::ldexp(static_cast<double>(measure_), -64); }

BigRat ArcSet::measure_exact() const {
  BigInt hi = to_bigint(static_cast<std::uint64_t>(measure_ >> 64));
  BigInt lo = to_bigint(static_cast<std::uint64_t>(measure_));
  BigRat v(BigInt((hi << 64) + lo), pow2(64));
  v.canonicalize();
  return v;
}

std::size_t ArcSet::components() const {
  if (parts_.empty()) return 0;
  if (parts_.size() > 1 && parts_.front().first == 0 && parts_.back().second == kCircle) return parts_.size() - 1;
  return parts_.size();
}

bool ArcSet::check_invariants() const {
  u128 total = 0;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i].first >= parts_[i].second || parts_[i].second > kCircle) return false;
    if (i > 0 && parts_[i - 1].second >= parts_[i].first) return false;  // overlap or adjacency
    total += parts_[i].second - parts_[i].first;
  }
  return total == measure_ && measure_ <= kCircle;
}

ArcSet subtract_arc(ArcSet set, const Arc& a) {
  set.subtract(a);
  return set;
}

std::string to_decimal_string(u128 units) {
  BigInt hi = to_bigint(static_cast<std::uint64_t>(units >> 64));
  BigInt lo = to_bigint(static_cast<std::uint64_t>(units));
  BigRat v(BigInt((hi << 64) + lo), pow2(64));
  return to_decimal(v, 64);
}

}  // namespace circov
