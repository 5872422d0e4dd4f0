#include "circov/digit_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "circov/errors.hpp"

namespace circov {

DigitSet::DigitSet(unsigned base, std::vector<unsigned> digits) : base_(base), digits_(std::move(digits)) {
  if (base_ < 2 || base_ > 256) throw InvalidInput("digit set base must lie in [2, 256]");
  std::sort(digits_.begin(), digits_.end());
  digits_.erase(std::unique(digits_.begin(), digits_.end()), digits_.end());
  if (digits_.size() < 2)
    throw InvalidInput("digit set needs at least two digits so that s > 0");
  if (digits_.back() >= base_) throw InvalidInput("digit out of range for base " + std::to_string(base_));
  mask_.assign(base_, false);
  for (unsigned d : digits_) mask_[d] = true;
}

DigitSet DigitSet::full(unsigned base) {
  std::vector<unsigned> d(base);
  for (unsigned i = 0; i < base; ++i) d[i] = i;
  return DigitSet(base, d);
}

DigitSet DigitSet::cantor() { return DigitSet(3, {0, 2}); }

DigitSet DigitSet::parse(const std::string& text) {
  if (text == "full") return full(2);
  if (text == "cantor") return cantor();
  if (text.rfind("full:", 0) == 0) return full(static_cast<unsigned>(std::stoul(text.substr(5))));
  auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidInput("digit set '" + text + "': expected full, cantor or B:d1,d2,..");
  try {
    unsigned b = static_cast<unsigned>(std::stoul(text.substr(0, colon)));
    std::vector<unsigned> d;
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) d.push_back(static_cast<unsigned>(std::stoul(item)));
    return DigitSet(b, d);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const InvalidInput*>(&e)) throw;
    throw InvalidInput("digit set '" + text + "': malformed number");
  }
}

double DigitSet::s() const {
  return std::log(static_cast<double>(digits_.size())) / std::log(static_cast<double>(base_));
}

std::uint64_t DigitSet::cells(unsigned j) const {
  u128 v = 1;
  for (unsigned i = 0; i < j; ++i) {
    v *= base_;
    if (v > std::numeric_limits<std::uint64_t>::max()) throw InvalidInput("b^j exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(v);
}

bool DigitSet::admissible(std::uint64_t k, unsigned j) const {
  for (unsigned i = 0; i < j; ++i) {
    if (!mask_[k % base_]) return false;
    k /= base_;
  }
  return k == 0;
}

u128 DigitSet::count_admissible_below(u128 X, unsigned j) const {
  const u128 total = cells(j);
  if (X >= total) {
    u128 c = 1;
    for (unsigned i = 0; i < j; ++i) c *= digits_.size();
    return c;
  }
  std::vector<unsigned> dig(j);
  for (unsigned i = 0; i < j; ++i) {
    dig[j - 1 - i] = static_cast<unsigned>(X % base_);
    X /= base_;
  }
  std::vector<u128> powD(j + 1, 1);
  for (unsigned i = 1; i <= j; ++i) powD[i] = powD[i - 1] * digits_.size();
  u128 count = 0;
  for (unsigned i = 0; i < j; ++i) {
    const unsigned x = dig[i];
    const auto below = static_cast<u128>(std::lower_bound(digits_.begin(), digits_.end(), x) - digits_.begin());
    count += below * powD[j - 1 - i];
    if (!mask_[x]) return count;
  }
  return count;
}

std::string DigitSet::describe() const {
  if (is_full()) return "full:" + std::to_string(base_);
  std::string s = std::to_string(base_) + ":";
  for (std::size_t i = 0; i < digits_.size(); ++i) s += (i ? "," : "") + std::to_string(digits_[i]);
  return s;
}

PredictedDimension predicted_dimension(double nu, double s) {
  if (!(nu >= 1.0)) throw InvalidInput("predicted_dimension needs nu >= 1");
  if (!(s > 0.0 && s <= 1.0)) throw InvalidInput("predicted_dimension needs s in (0, 1]");
  PredictedDimension p;
  p.threshold = s >= 1.0 ? INFINITY : 1.0 / (1.0 - s);
  if (nu > p.threshold) {
    p.empty = true;
    return p;
  }
  p.value = std::max(0.0, 1.0 / nu + s - 1.0);
  return p;
}

namespace {

struct FrostmanWalker {
  const DigitSet& G;
  u128 gn;  // grid_base^n
  std::vector<std::uint64_t> hits;

  // Cylinder value range is [ (c(b-1) + dmin) / ((b-1) b^m), (c(b-1) + dmax) / ((b-1) b^m) ].
  void walk(u128 c, u128 bm) {
    const u128 b1 = G.base() - 1;
    const u128 den = b1 * bm;
    const u128 lo_num = c * b1 + G.digits().front();
    const u128 hi_num = c * b1 + G.digits().back();
    const u128 first = lo_num * gn / den;                  // cell holding mass just right of the minimum
    const u128 last = (hi_num * gn + den - 1) / den - 1;   // cell holding mass just left of the maximum
    if (last <= first + 1) {
      hits.push_back(static_cast<std::uint64_t>(first));
      if (last > first) hits.push_back(static_cast<std::uint64_t>(last));
      return;
    }
    for (unsigned d : G.digits()) walk(c * G.base() + d, bm * G.base());
  }
};

}  // namespace

FrostmanCount frostman_grid(const DigitSet& G, unsigned n, unsigned grid_base) {
  if (grid_base < 2) throw InvalidInput("grid base must be >= 2");
  const double grid_bits = n * std::log2(static_cast<double>(grid_base));
  if (grid_bits > 40.0) throw InvalidInput("frostman_grid supports grid_base^n <= 2^40");
  u128 gn = 1;
  for (unsigned i = 0; i < n; ++i) gn *= grid_base;
  FrostmanWalker w{G, gn, {}};
  w.walk(0, 1);
  std::sort(w.hits.begin(), w.hits.end());
  w.hits.erase(std::unique(w.hits.begin(), w.hits.end()), w.hits.end());
  FrostmanCount r;
  r.n = n;
  r.grid_base = grid_base;
  r.count = w.hits.size();
  r.ratio = static_cast<double>(r.count) / std::pow(static_cast<double>(grid_base), G.s() * n);
  return r;
}

}  // namespace circov
