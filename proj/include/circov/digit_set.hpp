#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace circov {

using u128 = unsigned __int128;

/// Numbers in [0,1] whose base-b digits all lie in D.
class DigitSet {
 public:
  DigitSet(unsigned base, std::vector<unsigned> digits);
  static DigitSet full(unsigned base = 2);
  /// Middle-third Cantor set: base 3, digits {0, 2}.
  static DigitSet cantor();
  /// "full", "full:B", "cantor", or "B:d1,d2,...".
  static DigitSet parse(const std::string& text);

  unsigned base() const { return base_; }
  const std::vector<unsigned>& digits() const { return digits_; }
  bool is_full() const { return digits_.size() == base_; }
  /// log|D| / log b.
  double s() const;
  bool has_digit(unsigned d) const { return d < base_ && mask_[d]; }

  /// Cylinder k at depth j (k < b^j) has all j digits in D.
  bool admissible(std::uint64_t k, unsigned j) const;
  /// Number of admissible k in [0, X) at depth j, X <= b^j.
  u128 count_admissible_below(u128 X, unsigned j) const;
  /// b^j, raising InvalidInput when it does not fit in 64 bits.
  std::uint64_t cells(unsigned j) const;
  std::string describe() const;

 private:
  unsigned base_;
  std::vector<unsigned> digits_;
  std::vector<bool> mask_;
};

/// 1/nu + s - 1, or EMPTY when nu > 1/(1-s).
struct PredictedDimension {
  bool empty = false;
  double value = 0.0;
  double threshold = 0.0;  // 1/(1-s); +inf when s = 1
};
PredictedDimension predicted_dimension(double nu, double s);

struct FrostmanCount {
  unsigned n = 0;
  unsigned grid_base = 2;
  std::uint64_t count = 0;
  double ratio = 0.0;  // count / grid_base^{s n}
};

/// Number of grid cells [k/g^n, (k+1)/g^n) carrying positive mass of the
/// natural self-similar measure on G. Boundary points of G that only touch a
/// cell do not count, so the base-b count at depth m is |D|^m exactly.
FrostmanCount frostman_grid(const DigitSet& G, unsigned n, unsigned grid_base = 2);

}  // namespace circov
