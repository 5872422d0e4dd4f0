#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "circov/bigint.hpp"
#include "circov/real.hpp"

namespace circov {

struct ContinuedFractionExpansion {
  RealDescriptor alpha;
  BigInt a0;                            // floor(alpha)
  std::vector<BigInt> partial_quotients;  // a_1 .. a_K
  std::vector<BigInt> numerators;         // p_1 .. p_K
  std::vector<BigInt> denominators;       // q_1 .. q_K
  double levy_sup = 0.0;                  // max_k log(q_k)/k
  bool finite = false;                    // rational input ran out of quotients
  unsigned long precision_bits = 0;       // working precision that sufficed

  std::size_t depth() const { return partial_quotients.size(); }
  /// q_k with the conventions q_0 = 1, q_{-1} = 0.
  BigInt q(long k) const;
  BigInt p(long k) const;
  BigInt max_partial_quotient() const;
};

inline constexpr std::size_t kAllQuotients = std::numeric_limits<std::size_t>::max();

/// First K partial quotients of alpha. Irrational inputs are expanded from
/// interval enclosures whose precision doubles up to max_precision_bits;
/// failing that, PrecisionExhausted is raised. Rationals use Euclid and may
/// return fewer quotients with `finite` set (pass kAllQuotients for all).
ContinuedFractionExpansion continued_fraction(const RealDescriptor& alpha, std::size_t K,
                                              unsigned long max_precision_bits = 4096);

/// Expands until the last denominator exceeds `bound` (or a rational ends).
ContinuedFractionExpansion continued_fraction_past(const RealDescriptor& alpha, const BigInt& bound,
                                                   unsigned long max_precision_bits = 4096);

/// Re-checks the recursion q_{k+1} = a_{k+1} q_k + q_{k-1}, monotonicity and
/// the approximation inequality; throws std::logic_error on any failure.
void verify_expansion(const ContinuedFractionExpansion& cf);

}  // namespace circov
