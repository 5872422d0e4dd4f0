#pragma once

#include <cstdint>
#include <optional>

#include "circov/bigint.hpp"
#include "circov/contfrac.hpp"
#include "circov/psi.hpp"
#include "circov/real.hpp"

namespace circov {

struct BohrQuery {
  RealDescriptor alpha;
  RealDescriptor gamma;  // zero by default
  std::uint64_t N = 1;
  BigRat eps;
  std::uint64_t b = 300;
  unsigned precision_bits = 4096;
};

/// Exact #{1 <= n <= N : ||n alpha - gamma|| < eps}.
std::uint64_t bohr_count(const BohrQuery& q);

/// Both sides of 1/N < 2 eps < ||q_2 alpha||.
struct BohrPreconditions {
  bool lower_ok = false;  // 1/N < 2 eps
  bool upper_ok = false;  // 2 eps < ||q_2 alpha||
  BigInt q2;
  double norm_q2_alpha = 0.0;
  bool ok() const { return lower_ok && upper_ok; }
};
BohrPreconditions bohr_preconditions(const BohrQuery& q);

struct BohrBracket {
  BigInt lower;  // floor(M)
  BigRat upper;  // 32 M
  BigRat M;
  long K = 0;  // q_K <= N < q_{K+1}
  BigInt qK, qK1;
};

/// Bracket floor(M) <= count <= 32M with
/// M = max(eps N, min(eps q_{K+1}, N/(2 q_K))). Raises PreconditionViolation
/// naming the failing side ("lower" or "upper").
BohrBracket bohr_bracket(const BohrQuery& q);

struct AnnulusOptions {
  BigRat c1{1, 4};
  BigRat c2{65};
  std::optional<BigInt> K_override;  // K(alpha, b); default 10 b max a_k
  BigInt quotient_cap{1000};         // badly-approximable proxy
};

struct AnnulusReport {
  std::uint64_t count = 0;  // #{n <= N : eps/b <= ||n alpha - gamma|| < eps}
  BigRat ratio;             // count / (N eps)
  bool in_band = false;     // c1 <= ratio <= c2
  bool precondition_met = false;  // eps >= K(alpha,b)/N
  BigInt K_alpha_b;
  BigInt max_partial_quotient;
  bool badly_approximable_proxy = false;
};

/// Raises InvalidInput when b < 300.
AnnulusReport annulus_count(const BohrQuery& q, const AnnulusOptions& opt = {});

struct WindowSum {
  double value = 0.0;
  bool capped = false;
  std::uint64_t first = 0;
  double log2_last_requested = 0.0;
  std::uint64_t last_used = 0;
};

/// Sum of psi(n) over 2^N <= n <= 2^(c^N), truncated at `horizon`.
WindowSum exp_window_sum(const Psi& psi, unsigned N, double c, std::uint64_t horizon = (1ULL << 26));

}  // namespace circov
