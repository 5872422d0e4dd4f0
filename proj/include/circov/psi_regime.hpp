#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "circov/bigint.hpp"
#include "circov/psi.hpp"
#include "circov/real.hpp"

namespace circov {

enum class Regime { CoveringLike, NoncoveringLike, Indeterminate };
std::string to_string(Regime r);

struct RegimeOptions {
  double C = 8.0;               // covering threshold for window sums
  double eps = 0.125;           // non-covering threshold
  std::uint64_t horizon = 1ULL << 22;  // enumeration cap for S_l
  bool snap = false;            // snap psi to b-adic blocks with values 2^-k
  unsigned precision_bits = 4096;
};

struct WindowPoint {
  double v = 0.0;        // log log N (iterated-log families) or N (direct sums)
  double value = 0.0;    // sum over N < n <= 2^N of psi(n)
};

struct RegimeDiagnostics {
  std::uint64_t b = 2;
  unsigned L = 0;
  std::vector<std::uint64_t> S_ell_sizes;  // index l-1 holds #S_l
  std::vector<bool> S_ell_capped;          // range of S_l cut by the horizon
  std::uint64_t T1 = 0;
  BigRat T2_covering;      // sum #S_l / b^l
  BigRat T2_noncovering;   // sum #S_l / b^{l-1}
  bool accumulators_consistent = true;     // streaming totals equal the recomputation
  std::vector<WindowPoint> windows;
  bool windows_asymptotic = false;         // integrals in log-log coordinates rather than direct sums
  bool pointwise_ok = false;               // psi(n) <= 1/(n log n) for n >= 2
  bool snapped = false;
  std::uint64_t horizon = 0;
  Regime classification = Regime::Indeterminate;
  std::string evidence;
};

/// Window sum over N < n <= 2^N written in u = log log n:
///   integral from v = log log N to e^v + log log 2 of psi(n) n log n du.
/// Only for the iterated-log family.
double asymptotic_window(const Psi& psi, double v);

/// psi(n) <= 1/(n log n) for every n >= 2, decided analytically for the
/// iterated-log family beyond start() and checked directly below it and on a
/// log-spaced grid.
bool psi_below_critical(const Psi& psi);

RegimeDiagnostics psi_regime(const RealDescriptor& alpha, const RealDescriptor& gamma, const Psi& psi,
                             std::uint64_t b, unsigned L, const RegimeOptions& opt = {});

/// T1, T2 recomputed from bucket sizes.
void recompute_T(const std::vector<std::uint64_t>& sizes, std::uint64_t b, std::uint64_t& T1, BigRat& T2_cov,
                 BigRat& T2_noncov);

}  // namespace circov
