#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "circov/dvoretzky.hpp"
#include "circov/lengths.hpp"
#include "circov/psi.hpp"
#include "circov/real.hpp"
#include "circov/rng.hpp"

namespace circov {

struct CasselsInstance {
  RealDescriptor alpha, beta;
  RealDescriptor gamma, delta;  // zero by default
  std::uint64_t N = 2;
  unsigned precision_bits = 4096;
};

struct ProductRecord {
  std::uint64_t n = 0;
  double dist_alpha = 0.0;   // ||n alpha - gamma||
  double dist_beta = 0.0;    // ||n beta - delta||
  double product = 0.0;      // n ||.|| ||.||
  double normalized = 0.0;   // n log n ||.|| ||.||
};

struct ProductMinima {
  std::vector<ProductRecord> records;  // strictly decreasing `normalized`
  ProductRecord minimum;               // smallest normalized product, first n on ties
  ProductRecord min_plain;             // smallest n ||.|| ||.||, first n on ties
};

/// Scans 2 <= n <= N (log 1 = 0 would make n = 1 trivially minimal).
ProductMinima product_minima(const CasselsInstance& inst);

struct InhomApprox {
  std::uint64_t n = 0;
  double distance = 0.0;
  std::string distance_decimal;
};

/// argmin over A < n <= 2A of ||n alpha - gamma||, smallest n on ties.
/// Comparisons are decided on exact enclosures.
InhomApprox best_inhom_approx(const RealDescriptor& alpha, const RealDescriptor& gamma, std::uint64_t A,
                              unsigned precision_bits = 4096);

/// Best approximations over the dyadic blocks (A0 2^k, A0 2^{k+1}], k < blocks.
std::vector<InhomApprox> chain_best_inhom(const RealDescriptor& alpha, const RealDescriptor& gamma, std::uint64_t A0,
                                          unsigned blocks, unsigned precision_bits = 4096);

struct DeltaCheck {
  std::uint64_t m = 0;
  std::uint64_t n_min = 2;
  std::vector<std::uint64_t> first_n;  // per delta = i/m, 0 when no n <= N works
  std::uint64_t failures = 0;
  std::uint64_t worst_index = 0;       // a failing delta if any, else the one needing the largest n
  std::uint64_t worst_n = 0;
  bool all_pass() const { return failures == 0; }
};

/// ||n alpha - gamma|| for n = 1..N (index 0 unused), via an exact orbit.
std::vector<double> orbit_distances(const RealDescriptor& alpha, const RealDescriptor& gamma, std::uint64_t N,
                                    unsigned precision_bits = 4096);

/// For each delta = i/m: the least n in [n_min, N] with
/// n log n ||n alpha - gamma|| ||n beta - delta|| <= C.
DeltaCheck uniform_delta_check(const RealDescriptor& alpha, const RealDescriptor& gamma, const RealDescriptor& beta,
                               std::uint64_t N, double C, std::uint64_t m, std::uint64_t n_min = 2,
                               unsigned precision_bits = 4096);
/// Same with the alpha distances precomputed by orbit_distances.
DeltaCheck uniform_delta_check(const std::vector<double>& alpha_dist, const RealDescriptor& beta, std::uint64_t N,
                               double C, std::uint64_t m, std::uint64_t n_min = 2, unsigned precision_bits = 4096);

/// l_n = psi(n) / ||n alpha - gamma|| clipped to [0, 1] (1 when the distance is 0).
LengthSequence random_model_lengths(const RealDescriptor& alpha, const RealDescriptor& gamma, const Psi& psi,
                                    std::uint64_t N, unsigned precision_bits = 4096);

/// Dvoretzky trial on random_model_lengths.
DvoretzkyTrial random_model_trial(const RealDescriptor& alpha, const RealDescriptor& gamma, const Psi& psi,
                                  std::uint64_t N, Rng& rng, unsigned precision_bits = 4096);

}  // namespace circov
