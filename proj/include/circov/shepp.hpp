#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circov/lengths.hpp"

namespace circov {

enum class SeriesVerdict { Diverges, Converges, Inconclusive };
std::string to_string(SeriesVerdict v);

struct SheppOptions {
  double diverge_below = 1.02;  // fitted s <= this: DIVERGES
  double converge_above = 1.2;  // fitted s >= this: CONVERGES
  double decades = 2.0;         // fit over n in [N / 10^decades, N]
  std::size_t samples = 400;    // log-spaced sample points kept
};

struct SheppReport {
  std::vector<std::uint64_t> n;        // sampled indices
  std::vector<double> log10_terms;     // log10 t_n at those indices
  double log10_partial_sum = 0.0;      // log10 of sum_{n <= N} t_n
  double fitted_s = 0.0;               // t_n ~ c n^{-s}
  SeriesVerdict numeric = SeriesVerdict::Inconclusive;
  std::optional<SeriesVerdict> closed_form;
  SeriesVerdict verdict = SeriesVerdict::Inconclusive;  // closed form when known
  bool monotone_spot_check = true;     // l_n nonincreasing on the sampled grid (n >= 16)
};

/// t_n = n^{-2} exp(l_1 + ... + l_n) for n <= N, with the prefix sum held in
/// a 50-digit float, plus the numeric exponent fit and the closed-form
/// classification of recognised families.
SheppReport shepp_terms(const LengthSequence& lengths, std::uint64_t N, const SheppOptions& opt = {});

/// Exact classification of sum n^{-2} exp(l_1 + ... + l_n) for the
/// recognised families; nullopt for explicit lengths.
std::optional<SeriesVerdict> shepp_closed_form(const LengthSequence& lengths);

}  // namespace circov
