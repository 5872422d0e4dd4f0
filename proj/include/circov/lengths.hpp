#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circov/bigint.hpp"

namespace circov {

/// n -> l_n in [0, 1]. Families with a closed form carry their parameters so
/// the Shepp classifier can decide them exactly.
class LengthSequence {
 public:
  enum class Family { Constant, Harmonic, SheppCritical, Explicit };

  static LengthSequence constant(double v);
  /// c/n, clipped to 1.
  static LengthSequence harmonic(const BigRat& c);
  /// c/n - beta/(n (log n)^a) for n >= 2, clipped to [0, 1]; l_1 = min(1, c).
  static LengthSequence shepp_critical(const BigRat& c, double beta, double a);
  /// Explicit values l_1, l_2, ... (clipped); indices past the end give 0.
  static LengthSequence explicit_values(std::vector<double> v, std::string tag = "explicit");
  /// "harmonic:C", "shepp:C,BETA,A", "const:V".
  static LengthSequence parse(const std::string& text);

  double operator()(std::uint64_t n) const;
  /// Exact rational l_n when the family is rational (constant rational or
  /// harmonic), otherwise nullopt.
  std::optional<BigRat> exact(std::uint64_t n) const;

  Family family() const { return family_; }
  const BigRat& c() const { return c_; }
  double beta() const { return beta_; }
  double a() const { return a_; }
  bool claims_monotone() const { return family_ != Family::Explicit; }
  std::string describe() const;

 private:
  Family family_ = Family::Constant;
  BigRat c_;
  double cd_ = 0.0;
  double beta_ = 0.0, a_ = 1.0;
  std::optional<BigRat> const_exact_;
  std::vector<double> values_;
  std::string tag_;
};

}  // namespace circov
