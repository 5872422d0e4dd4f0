#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "circov/bigint.hpp"

namespace circov {

/// Level cutoffs N_n = sum_{j<=n} floor(L 2^{j/nu}) with an optional buffer
/// block of floor(L 2^{(1-eps/2) n}) indices at the start of each level.
class CoveringSchedule {
 public:
  CoveringSchedule(const BigRat& L, double nu = 1.0, std::optional<double> buffer_eps = std::nullopt);

  const BigRat& L() const { return L_; }
  double nu() const { return nu_; }
  std::optional<double> buffer_eps() const { return buffer_eps_; }

  /// floor(L 2^{n/nu}) = N_n - N_{n-1}.
  std::uint64_t block_size(long n) const;
  /// N_n with N_{-1} = 0.
  std::uint64_t cutoff(long n) const;
  /// #Delta'_n, zero when buffers are disabled; clipped to the block size.
  std::uint64_t buffer_size(long n) const;
  /// True when floor(L 2^{(1-eps/2)n}) exceeded the level block and was clipped.
  bool buffer_clipped(long n) const;
  /// Main block Delta_n = (first-1, last]: returns {first, last} (1-based, inclusive).
  std::pair<std::uint64_t, std::uint64_t> main_block(long n) const;
  std::pair<std::uint64_t, std::uint64_t> buffer_block(long n) const;
  /// Level n with N_{n-1} < N <= N_n.
  long level_of(std::uint64_t N) const;

  std::string describe() const;

 private:
  std::uint64_t raw_buffer(long n) const;

  BigRat L_;
  double nu_;
  std::optional<double> buffer_eps_;
};

}  // namespace circov
