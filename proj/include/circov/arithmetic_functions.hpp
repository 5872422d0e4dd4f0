#pragma once

#include <cstdint>
#include <vector>

#include "circov/bigint.hpp"

namespace circov {

/// Primes <= limit by the sieve of Eratosthenes.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);
/// The first `count` primes.
std::vector<std::uint64_t> first_primes(std::size_t count);

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(std::uint64_t n);
/// Deterministic below 2^64, probabilistic (50 rounds) beyond.
bool is_probable_prime(const BigInt& n);

/// tau(n), the number of positive divisors.
std::uint64_t divisor_count(std::uint64_t n);

/// rho_P(e) = #{a mod e : P(a) = 0 mod e}; coefficients low to high.
std::uint64_t root_count(const std::vector<BigInt>& coeffs, std::uint64_t e);

/// Counts primes among floor(n^c), n <= X. Descriptive only.
struct PiatetskiShapiroStats {
  std::uint64_t X = 0;
  std::uint64_t prime_count = 0;
  double heuristic = 0.0;  // X / (c log X)
};
PiatetskiShapiroStats piatetski_shapiro_prime_stats(const BigRat& c, std::uint64_t X);

}  // namespace circov
