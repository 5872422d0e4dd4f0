#include "circov/arithmetic_functions.hpp"

#include <cmath>

#include "circov/errors.hpp"

namespace circov {

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
  if (count == 0) return {};
  double n = static_cast<double>(count);
  // p_n < n (log n + log log n) for n >= 6
  std::uint64_t limit = count < 6 ? 15 : static_cast<std::uint64_t>(n * (std::log(n) + std::log(std::log(n)))) + 10;
  std::vector<std::uint64_t> ps = primes_up_to(limit);
  ps.resize(count);
  return ps;
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  if (bit_length(n) <= 64) return is_prime_u64(to_u64(n));
  return mpz_probab_prime_p(n.get_mpz_t(), 50) > 0;
}

std::uint64_t divisor_count(std::uint64_t n) {
  if (n == 0) throw InvalidInput("divisor_count needs n >= 1");
  std::uint64_t result = 1;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    std::uint64_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    result *= e + 1;
  }
  if (n > 1) result *= 2;
  return result;
}

std::uint64_t root_count(const std::vector<BigInt>& coeffs, std::uint64_t e) {
  if (e == 0) throw InvalidInput("root_count needs e >= 1");
  std::vector<std::uint64_t> c;
  BigInt E = to_bigint(e);
  for (const auto& a : coeffs) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), E.get_mpz_t());
    c.push_back(to_u64(r));
  }
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < e; ++a) {
    std::uint64_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = static_cast<std::uint64_t>((static_cast<u128>(v) * a + c[i]) % e);
    if (v == 0) ++count;
  }
  return count;
}

PiatetskiShapiroStats piatetski_shapiro_prime_stats(const BigRat& c, std::uint64_t X) {
  if (c <= 1) throw InvalidInput("Piatetski-Shapiro exponent must exceed 1");
  PiatetskiShapiroStats out;
  out.X = X;
  const unsigned long a = c.get_num().get_ui(), b = c.get_den().get_ui();
  for (std::uint64_t n = 1; n <= X; ++n) {
    BigInt v = ipow(to_bigint(n), a), r;
    mpz_root(r.get_mpz_t(), v.get_mpz_t(), b);
    if (is_probable_prime(r)) ++out.prime_count;
  }
  if (X > 1) out.heuristic = static_cast<double>(X) / (c.get_d() * std::log(static_cast<double>(X)));
  return out;
}

}  // namespace circov
