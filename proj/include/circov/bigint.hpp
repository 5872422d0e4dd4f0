#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace circov {

using BigInt = mpz_class;
using BigRat = mpq_class;

std::size_t bit_length(const BigInt& v);
BigInt pow2(unsigned long e);
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt ceil_div(const BigInt& a, const BigInt& b);
BigInt floor_of(const BigRat& q);
BigInt ceil_of(const BigRat& q);
BigInt ipow(const BigInt& base, unsigned long e);

/// Natural logarithm of |v| for v != 0, accurate to double precision even
/// when v has millions of bits.
double log_abs(const BigInt& v);
double log_abs(const BigRat& v);

std::string to_string(const BigInt& v);
std::string to_string(const BigRat& v);

/// Decimal rendering of a rational, truncated toward zero after `digits`
/// fractional digits. Exact when the expansion terminates earlier.
std::string to_decimal(const BigRat& v, unsigned digits = 40);

/// Parses "17", "-3/7", "0.125", "2.5e-3". The result is exact.
BigRat parse_rational(std::string_view text);

BigInt to_bigint(std::uint64_t v);
std::uint64_t to_u64(const BigInt& v);

}  // namespace circov
