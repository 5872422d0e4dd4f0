#include "circov/bigint.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "circov/errors.hpp"

namespace circov {

std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt floor_of(const BigRat& q) { return floor_div(q.get_num(), q.get_den()); }
BigInt ceil_of(const BigRat& q) { return ceil_div(q.get_num(), q.get_den()); }

BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

double log_abs(const BigInt& v) {
  if (v == 0) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  double mant = std::fabs(mpz_get_d_2exp(&exp2, v.get_mpz_t()));
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

double log_abs(const BigRat& v) { return log_abs(v.get_num()) - log_abs(v.get_den()); }

std::string to_string(const BigInt& v) { return v.get_str(10); }

std::string to_string(const BigRat& v) {
  BigRat c = v;
  c.canonicalize();
  return c.get_str(10);
}

std::string to_decimal(const BigRat& v, unsigned digits) {
  BigRat c = v;
  c.canonicalize();
  std::string out;
  BigInt num = c.get_num();
  const BigInt& den = c.get_den();
  if (num < 0) {
    out += '-';
    num = -num;
  }
  BigInt ip, rem;
  mpz_tdiv_qr(ip.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  out += ip.get_str(10);
  if (rem == 0) return out;
  out += '.';
  for (unsigned i = 0; i < digits && rem != 0; ++i) {
    rem *= 10;
    BigInt d;
    mpz_tdiv_qr(d.get_mpz_t(), rem.get_mpz_t(), rem.get_mpz_t(), den.get_mpz_t());
    out += static_cast<char>('0' + d.get_ui());
  }
  return out;
}

BigRat parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw InvalidInput("empty number");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigRat num = parse_rational(s.substr(0, slash));
    BigRat den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw InvalidInput("zero denominator in '" + s + "'");
    BigRat r = num / den;
    r.canonicalize();
    return r;
  }

  bool neg = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    neg = s[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_len = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
      seen_digit = true;
      if (seen_dot) ++frac_len;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw InvalidInput("not a number: '" + s + "'");
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw InvalidInput("not a number: '" + s + "'");
    ++i;
    std::string e = s.substr(i);
    if (e.empty()) throw InvalidInput("missing exponent in '" + s + "'");
    std::size_t used = 0;
    try {
      exponent = std::stol(e, &used);
    } catch (const std::exception&) {
      throw InvalidInput("bad exponent in '" + s + "'");
    }
    if (used != e.size()) throw InvalidInput("bad exponent in '" + s + "'");
  }
  BigInt mant(digits, 10);
  long shift = exponent - frac_len;
  BigRat r;
  if (shift >= 0) {
    r = BigRat(mant * ipow(10, static_cast<unsigned long>(shift)));
  } else {
    r = BigRat(mant, ipow(10, static_cast<unsigned long>(-shift)));
  }
  r.canonicalize();
  return neg ? BigRat(-r) : r;
}

BigInt to_bigint(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return r;
}

std::uint64_t to_u64(const BigInt& v) {
  if (v < 0 || bit_length(v) > 64) throw InvalidInput("value does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

}  // namespace circov
