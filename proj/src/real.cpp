#include "circov/real.hpp"

#include <cctype>
#include <vector>

#include "circov/errors.hpp"

namespace circov {

RealDescriptor::RealDescriptor() : p_(0), q_(0), d_(0), r_(1) {}

RealDescriptor RealDescriptor::rational(const BigRat& v) {
  RealDescriptor out;
  BigRat c = v;
  c.canonicalize();
  out.p_ = c.get_num();
  out.r_ = c.get_den();
  return out;
}

RealDescriptor RealDescriptor::surd(const BigInt& p, const BigInt& q, const BigInt& d, const BigInt& r) {
  if (r == 0) throw InvalidInput("surd with zero denominator");
  if (q != 0 && d < 0) throw InvalidInput("surd with negative radicand");
  RealDescriptor out;
  out.p_ = p;
  out.q_ = q;
  out.d_ = q == 0 ? BigInt(0) : d;
  out.r_ = r;
  out.normalize();
  return out;
}

void RealDescriptor::normalize() {
  if (r_ < 0) {
    r_ = -r_;
    p_ = -p_;
    q_ = -q_;
  }
  if (q_ != 0) {
    if (mpz_perfect_square_p(d_.get_mpz_t())) {
      BigInt s;
      mpz_sqrt(s.get_mpz_t(), d_.get_mpz_t());
      p_ += q_ * s;
      q_ = 0;
      d_ = 0;
    }
  } else {
    d_ = 0;
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), p_.get_mpz_t(), q_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r_.get_mpz_t());
  if (g > 1) {
    p_ /= g;
    q_ /= g;
    r_ /= g;
  }
}

BigRat RealDescriptor::rational_value() const {
  if (!is_rational()) throw InvalidInput("descriptor is irrational");
  BigRat v(p_, r_);
  v.canonicalize();
  return v;
}

ScaledInterval RealDescriptor::scaled(const BigInt& D) const {
  if (D <= 0) throw InvalidInput("scale must be positive");
  ScaledInterval out;
  out.den = D;
  BigInt base = p_ * D;
  if (q_ == 0) {
    out.lo = floor_div(base, r_);
    out.hi = ceil_div(base, r_);
    return out;
  }
  // floor(|q| D sqrt(d)) is exact via the integer square root; the value is
  // irrational, so the ceiling is one more.
  BigInt aq = abs(q_);
  BigInt rad = aq * aq * D * D * d_;
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), rad.get_mpz_t());
  BigInt s_lo, s_hi;
  if (q_ > 0) {
    s_lo = s;
    s_hi = s + 1;
  } else {
    s_lo = -(s + 1);
    s_hi = -s;
  }
  out.lo = floor_div(base + s_lo, r_);
  out.hi = ceil_div(base + s_hi, r_);
  if (out.lo == out.hi) out.hi += 1;  // irrational values are never exact
  return out;
}

ScaledInterval RealDescriptor::fixed(unsigned long bits) const { return scaled(pow2(bits)); }

BigInt RealDescriptor::floor() const { return scaled(BigInt(1)).lo; }

int RealDescriptor::sign() const {
  if (q_ == 0) return sgn(p_);
  ScaledInterval iv = scaled(BigInt(1));
  return iv.lo >= 0 ? 1 : -1;
}

RealDescriptor RealDescriptor::operator-() const {
  RealDescriptor out = *this;
  out.p_ = -p_;
  out.q_ = -q_;
  return out;
}

RealDescriptor RealDescriptor::operator+(const RealDescriptor& o) const {
  if (q_ != 0 && o.q_ != 0 && d_ != o.d_)
    throw InvalidInput("sum of surds with different radicands is not representable");
  BigInt d = q_ != 0 ? d_ : o.d_;
  return surd(p_ * o.r_ + o.p_ * r_, q_ * o.r_ + o.q_ * r_, d, r_ * o.r_);
}

RealDescriptor RealDescriptor::operator*(const RealDescriptor& o) const {
  if (q_ != 0 && o.q_ != 0 && d_ != o.d_)
    throw InvalidInput("product of surds with different radicands is not representable");
  BigInt d = q_ != 0 ? d_ : o.d_;
  // (p + q s)(p' + q' s) = pp' + qq'd + (pq' + qp') s
  return surd(p_ * o.p_ + q_ * o.q_ * d, p_ * o.q_ + q_ * o.p_, d, r_ * o.r_);
}

RealDescriptor RealDescriptor::pow(unsigned long k) const {
  RealDescriptor result = rational(BigRat(1));
  RealDescriptor base = *this;
  while (k > 0) {
    if (k & 1UL) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

RealDescriptor RealDescriptor::inverse() const {
  if (q_ == 0) {
    if (p_ == 0) throw InvalidInput("inverse of zero");
    return rational(BigRat(r_, p_));
  }
  // r / (p + q s) = r (p - q s) / (p^2 - q^2 d)
  BigInt norm = p_ * p_ - q_ * q_ * d_;
  return surd(r_ * p_, -(r_ * q_), d_, norm);
}

double RealDescriptor::to_double() const {
  ScaledInterval iv = fixed(64);
  BigRat v(iv.lo, iv.den);
  return v.get_d();
}

std::string RealDescriptor::to_string() const {
  if (q_ == 0) return circov::to_string(rational_value());
  return "surd(" + p_.get_str() + "," + q_.get_str() + "," + d_.get_str() + "," + r_.get_str() + ")";
}

namespace {

std::string lower_trim(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

}  // namespace

RealDescriptor RealDescriptor::parse(std::string_view text) {
  std::string s = lower_trim(text);
  if (s.empty()) throw InvalidInput("empty real descriptor");
  if (s == "golden" || s == "(sqrt5-1)/2" || s == "(sqrt(5)-1)/2") return surd(-1, 1, 5, 2);
  if (s == "phi") return surd(1, 1, 5, 2);
  if (s == "sqrt2-1" || s == "sqrt(2)-1" || s == "silver") return surd(-1, 1, 2, 1);
  if (s.rfind("sqrt(", 0) == 0 && s.back() == ')') {
    BigRat d = parse_rational(s.substr(5, s.size() - 6));
    if (d.get_den() != 1) throw InvalidInput("sqrt of a non-integer is not supported: " + s);
    return surd(0, 1, d.get_num(), 1);
  }
  if (s.rfind("surd(", 0) == 0 && s.back() == ')') {
    std::string body = s.substr(5, s.size() - 6);
    std::vector<BigInt> parts;
    std::size_t pos = 0;
    while (true) {
      std::size_t comma = body.find(',', pos);
      std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      BigRat v = parse_rational(tok);
      if (v.get_den() != 1) throw InvalidInput("surd components must be integers: " + s);
      parts.push_back(v.get_num());
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (parts.size() != 4) throw InvalidInput("surd(p,q,d,r) needs four integers: " + s);
    return surd(parts[0], parts[1], parts[2], parts[3]);
  }
  return rational(parse_rational(s));
}

}  // namespace circov
