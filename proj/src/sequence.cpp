#include "circov/sequence.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <fstream>
#include <sstream>

#include "circov/arithmetic_functions.hpp"
#include "circov/errors.hpp"

namespace circov {

bool Term::is_integer() const { return !log_only && value.is_rational() && value.rational_value().get_den() == 1; }

BigInt Term::integer() const {
  if (!is_integer()) throw InvalidInput("term is not an integer");
  return value.rational_value().get_num();
}

double Term::log() const {
  if (log_only) return log_value;
  if (value.is_rational()) return log_abs(value.rational_value());
  ScaledInterval iv = value.fixed(64);
  return log_abs(iv.lo) - 64.0 * std::log(2.0);
}

std::string Term::to_string() const {
  if (!log_only) return value.to_string();
  using boost::multiprecision::cpp_bin_float_50;
  cpp_bin_float_50 v = boost::multiprecision::exp(cpp_bin_float_50(log_value));
  return v.str(30, std::ios_base::scientific);
}

SequenceSpec SequenceSpec::geometric_real(const RealDescriptor& q0, const RealDescriptor& r) {
  if (q0.sign() <= 0) throw InvalidInput("geometric sequence needs q0 > 0");
  if ((r + RealDescriptor::rational(-1)).sign() <= 0) throw InvalidInput("geometric sequence needs r > 1");
  SequenceSpec s;
  s.variant_ = Variant::GeometricReal;
  s.q0_ = q0;
  s.r_ = r;
  s.claimed_gap = "lacunary";
  return s;
}

SequenceSpec SequenceSpec::power(const BigInt& base) {
  if (base < 2) throw InvalidInput("power sequence needs base >= 2");
  SequenceSpec s;
  s.variant_ = Variant::IntegerLacunary;
  s.rule_ = LacunaryRule::Power;
  s.base_ = base;
  s.claimed_gap = "lacunary";
  return s;
}

SequenceSpec SequenceSpec::floor_power(const BigRat& r) {
  if (r <= 1) throw InvalidInput("floor-power sequence needs r > 1");
  SequenceSpec s;
  s.variant_ = Variant::IntegerLacunary;
  s.rule_ = LacunaryRule::FloorPower;
  s.ratio_ = r;
  s.claimed_gap = "lacunary";
  return s;
}

SequenceSpec SequenceSpec::recurrence(std::vector<BigInt> coeffs, std::vector<BigInt> init) {
  if (coeffs.empty() || init.size() != coeffs.size()) throw InvalidInput("recurrence needs as many initial terms as coefficients");
  SequenceSpec s;
  s.variant_ = Variant::IntegerLacunary;
  s.rule_ = LacunaryRule::Recurrence;
  s.coeffs_ = std::move(coeffs);
  s.init_ = std::move(init);
  s.claimed_gap = "lacunary";
  return s;
}

namespace {

BigInt eval_poly(const std::vector<BigInt>& c, const BigInt& x) {
  BigInt v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

}  // namespace

SequenceSpec SequenceSpec::polynomial(std::vector<BigInt> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.size() < 2) throw InvalidInput("polynomial sequence needs degree >= 1");
  if (coeffs.back() <= 0) throw InvalidInput("polynomial sequence needs a positive leading coefficient");
  SequenceSpec s;
  s.variant_ = Variant::Polynomial;
  s.coeffs_ = coeffs;
  // Beyond the Cauchy bound of P and of P(x+1)-P(x) both are positive.
  BigInt lead = coeffs.back();
  BigInt bound = 0;
  for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) {
    BigInt q = ceil_div(abs(coeffs[i]), lead);
    if (q > bound) bound = q;
  }
  bound += 2 + to_bigint(coeffs.size());
  std::uint64_t R = to_u64(bound);
  std::uint64_t last_bad = 0;
  for (std::uint64_t m = 1; m <= R; ++m) {
    BigInt pm = eval_poly(coeffs, to_bigint(m)), pn = eval_poly(coeffs, to_bigint(m + 1));
    if (pm <= 0 || pn <= pm) last_bad = m;
  }
  s.shift_ = last_bad;
  s.claimed_gap = "polynomial";
  return s;
}

SequenceSpec SequenceSpec::prime_power(unsigned d) {
  if (d < 1) throw InvalidInput("prime power needs d >= 1");
  SequenceSpec s;
  s.variant_ = Variant::PrimePower;
  s.d_ = d;
  s.claimed_gap = "polynomial";
  return s;
}

SequenceSpec SequenceSpec::piatetski_shapiro(const BigRat& c) {
  if (c <= 1) throw InvalidInput("Piatetski-Shapiro exponent must exceed 1");
  SequenceSpec s;
  s.variant_ = Variant::PiatetskiShapiro;
  s.ratio_ = c;
  s.ratio_.canonicalize();
  s.claimed_gap = "polynomial";
  return s;
}

SequenceSpec SequenceSpec::explicit_list(std::vector<BigInt> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i] <= 0) throw InvalidInput("explicit sequence term " + std::to_string(i + 1) + " is not positive");
    if (i > 0 && terms[i] <= terms[i - 1])
      throw InvalidInput("explicit sequence is not strictly increasing at index " + std::to_string(i + 1));
  }
  SequenceSpec s;
  s.variant_ = Variant::Explicit;
  s.list_ = std::move(terms);
  return s;
}

SequenceSpec SequenceSpec::stretched_exponential(double c, double theta) {
  if (!(c > 0) || !(theta > 0)) throw InvalidInput("stretched exponential needs c > 0 and theta > 0");
  SequenceSpec s;
  s.variant_ = Variant::StretchedExponential;
  s.c_ = c;
  s.theta_ = theta;
  s.claimed_gap = "subexponential";
  return s;
}

SequenceSpec SequenceSpec::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open sequence file " + path);
  std::vector<BigInt> terms;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::string t;
    for (char ch : line)
      if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) continue;
    BigInt v;
    if (v.set_str(t, 10) != 0) throw InvalidInput("line " + std::to_string(lineno) + " of " + path + " is not an integer");
    terms.push_back(v);
  }
  return explicit_list(std::move(terms));
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

std::vector<BigInt> parse_ints(const std::string& s) {
  std::vector<BigInt> out;
  for (const auto& t : split(s, ',')) {
    BigRat v = parse_rational(t);
    if (v.get_den() != 1) throw InvalidInput("expected an integer, got " + t);
    out.push_back(v.get_num());
  }
  return out;
}

}  // namespace

SequenceSpec SequenceSpec::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto arg = [&](const std::string& prefix) { return s.substr(prefix.size()); };
  auto starts = [&](const std::string& prefix) { return s.rfind(prefix, 0) == 0; };
  if (s == "pow2") return power(2);
  if (s == "fib") return recurrence({1, 1}, {1, 2});
  if (s == "exp_sqrt") return stretched_exponential(1.0, 0.5);
  if (s == "n") return polynomial({0, 1});
  if (starts("n^")) {
    BigRat d = parse_rational(arg("n^"));
    if (d.get_den() != 1 || d < 1) throw InvalidInput("n^d needs a positive integer d");
    std::vector<BigInt> c(d.get_num().get_ui() + 1, 0);
    c.back() = 1;
    return polynomial(c);
  }
  if (starts("pow:")) return power(parse_rational(arg("pow:")).get_num());
  if (starts("floorpow:")) return floor_power(parse_rational(arg("floorpow:")));
  if (starts("poly:")) return polynomial(parse_ints(arg("poly:")));
  if (starts("primepow:")) return prime_power(static_cast<unsigned>(parse_rational(arg("primepow:")).get_num().get_ui()));
  if (starts("ps:")) return piatetski_shapiro(parse_rational(arg("ps:")));
  if (starts("list:")) return explicit_list(parse_ints(arg("list:")));
  if (starts("file:")) return from_file(text.substr(text.find(':') + 1));
  if (starts("stretched:")) {
    auto p = split(arg("stretched:"), ',');
    if (p.size() != 2) throw InvalidInput("stretched:C,THETA");
    return stretched_exponential(parse_rational(p[0]).get_d(), parse_rational(p[1]).get_d());
  }
  if (starts("geom:")) {
    std::string body = arg("geom:");
    // q0,r where r may itself contain commas inside surd(...)
    auto comma = body.find(',');
    if (comma == std::string::npos) throw InvalidInput("geom:Q0,R");
    return geometric_real(RealDescriptor::parse(body.substr(0, comma)), RealDescriptor::parse(body.substr(comma + 1)));
  }
  if (starts("rec:")) {
    auto parts = split(arg("rec:"), ';');
    if (parts.size() != 2) throw InvalidInput("rec:c1,..,ck;i1,..,ik");
    return recurrence(parse_ints(parts[0]), parse_ints(parts[1]));
  }
  throw InvalidInput("unrecognized sequence: " + text);
}

bool SequenceSpec::integer_valued() const {
  switch (variant_) {
    case Variant::GeometricReal:
      return q0_.is_rational() && r_.is_rational() && q0_.rational_value().get_den() == 1 &&
             r_.rational_value().get_den() == 1;
    case Variant::StretchedExponential:
      return false;
    default:
      return true;
  }
}

int SequenceSpec::power_of_two_exponent() const {
  if (variant_ == Variant::IntegerLacunary && rule_ == LacunaryRule::Power) {
    if (mpz_popcount(base_.get_mpz_t()) == 1) return static_cast<int>(bit_length(base_) - 1);
  }
  return 0;
}

std::string SequenceSpec::describe() const {
  std::ostringstream os;
  switch (variant_) {
    case Variant::GeometricReal:
      os << "geom:" << q0_.to_string() << "," << r_.to_string();
      break;
    case Variant::IntegerLacunary:
      if (rule_ == LacunaryRule::Power)
        os << "pow:" << base_.get_str();
      else if (rule_ == LacunaryRule::FloorPower)
        os << "floorpow:" << circov::to_string(ratio_);
      else {
        os << "rec:";
        for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i].get_str();
        os << ";";
        for (std::size_t i = 0; i < init_.size(); ++i) os << (i ? "," : "") << init_[i].get_str();
      }
      break;
    case Variant::Polynomial:
      os << "poly:";
      for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i].get_str();
      if (shift_) os << " (shift " << shift_ << ")";
      break;
    case Variant::PrimePower:
      os << "primepow:" << d_;
      break;
    case Variant::PiatetskiShapiro:
      os << "ps:" << circov::to_string(ratio_);
      break;
    case Variant::Explicit:
      os << "list[" << list_.size() << "]";
      break;
    case Variant::StretchedExponential:
      os << "stretched:" << c_ << "," << theta_;
      break;
  }
  return os.str();
}

std::vector<Term> SequenceSpec::terms(std::uint64_t first, std::uint64_t last) const {
  if (first < 1) throw InvalidInput("sequence indices start at 1");
  std::vector<Term> out;
  if (last < first) return out;
  out.reserve(last - first + 1);
  auto push_int = [&](const BigInt& v) {
    Term t;
    t.value = RealDescriptor::rational(BigRat(v));
    out.push_back(std::move(t));
  };
  switch (variant_) {
    case Variant::GeometricReal: {
      RealDescriptor cur = q0_ * r_.pow(first - 1);
      for (std::uint64_t n = first; n <= last; ++n) {
        Term t;
        t.value = cur;
        out.push_back(t);
        cur = cur * r_;
      }
      break;
    }
    case Variant::IntegerLacunary:
      if (rule_ == LacunaryRule::Power) {
        BigInt cur = ipow(base_, first);
        for (std::uint64_t n = first; n <= last; ++n) {
          push_int(cur);
          cur *= base_;
        }
      } else if (rule_ == LacunaryRule::FloorPower) {
        BigInt num = ipow(ratio_.get_num(), first), den = ipow(ratio_.get_den(), first);
        for (std::uint64_t n = first; n <= last; ++n) {
          push_int(floor_div(num, den));
          num *= ratio_.get_num();
          den *= ratio_.get_den();
        }
      } else {
        std::vector<BigInt> hist(init_.begin(), init_.end());
        for (std::uint64_t n = 1; n <= last; ++n) {
          BigInt v;
          if (n <= init_.size()) {
            v = init_[n - 1];
          } else {
            v = 0;
            const std::size_t k = coeffs_.size();
            for (std::size_t i = 0; i < k; ++i) v += coeffs_[i] * hist[hist.size() - 1 - i];
            hist.push_back(v);
            hist.erase(hist.begin());
          }
          if (n >= first) push_int(v);
        }
      }
      break;
    case Variant::Polynomial:
      for (std::uint64_t n = first; n <= last; ++n) push_int(eval_poly(coeffs_, to_bigint(n + shift_)));
      break;
    case Variant::PrimePower: {
      std::vector<std::uint64_t> ps = first_primes(last);
      for (std::uint64_t n = first; n <= last; ++n) push_int(ipow(to_bigint(ps[n - 1]), d_));
      break;
    }
    case Variant::PiatetskiShapiro: {
      const unsigned long a = ratio_.get_num().get_ui(), b = ratio_.get_den().get_ui();
      for (std::uint64_t n = first; n <= last; ++n) {
        BigInt v = ipow(to_bigint(n), a), r;
        mpz_root(r.get_mpz_t(), v.get_mpz_t(), b);
        push_int(r);
      }
      break;
    }
    case Variant::Explicit:
      if (last > list_.size())
        throw InvalidInput("explicit sequence has " + std::to_string(list_.size()) + " terms, index " +
                           std::to_string(last) + " requested");
      for (std::uint64_t n = first; n <= last; ++n) push_int(list_[n - 1]);
      break;
    case Variant::StretchedExponential:
      for (std::uint64_t n = first; n <= last; ++n) {
        Term t;
        t.log_only = true;
        t.log_value = c_ * std::pow(static_cast<double>(n), theta_);
        out.push_back(t);
      }
      break;
  }
  return out;
}

std::vector<Term> generate(const SequenceSpec& spec, std::size_t N) {
  if (N < 1) throw InvalidInput("generate needs N >= 1");
  std::vector<Term> out = spec.terms(1, N);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].log_only) {
      if (i > 0 && !(out[i].log_value > out[i - 1].log_value))
        throw InvalidInput("sequence not strictly increasing at index " + std::to_string(i + 1));
      continue;
    }
    if (out[i].value.sign() <= 0) throw InvalidInput("sequence term " + std::to_string(i + 1) + " is not positive");
    if (i > 0 && (out[i].value + -out[i - 1].value).sign() <= 0)
      throw InvalidInput("sequence not strictly increasing at index " + std::to_string(i + 1));
  }
  return out;
}

std::vector<BigInt> generate_integers(const SequenceSpec& spec, std::size_t N) {
  if (!spec.integer_valued()) throw InvalidInput("sequence " + spec.describe() + " is not integer-valued");
  std::vector<BigInt> out;
  for (const auto& t : generate(spec, N)) out.push_back(t.integer());
  return out;
}

namespace {

constexpr unsigned kRealGuardBits = 64;

std::uint64_t top64_of_product(const BigInt& q, const UnitPoint& x) {
  const unsigned B = x.precision();
  BigInt v = q * x.numerator();
  mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), B);
  v >>= (B - 64);
  return to_u64(v);
}

}  // namespace

unsigned required_precision(const SequenceSpec& spec, std::uint64_t last, unsigned exact_bits) {
  if (last == 0) return UnitPoint::kMinPrecision;
  if (int e = spec.power_of_two_exponent(); e > 0)
    return static_cast<unsigned>(std::max<std::uint64_t>(UnitPoint::kMinPrecision, static_cast<std::uint64_t>(e) * last + 64));
  std::vector<Term> t = spec.terms(last, last);
  if (t[0].log_only) throw InvalidInput("points of " + spec.describe() + " cannot be computed exactly");
  std::size_t bits = bit_length(t[0].value.floor()) + exact_bits;
  if (!t[0].is_integer()) bits += kRealGuardBits;
  return static_cast<unsigned>(std::max<std::size_t>(UnitPoint::kMinPrecision, bits));
}

std::vector<std::uint64_t> fractional_points(const SequenceSpec& spec, const UnitPoint& x, std::uint64_t first,
                                             std::uint64_t last, unsigned exact_bits) {
  if (exact_bits < 1 || exact_bits > 64) throw InvalidInput("exact_bits must be in 1..64");
  std::vector<std::uint64_t> out;
  if (last < first) return out;
  out.reserve(last - first + 1);
  const unsigned B = x.precision();
  if (int e = spec.power_of_two_exponent(); e > 0) {
    for (std::uint64_t n = first; n <= last; ++n) {
      const unsigned long s = static_cast<unsigned long>(e) * n;
      if (s + 64 > B)
        throw PrecisionExhausted("{2^" + std::to_string(s) + " x} needs " + std::to_string(s + 64) + " bits of x, have " +
                                 std::to_string(B));
      out.push_back(x.shifted_top64(s));
    }
    return out;
  }
  std::vector<Term> terms = spec.terms(first, last);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Term& t = terms[i];
    const std::uint64_t n = first + i;
    if (t.log_only) throw InvalidInput("points of " + spec.describe() + " cannot be computed exactly");
    if (t.is_integer()) {
      BigInt q = t.integer();
      if (bit_length(q) + exact_bits > B)
        throw PrecisionExhausted("{q_" + std::to_string(n) + " x} needs " + std::to_string(bit_length(q) + exact_bits) +
                                 " bits of x, have " + std::to_string(B));
      out.push_back(top64_of_product(q, x));
      continue;
    }
    const unsigned F = exact_bits + kRealGuardBits;
    if (bit_length(t.value.floor()) + exact_bits > B)
      throw PrecisionExhausted("{q_" + std::to_string(n) + " x} needs more bits of x than " + std::to_string(B));
    ScaledInterval iv = t.value.fixed(F);
    const unsigned long total = F + B;
    BigInt lo = iv.lo * x.numerator();
    BigInt width = (iv.hi - iv.lo) * x.numerator();
    mpz_fdiv_r_2exp(lo.get_mpz_t(), lo.get_mpz_t(), total);
    BigInt hi = lo + width;
    BigInt tl = lo >> (total - 64), th = hi >> (total - 64);
    if (th >= pow2(64) || (tl >> (64 - exact_bits)) != (th >> (64 - exact_bits)))
      throw PrecisionExhausted("leading bits of {q_" + std::to_string(n) + " x} are not determined");
    out.push_back(to_u64(tl));
  }
  return out;
}

}  // namespace circov
