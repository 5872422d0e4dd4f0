#include "circov/lengths.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "circov/errors.hpp"

namespace circov {

namespace {

double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

LengthSequence LengthSequence::constant(double v) {
  LengthSequence s;
  s.family_ = Family::Constant;
  s.cd_ = clip01(v);
  return s;
}

LengthSequence LengthSequence::harmonic(const BigRat& c) {
  if (c < 0) throw InvalidInput("harmonic length constant must be nonnegative");
  LengthSequence s;
  s.family_ = Family::Harmonic;
  s.c_ = c;
  s.c_.canonicalize();
  s.cd_ = c.get_d();
  return s;
}

LengthSequence LengthSequence::shepp_critical(const BigRat& c, double beta, double a) {
  if (c < 0) throw InvalidInput("length constant must be nonnegative");
  LengthSequence s;
  s.family_ = Family::SheppCritical;
  s.c_ = c;
  s.c_.canonicalize();
  s.cd_ = c.get_d();
  s.beta_ = beta;
  s.a_ = a;
  return s;
}

LengthSequence LengthSequence::explicit_values(std::vector<double> v, std::string tag) {
  LengthSequence s;
  s.family_ = Family::Explicit;
  for (double& x : v) x = clip01(x);
  s.values_ = std::move(v);
  s.tag_ = std::move(tag);
  return s;
}

LengthSequence LengthSequence::parse(const std::string& text) {
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::string body = colon == std::string::npos ? "" : text.substr(colon + 1);
  std::vector<std::string> args;
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) args.push_back(tok);
  if (head == "harmonic" && args.size() == 1) return harmonic(parse_rational(args[0]));
  if (head == "shepp" && args.size() == 3)
    return shepp_critical(parse_rational(args[0]), parse_rational(args[1]).get_d(), parse_rational(args[2]).get_d());
  if (head == "const" && args.size() == 1) return constant(parse_rational(args[0]).get_d());
  throw InvalidInput("unrecognized length sequence: " + text);
}

double LengthSequence::operator()(std::uint64_t n) const {
  if (n == 0) throw InvalidInput("length indices start at 1");
  switch (family_) {
    case Family::Constant:
      return cd_;
    case Family::Harmonic:
      return clip01(cd_ / static_cast<double>(n));
    case Family::SheppCritical: {
      if (n == 1) return clip01(cd_);
      const double x = static_cast<double>(n);
      return clip01(cd_ / x - beta_ / (x * std::pow(std::log(x), a_)));
    }
    case Family::Explicit:
      return n <= values_.size() ? values_[n - 1] : 0.0;
  }
  return 0.0;
}

std::optional<BigRat> LengthSequence::exact(std::uint64_t n) const {
  if (family_ == Family::Harmonic) {
    BigRat v = c_ / BigRat(to_bigint(n));
    v.canonicalize();
    return v > 1 ? BigRat(1) : v;
  }
  if (family_ == Family::Constant && cd_ == 0.0) return BigRat(0);
  return std::nullopt;
}

std::string LengthSequence::describe() const {
  std::ostringstream os;
  switch (family_) {
    case Family::Constant:
      os << "const:" << cd_;
      break;
    case Family::Harmonic:
      os << "harmonic:" << to_string(c_);
      break;
    case Family::SheppCritical:
      os << "shepp:" << to_string(c_) << "," << beta_ << "," << a_;
      break;
    case Family::Explicit:
      os << tag_ << "[" << values_.size() << "]";
      break;
  }
  return os.str();
}

}  // namespace circov
