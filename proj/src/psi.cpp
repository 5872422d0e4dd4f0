#include "circov/psi.hpp"

#include <cmath>
#include <regex>
#include <sstream>

#include "circov/bigint.hpp"
#include "circov/errors.hpp"

namespace circov {

Psi Psi::zero() { return Psi{}; }

Psi Psi::iterated_log(double coef, double a0, double a1, double a2, double a3) {
  if (!(coef >= 0.0) || !std::isfinite(coef)) throw InvalidInput("psi coefficient must be finite and nonnegative");
  Psi p;
  p.kind_ = coef == 0.0 ? Kind::Zero : Kind::IteratedLog;
  p.coef_ = coef;
  p.a_[0] = a0;
  p.a_[1] = a1;
  p.a_[2] = a2;
  p.a_[3] = a3;
  if (a3 != 0.0)
    p.start_ = 3814280;  // first n with log log log n >= 1
  else if (a2 != 0.0)
    p.start_ = 16;  // first n with log log n >= 1
  else if (a1 != 0.0)
    p.start_ = 3;  // first n with log n >= 1
  else
    p.start_ = 1;
  return p;
}

Psi Psi::custom(std::function<double(double)> f, std::string name, std::uint64_t start) {
  Psi p;
  p.kind_ = Kind::Custom;
  p.fn_ = std::move(f);
  p.name_ = std::move(name);
  p.start_ = start;
  return p;
}

double Psi::eval(double x) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Custom:
      return fn_(std::max(x, static_cast<double>(start_)));
    case Kind::IteratedLog:
      break;
  }
  x = std::max(x, static_cast<double>(start_));
  return std::exp(log_eval_from_logx(std::log(x)));
}

double Psi::log_eval_from_logx(double log_x) const {
  if (kind_ == Kind::Zero) return -INFINITY;
  if (kind_ == Kind::Custom) return std::log(eval(std::exp(log_x)));
  log_x = std::max(log_x, std::log(static_cast<double>(start_)));
  double v = std::log(coef_) - a_[0] * log_x;
  if (a_[1] != 0.0) v -= a_[1] * std::log(log_x);
  if (a_[2] != 0.0) v -= a_[2] * std::log(std::log(log_x));
  if (a_[3] != 0.0) v -= a_[3] * std::log(std::log(std::log(log_x)));
  return v;
}

std::string Psi::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Zero:
      return "0";
    case Kind::Custom:
      return name_;
    case Kind::IteratedLog:
      os << "iterlog:" << coef_ << "," << a_[0] << "," << a_[1] << "," << a_[2] << "," << a_[3];
      return os.str();
  }
  return "?";
}

namespace {

std::string squeeze(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  return out;
}

double parse_number(const std::string& s, double fallback) {
  if (s.empty()) return fallback;
  return parse_rational(s).get_d();
}

}  // namespace

Psi Psi::parse(const std::string& text) {
  std::string s = squeeze(text);
  if (s == "0" || s == "zero") return zero();
  if (s.rfind("iterlog:", 0) == 0) {
    std::vector<double> v;
    std::stringstream ss(s.substr(8));
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(parse_number(tok, 0.0));
    if (v.empty() || v.size() > 5) throw InvalidInput("iterlog needs coef,a0[,a1,a2,a3]: " + text);
    v.resize(5, 0.0);
    return iterated_log(v[0], v[1], v[2], v[3], v[4]);
  }
  // c/(n <factors>) or c/n
  static const std::regex head(R"(^([0-9.eE+\-]*)/\(?n(.*?)\)?$)");
  std::smatch m;
  if (!std::regex_match(s, m, head)) throw InvalidInput("unrecognized psi: " + text);
  double coef = parse_number(m[1].str(), 1.0);
  std::string rest = m[2].str();
  double a[4] = {1.0, 0.0, 0.0, 0.0};
  // factor grammar: log^k n | (log n)^k | log n, with 1..3 nested logs
  static const std::regex factor(R"(^(?:\(((?:log){1,3})n\)\^([0-9.]+)|((?:log){1,3})\^([0-9.]+)n|((?:log){1,3})n))");
  while (!rest.empty()) {
    std::smatch f;
    if (!std::regex_search(rest, f, factor)) throw InvalidInput("unrecognized psi factor '" + rest + "' in " + text);
    std::string logs;
    double power = 1.0;
    if (f[1].matched) {
      logs = f[1].str();
      power = parse_number(f[2].str(), 1.0);
    } else if (f[3].matched) {
      logs = f[3].str();
      power = parse_number(f[4].str(), 1.0);
    } else {
      logs = f[5].str();
    }
    std::size_t depth = logs.size() / 3;
    a[depth] += power;
    rest = f.suffix().str();
  }
  return iterated_log(coef, a[0], a[1], a[2], a[3]);
}

}  // namespace circov
