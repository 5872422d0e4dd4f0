#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace circov {

/// Approximation function n -> psi(n) >= 0. The iterated-logarithm family is
///   coef / (n^a0 (log n)^a1 (log log n)^a2 (log log log n)^a3)
/// and is frozen at its value at `start()` for smaller n, where start() is
/// the first n at which every logarithm carrying a nonzero exponent is >= 1.
class Psi {
 public:
  enum class Kind { Zero, IteratedLog, Custom };

  static Psi zero();
  static Psi iterated_log(double coef, double a0, double a1 = 0, double a2 = 0, double a3 = 0);
  static Psi harmonic(double c) { return iterated_log(c, 1.0); }
  static Psi custom(std::function<double(double)> f, std::string name, std::uint64_t start = 1);

  /// "0", "c/n", "1/(n log n)", "1/(n log^2 n)", "1/(n (log n)^2)",
  /// "1/(n log n log log n)", "1/(n log n (log log n)^1.5)",
  /// or "iterlog:coef,a0,a1,a2,a3".
  static Psi parse(const std::string& text);

  double operator()(std::uint64_t n) const { return eval(static_cast<double>(n)); }
  /// Continuous extension used for window integrals (x >= 1).
  double eval(double x) const;
  /// Natural log of psi at real x, usable far beyond double range of x
  /// when x is given through log x.
  double log_eval_from_logx(double log_x) const;

  Kind kind() const { return kind_; }
  double coef() const { return coef_; }
  double a0() const { return a_[0]; }
  double a1() const { return a_[1]; }
  double a2() const { return a_[2]; }
  double a3() const { return a_[3]; }
  std::uint64_t start() const { return start_; }
  std::string describe() const;

 private:
  Kind kind_ = Kind::Zero;
  double coef_ = 0.0;
  double a_[4] = {0, 0, 0, 0};
  std::uint64_t start_ = 1;
  std::function<double(double)> fn_;
  std::string name_;
};

}  // namespace circov
