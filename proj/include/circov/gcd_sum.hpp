#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "circov/bigint.hpp"
#include "circov/sequence.hpp"

namespace circov {

/// Slowly varying weights of the gcd-sum hypothesis.
enum class SlowFunction { One, Log, LogLog };
double eval_slow(SlowFunction f, double N);
SlowFunction parse_slow(const std::string& s);
std::string to_string(SlowFunction f);

enum class IndexRule { All, Primes };

struct GcdSumHypothesis {
  double nu = 1.0;
  double eps = 0.01;
  SlowFunction f = SlowFunction::One;
  SlowFunction psi = SlowFunction::LogLog;
  IndexRule index_rule = IndexRule::All;
};

struct GcdSumResult {
  std::uint64_t N = 0;
  double sum = 0.0;
  double bound = 0.0;  // N^{2-nu} / (psi(N) f(N)^nu)
  double ratio = 0.0;  // sum / bound
  std::vector<double> cumulative;  // running total after each m = N+1..2N
  std::uint64_t pairs = 0;
  double index_density = 0.0;  // #(I cap [2N]) f(2N) / (2N)
};

/// sum over N < k <= m <= 2N of
///   min( gcd(q_{n_m}, q_{n_k}) / q_{n_m} * min(log(q_{n_m}/q_{n_k}), log log N), N^{1-nu-eps nu} )
/// where n_k is the k-th element of the index set. Terms are exact integers;
/// the logarithms and the sum are in double, in a fixed order.
GcdSumResult gcd_sum(const SequenceSpec& seq, const GcdSumHypothesis& hyp, std::uint64_t N);

struct GcdTrend {
  std::vector<GcdSumResult> points;
  std::vector<double> shape;  // sum * (log N)^a / N^b
  double max_shape = 0.0;
  double log_slope = 0.0;     // slope of log shape against log N
  bool bounded = false;
};

/// Evaluates gcd_sum on a grid of N and the normalized shape
/// sum * (log N)^shape_log_power / N^shape_power. The window is "bounded"
/// when every shape value is at most `band` and the fitted log-log slope
/// does not exceed `slope_tolerance`.
GcdTrend gcd_sum_trend(const SequenceSpec& seq, const GcdSumHypothesis& hyp, const std::vector<std::uint64_t>& Ns,
                       double shape_log_power, double shape_power, double band, double slope_tolerance);

}  // namespace circov
