#include "circov/schedule.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <sstream>

#include "circov/errors.hpp"

namespace circov {

namespace {

using Float = boost::multiprecision::cpp_bin_float_100;

// floor(L 2^e) for real e; exact when e is an integer.
std::uint64_t floor_scaled(const BigRat& L, double e, bool integral_exponent, long ie) {
  if (integral_exponent) {
    BigRat v = L;
    if (ie >= 0)
      v *= BigRat(pow2(static_cast<unsigned long>(ie)));
    else
      v /= BigRat(pow2(static_cast<unsigned long>(-ie)));
    return to_u64(floor_of(v));
  }
  Float l = Float(L.get_num().get_str()) / Float(L.get_den().get_str());
  Float v = l * boost::multiprecision::pow(Float(2), Float(e));
  Float f = boost::multiprecision::floor(v);
  return f.convert_to<std::uint64_t>();
}

}  // namespace

CoveringSchedule::CoveringSchedule(const BigRat& L, double nu, std::optional<double> buffer_eps)
    : L_(L), nu_(nu), buffer_eps_(buffer_eps) {
  if (L_ < 0) throw InvalidInput("schedule mass L must be nonnegative");
  if (!(nu >= 1.0)) throw InvalidInput("schedule nu must be >= 1");
  if (buffer_eps && !(*buffer_eps > 0.0 && *buffer_eps < 2.0)) throw InvalidInput("buffer eps must lie in (0, 2)");
  L_.canonicalize();
}

std::uint64_t CoveringSchedule::block_size(long n) const {
  if (n < 0) return 0;
  return floor_scaled(L_, static_cast<double>(n) / nu_, nu_ == 1.0, n);
}

std::uint64_t CoveringSchedule::cutoff(long n) const {
  std::uint64_t total = 0;
  for (long j = 0; j <= n; ++j) total += block_size(j);
  return total;
}

std::uint64_t CoveringSchedule::raw_buffer(long n) const {
  if (!buffer_eps_ || n < 0) return 0;
  return floor_scaled(L_, (1.0 - *buffer_eps_ / 2.0) * static_cast<double>(n), false, 0);
}

std::uint64_t CoveringSchedule::buffer_size(long n) const { return std::min(raw_buffer(n), block_size(n)); }

bool CoveringSchedule::buffer_clipped(long n) const { return raw_buffer(n) > block_size(n); }

std::pair<std::uint64_t, std::uint64_t> CoveringSchedule::buffer_block(long n) const {
  std::uint64_t start = cutoff(n - 1);
  return {start + 1, start + buffer_size(n)};
}

std::pair<std::uint64_t, std::uint64_t> CoveringSchedule::main_block(long n) const {
  std::uint64_t start = cutoff(n - 1);
  return {start + buffer_size(n) + 1, start + block_size(n)};
}

long CoveringSchedule::level_of(std::uint64_t N) const {
  if (N == 0) throw InvalidInput("sequence indices start at 1");
  std::uint64_t total = 0;
  for (long n = 0;; ++n) {
    total += block_size(n);
    if (N <= total) return n;
    if (n > 200) throw InvalidInput("index beyond 200 levels");
  }
}

std::string CoveringSchedule::describe() const {
  std::ostringstream os;
  os << "L=" << to_string(L_) << ",nu=" << nu_;
  if (buffer_eps_) os << ",buffer_eps=" << *buffer_eps_;
  return os.str();
}

}  // namespace circov
