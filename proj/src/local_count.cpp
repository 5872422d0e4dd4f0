#include "circov/local_count.hpp"

#include <vector>

#include "circov/errors.hpp"

namespace circov {

namespace {

struct Prepared {
  std::uint64_t first = 0, last = 0, N_j = 0;
  std::uint64_t H = 0;
  BigInt threshold_q;  // q_{N_{j-1}}
  std::vector<BigInt> q;  // q over the block
  BigRat bound;
};

Prepared prepare(const LocalCountInstance& inst, const SequenceSpec& seq) {
  if (!seq.integer_valued()) throw InvalidInput("local_count needs an integer-valued sequence");
  if (inst.j >= 31) throw InvalidInput("level j too large");
  Prepared p;
  const long j = static_cast<long>(inst.j);
  if (inst.block) {
    p.first = inst.block->first;
    p.last = inst.block->second;
  } else {
    p.first = inst.schedule.cutoff(j - 1) + 1;
    p.last = inst.schedule.cutoff(j);
  }
  p.N_j = inst.block ? p.last : inst.schedule.cutoff(j);
  p.H = 1ULL << (2 * inst.j);
  p.bound = BigRat(20) * BigRat(to_bigint(p.N_j)) * BigRat(pow2(inst.j));
  if (p.last < p.first) return p;
  const std::uint64_t size = p.last - p.first + 1;
  if (static_cast<long double>(size) * size * p.H > static_cast<long double>(inst.budget))
    throw BudgetExceeded("block of " + std::to_string(size) + " terms at j=" + std::to_string(inst.j) +
                         " exceeds the enumeration budget; use a small-L schedule override");
  const std::uint64_t prev = p.first - 1;  // N_{j-1}
  if (prev < 1) throw InvalidInput("local_count needs N_{j-1} >= 1");
  std::vector<Term> t = seq.terms(prev, p.last);
  p.threshold_q = t[0].integer();
  for (std::size_t i = 1; i < t.size(); ++i) p.q.push_back(t[i].integer());
  return p;
}

// c(h) = min(1, 2^{j+1}/h) as an exact rational
BigRat weight(std::uint64_t h, unsigned j) {
  const std::uint64_t cut = 1ULL << (j + 1);
  if (h <= cut) return BigRat(1);
  BigRat w(to_bigint(cut), to_bigint(h));
  w.canonicalize();
  return w;
}

}  // namespace

LocalCountResult local_count_sum(const LocalCountInstance& inst, const SequenceSpec& seq) {
  Prepared p = prepare(inst, seq);
  LocalCountResult out;
  out.block_first = p.first;
  out.block_last = p.last;
  out.N_j = p.N_j;
  out.bound = p.bound;
  if (p.q.empty()) {
    out.within_bound = true;
    return out;
  }
  const std::uint64_t H = p.H;
  // Condition |k q_m - h q_l - B| < q_prev / 4, scaled by 4 den(B):
  //   |A - h S| < R,  A = 4 d k q_m - 4 n,  S = 4 d q_l,  R = d q_prev
  const BigInt& bn = inst.B.get_num();
  const BigInt& bd = inst.B.get_den();
  const BigInt R = bd * p.threshold_q;
  const BigInt four_n = 4 * bn;
  // counts[h][k] of admissible (l, m) pairs, then one exact weighted pass
  std::vector<std::uint64_t> counts((H + 1) * (H + 1), 0);
  for (const BigInt& ql : p.q) {
    const BigInt S = 4 * bd * ql;
    for (const BigInt& qm : p.q) {
      const BigInt step = 4 * bd * qm;
      BigInt A = step - four_n;  // k = 1
      for (std::uint64_t k = 1; k <= H; ++k, A += step) {
        // h > (A - R)/S and h < (A + R)/S
        BigInt lo = floor_div(A - R, S) + 1;
        BigInt hi = ceil_div(A + R, S) - 1;
        if (hi < 1 || lo > to_bigint(H)) continue;
        std::uint64_t h0 = lo < 1 ? 1 : to_u64(lo);
        std::uint64_t h1 = hi > to_bigint(H) ? H : to_u64(hi);
        for (std::uint64_t h = h0; h <= h1; ++h) {
          ++counts[h * (H + 1) + k];
          ++out.solutions;
        }
      }
    }
  }
  std::vector<BigRat> w(H + 1);
  for (std::uint64_t h = 1; h <= H; ++h) w[h] = weight(h, inst.j);
  BigRat total = 0;
  for (std::uint64_t h = 1; h <= H; ++h)
    for (std::uint64_t k = 1; k <= H; ++k)
      if (auto c = counts[h * (H + 1) + k]) total += BigRat(to_bigint(c)) * w[h] * w[k];
  total.canonicalize();
  out.sum = total;
  out.within_bound = out.sum <= out.bound;
  return out;
}

LocalCountResult local_count_bruteforce(const LocalCountInstance& inst, const SequenceSpec& seq) {
  Prepared p = prepare(inst, seq);
  LocalCountResult out;
  out.block_first = p.first;
  out.block_last = p.last;
  out.N_j = p.N_j;
  out.bound = p.bound;
  const BigRat T = BigRat(p.threshold_q, 4);
  BigRat total = 0;
  for (const BigInt& ql : p.q)
    for (const BigInt& qm : p.q)
      for (std::uint64_t h = 1; h <= p.H; ++h)
        for (std::uint64_t k = 1; k <= p.H; ++k) {
          BigRat v = BigRat(to_bigint(k) * qm - to_bigint(h) * ql) - inst.B;
          if (abs(v) < T) {
            total += weight(h, inst.j) * weight(k, inst.j);
            ++out.solutions;
          }
        }
  total.canonicalize();
  out.sum = total;
  out.within_bound = out.sum <= out.bound;
  return out;
}

}  // namespace circov
