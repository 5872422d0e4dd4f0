// circov: command line harness over the library.
//
// Every subcommand reads its parameters from a resolved Config: values from
// --config first, then explicit flags on top. Subcommand keys live under a
// section named after the subcommand ("tree-run.L"); the global flags are
// top-level keys ("seed", "trials"). The resolved config, defaults included,
// is echoed into the report.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "circov/bohr.hpp"
#include "circov/cassels.hpp"
#include "circov/config.hpp"
#include "circov/dimension.hpp"
#include "circov/dvoretzky.hpp"
#include "circov/errors.hpp"
#include "circov/gcd_sum.hpp"
#include "circov/local_count.hpp"
#include "circov/parallel.hpp"
#include "circov/psi_regime.hpp"
#include "circov/report.hpp"
#include "circov/shepp.hpp"
#include "circov/thinning.hpp"
#include "circov/tree_engine.hpp"

using namespace circov;

namespace {

std::string num(double v, int digits = 10) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size() || v[0] == '-') throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw InvalidInput("'" + key + "' needs a nonnegative integer, got '" + v + "'");
  }
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw InvalidInput("'" + key + "' needs a number, got '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw InvalidInput("'" + key + "' needs a boolean, got '" + v + "'");
}

/// "a..b" (inclusive) or a single integer.
std::pair<std::uint64_t, std::uint64_t> to_range(const std::string& key, const std::string& v) {
  const auto dots = v.find("..");
  if (dots == std::string::npos) {
    const auto x = to_u64(key, v);
    return {x, x};
  }
  const auto a = to_u64(key, v.substr(0, dots)), b = to_u64(key, v.substr(dots + 2));
  if (a > b) throw InvalidInput("'" + key + "' range is empty: " + v);
  return {a, b};
}

/// Comma separated list; each item may itself be a range.
std::vector<std::uint64_t> to_list(const std::string& key, const std::string& v) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto [a, b] = to_range(key, item);
    for (auto x = a; x <= b; ++x) out.push_back(x);
  }
  if (out.empty()) throw InvalidInput("'" + key + "' is empty");
  return out;
}

/// Parameter lookup that records every resolved value, defaults included.
class Params {
 public:
  Params(Config given, std::string section) : given_(std::move(given)), section_(std::move(section)) {}

  std::string str(const std::string& key, const std::string& fallback) {
    const std::string full = section_ + "." + key;
    const std::string v = given_.get_or(full, fallback);
    resolved_.set(full, v);
    return v;
  }
  std::string global(const std::string& key, const std::string& fallback) {
    const std::string v = given_.get_or(key, fallback);
    resolved_.set(key, v);
    return v;
  }
  std::uint64_t u64(const std::string& key, const std::string& fallback) { return to_u64(key, str(key, fallback)); }
  double dbl(const std::string& key, const std::string& fallback) { return to_double(key, str(key, fallback)); }
  bool flag(const std::string& key, const std::string& fallback) { return to_bool(key, str(key, fallback)); }

  std::uint64_t seed() { return to_u64("seed", global("seed", "1")); }
  std::uint64_t trials(const std::string& fallback) { return to_u64("trials", global("trials", fallback)); }
  unsigned precision() { return static_cast<unsigned>(to_u64("precision-bits", global("precision-bits", "4096"))); }
  unsigned threads() {
    const auto t = to_u64("threads", global("threads", "1"));
    return t == 0 ? std::max(1u, std::thread::hardware_concurrency()) : static_cast<unsigned>(t);
  }

  const Config& resolved() const { return resolved_; }

 private:
  Config given_;
  std::string section_;
  Config resolved_;
};

using Runner = std::function<void(Params&, RunReport&)>;

// ---------------------------------------------------------------- commands

void run_shepp(Params& p, RunReport& r) {
  r.kind = "shepp";
  std::string spec = p.str("lengths", "");
  if (spec.empty()) {
    const std::string family = p.str("family", "harmonic");
    const std::string c = p.str("c", "1");
    if (family == "harmonic")
      spec = "harmonic:" + c;
    else if (family == "const" || family == "constant")
      spec = "const:" + c;
    else if (family == "shepp")
      spec = "shepp:" + c + "," + p.str("beta", "1") + "," + p.str("a", "1");
    else
      throw InvalidInput("unknown length family '" + family + "' (harmonic, const, shepp)");
  }
  const auto L = LengthSequence::parse(spec);
  SheppOptions opt;
  opt.samples = p.u64("samples", "400");
  const auto rep = shepp_terms(L, p.u64("n", "1000000"), opt);
  r.records.columns = {"n", "log10_term"};
  for (std::size_t i = 0; i < rep.n.size(); ++i) r.records.add({std::to_string(rep.n[i]), num(rep.log10_terms[i])});
  r.put("lengths", L.describe());
  r.put("verdict", to_string(rep.verdict));
  r.put("closed_form", rep.closed_form ? to_string(*rep.closed_form) : "none");
  r.put("numeric", to_string(rep.numeric));
  r.put("fitted_s", num(rep.fitted_s));
  r.put("log10_partial_sum", num(rep.log10_partial_sum));
  r.put("monotone_spot_check", rep.monotone_spot_check ? "true" : "false");
}

void run_cover_sim(Params& p, RunReport& r) {
  r.kind = "cover";
  const auto L = LengthSequence::parse(p.str("lengths", "harmonic:0.5"));
  const auto N = p.u64("n", "10000");
  const auto T = p.trials("1000");
  const auto seed = p.seed();
  struct Row {
    double measure;
    std::uint64_t arcs, components;
  };
  auto rows = parallel_map(T, p.threads(), [&](std::size_t t) {
    Rng rng = make_rng(seed, t);
    auto tr = dvoretzky_trial(L, N, rng);
    return Row{tr.uncovered.measure(), tr.arcs_used, tr.uncovered.components()};
  });
  r.records.columns = {"trial", "uncovered", "arcs_used", "components"};
  double s = 0, s2 = 0;
  std::uint64_t covered = 0;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    r.records.add({std::to_string(t), num(rows[t].measure, 17), std::to_string(rows[t].arcs),
                   std::to_string(rows[t].components)});
    s += rows[t].measure;
    s2 += rows[t].measure * rows[t].measure;
    covered += rows[t].measure == 0.0;
  }
  const double mean = T ? s / T : 0, se = T > 1 ? std::sqrt(std::max(0.0, s2 / T - mean * mean) / (T - 1)) : 0;
  const auto ex = expected_uncovered(L, N);
  r.put("lengths", L.describe());
  r.put("mean_uncovered", num(mean, 12));
  r.put("stderr", num(se, 6));
  r.put("expected_uncovered", ex.decimal);
  if (ex.exact) {
    const std::string e = to_string(*ex.exact);
    if (e.size() <= 200) r.put("expected_exact", e);
  }
  r.put("z", se > 0 ? num(std::fabs(mean - ex.value) / se, 6) : "0");
  r.put("fully_covered_trials", std::to_string(covered));
}

TreeSource tree_source(Params& p) {
  const std::string src = p.str("source", "iid");
  if (src == "iid") return TreeSource::iid();
  const std::string x = p.str("x", "random");
  if (x == "random") return TreeSource::sequence(SequenceSpec::parse(src));
  return TreeSource::sequence(SequenceSpec::parse(src), UnitPoint::parse(x, p.precision()));
}

void run_tree_run(Params& p, RunReport& r) {
  r.kind = "tree";
  const BigRat L = parse_rational(p.str("L", "1013"));
  const double nu = p.dbl("nu", "1");
  const std::string beps = p.str("buffer-eps", "none");
  std::optional<double> buffer;
  if (beps != "none") buffer = to_double("buffer-eps", beps);
  const CoveringSchedule sched(L, nu, buffer);
  TreeOptions opt;
  opt.mode = parse_tree_mode(p.str("mode", "plain"));
  auto [n0, nmax] = to_range("levels", p.str("levels", "8..24"));
  if (nmax > static_cast<std::uint64_t>(Frontier::kMaxLevel) - 1)
    throw InvalidInput("levels must stay below " + std::to_string(Frontier::kMaxLevel));
  opt.n0 = static_cast<int>(n0);
  opt.n_max = static_cast<int>(nmax);
  opt.threshold_base = p.dbl("base", "1.2");
  opt.include_buffer = p.flag("include-buffer", "false");
  const TreeSource source = tree_source(p);
  const auto T = p.trials("100");
  const auto seed = p.seed();
  auto runs = parallel_map(T, p.threads(), [&](std::size_t t) {
    Rng rng = make_rng(seed, t);
    return run_tree(source, sched, opt, rng);
  });
  r.records.columns = {"trial", "level", "survivors", "colored_hits", "points", "remaining", "threshold_met"};
  std::uint64_t extinct = 0, threshold_all = 0;
  for (std::size_t t = 0; t < runs.size(); ++t) {
    bool all_met = true;
    for (const auto& st : runs[t].levels) {
      r.records.add({std::to_string(t), std::to_string(st.level), std::to_string(st.survivor_count),
                     std::to_string(st.colored_hits), std::to_string(st.points_placed), std::to_string(st.remaining),
                     st.threshold_met ? "1" : "0"});
      all_met = all_met && st.threshold_met;
    }
    extinct += runs[t].extinct;
    threshold_all += all_met && runs[t].levels.size() == nmax - n0 + 1;
  }
  r.put("source", source.describe());
  r.put("schedule", sched.describe());
  r.put("mode", to_string(opt.mode));
  r.put("threshold_base", num(opt.threshold_base));
  r.put("trials", std::to_string(T));
  r.put("extinct_trials", std::to_string(extinct));
  r.put("extinct_fraction", num(T ? static_cast<double>(extinct) / T : 0));
  r.put("threshold_survival_trials", std::to_string(threshold_all));
  if (source.kind == TreeSource::Kind::Iid && L.get_den() == 1) {
    const auto b = iid_event_bound(opt.n0, opt.n_max - opt.n0, L);
    r.put("iid_event_bound_log10", num(b.log10));
  }
}

void run_dim_estimate(Params& p, RunReport& r) {
  r.kind = "dimension";
  const auto seq = SequenceSpec::parse(p.str("seq", "pow2"));
  const auto G = DigitSet::parse(p.str("G", "full"));
  DimensionOptions opt;
  opt.nu = p.dbl("nu", "1");
  auto [dmin, dmax] = to_range("depths", p.str("depths", "8..18"));
  opt.dyadic_min = static_cast<unsigned>(dmin);
  opt.dyadic_max = static_cast<unsigned>(dmax);
  opt.window = p.dbl("window", "2");
  opt.seeds = p.u64("seeds", "8");
  opt.master_seed = p.seed();
  const auto est = estimate_dimension(seq, G, opt);
  r.records.columns = {"seed", "j", "log_scale", "N0", "N1", "count"};
  for (const auto& sc : est.scales)
    for (std::size_t s = 0; s < sc.counts.size(); ++s)
      r.records.add({std::to_string(s), std::to_string(sc.depth), num(sc.log_scale), std::to_string(sc.N0),
                     std::to_string(sc.N1), std::to_string(sc.counts[s])});
  const auto pred = predicted_dimension(opt.nu, G.s());
  r.put("base", std::to_string(G.base()));
  r.put("G", G.describe());
  r.put("empty", est.empty ? "true" : "false");
  r.put("slope", num(est.slope));
  r.put("intercept", num(est.intercept));
  r.put("slope_spread", num(est.slope_spread));
  r.put("residual", num(est.residual));
  r.put("predicted", pred.empty ? "EMPTY" : num(pred.value));
  r.put("empty_threshold", num(pred.threshold));
  r.put("evidence", est.evidence);
}

void run_cassels(Params& p, RunReport& r) {
  r.kind = "cassels";
  const unsigned bits = p.precision();
  const auto alpha = RealDescriptor::parse(p.str("alpha", "golden"));
  const auto gamma = RealDescriptor::parse(p.str("gamma", "0"));
  const std::string mode = p.str("mode", "minima");
  if (mode == "minima") {
    CasselsInstance inst;
    inst.alpha = alpha;
    inst.gamma = gamma;
    inst.beta = RealDescriptor::parse(p.str("beta", "sqrt2-1"));
    inst.delta = RealDescriptor::parse(p.str("delta", "0"));
    inst.N = p.u64("N", "10000");
    inst.precision_bits = bits;
    const auto pm = product_minima(inst);
    r.records.columns = {"n", "dist_alpha", "dist_beta", "product", "normalized"};
    for (const auto& rec : pm.records)
      r.records.add({std::to_string(rec.n), num(rec.dist_alpha, 17), num(rec.dist_beta, 17), num(rec.product, 17),
                     num(rec.normalized, 17)});
    r.put("min_n", std::to_string(pm.minimum.n));
    r.put("min_normalized", num(pm.minimum.normalized, 17));
    r.put("min_plain_n", std::to_string(pm.min_plain.n));
    r.put("min_plain", num(pm.min_plain.product, 17));
  } else if (mode == "chain") {
    const auto chain = chain_best_inhom(alpha, gamma, p.u64("A0", "1"), static_cast<unsigned>(p.u64("blocks", "20")), bits);
    r.records.columns = {"k", "n", "distance", "scaled"};
    double worst = 0;
    for (std::size_t k = 0; k < chain.size(); ++k) {
      const double sc = chain[k].distance * static_cast<double>(chain[k].n);
      worst = std::max(worst, sc);
      r.records.add({std::to_string(k), std::to_string(chain[k].n), chain[k].distance_decimal, num(sc)});
    }
    r.put("max_scaled_distance", num(worst));
  } else if (mode == "delta") {
    const auto N = p.u64("N", "1000000");
    const double C = p.dbl("C", "10");
    const auto m = p.u64("m", "1000");
    const auto n_min = p.u64("n-min", "2");
    const std::string beta_text = p.str("beta", "random");
    const auto dist = orbit_distances(alpha, gamma, N, bits);
    const auto T = beta_text == "random" ? p.trials("20") : 1;
    const auto seed = p.seed();
    auto checks = parallel_map(T, p.threads(), [&](std::size_t t) {
      RealDescriptor beta;
      if (beta_text == "random") {
        Rng rng = make_rng(seed, t);
        BigInt v = 0;
        for (int w = 0; w < 4; ++w) v = v * pow2(64) + to_bigint(rng());
        beta = RealDescriptor::rational(BigRat(v, pow2(256)));
      } else {
        beta = RealDescriptor::parse(beta_text);
      }
      return std::make_pair(beta.to_string(), uniform_delta_check(dist, beta, N, C, m, n_min, bits));
    });
    r.records.columns = {"trial", "beta", "failures", "worst_delta_index", "worst_n"};
    std::uint64_t pass = 0;
    for (std::size_t t = 0; t < checks.size(); ++t) {
      const auto& d = checks[t].second;
      pass += d.all_pass();
      r.records.add({std::to_string(t), checks[t].first, std::to_string(d.failures), std::to_string(d.worst_index),
                     std::to_string(d.worst_n)});
    }
    r.put("passing", std::to_string(pass));
    r.put("trials", std::to_string(checks.size()));
  } else {
    throw InvalidInput("unknown cassels mode '" + mode + "' (minima, chain, delta)");
  }
}

void run_bohr(Params& p, RunReport& r) {
  r.kind = "bohr";
  BohrQuery q;
  q.alpha = RealDescriptor::parse(p.str("alpha", "golden"));
  q.gamma = RealDescriptor::parse(p.str("gamma", "0"));
  q.N = p.u64("N", "1000");
  q.eps = parse_rational(p.str("eps", "1/20"));
  q.b = p.u64("b", "300");
  q.precision_bits = p.precision();
  const auto count = bohr_count(q);
  const auto pre = bohr_preconditions(q);
  r.records.columns = {"quantity", "value"};
  r.records.add({"count", std::to_string(count)});
  r.records.add({"lower_ok", pre.lower_ok ? "true" : "false"});
  r.records.add({"upper_ok", pre.upper_ok ? "true" : "false"});
  r.put("count", std::to_string(count));
  r.put("preconditions", pre.ok() ? "met" : "not met");
  if (pre.ok()) {
    BohrQuery zero = q;
    zero.gamma = RealDescriptor();
    const auto br = bohr_bracket(zero);
    const auto c0 = bohr_count(zero);
    r.records.add({"count_gamma0", std::to_string(c0)});
    r.records.add({"M", to_string(br.M)});
    r.records.add({"lower", br.lower.get_str()});
    r.records.add({"upper", to_string(br.upper)});
    r.put("bracket_holds", br.lower <= to_bigint(c0) && BigRat(to_bigint(c0)) <= br.upper ? "true" : "false");
    BohrQuery dbl = zero;
    dbl.eps = 2 * q.eps;
    r.put("shift_inequality_holds", count <= bohr_count(dbl) + 1 ? "true" : "false");
  }
  if (q.b >= 300) {
    const auto an = annulus_count(q);
    r.records.add({"annulus_count", std::to_string(an.count)});
    r.put("annulus_in_band", an.in_band ? "true" : "false");
    r.put("annulus_precondition", an.precondition_met ? "true" : "false");
  }
}

void run_gcdsum(Params& p, RunReport& r) {
  r.kind = "gcdsum";
  const auto seq = SequenceSpec::parse(p.str("seq", "primepow:2"));
  GcdSumHypothesis h;
  h.nu = p.dbl("nu", "1");
  h.eps = p.dbl("eps", "0.01");
  h.f = parse_slow(p.str("f", "one"));
  h.psi = parse_slow(p.str("psi", "loglog"));
  const std::string rule = p.str("index", "all");
  if (rule == "primes")
    h.index_rule = IndexRule::Primes;
  else if (rule != "all")
    throw InvalidInput("unknown index rule '" + rule + "' (all, primes)");
  std::vector<std::uint64_t> Ns;
  for (auto e : to_list("log2-N", p.str("log2-N", "8..12"))) Ns.push_back(std::uint64_t{1} << e);
  const auto tr = gcd_sum_trend(seq, h, Ns, p.dbl("shape-log-power", "2"), p.dbl("shape-power", "0"),
                                p.dbl("band", "1"), p.dbl("slope-tolerance", "0.25"));
  r.records.columns = {"N", "sum", "bound", "ratio", "shape"};
  for (std::size_t i = 0; i < tr.points.size(); ++i) {
    const auto& g = tr.points[i];
    r.records.add({std::to_string(g.N), num(g.sum, 17), num(g.bound, 17), num(g.ratio, 17), num(tr.shape[i], 17)});
  }
  r.put("max_shape", num(tr.max_shape));
  r.put("log_slope", num(tr.log_slope));
  r.put("bounded", tr.bounded ? "true" : "false");
}

void run_local_count(Params& p, RunReport& r) {
  r.kind = "local-count";
  const auto seq = SequenceSpec::parse(p.str("seq", "pow:10"));
  LocalCountInstance inst;
  inst.schedule = CoveringSchedule(parse_rational(p.str("L", "4")));
  inst.j = static_cast<unsigned>(p.u64("j", "3"));
  inst.B = parse_rational(p.str("B", "0"));
  inst.budget = p.u64("budget", "200000000");
  const bool brute = p.flag("bruteforce", "false");
  const auto res = brute ? local_count_bruteforce(inst, seq) : local_count_sum(inst, seq);
  r.records.columns = {"j", "B", "block_first", "block_last", "N_j", "solutions", "sum", "bound"};
  r.records.add({std::to_string(inst.j), to_string(inst.B), std::to_string(res.block_first),
                 std::to_string(res.block_last), std::to_string(res.N_j), std::to_string(res.solutions),
                 to_string(res.sum), to_string(res.bound)});
  r.put("within_bound", res.within_bound ? "true" : "false");
  r.put("sum_decimal", to_decimal(res.sum, 20));
}

void run_psi_regime(Params& p, RunReport& r) {
  r.kind = "psi-regime";
  const auto alpha = RealDescriptor::parse(p.str("alpha", "golden"));
  const auto gamma = RealDescriptor::parse(p.str("gamma", "0"));
  const auto psi = Psi::parse(p.str("psi", "1/(n log n loglog n)"));
  RegimeOptions opt;
  opt.C = p.dbl("C", "8");
  opt.eps = p.dbl("eps", "0.125");
  opt.horizon = p.u64("horizon", std::to_string(1ULL << 22));
  opt.snap = p.flag("snap", "false");
  opt.precision_bits = p.precision();
  const auto d = psi_regime(alpha, gamma, psi, p.u64("b", "2"), static_cast<unsigned>(p.u64("L", "4")), opt);
  r.records.columns = {"kind", "index", "value", "capped"};
  for (std::size_t l = 0; l < d.S_ell_sizes.size(); ++l)
    r.records.add({"S_ell", std::to_string(l + 1), std::to_string(d.S_ell_sizes[l]), d.S_ell_capped[l] ? "1" : "0"});
  for (const auto& w : d.windows) r.records.add({"window", num(w.v), num(w.value, 17), "0"});
  r.put("psi", psi.describe());
  r.put("classification", to_string(d.classification));
  r.put("T1", std::to_string(d.T1));
  r.put("T2_covering", to_string(d.T2_covering));
  r.put("T2_noncovering", to_string(d.T2_noncovering));
  r.put("pointwise_below_critical", d.pointwise_ok ? "true" : "false");
  r.put("windows_asymptotic", d.windows_asymptotic ? "true" : "false");
  r.put("accumulators_consistent", d.accumulators_consistent ? "true" : "false");
  r.put("evidence", d.evidence);
}

void run_gap_profile(Params& p, RunReport& r) {
  r.kind = "gap-profile";
  const auto seq = SequenceSpec::parse(p.str("seq", "pow2"));
  const auto N = p.u64("N", "1000");
  const auto g = gap_profile(generate(seq, N), p.dbl("eps", "0.1"), p.dbl("phi-tolerance", "0.1"));
  r.records.columns = {"n", "ratio_minus_one", "phi"};
  for (std::size_t i = 0; i < g.ratio_minus_one.size(); ++i)
    r.records.add({std::to_string(i + 1), num(g.ratio_minus_one[i], 17), num(g.phi[i], 17)});
  r.put("hadamard", g.hadamard ? "true" : "false");
  r.put("gap_condition", g.gap_condition ? "true" : "false");
  r.put("phi_subpolynomial", g.phi_subpolynomial ? "true" : "false");
  r.put("min_scaled_gap", num(g.min_scaled_gap));
  r.put("tail_scaled_gap", num(g.tail_scaled_gap));
  r.put("gap_decay_exponent", num(g.gap_decay_exponent));
  r.put("phi_exponent", num(g.phi_exponent));
}

/// Reads back a JSON report written by --format json.
RunReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read report '" + path + "'");
  nlohmann::ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InvalidInput("report '" + path + "' is not valid JSON: " + e.what());
  }
  RunReport r;
  r.command = j.value("command", "");
  r.kind = j.value("kind", "");
  r.version = j.value("version", "");
  for (auto& [k, v] : j["summary"].items()) r.put(k, v.get<std::string>());
  for (const auto& rec : j["records"]) {
    if (r.records.columns.empty())
      for (auto& [k, v] : rec.items()) r.records.columns.push_back(k);
    std::vector<std::string> row;
    for (const auto& c : r.records.columns) row.push_back(rec.at(c).get<std::string>());
    r.records.add(row);
  }
  return r;
}

struct ErrorInfo {
  const char* kind;
  int code;
};

int report_error(const ErrorInfo& info, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = info.kind;
  j["message"] = message;
  std::cerr << j.dump() << "\n";
  return info.code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circov: random covering and limsup-set experiments"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name
  app.set_version_flag("--version", library_version());

  std::map<std::string, std::string> globals;
  const std::vector<std::pair<std::string, std::string>> global_flags = {
      {"seed", "master seed (default 1)"},
      {"precision-bits", "working precision for exact reals (default 4096)"},
      {"trials", "number of Monte Carlo trials"},
      {"threads", "worker threads, 0 for all cores (default 1)"},
      {"out", "output path; '-' or empty for stdout"},
      {"format", "csv or json (default csv)"},
  };
  for (const auto& [name, help] : global_flags) app.add_option("--" + name, globals[name], help);
  std::string config_path;
  app.add_option("--config", config_path, "key = value config file; flags override it");

  struct Sub {
    std::string name, help;
    std::vector<std::pair<std::string, std::string>> options;
    Runner run;
  };
  const std::vector<Sub> subs = {
      {"shepp", "Shepp series diagnostic for a length family",
       {{"family", "harmonic | const | shepp"}, {"c", "leading constant"}, {"beta", "shepp: beta"},
        {"a", "shepp: log exponent"}, {"lengths", "full length spec, overrides family"},
        {"n", "series cutoff N"}, {"samples", "sampled indices in the record"}},
       run_shepp},
      {"cover-sim", "Monte Carlo Dvoretzky covering",
       {{"lengths", "length spec, e.g. harmonic:0.5"}, {"n", "arcs per trial"}},
       run_cover_sim},
      {"tree-run", "colored dyadic tree runs",
       {{"source", "iid or a sequence spec"}, {"x", "fixed x for sequence sources, or random"},
        {"L", "schedule constant"}, {"nu", "schedule exponent"}, {"buffer-eps", "buffer epsilon or none"},
        {"include-buffer", "color with buffer points too"}, {"mode", "plain | thick"},
        {"levels", "n0..n_max"}, {"base", "survival threshold base"}},
       run_tree_run},
      {"dim-estimate", "box-counting dimension of the limsup set",
       {{"seq", "sequence spec"}, {"nu", "shrinking exponent"}, {"G", "digit set: full, cantor, B:d,..."},
        {"depths", "dyadic depth range a..b"}, {"seeds", "independent x draws"}, {"window", "tail width factor"}},
       run_dim_estimate},
      {"cassels-search", "product minima, inhomogeneous chains, uniform delta checks",
       {{"mode", "minima | chain | delta"}, {"alpha", "real"}, {"beta", "real or random"}, {"gamma", "real"},
        {"delta", "real"}, {"N", "search range"}, {"C", "delta mode constant"}, {"m", "delta grid size"},
        {"n-min", "least n considered in delta mode"}, {"A0", "chain start"}, {"blocks", "chain length"}},
       run_cassels},
      {"bohr-check", "Bohr set counts against the bracket and shift lemmas",
       {{"alpha", "real"}, {"gamma", "real"}, {"N", "range"}, {"eps", "radius (rational)"}, {"b", "annulus ratio"}},
       run_bohr},
      {"gcdsum-check", "gcd-sum hypothesis over a grid of N",
       {{"seq", "integer sequence spec"}, {"nu", "exponent"}, {"eps", "epsilon"}, {"f", "one | log | loglog"},
        {"psi", "one | log | loglog"}, {"index", "all | primes"}, {"log2-N", "list or range of log2 N"},
        {"shape-log-power", "a in sum (log N)^a / N^b"}, {"shape-power", "b"}, {"band", "bound on the shape"},
        {"slope-tolerance", "allowed log-log slope"}},
       run_gcdsum},
      {"local-count", "exhaustive local counting sum",
       {{"seq", "integer sequence spec"}, {"L", "schedule constant"}, {"j", "level"}, {"B", "shift (rational)"},
        {"budget", "enumeration budget"}, {"bruteforce", "use the direct enumeration"}},
       run_local_count},
      {"psi-regime", "covering-like versus noncovering-like classification",
       {{"alpha", "real"}, {"gamma", "real"}, {"psi", "approximation function"}, {"b", "bucket base"},
        {"L", "bucket count"}, {"C", "covering threshold"}, {"eps", "noncovering threshold"},
        {"horizon", "enumeration cap"}, {"snap", "snap psi to b-adic blocks"}},
       run_psi_regime},
      {"gap-profile", "consecutive ratio statistics",
       {{"seq", "sequence spec"}, {"N", "terms"}, {"eps", "gap exponent slack"}, {"phi-tolerance", "phi exponent bound"}},
       run_gap_profile},
  };

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, CLI::App*> apps;
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    apps[s.name] = sub;
    for (const auto& [name, help] : s.options) sub->add_option("--" + name, values[s.name][name], help);
  }

  std::string plot_in, plot_kind, plot_prefix;
  auto* plot = app.add_subcommand("plot", "CSV and SVG plot data from a JSON report");
  plot->add_option("--in", plot_in, "JSON report")->required();
  plot->add_option("--kind", plot_kind, "dimension | tree | shepp")->required();
  plot->add_option("--prefix", plot_prefix, "output prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report_error({"usage", 2}, e.what());
  }

  try {
    if (plot->parsed()) {
      const auto files = emit_plotdata(load_report(plot_in), plot_kind, plot_prefix);
      std::cout << files.csv << "\n" << files.svg << "\n";
      return 0;
    }
    Config given = config_path.empty() ? Config() : Config::load(config_path);
    for (const auto& [name, help] : global_flags)
      if (app.get_option("--" + name)->count() > 0) given.set(name, globals[name]);
    for (const auto& s : subs) {
      if (!apps[s.name]->parsed()) continue;
      for (const auto& [name, help] : s.options)
        if (apps[s.name]->get_option("--" + name)->count() > 0) given.set(s.name + "." + name, values[s.name][name]);

      Params params(given, s.name);
      RunReport report;
      report.command = s.name;
      report.version = library_version();
      const auto t0 = std::chrono::steady_clock::now();
      s.run(params, report);
      report.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const std::string format = params.global("format", "csv");
      const std::string out = params.global("out", "");
      report.config = params.resolved();
      write_report(report, out == "-" ? "" : out, format);
      if (!out.empty() && out != "-") {
        for (const auto& [k, v] : report.summary) std::cout << k << " = " << v << "\n";
      }
    }
    return 0;
  } catch (const InvalidInput& e) {
    return report_error({"invalid_input", 2}, e.what());
  } catch (const PrecisionExhausted& e) {
    return report_error({"precision_exhausted", 3}, e.what());
  } catch (const PreconditionViolation& e) {
    return report_error({"precondition_violation", 4}, e.what());
  } catch (const BudgetExceeded& e) {
    return report_error({"budget_exceeded", 5}, e.what());
  } catch (const std::exception& e) {
    return report_error({"internal", 1}, e.what());
  }
}
