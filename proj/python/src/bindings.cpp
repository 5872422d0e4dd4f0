// Python bindings for the main library operations. Big integers and exact
// rationals cross the boundary as Python ints or "p/q" strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "circov/bohr.hpp"
#include "circov/cassels.hpp"
#include "circov/contfrac.hpp"
#include "circov/dimension.hpp"
#include "circov/dvoretzky.hpp"
#include "circov/errors.hpp"
#include "circov/psi_regime.hpp"
#include "circov/report.hpp"
#include "circov/shepp.hpp"
#include "circov/tree_engine.hpp"

namespace py = pybind11;
using namespace circov;

namespace {

py::object to_py(const BigInt& v) { return py::int_(py::str(v.get_str())); }

py::dict shepp(const std::string& lengths, std::uint64_t N) {
  const auto r = shepp_terms(LengthSequence::parse(lengths), N);
  py::dict d;
  d["verdict"] = to_string(r.verdict);
  d["numeric"] = to_string(r.numeric);
  d["closed_form"] = r.closed_form ? py::object(py::str(to_string(*r.closed_form))) : py::object(py::none());
  d["fitted_s"] = r.fitted_s;
  d["log10_partial_sum"] = r.log10_partial_sum;
  return d;
}

py::dict expected(const std::string& lengths, std::uint64_t N) {
  const auto e = expected_uncovered(LengthSequence::parse(lengths), N);
  py::dict d;
  d["value"] = e.value;
  d["decimal"] = e.decimal;
  d["exact"] = e.exact ? py::object(py::str(to_string(*e.exact))) : py::object(py::none());
  return d;
}

double cover_trial(const std::string& lengths, std::uint64_t N, std::uint64_t seed, std::uint64_t stream) {
  Rng rng = make_rng(seed, stream);
  return dvoretzky_trial(LengthSequence::parse(lengths), N, rng).uncovered.measure();
}

py::list tree_run(const std::string& L, const std::string& mode, int n0, int n_max, std::uint64_t seed,
                  std::uint64_t stream, double base, const std::string& source) {
  TreeOptions opt;
  opt.mode = parse_tree_mode(mode);
  opt.n0 = n0;
  opt.n_max = n_max;
  opt.threshold_base = base;
  Rng rng = make_rng(seed, stream);
  const TreeSource src = source == "iid" ? TreeSource::iid() : TreeSource::sequence(SequenceSpec::parse(source));
  const auto run = run_tree(src, CoveringSchedule(parse_rational(L)), opt, rng);
  py::list out;
  for (const auto& s : run.levels) {
    py::dict d;
    d["level"] = s.level;
    d["survivors"] = s.survivor_count;
    d["colored_hits"] = s.colored_hits;
    d["points"] = s.points_placed;
    d["remaining"] = s.remaining;
    d["threshold_met"] = s.threshold_met;
    out.append(d);
  }
  return out;
}

py::dict dimension(const std::string& seq, const std::string& G, double nu, unsigned dmin, unsigned dmax,
                   std::size_t seeds, std::uint64_t seed) {
  DimensionOptions opt;
  opt.nu = nu;
  opt.dyadic_min = dmin;
  opt.dyadic_max = dmax;
  opt.seeds = seeds;
  opt.master_seed = seed;
  const auto e = estimate_dimension(SequenceSpec::parse(seq), DigitSet::parse(G), opt);
  py::dict d;
  d["empty"] = e.empty;
  d["slope"] = e.slope;
  d["intercept"] = e.intercept;
  d["slope_spread"] = e.slope_spread;
  d["seed_slopes"] = e.seed_slopes;
  return d;
}

py::object predicted(double nu, double s) {
  const auto p = predicted_dimension(nu, s);
  if (p.empty) return py::none();
  return py::float_(p.value);
}

std::uint64_t bohr(const std::string& alpha, const std::string& gamma, std::uint64_t N, const std::string& eps) {
  BohrQuery q;
  q.alpha = RealDescriptor::parse(alpha);
  q.gamma = RealDescriptor::parse(gamma);
  q.N = N;
  q.eps = parse_rational(eps);
  return bohr_count(q);
}

py::list partial_quotients(const std::string& alpha, std::size_t K) {
  const auto cf = continued_fraction(RealDescriptor::parse(alpha), K);
  py::list out;
  for (const auto& a : cf.partial_quotients) out.append(to_py(a));
  return out;
}

py::list sequence_terms(const std::string& spec, std::size_t N) {
  py::list out;
  for (const auto& v : generate_integers(SequenceSpec::parse(spec), N)) out.append(to_py(v));
  return out;
}

py::tuple inhom(const std::string& alpha, const std::string& gamma, std::uint64_t A) {
  const auto r = best_inhom_approx(RealDescriptor::parse(alpha), RealDescriptor::parse(gamma), A);
  return py::make_tuple(r.n, r.distance);
}

std::string regime(const std::string& alpha, const std::string& gamma, const std::string& psi, std::uint64_t b,
                   unsigned L) {
  return to_string(psi_regime(RealDescriptor::parse(alpha), RealDescriptor::parse(gamma), Psi::parse(psi), b, L)
                       .classification);
}

}  // namespace

PYBIND11_MODULE(_circov, m) {
  m.doc() = "Random covering, colored trees and limsup-set experiments";
  m.attr("__version__") = library_version();

  static py::exception<InvalidInput> invalid(m, "InvalidInput", PyExc_ValueError);
  static py::exception<PrecisionExhausted> precision(m, "PrecisionExhausted", PyExc_ArithmeticError);
  static py::exception<PreconditionViolation> precondition(m, "PreconditionViolation", PyExc_ValueError);
  static py::exception<BudgetExceeded> budget(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidInput& e) {
      py::set_error(invalid, e.what());
    } catch (const PrecisionExhausted& e) {
      py::set_error(precision, e.what());
    } catch (const PreconditionViolation& e) {
      py::set_error(precondition, e.what());
    } catch (const BudgetExceeded& e) {
      py::set_error(budget, e.what());
    }
  });

  m.def("shepp", &shepp, py::arg("lengths"), py::arg("N") = 1000000,
        "Shepp series diagnostic; lengths like 'harmonic:1' or 'shepp:1,1,0.5'.");
  m.def("expected_uncovered", &expected, py::arg("lengths"), py::arg("N"));
  m.def("cover_trial", &cover_trial, py::arg("lengths"), py::arg("N"), py::arg("seed") = 1, py::arg("stream") = 0,
        "Uncovered measure after N random arcs.");
  m.def("tree_run", &tree_run, py::arg("L"), py::arg("mode") = "plain", py::arg("n0") = 8, py::arg("n_max") = 16,
        py::arg("seed") = 1, py::arg("stream") = 0, py::arg("base") = 1.2, py::arg("source") = "iid");
  m.def("iid_event_bound_log10",
        [](int n, int R, const std::string& L) { return iid_event_bound(n, R, parse_rational(L)).log10; },
        py::arg("n"), py::arg("R"), py::arg("L"));
  m.def("estimate_dimension", &dimension, py::arg("seq"), py::arg("G") = "full", py::arg("nu") = 1.0,
        py::arg("dyadic_min") = 8, py::arg("dyadic_max") = 14, py::arg("seeds") = 5, py::arg("seed") = 1);
  m.def("predicted_dimension", &predicted, py::arg("nu"), py::arg("s"), "None in the empty regime.");
  m.def("frostman_count", [](const std::string& G, unsigned n, unsigned g) { return frostman_grid(DigitSet::parse(G), n, g).count; },
        py::arg("G"), py::arg("n"), py::arg("grid_base") = 2);
  m.def("bohr_count", &bohr, py::arg("alpha"), py::arg("gamma") = "0", py::arg("N"), py::arg("eps"));
  m.def("partial_quotients", &partial_quotients, py::arg("alpha"), py::arg("K"));
  m.def("sequence_terms", &sequence_terms, py::arg("spec"), py::arg("N"));
  m.def("best_inhom_approx", &inhom, py::arg("alpha"), py::arg("gamma"), py::arg("A"),
        "(n, distance) minimizing ||n alpha - gamma|| over A < n <= 2A.");
  m.def("psi_regime", &regime, py::arg("alpha"), py::arg("gamma"), py::arg("psi"), py::arg("b") = 2, py::arg("L") = 4);
}
