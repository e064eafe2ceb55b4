// Python bindings. Indices are 0-based here, as in the C++ API; only the
// text formats use 1-based variable names.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "rop/charax.hpp"
#include "rop/decomp.hpp"
#include "rop/hardcases.hpp"
#include "rop/io.hpp"
#include "rop/rof.hpp"
#include "rop/testers.hpp"

namespace py = pybind11;
using namespace rop;

namespace {

Assignment to_assignment(const MPoly& p, const std::vector<long long>& xs) {
  if (xs.size() != p.arity()) {
    throw Error(Errc::kArityMismatch, "expected " + std::to_string(p.arity()) + " values");
  }
  Assignment a;
  a.reserve(xs.size());
  for (long long x : xs) a.push_back(p.ctx().from_i64(x));
  return a;
}

py::dict report_dict(const TestReport& r) {
  py::dict d;
  d["verdict"] = r.yes ? "YES" : "NO";
  if (r.failing_set) {
    py::list I;
    for (std::size_t i : *r.failing_set) I.append(i);
    d["failing_I"] = I;
  } else {
    d["failing_I"] = py::none();
  }
  d["failure_kind"] = r.failure_kind ? py::str(std::string(failure_kind_name(*r.failure_kind)))
                                     : py::object(py::none());
  d["queries"] = r.queries;
  d["seed"] = r.seed;
  d["repeats"] = r.repeats;
  return d;
}

Oracle oracle_of(const py::object& src) {
  if (py::isinstance<Rof>(src)) return as_oracle(src.cast<const Rof&>());
  return as_oracle(src.cast<const MPoly&>());
}

CharacterizeMode mode_of(const std::string& m) {
  if (m == "auto") return CharacterizeMode::kAuto;
  if (m == "exact") return CharacterizeMode::kExact;
  if (m == "fast") return CharacterizeMode::kRandomized;
  throw Error(Errc::kInvalidParams, "mode must be auto, exact or fast");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Read-once polynomials over prime fields";

  static py::exception<Error> exc(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      exc(e.what());
    }
  });

  py::class_<MPoly>(m, "Poly")
      .def_property_readonly("p", [](const MPoly& q) { return q.ctx().modulus(); })
      .def_property_readonly("n", &MPoly::arity)
      .def("is_multilinear", &MPoly::is_multilinear)
      .def("variables", &MPoly::variables)
      .def("num_terms", &MPoly::num_terms)
      .def("evaluate",
           [](const MPoly& q, const std::vector<long long>& xs) {
             return q.evaluate(to_assignment(q, xs)).v;
           })
      .def("partial", &MPoly::partial)
      .def("partial2", &MPoly::partial2)
      .def("restrict",
           [](const MPoly& q, std::size_t i, long long v) {
             return q.restrict(i, q.ctx().from_i64(v));
           })
      .def("to_text", [](const MPoly& q) { return format_poly(q); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def("__str__", &MPoly::to_string)
      .def("__repr__", [](const MPoly& q) { return "<Poly " + q.to_string() + ">"; });

  py::class_<Rof>(m, "Formula")
      .def_property_readonly("p", [](const Rof& r) { return r.ctx().modulus(); })
      .def_property_readonly("n", &Rof::arity)
      .def("variables", &Rof::variables)
      .def("expand", &Rof::expand)
      .def("evaluate",
           [](const Rof& r, const std::vector<long long>& xs) {
             if (xs.size() != r.arity()) throw Error(Errc::kArityMismatch, "wrong arity");
             Assignment a;
             for (long long x : xs) a.push_back(r.ctx().from_i64(x));
             return r.eval(a).v;
           })
      .def("to_text", [](const Rof& r) { return format_rof(r); })
      .def("__str__", &Rof::to_string);

  m.def("parse_poly", [](const std::string& s) { return parse_poly(s); },
        "Parse `field p=.. n=..` followed by a polynomial body.");
  m.def("parse_formula", [](const std::string& s) { return parse_rof(s); });

  m.def("commutator", &commutator, py::arg("poly"), py::arg("i"), py::arg("j"));
  m.def(
      "b_poly",
      [](const MPoly& p, std::size_t i, std::size_t j, const std::vector<std::size_t>& shared) {
        return b_poly(p, i, j, shared).value;
      },
      py::arg("poly"), py::arg("i"), py::arg("j"), py::arg("shared") = std::vector<std::size_t>{},
      "Two-copy determinant in 2n slots; y_k lives in slot n + k unless k is shared.");
  m.def(
      "decompose",
      [](const MPoly& p, std::size_t i, std::size_t j) -> std::optional<u64> {
        DecompResult r = decompose(p, i, j);
        if (!r.decomposable) return std::nullopt;
        return r.c->v;
      },
      "The constant c with P = h*g + c, or None.");
  m.def("trivariate_is_rop", &trivariate_is_rop);
  m.def("brute_force_is_rop", &brute_force_is_rop);

  m.def(
      "is_good_assignment",
      [](const MPoly& p, const std::vector<long long>& a, bool local) {
        return is_good_assignment(p, to_assignment(p, a),
                                  local ? PhiMode::kLocal : PhiMode::kGlobal)
            .good;
      },
      py::arg("poly"), py::arg("a"), py::arg("local") = false);
  m.def("is_locally_rop", [](const MPoly& p, const std::vector<long long>& a) {
    LocalResult r = is_locally_rop(p, to_assignment(p, a));
    return py::make_tuple(r.locally_rop, r.witness);
  });
  m.def(
      "characterize",
      [](const MPoly& p, u64 seed, const std::string& mode) {
        Rng rng(seed);
        CharacterizeOptions opts;
        opts.mode = mode_of(mode);
        Characterization c = characterize(p, rng, opts);
        py::dict d;
        d["verdict"] = std::string(verdict_name(c.verdict));
        d["witness"] = c.witness;
        d["attempts"] = c.attempts;
        if (c.good_assignment) {
          std::vector<u64> a;
          for (Felt v : *c.good_assignment) a.push_back(v.v);
          d["good_assignment"] = a;
        } else {
          d["good_assignment"] = py::none();
        }
        return d;
      },
      py::arg("poly"), py::arg("seed") = 1, py::arg("mode") = "auto");

  m.def(
      "read_once_test",
      [](const py::object& src, std::size_t degree, double epsilon, u64 seed) {
        Oracle o = oracle_of(src);
        return report_dict(read_once_test(o, degree, epsilon, seed));
      },
      py::arg("source"), py::arg("degree"), py::arg("epsilon") = 0.25, py::arg("seed") = 1);
  m.def(
      "property_test",
      [](const py::object& src, double delta, u64 seed) {
        Oracle o = oracle_of(src);
        return report_dict(property_test(o, delta, seed));
      },
      py::arg("source"), py::arg("delta") = 0.1, py::arg("seed") = 1);

  m.def("q_n", [](std::size_t n, u64 p) { return q_n(n, FieldCtx(p)); }, py::arg("n"),
        py::arg("p"));
  m.def(
      "random_formula",
      [](std::size_t n, u64 p, u64 seed, std::optional<std::size_t> vars) {
        Rng rng(seed);
        return random_rof(FieldCtx(p), n, vars.value_or(n), rng);
      },
      py::arg("n"), py::arg("p"), py::arg("seed") = 1, py::arg("vars") = py::none());
  m.def(
      "local_rop_fraction",
      [](const MPoly& p, std::size_t samples, u64 seed, std::size_t threads) {
        SweepRow r = local_rop_fraction(p, samples, seed, threads);
        py::dict d;
        d["p"] = r.p;
        d["n"] = r.n;
        d["samples"] = r.samples;
        d["good_fraction"] = r.good_fraction;
        d["stderr"] = r.stderr_;
        d["exhaustive"] = r.exhaustive;
        return d;
      },
      py::arg("poly"), py::arg("samples") = 10000, py::arg("seed") = 1, py::arg("threads") = 1);
}
