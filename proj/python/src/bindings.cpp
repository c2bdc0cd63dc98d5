#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qplane/error.hpp"
#include "qplane/forms.hpp"
#include "qplane/fourier.hpp"
#include "qplane/io.hpp"
#include "qplane/qexp.hpp"
#include "qplane/random.hpp"
#include "qplane/verify.hpp"

namespace py = pybind11;
using namespace qplane;

namespace {

using Window = std::pair<int, int>;

IndexWindow window(Window w) { return {w.first, w.second}; }
Window pair_of(IndexWindow w) { return {w.lo, w.hi}; }

QDiff parse_diff(const std::string& name) {
  if (name == "RZ") return QDiff::RZ;
  if (name == "LZ") return QDiff::LZ;
  if (name == "RZBAR") return QDiff::RZBAR;
  if (name == "LZBAR") return QDiff::LZBAR;
  throw ConfigError("unknown operator '" + name + "' (RZ, LZ, RZBAR, LZBAR)");
}

Relation parse_relation(const std::string& name) {
  for (Relation r : kAllRelations)
    if (to_string(r) == name) return r;
  throw ConfigError("unknown relation '" + name + "'");
}

ModeFunction from_dict(const QLattice& lat, const std::map<std::pair<int, int>, Complex>& coeffs) {
  ModeFunction f(lat);
  for (const auto& [kl, c] : coeffs) f.add(kl.first, kl.second, c);
  return f;
}

std::map<std::pair<int, int>, Complex> to_dict(const ModeFunction& f) {
  std::map<std::pair<int, int>, Complex> out;
  for (const auto& [m, c] : f.coeffs()) out[{m.k, m.l}] = c;
  return out;
}

py::dict transform_dict(const TransformResult& t) {
  py::dict d;
  d["value"] = t.value;
  d["out_window"] = pair_of(t.out_window);
  d["tail_estimate"] = t.tail_estimate;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Harmonic analysis on the quantum az+b homogeneous space";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<AliasingError>(m, "AliasingError", error.ptr());
  py::register_exception<PoleError>(m, "PoleError", error.ptr());
  py::register_exception<WindowError>(m, "WindowError", error.ptr());
  py::register_exception<NoDataError>(m, "NoDataError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  py::class_<QLattice>(m, "QLattice")
      .def(py::init<double>(), py::arg("q"))
      .def_property_readonly("q", &QLattice::q)
      .def("pow", &QLattice::pow)
      .def("mu_weight", &QLattice::mu_weight)
      .def("__eq__", [](const QLattice& a, const QLattice& b) { return a == b; })
      .def("__repr__", [](const QLattice& l) { return "QLattice(" + format_number(l.q()) + ")"; });

  m.def("chi", [](int k1, double t1, int k2, double t2) { return chi({k1, t1}, {k2, t2}); });

  py::class_<ModeFunction>(m, "ModeFunction")
      .def(py::init<QLattice>(), py::arg("lattice"))
      .def(py::init(&from_dict), py::arg("lattice"), py::arg("coeffs"))
      .def_property_readonly("lattice", &ModeFunction::lattice)
      .def_property_readonly("q", &ModeFunction::q)
      .def("coeffs", &to_dict)
      .def("coeff", py::overload_cast<int, int>(&ModeFunction::coeff, py::const_))
      .def("add", &ModeFunction::add)
      .def("set", &ModeFunction::set)
      .def("k_support", [](const ModeFunction& f) { return pair_of(f.k_support()); })
      .def("max_abs_l", &ModeFunction::max_abs_l)
      .def("max_abs", &ModeFunction::max_abs)
      .def("evaluate", [](const ModeFunction& f, int k, double theta) { return f.evaluate({k, theta}); })
      .def("restricted", [](const ModeFunction& f, Window w) { return f.restricted(window(w)); })
      .def("__len__", &ModeFunction::size)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def("__mul__", [](const ModeFunction& f, Complex s) { return f * s; })
      .def("__rmul__", [](const ModeFunction& f, Complex s) { return s * f; })
      .def("__repr__", [](const ModeFunction& f) {
        return "ModeFunction(q=" + format_number(f.q()) + ", modes=" + std::to_string(f.size()) + ")";
      });

  m.def("basis", &basis, py::arg("lattice"), py::arg("k"), py::arg("l"));
  m.def("max_abs_diff", py::overload_cast<const ModeFunction&, const ModeFunction&>(&max_abs_diff));
  m.def("multiply", &multiply);
  m.def("conjugate", &conjugate);
  m.def("integrate_mu", &integrate_mu);
  m.def("inner_product", &inner_product);
  m.def("norm", &norm);
  m.def("random_mode_function", [](const QLattice& lat, Window kw, Window lw, std::uint64_t seed) {
    GaussianSource rng(seed);
    return random_mode_function(lat, window(kw), window(lw), rng);
  }, py::arg("lattice"), py::arg("k_window"), py::arg("l_window"), py::arg("seed") = 1);

  m.def("shift", &shift, py::arg("f"), py::arg("m"), py::arg("s"));
  m.def("sigma", &sigma, py::arg("f"), py::arg("t"));
  m.def("mult_z", [](const ModeFunction& f) { return mult_coord(f, Coord::Z); });
  m.def("mult_zbar", [](const ModeFunction& f) { return mult_coord(f, Coord::ZBAR); });
  m.def("q_diff", [](const ModeFunction& f, const std::string& op) { return q_diff(f, parse_diff(op)); },
        py::arg("f"), py::arg("op"));
  m.def("q_diff_pointwise",
        [](const ModeFunction& f, const std::string& op) { return q_diff_pointwise(f, parse_diff(op)); },
        py::arg("f"), py::arg("op"));

  m.def("d0", [](const ModeFunction& f) {
    Form1 w = d0(f);
    return std::make_pair(w.alpha, w.beta);
  }, "df as (dz coefficient, dzbar coefficient)");
  m.def("d1", [](const ModeFunction& alpha, const ModeFunction& beta) { return d1(Form1(alpha, beta)).gamma; },
        "dz^dzbar coefficient of d(alpha dz + beta dzbar)");

  py::class_<FqEvaluator>(m, "FqEvaluator")
      .def(py::init<QLattice, double>(), py::arg("lattice"), py::arg("tol") = 1e-12)
      .def("point", [](const FqEvaluator& ev, int k, double theta) { return ev.point({k, theta}); })
      .def("extended", &FqEvaluator::extended)
      .def("circle_coeffs", [](const FqEvaluator& ev, int n, Window lw, int n_theta) {
        const CircleCoefficients c = ev.circle_coeffs(n, window(lw), n_theta);
        py::dict d;
        d["a"] = c.a;
        d["l_window"] = pair_of(c.l_window);
        d["parseval_defect"] = c.parseval_defect;
        return d;
      }, py::arg("n"), py::arg("l_window"), py::arg("n_theta"));

  py::class_<FourierData>(m, "FourierData")
      .def("a", &FourierData::a)
      .def_property_readonly("n_window", [](const FourierData& d) { return pair_of(d.n_window()); })
      .def_property_readonly("l_window", [](const FourierData& d) { return pair_of(d.l_window()); })
      .def_property_readonly("n_theta", &FourierData::n_theta)
      .def("max_parseval_defect", &FourierData::max_parseval_defect);

  m.def("build_fourier_data", [](const QLattice& lat, Window nw, Window lw, int n_theta) {
    py::gil_scoped_release release;
    return build_fourier_data(lat, window(nw), window(lw), n_theta);
  }, py::arg("lattice"), py::arg("n_window"), py::arg("l_window"), py::arg("n_theta"));

  m.def("fourier_apply", [](const ModeFunction& f, const FourierData& d, std::optional<Window> out, bool truncate) {
    std::optional<IndexWindow> w;
    if (out) w = window(*out);
    return transform_dict(fourier_apply(f, d, w, truncate ? KernelPolicy::Truncate : KernelPolicy::Strict));
  }, py::arg("f"), py::arg("data"), py::arg("out_window") = py::none(), py::arg("truncate") = false);
  m.def("fourier_adjoint_apply", [](const ModeFunction& h, const FourierData& d, std::optional<Window> out, bool truncate) {
    std::optional<IndexWindow> w;
    if (out) w = window(*out);
    return transform_dict(fourier_adjoint_apply(h, d, w, truncate ? KernelPolicy::Truncate : KernelPolicy::Strict));
  }, py::arg("h"), py::arg("data"), py::arg("out_window") = py::none(), py::arg("truncate") = false);

  m.def("relations", [] {
    std::vector<std::string> names;
    for (Relation r : kAllRelations) names.emplace_back(to_string(r));
    return names;
  });
  m.def("relation_residual", [](const std::string& name, const ModeFunction& f, const FourierData& d) {
    const RelationResidual r = relation_residual(parse_relation(name), f, d);
    py::dict out;
    out["interior"] = r.interior;
    out["tail"] = r.tail;
    out["total"] = r.total();
    out["window"] = pair_of(r.window);
    return out;
  });
  m.def("plancherel_residual", [](int k, int l, const FourierData& d) {
    const PlancherelResidual p = plancherel_residual(k, l, d);
    py::dict out;
    out["relative"] = p.relative;
    out["cross"] = p.cross;
    out["eigenvalue_ratio"] = p.eigenvalue_ratio;
    return out;
  });
  m.def("unitarity_defect", [](Window kw, Window lw, const FourierData& d) {
    return unitarity_defect(window(kw), window(lw), d);
  });

  m.def("parse_mode_json", &parse_mode_json);
  m.def("to_mode_json", &to_mode_json);
  m.def("parse_mode_csv", &parse_mode_csv);
  m.def("to_mode_csv", &to_mode_csv);

  m.def("_run_verify", [](double q, int kmin, int kmax, int lmax, int n_theta, double tol_exact, double tol_quad,
                          const std::vector<std::string>& suites, std::uint64_t seed, int n_random,
                          std::optional<int> kernel_kmax) {
    VerifyConfig c;
    c.q = q;
    c.kmin = kmin;
    c.kmax = kmax;
    c.lmax = lmax;
    c.n_theta = n_theta;
    c.tol_exact = tol_exact;
    c.tol_quad = tol_quad;
    if (!suites.empty()) {
      c.suites.clear();
      for (const auto& s : suites) c.suites.push_back(parse_suite(s));
    }
    c.seed = seed;
    c.n_random = n_random;
    c.kernel_kmax = kernel_kmax;
    py::gil_scoped_release release;
    return format_report(run_verify(c), ReportFormat::Json);
  });
}
