#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qcext/beltrami.hpp"
#include "qcext/cli.hpp"
#include "qcext/serialize.hpp"

namespace py = pybind11;
using namespace qcext;

namespace {

py::object to_python(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

DiskGrid grid_from(std::pair<std::size_t, std::size_t> g) {
  DiskGrid grid;
  grid.n_radial = g.first;
  grid.n_angular = g.second;
  return grid;
}

std::optional<SigmaWeight> weight_from(const std::optional<std::string>& spec,
                                       const HarmonicMap& context) {
  if (!spec) return std::nullopt;
  return make_weight(weight_spec_from_json(Json::parse(*spec)), &context);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = R"pbdoc(
    Quasiconformal extensions of planar harmonic mappings.

    Expressions are strings in z, conj(z), i, exp, log, sqrt with + - * / ^.
    Weights are JSON strings such as '{"kind": "becker"}'.
  )pbdoc";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<cx::Expr>(m, "Expr")
      .def(py::init([](const std::string& text) { return cx::Expr::parse(text); }),
           py::arg("text"))
      .def("__call__", &cx::Expr::evaluate, py::arg("z"))
      .def("dz", &cx::Expr::dz)
      .def("dzbar", &cx::Expr::dzbar)
      .def("is_holomorphic", &cx::Expr::is_holomorphic)
      .def("__str__", &cx::Expr::str)
      .def("__repr__", [](const cx::Expr& e) { return "Expr('" + e.str() + "')"; });

  py::class_<HarmonicMap>(m, "HarmonicMap")
      .def_static("hg",
                  [](const std::string& h, const std::string& g, complex lambda) {
                    return HarmonicMap::hg(cx::Expr::parse(h), cx::Expr::parse(g), lambda);
                  },
                  py::arg("h"), py::arg("g") = "0", py::arg("lam") = complex(1.0))
      .def_static("analytic",
                  [](const std::string& phi) { return HarmonicMap::analytic(cx::Expr::parse(phi)); },
                  py::arg("phi"))
      .def_static("teichmuller",
                  [](const std::string& h, complex alpha) {
                    return HarmonicMap::teichmuller(cx::Expr::parse(h), alpha);
                  },
                  py::arg("h"), py::arg("alpha"))
      .def("__call__", &HarmonicMap::value, py::arg("z"))
      .def_property_readonly("h", [](const HarmonicMap& f) { return f.h().str(); })
      .def_property_readonly("g", [](const HarmonicMap& f) { return f.g().str(); })
      .def_property_readonly("lam", &HarmonicMap::lambda)
      .def("dilatation", [](const HarmonicMap& f, complex z) { return dilatation_at(f, z).omega; },
           py::arg("z"))
      .def("pre_schwarzian", py::overload_cast<const HarmonicMap&, complex>(&harmonic_pre_schwarzian),
           py::arg("z"))
      .def("schwarzian", py::overload_cast<const HarmonicMap&, complex>(&harmonic_schwarzian),
           py::arg("z"))
      .def("affine", &affine_transform, py::arg("a"));

  py::class_<SigmaWeight>(m, "Weight")
      .def("sigma", &SigmaWeight::sigma, py::arg("z"))
      .def("sigma_z", &SigmaWeight::sigma_z, py::arg("z"))
      .def("sigma_zbar", &SigmaWeight::sigma_zbar, py::arg("z"))
      .def_property_readonly("kind", [](const SigmaWeight& w) { return to_string(w.kind()); });

  m.def("make_weight",
        [](const std::string& spec, const std::optional<HarmonicMap>& context) {
          return make_weight(weight_spec_from_json(Json::parse(spec)),
                             context ? &*context : nullptr);
        },
        py::arg("spec"), py::arg("map") = std::nullopt,
        "Builds a weight from its JSON description; map-dependent kinds need a map.");

  m.def("check",
        [](const std::string& criterion, const HarmonicMap& f, double k,
           const std::optional<std::string>& weight, complex c,
           std::pair<std::size_t, std::size_t> grid, bool refine) {
          const CriterionKind kind = criterion_kind_from_string(criterion);
          std::optional<SigmaWeight> w = weight_from(weight, f);
          if (!w && needs_weight(kind)) w = becker_weight();
          const Criterion cr = make_criterion(kind, f, w, c);
          SupOptions opts;
          opts.refine = refine;
          py::gil_scoped_release release;
          const CriterionReport r = sup_ratio(cr, grid_from(grid), k, opts);
          py::gil_scoped_acquire acquire;
          return to_python(to_json(r));
        },
        py::arg("criterion"), py::arg("map"), py::arg("k"), py::arg("weight") = std::nullopt,
        py::arg("c") = complex(0.0), py::arg("grid") = std::make_pair(128, 512),
        py::arg("refine") = true, "Estimates sup lhs/rhs of a criterion; returns the report.");

  py::class_<PlaneExtension>(m, "Extension")
      .def("__call__", &PlaneExtension::evaluate, py::arg("z"))
      .def_property_readonly("construction", &PlaneExtension::tag)
      .def_property_readonly("certified", &PlaneExtension::certified)
      .def_property_readonly("k_hat", &PlaneExtension::k_hat)
      .def_property_readonly("omega_sup", &PlaneExtension::omega_sup)
      .def("mu_fd", [](const PlaneExtension& e, complex z) { return mu_fd(e, z); }, py::arg("z"))
      .def("mu_analytic", [](const PlaneExtension& e, complex w) { return mu_analytic_exterior(e, w); },
           py::arg("w"))
      .def("trace",
           [](const PlaneExtension& e, std::size_t n, double eps) {
             const BoundaryTrace t = boundary_trace(e, n, eps);
             py::dict d;
             d["theta"] = t.theta;
             d["inner"] = t.inner;
             d["outer"] = t.outer;
             d["max_gap"] = t.max_gap;
             d["injective"] = trace_injective(t);
             return d;
           },
           py::arg("n") = 1024, py::arg("epsilon") = 1e-3)
      .def("max_dilatation", [](const PlaneExtension& e) {
        DilatationReport r;
        {
          py::gil_scoped_release release;
          r = max_dilatation(e);
        }
        return to_python(to_json(r));
      });

  m.def("build_extension",
        [](const std::string& construction, const HarmonicMap& f,
           const std::optional<std::string>& weight, complex parameter,
           std::pair<std::size_t, std::size_t> grid, bool refine) {
          const Construction c = construction_from_string(construction);
          const HarmonicMap subject =
              c == Construction::teichmuller ? HarmonicMap::teichmuller(f.h(), parameter) : f;
          ExtensionOptions opts;
          opts.grid = grid_from(grid);
          opts.sup.refine = refine;
          return build_extension(c, f, weight_from(weight, subject), parameter, opts);
        },
        py::arg("construction"), py::arg("map"), py::arg("weight") = std::nullopt,
        py::arg("parameter") = complex(0.0), py::arg("grid") = std::make_pair(128, 512),
        py::arg("refine") = true);

  m.def("k_formula",
        [](const std::string& kind, double k, double lambda_abs, double omega_sup,
           double alpha_abs) {
          KFormula f = KFormula::analytic;
          if (kind == "harmonic") f = KFormula::harmonic;
          else if (kind == "teichmuller") f = KFormula::teichmuller;
          else if (kind != "analytic") throw ParameterError("unknown K formula '" + kind + "'");
          const KValue v = k_formula(f, {k, lambda_abs, omega_sup, alpha_abs});
          return std::make_pair(v.K, v.ratio);
        },
        py::arg("kind"), py::arg("k"), py::arg("lambda_abs") = 1.0, py::arg("omega_sup") = 0.0,
        py::arg("alpha_abs") = 0.0, "Returns (K, (K-1)/(K+1)).");

  m.def("rho_bound", &rho_bound, py::arg("k"), py::arg("lambda_abs"), py::arg("omega_sup"),
        py::arg("x"));
  m.def("k_condition", &k_condition_check, py::arg("k_hat"), py::arg("omega_sup"));

  m.def("run_cli",
        [](std::vector<std::string> args) {
          args.insert(args.begin(), "qcext");
          std::ostringstream out, err;
          const int code = cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs a command line; returns (exit code, stdout, stderr).");

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
