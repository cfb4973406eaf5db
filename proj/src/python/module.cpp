#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adlab/adeg/approx_degree.hpp"
#include "adlab/adeg/sweep.hpp"
#include "adlab/adversary/witness.hpp"
#include "adlab/boolfn/partial_fn.hpp"
#include "adlab/errors.hpp"
#include "adlab/gamma2/gamma2.hpp"
#include "adlab/interp/lagrange.hpp"
#include "adlab/poly/robustness.hpp"

namespace py = pybind11;
using namespace adlab;

namespace {

DenseMatrix to_dense(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw InputError("expected a 2-d array");
    DenseMatrix m(a.shape(0), a.shape(1));
    auto r = a.unchecked<2>();
    for (py::ssize_t i = 0; i < a.shape(0); ++i)
        for (py::ssize_t j = 0; j < a.shape(1); ++j) m(i, j) = r(i, j);
    return m;
}

py::array_t<double> to_numpy(const DenseMatrix& m) {
    py::array_t<double> out({m.rows(), m.cols()});
    auto w = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) w(i, j) = m(i, j);
    return out;
}

SignMatrix to_sign(const py::array_t<int, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw InputError("expected a 2-d array of +1, -1, 0");
    std::vector<std::int8_t> e;
    auto r = a.unchecked<2>();
    for (py::ssize_t i = 0; i < a.shape(0); ++i)
        for (py::ssize_t j = 0; j < a.shape(1); ++j) e.push_back(static_cast<std::int8_t>(r(i, j)));
    return SignMatrix(a.shape(0), a.shape(1), std::move(e));
}

py::dict sweep_row(const SweepRow& r) {
    py::dict d;
    d["instance"] = r.instance;
    d["arity"] = r.arity;
    d["adeg_outer"] = r.adeg_outer;
    d["adeg_inner"] = r.adeg_inner;
    d["adeg_composed"] = r.adeg_composed;
    d["ratio"] = r.ratio;
    d["tag"] = r.tag;
    d["skipped"] = r.skipped;
    d["note"] = r.note;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bindings for the adlab C++ core";

    auto base = py::register_exception<Error>(m, "AdlabError", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", base.ptr());
    py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<SolverError>(m, "SolverError", base.ptr());

    py::class_<PartialFn>(m, "PartialFn")
        .def(py::init([](std::size_t arity, std::vector<std::uint8_t> table, std::string name) {
                 return PartialFn(arity, std::move(table), std::move(name));
             }),
             py::arg("arity"), py::arg("table"), py::arg("name") = "")
        .def_property_readonly("arity", &PartialFn::arity)
        .def_property_readonly("name", &PartialFn::name)
        .def_property_readonly("table", &PartialFn::table)
        .def("__repr__", [](const PartialFn& f) { return "<PartialFn " + (f.name().empty() ? "?" : f.name()) + ">"; });

    m.def("build_named", &build_named, py::arg("name"), py::arg("n"));
    m.def("parse_truth_table", &parse_truth_table, py::arg("text"), py::arg("name") = "");

    m.def(
        "approx_degree",
        [](const PartialFn& f, double epsilon, bool bounded) {
            AdegOptions o;
            o.bounded = bounded;
            ApproxDegreeResult r;
            {
                py::gil_scoped_release release;
                r = approx_degree(f, epsilon, o);
            }
            py::dict d;
            d["degree"] = r.degree;
            d["epsilon"] = r.epsilon;
            d["bounded"] = r.bounded;
            d["achieved_error"] = r.achieved_error;
            d["bound_violation"] = r.bound_violation;
            d["errors_by_degree"] = r.errors_by_degree;
            d["witness"] = to_json(r.witness);
            if (r.certificate) d["certified_error"] = r.certificate->certified_error;
            return d;
        },
        py::arg("f"), py::arg("epsilon") = 1.0 / 3.0, py::arg("bounded") = true);

    m.def(
        "composition_sweep",
        [](const std::string& spec_json, std::size_t jobs) {
            std::vector<SweepRow> rows;
            {
                py::gil_scoped_release release;
                rows = composition_sweep(parse_sweep_spec(spec_json), jobs);
            }
            py::list out;
            for (const auto& r : rows) out.append(sweep_row(r));
            return out;
        },
        py::arg("spec_json"), py::arg("jobs") = 1);

    m.def(
        "witness_report",
        [](std::size_t n, double tol_psd, double tol_constraint, std::size_t jobs) {
            const auto w = build_witness(n, jobs);
            auto r = verify(w, tol_psd, tol_constraint, jobs);
            return to_json(r);
        },
        py::arg("n"), py::arg("tol_psd") = 1e-8, py::arg("tol_constraint") = 1e-6, py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "gamma2_exact",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
            const auto mat = to_dense(a);
            Gamma2Result r;
            {
                py::gil_scoped_release release;
                r = gamma2_exact(mat);
            }
            py::dict d;
            d["value"] = r.value;
            d["factor_value"] = r.factor_value;
            d["residual"] = r.residual;
            d["b"] = to_numpy(r.b);
            d["c"] = to_numpy(r.c);
            return d;
        },
        py::arg("a"));

    m.def(
        "approx_gamma2",
        [](const py::array_t<int, py::array::c_style | py::array::forcecast>& signs, double epsilon) {
            const auto s = to_sign(signs);
            ApproxMatrixResult r;
            {
                py::gil_scoped_release release;
                r = approx_gamma2(s, epsilon);
            }
            py::dict d;
            d["value"] = r.value;
            d["epsilon"] = r.epsilon;
            d["approximant"] = to_numpy(r.approximant);
            d["max_violation"] = r.max_violation;
            return d;
        },
        py::arg("signs"), py::arg("epsilon") = 2.0 / 3.0);

    m.def(
        "comm_matrix",
        [](const std::string& name, std::size_t n) {
            const auto s = build_comm(name, n);
            py::array_t<int> out({s.rows(), s.cols()});
            auto w = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < s.rows(); ++i)
                for (std::size_t j = 0; j < s.cols(); ++j) w(i, j) = s(i, j);
            return out;
        },
        py::arg("name"), py::arg("n"));

    m.def(
        "kronecker_deviation", [](std::size_t n, std::size_t d) { return kronecker_check(n, d).max_deviation; },
        py::arg("n"), py::arg("d"));
    m.def("grid_size", &grid_size, py::arg("n"), py::arg("d"));

    m.def(
        "robustness_margin",
        [](const PartialFn& h, double delta, const std::string& poly_json, bool unit_box) {
            const MultiPoly p = poly_json.empty() ? multilinear_extension(h) : poly_from_json(poly_json);
            const auto r = robustness_margin(p, h, delta, 100000, 1,
                                             unit_box ? PerturbationBox::Unit : PerturbationBox::Full);
            py::dict d;
            d["margin"] = r.margin;
            d["exact"] = r.exact;
            d["worst_x"] = r.worst_x;
            d["worst_signs"] = r.worst_signs;
            return d;
        },
        py::arg("h"), py::arg("delta"), py::arg("poly_json") = "", py::arg("unit_box") = false);
}
