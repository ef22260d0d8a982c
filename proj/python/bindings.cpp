#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "fraclab/errors.hpp"
#include "fraclab/frac_operator.hpp"
#include "fraclab/kernels.hpp"
#include "fraclab/lab/config.hpp"
#include "fraclab/lab/scenarios.hpp"
#include "fraclab/radial_kernel.hpp"
#include "fraclab/regularity.hpp"
#include "fraclab/special_functions.hpp"

namespace py = pybind11;
using namespace fraclab;

namespace {

Point to_point(const std::vector<double>& x) {
    if (x.empty() || x.size() > 3) throw DomainError("points have 1 to 3 coordinates");
    Point p{};
    for (std::size_t i = 0; i < x.size(); ++i) p[i] = x[i];
    return p;
}

ScalarField power_field(double beta) {
    ScalarField f = ScalarField::decaying([beta](const Point& y) { return std::pow(norm(y), beta); }, -beta, 1.0);
    f.singular_points.push_back({0, 0, 0});
    return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fractional Laplacian kernels, potentials and Holder-exponent tools";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);
    py::register_exception<lab::ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("gamma", &fraclab::gamma, py::arg("x"));
    m.def("hyp2f1", py::overload_cast<double, double, double, double>(&hyp2f1), py::arg("a"), py::arg("b"),
          py::arg("c"), py::arg("z"));
    m.def("bessel_j", &bessel_j, py::arg("nu"), py::arg("x"));

    py::enum_<KernelBranch>(m, "KernelBranch")
        .value("generic", KernelBranch::generic)
        .value("log1d", KernelBranch::log1d)
        .value("log2d", KernelBranch::log2d);
    py::class_<KernelSpec>(m, "KernelSpec")
        .def(py::init(&KernelSpec::make), py::arg("dim"), py::arg("s"))
        .def_readonly("dim", &KernelSpec::dim)
        .def_readonly("order", &KernelSpec::order)
        .def_readonly("branch", &KernelSpec::branch);
    m.def("riesz_kernel", &riesz_kernel, py::arg("spec"), py::arg("r"));
    m.def("green_kernel", &green_kernel, py::arg("spec"), py::arg("r"));
    m.def("scaling_constant", &scaling_constant, py::arg("spec"), py::arg("beta"));
    m.def(
        "frac_laplacian_power",
        [](const KernelSpec& spec, double beta, const std::vector<double>& x, double tol) {
            return frac_laplacian_at(spec, power_field(beta), to_point(x), tol);
        },
        py::arg("spec"), py::arg("beta"), py::arg("x"), py::arg("tol") = 1e-8,
        "(-Delta)^s |y|^beta evaluated at x");

    m.def("phi_direct", &phi_direct, py::arg("spec"), py::arg("t"), py::arg("tol") = 1e-13);
    m.def("phi_hypergeometric", &phi_hypergeometric, py::arg("spec"), py::arg("t"));
    m.def(
        "phi", [](const KernelSpec& spec, double t) { return PhiKernel(spec).value(t); }, py::arg("spec"), py::arg("t"));

    py::enum_<RegularityCase>(m, "RegularityCase")
        .value("I", RegularityCase::I)
        .value("IIA", RegularityCase::IIA)
        .value("IIB", RegularityCase::IIB)
        .value("out_of_range", RegularityCase::out_of_range);
    py::class_<ExponentReport>(m, "ExponentReport")
        .def_readonly("case_tag", &ExponentReport::case_tag)
        .def_readonly("alpha", &ExponentReport::alpha)
        .def_readonly("exponent", &ExponentReport::exponent)
        .def_readonly("log_correction", &ExponentReport::log_correction)
        .def_readonly("derivative_order", &ExponentReport::derivative_order)
        .def_readonly("effective_dim", &ExponentReport::effective_dim);
    m.def("predict_exponent", &predict_exponent, py::arg("dim"), py::arg("s"), py::arg("p"),
          py::arg("radial_mode") = false);
    m.def(
        "bootstrap_iterations", [](int dim, double s, double p) { return bootstrap_schedule(dim, s, p).iterations; },
        py::arg("dim"), py::arg("s"), py::arg("p"));

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("exponent_hat", &FitResult::exponent_hat)
        .def_readonly("stderr_hat", &FitResult::stderr_hat)
        .def_readonly("constant", &FitResult::constant)
        .def_readonly("log_model_preferred", &FitResult::log_model_preferred)
        .def_readonly("pair_count", &FitResult::pair_count)
        .def_readonly("low_confidence", &FitResult::low_confidence);
    m.def(
        "fit_holder_exponent",
        [](const std::vector<std::vector<double>>& xs, const std::vector<double>& values,
           const std::vector<double>& center, std::uint64_t seed, double r_near) {
            if (xs.size() != values.size()) throw DataError("points and values differ in length");
            std::vector<Sample> ss;
            for (std::size_t i = 0; i < xs.size(); ++i) ss.push_back({to_point(xs[i]), values[i]});
            FitConfig fc;
            fc.r_near = r_near;
            return fit_holder_exponent(ss, to_point(center), seed, fc);
        },
        py::arg("points"), py::arg("values"), py::arg("center"), py::arg("seed") = 42,
        py::arg("r_near") = kUnbounded);

    m.def(
        "run_scenario",
        [](const std::string& scenario, const std::string& config_text, const std::string& output_path) {
            auto cfg = lab::parse_config(config_text, lab::scenario_from_name(scenario));
            cfg.output_path = output_path;
            const auto rep = lab::run_scenario(cfg);
            py::dict metrics;
            for (const auto& [k, v] : rep.metrics) metrics[py::str(k)] = v;
            py::dict out;
            out["pass"] = rep.pass;
            out["metrics"] = metrics;
            out["artifacts"] = rep.artifacts;
            out["report"] = lab::report_text(rep);
            if (rep.measured) out["exponent_hat"] = rep.measured->exponent_hat;
            return out;
        },
        py::arg("scenario"), py::arg("config_text") = "", py::arg("output_path") = ".",
        "Runs a named scenario; config_text holds `key = value` lines.");
}
