#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "json.hpp"
#include "povline/errors.hpp"
#include "povline/io.hpp"
#include "povline/report.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

py::object json_to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::object: {
            py::dict d;
            for (const auto& [k, v] : j.items()) d[py::str(k)] = json_to_py(v);
            return d;
        }
        case json::value_t::array: {
            py::list l;
            for (const auto& v : j) l.append(json_to_py(v));
            return l;
        }
        case json::value_t::string: return py::str(j.get<std::string>());
        case json::value_t::boolean: return py::bool_(j.get<bool>());
        case json::value_t::number_integer: return py::int_(j.get<long long>());
        case json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case json::value_t::number_float: return py::float_(j.get<double>());
        default: return py::none();
    }
}

povline::sample make_sample(std::vector<double> values) {
    return povline::sample::from_values(std::move(values));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "poverty index estimation with estimated poverty lines";
    m.attr("__version__") = povline::version_string;

    py::register_exception<povline::validation_error>(m, "ValidationError",
                                                      PyExc_ValueError);
    py::register_exception<povline::degenerate_error>(m, "DegenerateError",
                                                      PyExc_ArithmeticError);

    m.def(
        "j_fixed",
        [](std::vector<double> values, const std::string& measure, double z) {
            return povline::j_fixed(make_sample(std::move(values)),
                                    povline::measure::parse(measure), z);
        },
        py::arg("values"), py::arg("measure"), py::arg("z"),
        "plug-in index at a fixed threshold");

    m.def(
        "j_relative",
        [](std::vector<double> values, const std::string& measure,
           const std::string& line) {
            return povline::j_relative(make_sample(std::move(values)),
                                       povline::measure::parse(measure),
                                       povline::line_spec::parse(line));
        },
        py::arg("values"), py::arg("measure"), py::arg("line"),
        "plug-in index at the estimated line");

    m.def(
        "j_theoretical",
        [](const std::string& dist, const std::string& measure,
           const std::string& line) {
            return povline::j_theoretical(povline::distribution::parse(dist),
                                          povline::measure::parse(measure),
                                          povline::line_spec::parse(line));
        },
        py::arg("dist"), py::arg("measure"), py::arg("line"),
        "population index under a parametric model");

    m.def(
        "estimate",
        [](std::vector<double> values, const std::string& measure,
           const std::string& line, const std::string& cov_mode,
           const std::string& a_mode) {
            const auto r = povline::make_estimate_report(
                make_sample(std::move(values)), povline::measure::parse(measure),
                povline::line_spec::parse(line),
                povline::parse_cov_mode(cov_mode),
                povline::parse_a_mode(a_mode));
            return json_to_py(povline::to_json(r));
        },
        py::arg("values"), py::arg("measure"), py::arg("line"),
        py::arg("cov_mode") = "full", py::arg("a_mode") = "density",
        "full estimate report: index, variance, line penalty");

    m.def(
        "delta",
        [](std::vector<double> values, const std::string& measure,
           const std::string& line, const std::string& cov_mode,
           const std::string& a_mode) {
            const auto r = povline::make_delta_report(
                make_sample(std::move(values)), povline::measure::parse(measure),
                povline::line_spec::parse(line),
                povline::parse_cov_mode(cov_mode),
                povline::parse_a_mode(a_mode));
            return json_to_py(povline::to_json(r));
        },
        py::arg("values"), py::arg("measure"), py::arg("line"),
        py::arg("cov_mode") = "full", py::arg("a_mode") = "density",
        "variance split: fixed-line part, line penalty, total");

    m.def(
        "sigma_hat",
        [](std::vector<double> values, const std::string& mk,
           const std::string& ml, double z, const std::string& cov_mode) {
            return povline::sigma_hat(
                make_sample(std::move(values)), povline::measure::parse(mk),
                povline::measure::parse(ml), z, povline::parse_cov_mode(cov_mode));
        },
        py::arg("values"), py::arg("measure_k"), py::arg("measure_l"),
        py::arg("z"), py::arg("cov_mode") = "full",
        "fixed-threshold asymptotic covariance entry");

    m.def(
        "gamma_hat",
        [](std::vector<double> values, const std::string& mk,
           const std::string& ml, const std::string& line,
           const std::string& cov_mode, const std::string& a_mode) {
            return povline::gamma_hat(
                make_sample(std::move(values)), povline::measure::parse(mk),
                povline::measure::parse(ml), povline::line_spec::parse(line),
                povline::parse_cov_mode(cov_mode), povline::parse_a_mode(a_mode));
        },
        py::arg("values"), py::arg("measure_k"), py::arg("measure_l"),
        py::arg("line"), py::arg("cov_mode") = "full",
        py::arg("a_mode") = "density",
        "estimated-line asymptotic covariance entry");

    m.def(
        "proportionality_test",
        [](std::vector<double> values_f, std::vector<double> values_g,
           const std::string& measure, double coef, const std::string& line_f,
           const std::string& line_g, const std::string& cov_mode,
           const std::string& a_mode) {
            const auto r = povline::proportionality_test(
                make_sample(std::move(values_f)),
                make_sample(std::move(values_g)),
                povline::measure::parse(measure), coef,
                povline::line_spec::parse(line_f),
                povline::line_spec::parse(line_g),
                povline::parse_cov_mode(cov_mode),
                povline::parse_a_mode(a_mode));
            return json_to_py(povline::to_json(r));
        },
        py::arg("values_f"), py::arg("values_g"), py::arg("measure"),
        py::arg("coef") = 1.0, py::arg("line_f") = "mean:1",
        py::arg("line_g") = "mean:1", py::arg("cov_mode") = "full",
        py::arg("a_mode") = "density", "two-sample proportionality test");

    m.def(
        "wald_test",
        [](std::vector<double> values_f, std::vector<double> values_g,
           const std::vector<std::string>& measures, std::vector<double> coeffs,
           const std::string& line_f, const std::string& line_g,
           const std::string& cov_mode, const std::string& a_mode) {
            std::vector<povline::measure> ms;
            ms.reserve(measures.size());
            for (const auto& t : measures) ms.push_back(povline::measure::parse(t));
            if (coeffs.empty()) coeffs.assign(ms.size(), 1.0);
            const auto r = povline::wald_test(
                make_sample(std::move(values_f)),
                make_sample(std::move(values_g)), ms, coeffs,
                povline::line_spec::parse(line_f),
                povline::line_spec::parse(line_g),
                povline::parse_cov_mode(cov_mode),
                povline::parse_a_mode(a_mode));
            return json_to_py(povline::to_json(r));
        },
        py::arg("values_f"), py::arg("values_g"), py::arg("measures"),
        py::arg("coeffs") = std::vector<double>{}, py::arg("line_f") = "mean:1",
        py::arg("line_g") = "mean:1", py::arg("cov_mode") = "full",
        py::arg("a_mode") = "density", "joint two-sample test");

    m.def(
        "simulate",
        [](const std::string& dist, std::size_t n, std::size_t reps,
           const std::string& measure, const std::string& line,
           std::uint64_t seed, bool true_density, unsigned jobs,
           const std::string& cov_mode, const std::string& a_mode) {
            json config = {{"dist", dist},
                           {"n", n},
                           {"reps", reps},
                           {"measure", measure},
                           {"line", line},
                           {"seed", seed},
                           {"true_density", true_density},
                           {"jobs", jobs},
                           {"cov_mode", cov_mode},
                           {"a_mode", a_mode}};
            return json_to_py(povline::run_subcommand("simulate", config));
        },
        py::arg("dist"), py::arg("n"), py::arg("reps"), py::arg("measure"),
        py::arg("line"), py::arg("seed"), py::arg("true_density") = false,
        py::arg("jobs") = 1u, py::arg("cov_mode") = "full",
        py::arg("a_mode") = "density",
        "replicated sampling study; returns the full report document");

    m.def(
        "run_subcommand",
        [](const std::string& subcommand, const py::dict& config) {
            const json cfg = json::parse(
                py::str(py::module_::import("json").attr("dumps")(config))
                    .cast<std::string>());
            return json_to_py(povline::run_subcommand(subcommand, cfg));
        },
        py::arg("subcommand"), py::arg("config"),
        "run any subcommand from a resolved config dict");
}
