#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shiftlab/report.hpp"

namespace py = pybind11;

namespace {

py::tuple wrap(const shiftlab::CommandResult& r) {
    return py::make_tuple(r.report.dump(), r.exit_code);
}

shiftlab::AnalysisOptions make_opts(int oracle_max, bool run_oracle) {
    shiftlab::AnalysisOptions o;
    o.oracle_n_max = oracle_max;
    o.run_oracle = run_oracle;
    return o;
}

} // namespace

PYBIND11_MODULE(_shiftlab, m) {
    using namespace shiftlab;
    m.doc() = "matrix criteria and bounded search for graph-generated shift spaces";
    m.attr("__version__") = tool_version;

    m.def(
        "analyze",
        [](const std::string& text, int oracle_max, bool run_oracle) {
            return wrap(cmd_analyze(parse_spec_text(text), make_opts(oracle_max, run_oracle)));
        },
        py::arg("spec_text"), py::arg("oracle_max") = 6, py::arg("run_oracle") = true,
        "Run every matrix criterion per component; returns (report_json, exit_code).");
    m.def(
        "nonempty",
        [](const std::string& text, int oracle_max, bool run_oracle) {
            return wrap(cmd_nonempty(parse_spec_text(text), make_opts(oracle_max, run_oracle)));
        },
        py::arg("spec_text"), py::arg("oracle_max") = 6, py::arg("run_oracle") = true);
    m.def(
        "finite",
        [](const std::string& text) { return wrap(cmd_finite(parse_spec_text(text))); },
        py::arg("spec_text"));
    m.def(
        "epairs", [](const std::string& text) { return wrap(cmd_epairs(parse_spec_text(text))); },
        py::arg("spec_text"));
    m.def(
        "higher_block",
        [](const std::string& text, const std::vector<int>& window) {
            return wrap(cmd_higher_block(parse_spec_text(text), window));
        },
        py::arg("spec_text"), py::arg("window"));
    m.def(
        "periodic",
        [](const std::string& text, int p, int q) {
            return wrap(cmd_periodic(parse_spec_text(text), p, q));
        },
        py::arg("spec_text"), py::arg("p"), py::arg("q"));
    m.def(
        "oracle",
        [](const std::string& text, const std::vector<int>& periods, long long list_limit) {
            return wrap(cmd_oracle(parse_spec_text(text), periods, {}, list_limit));
        },
        py::arg("spec_text"), py::arg("periods"), py::arg("list_limit") = 16);
    m.def(
        "growth",
        [](const std::string& text, int n_max) {
            return wrap(cmd_growth(parse_spec_text(text), n_max));
        },
        py::arg("spec_text"), py::arg("n_max"));
    m.def(
        "render_spec",
        [](const std::string& text) { return print_spec(parse_spec_text(text).spec); },
        py::arg("spec_text"), "Canonical spec text after a parse round-trip.");
    m.def(
        "digest", [](const std::string& text) { return "fnv1a64:" + fnv1a64_hex(text); },
        py::arg("text"), "Digest over raw spec text, as reported under input.digest.");
}
