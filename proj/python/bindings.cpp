// Python extension: every command takes JSON documents and returns the JSON report.
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lode/errors.hpp"
#include "lode/io.hpp"
#include "lode/report.hpp"

namespace py = pybind11;

namespace {

lode::ParseOptions options(std::optional<int> order, const std::optional<std::string>& mode) {
    lode::ParseOptions o;
    o.order = order;
    if (mode) {
        if (*mode == "exact")
            o.mode = lode::Mode::EXACT;
        else if (*mode == "float")
            o.mode = lode::Mode::FLOAT;
        else
            throw lode::ParseError("mode must be 'exact' or 'float'");
    }
    return o;
}

// Returns (report, exit_code); lode errors come back as the error report.
py::tuple run(const std::string& command, const std::vector<std::string>& documents, std::optional<int> order,
              const std::optional<std::string>& mode, bool meromorphic, double radius, double tol) {
    try {
        lode::ParseOptions o = options(order, mode);
        std::vector<lode::EquationSpec> specs;
        for (size_t i = 0; i < documents.size(); ++i)
            specs.push_back(lode::parse_equation(documents[i], "<document " + std::to_string(i) + ">", o));
        lode::Report r;
        const size_t want = command == "equivalent" ? 2 : 1;
        if (specs.size() != want)
            throw lode::ParseError(command + " takes " + std::to_string(want) + " document(s)");
        if (command == "classify")
            r = lode::cmd_classify(specs[0]);
        else if (command == "equivalent")
            r = lode::cmd_equivalent(specs[0], specs[1], meromorphic);
        else if (command == "normal-form")
            r = lode::cmd_normal_form(specs[0]);
        else if (command == "stokes")
            r = lode::cmd_stokes(specs[0]);
        else if (command == "symmetries")
            r = lode::cmd_symmetries(specs[0]);
        else if (command == "monodromy")
            r = lode::cmd_monodromy(specs[0], lode::MonodromyOptions{radius, tol});
        else
            throw lode::ParseError("unknown command '" + command + "'");
        return py::make_tuple(lode::render_json(r.data), r.exit_code);
    } catch (const std::exception& e) {
        return py::make_tuple(lode::render_json(lode::error_json(e)), lode::exit_code_for(e));
    }
}

}  // namespace

PYBIND11_MODULE(_lode, m) {
    m.doc() = "Local classification of singular second-order linear ODEs";
    m.def("run", &run, py::arg("command"), py::arg("documents"), py::arg("order") = py::none(),
          py::arg("mode") = py::none(), py::arg("meromorphic") = false, py::arg("radius") = 1.0,
          py::arg("tol") = 1e-8);
}
