#pragma once

#include <exception>
#include <string>

#include <json.hpp>

#include "lode/io.hpp"

namespace lode {

inline constexpr double kJetTolerance = 1e-10;
inline constexpr double kMonodromyTolerance = 1e-8;

struct Report {
    nlohmann::json data;
    int exit_code = 0;
};

struct MonodromyOptions {
    double radius = 1.0;
    double tol = kMonodromyTolerance;
};

/// Each command re-runs once in FLOAT mode when an exact computation would need
/// an irrational number, and records "fallback": "float" in the provenance.
Report cmd_classify(const EquationSpec& spec);
Report cmd_equivalent(const EquationSpec& a, const EquationSpec& b, bool meromorphic);
Report cmd_normal_form(const EquationSpec& spec);
Report cmd_stokes(const EquationSpec& spec);
Report cmd_symmetries(const EquationSpec& spec);
Report cmd_monodromy(const EquationSpec& spec, const MonodromyOptions& opts = {});

/// 1 parse, 2 degenerate or unsupported input, 3 needs Stokes data, 4 numeric
/// failure; anything else is 1.
int exit_code_for(const std::exception& e);
nlohmann::json error_json(const std::exception& e);

/// Stable textual rendering (keys sorted, two-space indent).
std::string render_json(const nlohmann::json& j);
std::string render_prose(const nlohmann::json& j);

}  // namespace lode
