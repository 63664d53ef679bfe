#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "lode/lde.hpp"
#include "lode/stokes.hpp"

namespace lode {

enum class Mode { EXACT, FLOAT };
const char* mode_name(Mode m);

/// A parsed input document.
struct EquationSpec {
    std::string source;  // file name or "-"
    std::string form;    // raw | delta | factored
    int nu = 0;          // rank after construction (minimal)
    int order = 8;       // requested truncation N
    int working_order = 16;
    Mode mode = Mode::EXACT;
    Lde equation;
    /// The coefficients as functions, for integration; the rank here is the one
    /// the document was written in.
    CoefficientFunctions functions;
    std::optional<StokesCollection> stokes;
    /// alpha2 - alpha1 for factored documents.
    std::optional<Jet> factor_difference;
    nlohmann::json document;

    EquationSpec to_float() const;
};

struct ParseOptions {
    std::optional<int> order;
    std::optional<Mode> mode;
};

/// Parses one JSON document. Throws ParseError with line and column for
/// malformed JSON and with the offending key path for semantic errors.
EquationSpec parse_equation(const std::string& text, const std::string& source, const ParseOptions& opts = {});
/// Reads a file, or stdin for "-".
EquationSpec load_equation(const std::string& path, const ParseOptions& opts = {});

/// "n/d", "n", or a decimal (FLOAT mode only); JSON numbers are accepted when
/// integral, or in FLOAT mode. Complex numbers are [re, im].
Scalar parse_scalar(const nlohmann::json& j, Mode mode, const std::string& where);

nlohmann::json scalar_json(const Scalar& s);
nlohmann::json jet_json(const Jet& j);

}  // namespace lode
