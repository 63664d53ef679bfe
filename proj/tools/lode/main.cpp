// lode: classify singular second-order linear ODEs from JSON descriptions.
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lode/errors.hpp"
#include "lode/io.hpp"
#include "lode/report.hpp"

namespace {

struct Common {
    bool json = false;
    std::optional<int> order;
    std::string mode;
    std::vector<std::string> files;
};

void add_common(CLI::App* cmd, Common& c, const std::string& files_help, int expected) {
    cmd->add_flag("--json", c.json, "Structured JSON on stdout");
    cmd->add_option("--order", c.order, "Truncation order N")->check(CLI::PositiveNumber);
    cmd->add_option("--mode", c.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("files", c.files, files_help)->required()->expected(expected);
}

int emit(const nlohmann::json& data, bool as_json, int code) {
    std::cout << (as_json ? lode::render_json(data) : lode::render_prose(data));
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local classification of singular second-order linear ODEs"};
    app.require_subcommand(1);
    Common opts;
    bool meromorphic = false;
    lode::MonodromyOptions mono;

    std::vector<CLI::App*> cmds;
    auto* classify = app.add_subcommand("classify", "Singularity class, invariants, normal form, symmetries");
    auto* equivalent = app.add_subcommand("equivalent", "Decide equivalence of two equations");
    auto* normal = app.add_subcommand("normal-form", "Normal form and the transformation to it");
    auto* stokes = app.add_subcommand("stokes", "Rank-1 analytic invariants and supplied Stokes data");
    auto* symmetries = app.add_subcommand("symmetries", "Lie algebra of linear point symmetries");
    auto* monodromy = app.add_subcommand("monodromy", "Numeric monodromy of the companion system");
    for (auto* c : {classify, normal, stokes, symmetries, monodromy}) add_common(c, opts, "Input file, or - for stdin", 1);
    add_common(equivalent, opts, "Two input files", 2);
    equivalent->add_flag("--meromorphic", meromorphic, "Allow a factor x^m in the transformation");
    monodromy->add_option("--radius", mono.radius, "Radius of the loop")->check(CLI::PositiveNumber);
    monodromy->add_option("--tol", mono.tol, "Target accuracy for M")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    lode::ParseOptions parse;
    parse.order = opts.order;
    if (opts.mode == "exact") parse.mode = lode::Mode::EXACT;
    if (opts.mode == "float") parse.mode = lode::Mode::FLOAT;

    try {
        lode::Report r;
        if (equivalent->parsed()) {
            lode::EquationSpec a = lode::load_equation(opts.files.at(0), parse);
            lode::EquationSpec b = lode::load_equation(opts.files.at(1), parse);
            r = lode::cmd_equivalent(a, b, meromorphic);
        } else {
            lode::EquationSpec spec = lode::load_equation(opts.files.at(0), parse);
            if (classify->parsed())
                r = lode::cmd_classify(spec);
            else if (normal->parsed())
                r = lode::cmd_normal_form(spec);
            else if (stokes->parsed())
                r = lode::cmd_stokes(spec);
            else if (symmetries->parsed())
                r = lode::cmd_symmetries(spec);
            else
                r = lode::cmd_monodromy(spec, mono);
        }
        return emit(r.data, opts.json, r.exit_code);
    } catch (const std::exception& e) {
        int code = lode::exit_code_for(e);
        std::cerr << "lode: " << e.what() << "\n";
        if (opts.json) {
            nlohmann::json err = lode::error_json(e);
            err["exit_code"] = code;
            std::cout << lode::render_json(err);
        }
        return code;
    }
}
