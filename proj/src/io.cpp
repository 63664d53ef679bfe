#include "lode/io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lode/errors.hpp"

namespace lode {

using nlohmann::json;

namespace {

using Poly = std::vector<cplx>;

Poly padd(const Poly& a, const Poly& b, double sb = 1.0) {
    Poly r(std::max(a.size(), b.size()), 0.0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += sb * b[i];
    return r;
}

Poly pmul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly pderiv(const Poly& a) {
    if (a.size() <= 1) return {0.0};
    Poly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<double>(i);
    return r;
}

Poly pshift(const Poly& a, int k) {
    Poly r(static_cast<size_t>(k), 0.0);
    r.insert(r.end(), a.begin(), a.end());
    return r;
}

// A coefficient field: a Laurent list starting at `valuation`, or num/den.
struct Field {
    int valuation = 0;
    std::vector<Scalar> coeffs;
    std::optional<std::vector<Scalar>> num, den;

    int degree() const {
        if (num) return static_cast<int>(std::max(num->size(), den->size()));
        return valuation + static_cast<int>(coeffs.size()) - 1;
    }
    Jet jet(int order, const std::string& where) const {
        if (num) {
            Jet n(0, std::vector<Scalar>(*num)), d(0, std::vector<Scalar>(*den));
            auto pad = [&](Jet j) {
                Jet out(0, order + 2 * static_cast<int>(den->size()) + 2);
                for (int k = 0; k <= j.order(); ++k) out.set(k, j.coeff(k));
                return out;
            };
            if (d.is_zero()) throw ParseError(where + ": zero denominator");
            return (pad(n) * inverse(pad(d))).truncated(order);
        }
        Jet j(std::min(0, valuation), order);
        for (size_t k = 0; k < coeffs.size(); ++k) {
            int deg = valuation + static_cast<int>(k);
            if (deg <= order) j.set(deg, coeffs[k]);
        }
        return j;
    }
    // numerator and denominator polynomials in x (requires valuation >= 0)
    std::pair<Poly, Poly> rational() const {
        auto to_poly = [](const std::vector<Scalar>& v) {
            Poly p;
            for (const Scalar& s : v) p.push_back(s.value());
            if (p.empty()) p.push_back(0.0);
            return p;
        };
        if (num) return {to_poly(*num), to_poly(*den)};
        return {pshift(to_poly(coeffs), std::max(0, valuation)), Poly{1.0}};
    }
};

std::vector<Scalar> scalar_list(const json& j, Mode mode, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected a list of numbers");
    std::vector<Scalar> out;
    for (size_t k = 0; k < j.size(); ++k) out.push_back(parse_scalar(j[k], mode, where + "[" + std::to_string(k) + "]"));
    return out;
}

Field parse_field(const json& doc, const std::string& key, Mode mode) {
    if (!doc.contains(key)) throw ParseError("missing field '" + key + "'");
    const json& j = doc.at(key);
    Field f;
    if (j.is_array()) {
        f.coeffs = scalar_list(j, mode, key);
    } else if (j.is_object() && j.contains("num")) {
        f.num = scalar_list(j.at("num"), mode, key + ".num");
        f.den = j.contains("den") ? scalar_list(j.at("den"), mode, key + ".den") : std::vector<Scalar>{Scalar(1)};
        if (f.den->empty() || f.den->front().is_zero())
            throw ParseError(key + ".den: the denominator must not vanish at 0");
    } else if (j.is_object() && j.contains("coeffs")) {
        if (j.contains("valuation")) {
            if (!j.at("valuation").is_number_integer()) throw ParseError(key + ".valuation: expected an integer");
            f.valuation = j.at("valuation").get<int>();
        }
        f.coeffs = scalar_list(j.at("coeffs"), mode, key + ".coeffs");
    } else {
        throw ParseError(key + ": expected a list, {valuation, coeffs} or {num, den}");
    }
    return f;
}

int integer_field(const json& doc, const std::string& key, int lo) {
    if (!doc.contains(key)) throw ParseError("missing field '" + key + "'");
    const json& j = doc.at(key);
    if (!j.is_number_integer() || j.get<long>() < lo)
        throw ParseError(key + ": expected an integer >= " + std::to_string(lo));
    return j.get<int>();
}

std::optional<StokesCollection> parse_stokes(const json& doc, int nu, Mode mode) {
    if (!doc.contains("stokes")) return std::nullopt;
    const json& s = doc.at("stokes");
    StokesCollection out;
    out.nu = nu;
    json list = s;
    if (s.is_object()) {
        if (!s.contains("multipliers")) throw ParseError("stokes: missing 'multipliers'");
        list = s.at("multipliers");
        if (s.contains("mu")) out.mu = parse_scalar(s.at("mu"), mode, "stokes.mu");
        if (s.contains("variant")) {
            std::string v = s.at("variant").is_string() ? s.at("variant").get<std::string>() : "";
            if (v == "nonres" || v == "non-resonant")
                out.variant = StokesVariant::NONRES;
            else if (v == "resonant")
                out.variant = StokesVariant::RES_NONDEG;
            else
                throw ParseError("stokes.variant: expected 'nonres' or 'resonant'");
        }
    }
    if (!list.is_array()) throw ParseError("stokes: expected a list of multipliers");
    for (size_t l = 0; l < list.size(); ++l) {
        const std::string where = "stokes.multipliers[" + std::to_string(l) + "]";
        const json& m = list[l];
        if (m.is_object()) {
            if (m.contains("type")) {
                std::string t = m.at("type").is_string() ? m.at("type").get<std::string>() : "";
                StokesType expect = StokesCollection::type(static_cast<long>(l));
                bool translation = t == "translation" || t == "TRANSLATION";
                bool moebius = t == "moebius" || t == "MOEBIUS_FLAT";
                if (!translation && !moebius) throw ParseError(where + ".type: expected 'translation' or 'moebius'");
                if (translation != (expect == StokesType::TRANSLATION))
                    throw ParseError(where + ": odd indices are translations, even indices Moebius maps");
            }
            if (!m.contains("value")) throw ParseError(where + ": missing 'value'");
            out.multipliers.push_back(parse_scalar(m.at("value"), mode, where + ".value"));
        } else {
            out.multipliers.push_back(parse_scalar(m, mode, where));
        }
    }
    return out;
}

}  // namespace

const char* mode_name(Mode m) { return m == Mode::EXACT ? "EXACT" : "FLOAT"; }

Scalar parse_scalar(const json& j, Mode mode, const std::string& where) {
    if (j.is_array()) {
        if (j.size() != 2 || j[0].is_array() || j[1].is_array())
            throw ParseError(where + ": complex numbers are [re, im]");
        return parse_scalar(j[0], mode, where + "[0]") + parse_scalar(j[1], mode, where + "[1]") * Scalar(0, 1);
    }
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_number_float()) {
        if (mode == Mode::EXACT)
            throw ParseError(where + ": decimal numbers are rejected in exact mode; use a string like \"1/4\"");
        return Scalar::floating(j.get<double>());
    }
    if (j.is_string()) {
        std::string t = j.get<std::string>();
        bool decimal = t.find_first_of(".eE") != std::string::npos;
        if (decimal && mode == Mode::EXACT)
            throw ParseError(where + ": decimal \"" + t + "\" is rejected in exact mode; use a rational like \"1/4\"");
        Scalar s;
        try {
            s = Scalar::parse_rational(t);
        } catch (const std::exception&) {
            throw ParseError(where + ": cannot read \"" + t + "\" as a number");
        }
        return mode == Mode::FLOAT ? s.to_float() : s;
    }
    throw ParseError(where + ": expected a number, a string \"n/d\" or [re, im]");
}

json scalar_json(const Scalar& s) {
    if (s.exact()) {
        if (sgn(s.im_q()) == 0) return s.re_q().get_str();
        return json::array({s.re_q().get_str(), s.im_q().get_str()});
    }
    if (s.imag() == 0.0) return s.real();
    return json::array({s.real(), s.imag()});
}

json jet_json(const Jet& j) {
    json c = json::array();
    for (int k = j.low(); k <= j.order(); ++k) c.push_back(scalar_json(j.coeff(k)));
    return json{{"valuation", j.low()}, {"order", j.order()}, {"coeffs", c}};
}

EquationSpec EquationSpec::to_float() const {
    EquationSpec f = *this;
    f.mode = Mode::FLOAT;
    f.equation = equation.to_float();
    if (f.stokes)
        for (Scalar& s : f.stokes->multipliers) s = s.to_float();
    if (f.stokes) f.stokes->mu = f.stokes->mu.to_float();
    if (f.factor_difference) f.factor_difference = f.factor_difference->to_float();
    return f;
}

EquationSpec parse_equation(const std::string& text, const std::string& source, const ParseOptions& opts) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports "parse error at line L, column C: ..."
        std::string what = e.what();
        auto cut = what.find("parse error");
        throw ParseError(source + ": " + (cut == std::string::npos ? what : what.substr(cut)));
    }
    if (!doc.is_object()) throw ParseError(source + ": the document must be a JSON object");
    EquationSpec spec;
    spec.source = source;
    spec.document = doc;
    try {
        spec.mode = Mode::EXACT;
        if (doc.contains("mode")) {
            std::string m = doc.at("mode").is_string() ? doc.at("mode").get<std::string>() : "";
            std::transform(m.begin(), m.end(), m.begin(), ::tolower);
            if (m == "exact")
                spec.mode = Mode::EXACT;
            else if (m == "float")
                spec.mode = Mode::FLOAT;
            else
                throw ParseError("mode: expected 'exact' or 'float'");
        }
        if (opts.mode) spec.mode = *opts.mode;
        spec.form = doc.contains("form") && doc.at("form").is_string() ? doc.at("form").get<std::string>() : "delta";

        int nu = 0, max_degree = 0;
        Field f1, f2;
        if (spec.form == "raw") {
            f1 = parse_field(doc, "a1", spec.mode);
            f2 = parse_field(doc, "a0", spec.mode);
            if (f1.num || f2.num) throw ParseError("raw form takes Laurent coefficient lists only");
            int m1 = std::max(0, -f1.valuation), m0 = std::max(0, -f2.valuation);
            nu = std::max({0, m1 - 1, (m0 + 1) / 2 - 1});
        } else if (spec.form == "delta" || spec.form == "factored") {
            nu = integer_field(doc, "nu", 0);
            bool delta_form = spec.form == "delta";
            f1 = parse_field(doc, delta_form ? "p" : "alpha1", spec.mode);
            f2 = parse_field(doc, delta_form ? "q" : "alpha2", spec.mode);
            for (const Field* f : {&f1, &f2})
                if (!f->num && f->valuation < 0)
                    throw ParseError(std::string(delta_form ? "p, q" : "alpha1, alpha2") +
                                     " must be analytic; use the raw form for Laurent coefficients");
        } else {
            throw ParseError("form: expected 'raw', 'delta' or 'factored'");
        }
        max_degree = std::max(f1.degree(), f2.degree());
        if (doc.contains("order")) spec.order = integer_field(doc, "order", 1);
        else spec.order = std::max(2 * nu + 4, 8);
        if (opts.order) spec.order = *opts.order;
        spec.working_order = std::max(spec.order + 4 * nu + 8, max_degree + 2 * nu + 4);
        const int W = spec.working_order;

        Jet j1 = f1.jet(W, "first coefficient"), j2 = f2.jet(W, "second coefficient");
        if (spec.mode == Mode::FLOAT) {
            j1 = j1.to_float();
            j2 = j2.to_float();
        }
        if (spec.form == "raw") {
            spec.equation = Lde::from_raw(j1, j2);
            spec.functions = CoefficientFunctions::from_lde(spec.equation);
        } else if (spec.form == "delta") {
            if (j1.valuation() < 0 || j2.valuation() < 0) throw ParseError("p and q must be analytic at 0");
            spec.equation = Lde::from_delta(nu, j1, j2);
            spec.functions.nu = nu;
            std::tie(spec.functions.p_num, spec.functions.p_den) = f1.rational();
            std::tie(spec.functions.q_num, spec.functions.q_den) = f2.rational();
        } else {
            if (j1.valuation() < 0 || j2.valuation() < 0) throw ParseError("alpha1 and alpha2 must be analytic at 0");
            spec.equation = Lde::from_factored(nu, j1, j2);
            spec.factor_difference = j2 - j1;
            auto [n1, d1] = f1.rational();
            auto [n2, d2] = f2.rational();
            spec.functions.nu = nu;
            spec.functions.p_num = padd(pmul(n1, d2), pmul(n2, d1));
            spec.functions.p_den = pmul(d1, d2);
            // delta alpha1 - alpha1 alpha2 over d1^2 d2
            Poly wr = pshift(padd(pmul(pderiv(n1), d1), pmul(n1, pderiv(d1)), -1.0), nu + 1);
            spec.functions.q_num = padd(pmul(wr, d2), pmul(pmul(n1, n2), d1), -1.0);
            spec.functions.q_den = pmul(pmul(d1, d1), d2);
        }
        spec.nu = spec.equation.nu;
        spec.stokes = parse_stokes(doc, spec.nu, spec.mode);
    } catch (const ParseError& e) {
        std::string what = e.what();
        const std::string prefix = "ParseError: ";
        if (what.rfind(prefix, 0) == 0) what = what.substr(prefix.size());
        throw ParseError(source + ": " + what);
    }
    return spec;
}

EquationSpec load_equation(const std::string& path, const ParseOptions& opts) {
    std::stringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw ParseError(path + ": cannot open file");
        buf << in.rdbuf();
    }
    return parse_equation(buf.str(), path, opts);
}

}  // namespace lode
