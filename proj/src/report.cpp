#include "lode/report.hpp"

#include <cmath>
#include <sstream>

#include "lode/classify.hpp"
#include "lode/errors.hpp"
#include "lode/reduce.hpp"
#include "lode/regular.hpp"
#include "lode/stokes.hpp"
#include "lode/symmetry.hpp"

namespace lode {

using nlohmann::json;

namespace {

const double kTol = kJetTolerance;

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const Matrix2& M) {
    return json::array({json::array({cplx_json(M[0][0]), cplx_json(M[0][1])}),
                        json::array({cplx_json(M[1][0]), cplx_json(M[1][1])})});
}

json transformation_json(const PointTransformation& T) {
    return json{{"phi", jet_json(T.phi)}, {"t", jet_json(T.t)}, {"shift", T.shift}};
}

json equation_json(const Lde& e, int N) {
    int n = std::min(N, e.order());
    return json{{"nu", e.nu}, {"p", jet_json(e.p.truncated(n))}, {"q", jet_json(e.q.truncated(n))}};
}

json provenance(const EquationSpec& spec, bool fallback) {
    return json{{"mode", mode_name(spec.mode)},
                {"order", spec.order},
                {"working_order", spec.working_order},
                {"jet_tolerance", kJetTolerance},
                {"monodromy_tolerance", kMonodromyTolerance},
                {"fallback", fallback ? "float" : "none"}};
}

const char* regular_kind_name(RegularNormalKind k) {
    switch (k) {
        case RegularNormalKind::DIAGONAL: return "DIAGONAL";
        case RegularNormalKind::EQUAL_EXPONENTS: return "EQUAL_EXPONENTS";
        case RegularNormalKind::LOGARITHMIC: return "LOGARITHMIC";
    }
    return "?";
}

const char* invariant_kind_name(InvariantKind k) {
    switch (k) {
        case InvariantKind::REGULAR: return "REGULAR";
        case InvariantKind::NONRES: return "NONRES";
        case InvariantKind::RES_NONDEG: return "RES_NONDEG";
    }
    return "?";
}

// Runs a non-fatal section; library errors become an "error" entry. Exactness
// failures escape so the whole command can fall back to floats.
template <class F>
json section(F&& f) {
    try {
        return f();
    } catch (const ExactnessRequired&) {
        throw;
    } catch (const Error& e) {
        return error_json(e);
    }
}

template <class F>
Report with_fallback(const EquationSpec& spec, F&& body) {
    try {
        Report r = body(spec);
        r.data["provenance"] = provenance(spec, false);
        return r;
    } catch (const ExactnessRequired&) {
        if (spec.mode == Mode::FLOAT) throw;
        EquationSpec f = spec.to_float();
        Report r = body(f);
        r.data["provenance"] = provenance(f, true);
        return r;
    }
}

json class_json(const Lde& e, const SingularityClass& cls) {
    json j{{"kind", kind_name(cls.kind)}, {"nu", cls.nu}, {"delta0", scalar_json(cls.delta0)}, {"scope", "ANALYTIC"}};
    if (cls.k) j["k"] = *cls.k;
    if (cls.exponents) j["exponents"] = json::array({scalar_json(cls.exponents->first), scalar_json(cls.exponents->second)});
    if (!e.notes.empty()) j["notes"] = e.notes;
    return j;
}

json invariants_json(const FormalInvariant& inv) {
    json j{{"kind", invariant_kind_name(inv.kind)},
           {"nu", inv.nu},
           {"group_order", inv.group_order},
           {"stabilizer_step", inv.stabilizer_step},
           {"scope", "FORMAL"}};
    if (inv.kind == InvariantKind::RES_NONDEG) {
        j["P"] = jet_json(inv.P);
    } else {
        j["lambda1"] = jet_json(inv.lambda1);
        j["lambda2"] = jet_json(inv.lambda2);
        if (inv.kind == InvariantKind::NONRES) {
            j["mu"] = scalar_json(inv.mu);
            j["P"] = jet_json(inv.P);
        }
    }
    return j;
}

json normal_form_json(const Lde& e, int N) {
    SingularityClass cls = classify(e, kTol);
    if (cls.kind == SingularityKind::DEGENERATE)
        throw DegenerateInput("no normal form is defined for a degenerate irregular singularity");
    if (e.nu == 0) {
        RegularReduction r = reduce_to_normal_form(e, N, kTol);
        json fro{{"lambda1", scalar_json(r.data.lambda1)},
                 {"lambda2", scalar_json(r.data.lambda2)},
                 {"epsilon", r.data.epsilon},
                 {"kappa", scalar_json(r.data.kappa)},
                 {"monodromy", monodromy_type(r.data) == MonodromyType::DIAGONALIZABLE ? "DIAGONALIZABLE"
                                                                                        : "NON_DIAGONALIZABLE"}};
        if (r.data.k) fro["k"] = *r.data.k;
        return json{{"scope", "ANALYTIC"},
                    {"kind", regular_kind_name(r.kind)},
                    {"target", equation_json(r.normal_form, N)},
                    {"transformation", transformation_json(r.T)},
                    {"convention", "apply(target, transformation) == input"},
                    {"frobenius", fro}};
    }
    FormalInvariant inv = formal_invariants(e, kTol);
    Lde nf = formal_normal_form(inv, e.order());
    EquivalenceResult res = formal_equivalence(e, nf, N, Scalar(0), false, kTol);
    if (!res.equivalent) throw ResidualTooLarge("no transformation to the formal normal form: " + res.reason);
    return json{{"scope", "FORMAL"},
                {"kind", invariant_kind_name(inv.kind)},
                {"target", equation_json(nf, N)},
                {"transformation", transformation_json(res.T)},
                {"convention", "apply(target, transformation) == input"}};
}

json reducibility_json(const Lde& e, const std::optional<StokesCollection>& stokes, int N) {
    ReducibilityReport r = reducibility_report(e, stokes, N, kTol);
    return json{{"scope", r.scope},
                {"verdict", verdict_name(r.verdict)},
                {"kernel_dimension", r.kernel_dimension},
                {"r_plus", jet_json(r.plus.r)},
                {"r_minus", jet_json(r.minus.r)},
                {"h", jet_json(r.h)},
                {"riccati_residuals_vanish", r.riccati_residuals_vanish},
                {"h_in_kernel", r.h_in_kernel},
                {"notes", r.notes}};
}

json symmetry_json(const EquationSpec& spec) {
    const Lde& e = spec.equation;
    const int N = spec.order;
    std::optional<Jet> difference;
    if (spec.factor_difference && spec.document.value("nu", -1) == e.nu) difference = spec.factor_difference;
    SymmetryAlgebra a = symmetry_algebra(e, N, spec.stokes, kTol, difference);
    json gens = json::array();
    const int check = N;
    for (const SymmetryGenerator& g : a.generators) {
        SymmetryCheck c = verify_symmetry(e, g, check, 1e-8);
        gens.push_back(json{{"description", g.description},
                            {"h", jet_json(g.h)},
                            {"c", scalar_json(g.c)},
                            {"verified_to", check},
                            {"verified", c.ok},
                            {"residual", c.residual}});
    }
    return json{{"scope", "ANALYTIC"},
                {"case", a.case_label},
                {"dimension", a.dimension},
                {"generators", gens},
                {"decided_by", a.decided_by},
                {"notes", a.notes}};
}

// Monodromy of the coefficient functions on the largest circle (1, 1/2, 1/4)
// that encloses no other pole.
template <class F>
auto on_some_circle(F&& f, double& radius) {
    for (radius = 1.0;; radius /= 2) {
        try {
            return f(radius);
        } catch (const PoleOnPath&) {
            if (radius < 0.3) throw;
        }
    }
}

json nu1_json(const EquationSpec& spec) {
    double radius = 1.0;
    Nu1Invariants ni = on_some_circle(
        [&](double r) { return nu1_invariants(spec.functions, spec.equation, r, kMonodromyTolerance); }, radius);
    return json{{"scope", "ANALYTIC"},
                {"radius", radius},
                {"mu", scalar_json(ni.mu)},
                {"p1", scalar_json(ni.p1)},
                {"cos_invariant", cplx_json(ni.cos_invariant)},
                {"s0_s_pi", cplx_json(ni.s0_s_pi)},
                {"stokes_product_vanishes", std::abs(ni.s0_s_pi) <= 1e-6},
                {"det_M", cplx_json(ni.det_M)},
                {"tr_M", cplx_json(ni.tr_M)},
                {"M", matrix_json(ni.M)}};
}

bool irregular_nondegenerate(SingularityKind k) {
    return k == SingularityKind::IRREGULAR_NONRES || k == SingularityKind::IRREGULAR_RES_NONDEG;
}

json stokes_collection_json(const StokesCollection& s) {
    json mult = json::array();
    for (int l = 0; l < s.count(); ++l)
        mult.push_back(json{{"index", l}, {"type", type_name(StokesCollection::type(l))}, {"value", scalar_json(s.multipliers[l])}});
    return json{{"nu", s.nu},
                {"variant", s.variant == StokesVariant::NONRES ? "nonres" : "resonant"},
                {"mu", scalar_json(s.mu)},
                {"multipliers", mult},
                {"all_zero", s.all_zero(kTol)}};
}

// s_pi of (delta_1 - alpha2)(delta_1 - alpha1) with alpha2 - alpha1 = 1 + mu x + x^2 r.
json laplace_json(const Jet& difference) {
    Scalar mu = difference.coeff(1);
    Jet tail = shift(difference - Scalar(1) - Jet::monomial(mu, 1, difference.order()), -2);
    Jet r(0, tail.order());
    for (int k = 0; k <= tail.order(); ++k) r.set(k, tail.coeff(k));
    Jet R = exp(integral(r.to_float()));
    json j{{"scope", "ANALYTIC"}, {"mu", scalar_json(mu)}, {"R", jet_json(R)}};
    j["s_pi"] = cplx_json(laplace_stokes_series(mu.value(), R));
    j["s_pi_quadrature"] = section([&] { return cplx_json(laplace_stokes_quadrature(mu.value(), R, kTol)); });
    if (r.is_zero()) j["s_pi_closed_form"] = cplx_json(gamma_stokes(mu.value(), LaplaceFamily::R_ONE));
    return j;
}

void render(std::ostream& os, const json& j, int indent) {
    const std::string pad(static_cast<size_t>(indent), ' ');
    auto simple = [](const json& v) {
        if (!v.is_structured()) return true;
        if (v.is_array()) {
            for (const json& x : v)
                if (x.is_object()) return false;
            return v.dump().size() <= 100;
        }
        if (v.contains("coeffs")) return true;  // jets stay on one line
        return false;
    };
    auto inline_value = [](const json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_object() && v.contains("coeffs")) {
            std::string s = "[" + std::to_string(v.at("valuation").get<int>()) + ".." +
                            std::to_string(v.at("order").get<int>()) + "] ";
            return s + v.at("coeffs").dump();
        }
        return v.dump();
    };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (simple(v))
                os << pad << k << ": " << inline_value(v) << "\n";
            else {
                os << pad << k << ":\n";
                render(os, v, indent + 2);
            }
        }
    } else if (j.is_array()) {
        for (const json& v : j) {
            if (simple(v))
                os << pad << "- " << inline_value(v) << "\n";
            else {
                os << pad << "-\n";
                render(os, v, indent + 2);
            }
        }
    } else {
        os << pad << inline_value(j) << "\n";
    }
}

}  // namespace

json error_json(const std::exception& e) {
    const auto* le = dynamic_cast<const Error*>(&e);
    return json{{"error", json{{"kind", le ? le->kind() : "Error"}, {"message", e.what()}}}};
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return 1;
    if (dynamic_cast<const UndecidableWithoutStokes*>(&e)) return 3;
    if (dynamic_cast<const ToleranceNotMet*>(&e) || dynamic_cast<const ResidualTooLarge*>(&e) ||
        dynamic_cast<const PoleOnPath*>(&e) || dynamic_cast<const SingularJacobian*>(&e) ||
        dynamic_cast<const OrderExhausted*>(&e))
        return 4;
    if (dynamic_cast<const Error*>(&e)) return 2;
    return 1;
}

std::string render_json(const json& j) { return j.dump(2) + "\n"; }

std::string render_prose(const json& j) {
    std::ostringstream os;
    render(os, j, 0);
    return os.str();
}

Report cmd_classify(const EquationSpec& input) {
    return with_fallback(input, [](const EquationSpec& spec) {
        const Lde& e = spec.equation;
        const int N = spec.order;
        Report r;
        SingularityClass cls = classify(e, kTol);
        json& d = r.data;
        d["command"] = "classify";
        d["input"] = spec.source;
        d["class"] = class_json(e, cls);
        if (cls.kind == SingularityKind::DEGENERATE) {
            d["invariants"] = error_json(DegenerateInput("formal invariants are not defined for degenerate input"));
        } else {
            d["invariants"] = section([&] { return invariants_json(formal_invariants(e, kTol)); });
        }
        d["normal_form"] = section([&] { return normal_form_json(e, N); });
        if (cls.kind == SingularityKind::IRREGULAR_NONRES)
            d["reducibility"] = section([&] { return reducibility_json(e, spec.stokes, N); });
        d["symmetry"] = section([&] { return symmetry_json(spec); });
        if (e.nu == 1 && irregular_nondegenerate(cls.kind)) d["nu1"] = section([&] { return nu1_json(spec); });
        return r;
    });
}

Report cmd_normal_form(const EquationSpec& input) {
    return with_fallback(input, [](const EquationSpec& spec) {
        Report r;
        r.data["command"] = "normal-form";
        r.data["input"] = spec.source;
        r.data["normal_form"] = normal_form_json(spec.equation, spec.order);
        return r;
    });
}

Report cmd_symmetries(const EquationSpec& input) {
    return with_fallback(input, [](const EquationSpec& spec) {
        Report r;
        r.data["command"] = "symmetries";
        r.data["input"] = spec.source;
        r.data["symmetry"] = symmetry_json(spec);
        return r;
    });
}

Report cmd_stokes(const EquationSpec& input) {
    return with_fallback(input, [](const EquationSpec& spec) {
        const Lde& e = spec.equation;
        SingularityClass cls = classify(e, kTol);
        if (cls.kind == SingularityKind::DEGENERATE)
            throw DegenerateInput("Stokes invariants of a degenerate irregular singularity are not computed");
        if (e.nu == 0) throw DegenerateInput("a regular singularity has no Stokes data; see the monodromy command");
        Report r;
        json& d = r.data;
        d["command"] = "stokes";
        d["input"] = spec.source;
        d["class"] = class_json(e, cls);
        bool any = false;
        if (spec.stokes) {
            d["collection"] = stokes_collection_json(*spec.stokes);
            if (cls.kind == SingularityKind::IRREGULAR_NONRES)
                d["reducibility"] = section([&] { return reducibility_json(e, spec.stokes, spec.order); });
            any = true;
        }
        if (e.nu == 1) {
            d["nu1"] = nu1_json(spec);
            any = true;
            const json& doc = spec.document;
            if (spec.factor_difference && doc.value("nu", -1) == 1 &&
                negligible(spec.factor_difference->coeff(0) - Scalar(1), kTol))
                d["laplace"] = section([&] { return laplace_json(*spec.factor_difference); });
        }
        if (!any)
            throw UndecidableWithoutStokes("Stokes multipliers are computed for rank 1 only; supply them in the input");
        return r;
    });
}

Report cmd_monodromy(const EquationSpec& input, const MonodromyOptions& opts) {
    return with_fallback(input, [&](const EquationSpec& spec) {
        Report r;
        json& d = r.data;
        d["command"] = "monodromy";
        d["input"] = spec.source;
        Matrix2 M = numeric_monodromy(spec.functions, opts.radius, 16, opts.tol);
        cplx tr = M[0][0] + M[1][1], det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
        cplx disc = std::sqrt(tr * tr - 4.0 * det);
        d["monodromy"] = json{{"scope", "ANALYTIC"},
                              {"radius", opts.radius},
                              {"tol", opts.tol},
                              {"M", matrix_json(M)},
                              {"trace", cplx_json(tr)},
                              {"det", cplx_json(det)},
                              {"eigenvalues", json::array({cplx_json((tr + disc) / 2.0), cplx_json((tr - disc) / 2.0)})}};
        SingularityClass cls = classify(spec.equation, kTol);
        if (cls.exponents) {
            auto e2pi = [](const Scalar& l) { return std::exp(cplx(0, 2 * M_PI) * l.value()); };
            d["monodromy"]["exponent_eigenvalues"] =
                json::array({cplx_json(e2pi(cls.exponents->first)), cplx_json(e2pi(cls.exponents->second))});
        }
        return r;
    });
}

Report cmd_equivalent(const EquationSpec& a_in, const EquationSpec& b_in, bool meromorphic) {
    auto body = [&](const EquationSpec& a, const EquationSpec& b) {
        Report r;
        json& d = r.data;
        d["command"] = "equivalent";
        d["inputs"] = json::array({a.source, b.source});
        d["meromorphic"] = meromorphic;
        const int N = std::min(a.order, b.order);
        EquivalenceResult res = formal_equivalence(a.equation, b.equation, N, Scalar(0), meromorphic, kTol);
        json v{{"verdict", res.equivalent ? "YES" : "NO"},
               {"scope", a.equation.nu == 0 && b.equation.nu == 0 ? "ANALYTIC" : "FORMAL"},
               {"reason", res.reason}};
        if (res.equivalent) {
            v["witness"] = transformation_json(res.T);
            v["convention"] = "apply(second, witness) == first";
            if (meromorphic) v["m"] = res.T.shift;
        } else if (res.failed_degree >= 0) {
            v["failed_degree"] = res.failed_degree;
            v["obstruction"] = scalar_json(res.obstruction);
        }
        d["formal"] = v;
        const Lde& e1 = a.equation;
        SingularityClass cls = classify(e1, kTol);
        if (res.equivalent && e1.nu > 0) {
            if (a.stokes && b.stokes) {
                d["analytic"] = section([&] {
                    FormalInvariant inv = formal_invariants(e1, kTol);
                    auto w = stokes_equivalent(*a.stokes, *b.stokes, inv.stabilizer_step, kTol);
                    json j{{"scope", "ANALYTIC"}, {"decided_by", "Stokes data"}, {"verdict", w ? "YES" : "NO"}};
                    if (w) j["witness"] = json{{"c", scalar_json(w->c)}, {"g", w->g}};
                    return j;
                });
            } else if (e1.nu == 1 && !meromorphic && irregular_nondegenerate(cls.kind)) {
                d["analytic"] = section([&] {
                    double ra = 1.0, rb = 1.0;
                    Nu1Invariants ia = on_some_circle(
                        [&](double rr) { return nu1_invariants(a.functions, a.equation, rr, kMonodromyTolerance); }, ra);
                    Nu1Invariants ib = on_some_circle(
                        [&](double rr) { return nu1_invariants(b.functions, b.equation, rr, kMonodromyTolerance); }, rb);
                    Nu1Verdict verdict = nu1_equivalent(ia, ib);
                    const char* name = verdict == Nu1Verdict::EQUIVALENT       ? "YES"
                                       : verdict == Nu1Verdict::NOT_EQUIVALENT ? "NO"
                                                                               : "UNDECIDED";
                    return json{{"scope", "ANALYTIC"},
                                {"decided_by", "rank-1 trace invariant"},
                                {"verdict", name},
                                {"cos_invariants", json::array({cplx_json(ia.cos_invariant), cplx_json(ib.cos_invariant)})}};
                });
            }
        }
        return r;
    };
    try {
        Report r = body(a_in, b_in);
        r.data["provenance"] = provenance(a_in, false);
        return r;
    } catch (const ExactnessRequired&) {
        EquationSpec fa = a_in.to_float(), fb = b_in.to_float();
        Report r = body(fa, fb);
        r.data["provenance"] = provenance(fa, true);
        return r;
    }
}

}  // namespace lode
