#include "lode/classify.hpp"

#include <cstdlib>

#include "lode/errors.hpp"
#include "lode/regular.hpp"

namespace lode {

namespace {

const Scalar kHalf(mpq_class(1, 2));

// Jet of order N agreeing with f as a polynomial (zero beyond f's order).
Jet polynomial(const Jet& f, int N) {
    Jet r(f.low(), N);
    for (int k = f.low(); k <= std::min(f.order(), N); ++k) r.set(k, f.coeff(k));
    return r;
}

struct Roots {
    std::vector<Scalar> values;
    bool incomplete = false;  // some roots are not representable exactly
};

Roots roots_of(const Scalar& z, int n) {
    Roots out;
    Scalar r0 = nth_root(z, n);
    for (int l = 0; l < n; ++l) {
        try {
            out.values.push_back(r0 * root_of_unity(n, l, z.exact()));
        } catch (const ExactnessRequired&) {
            out.incomplete = true;
        }
    }
    return out;
}

bool irregular_kind(SingularityKind k) {
    return k == SingularityKind::IRREGULAR_NONRES || k == SingularityKind::IRREGULAR_RES_NONDEG;
}

std::vector<Scalar> invariant_key(const FormalInvariant& inv) {
    std::vector<Scalar> key;
    if (inv.kind == InvariantKind::NONRES) key.push_back(inv.mu);
    for (int k = 0; k <= inv.nu; ++k) key.push_back(inv.P.coeff(k));
    return key;
}

int compare_keys(const std::vector<Scalar>& a, const std::vector<Scalar>& b, double tol) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (int c = compare_lex(a[i], b[i], tol)) return c;
    return 0;
}

void fill_lambdas(FormalInvariant& inv) {
    if (inv.kind != InvariantKind::NONRES) return;
    Jet D = Jet::constant(Scalar(1), inv.nu) + Jet::monomial(inv.mu, inv.nu, inv.nu);
    inv.lambda1 = kHalf * (inv.P - D);
    inv.lambda2 = kHalf * (inv.P + D);
}

FormalInvariant rotate(const FormalInvariant& inv, int l) {
    FormalInvariant r = inv;
    if (inv.group_order == 1 || l % inv.group_order == 0) return r;
    bool exact = inv.P.exact() && inv.mu.exact();
    Scalar w = root_of_unity(inv.group_order, l, exact);
    Jet P(0, inv.nu);
    for (int k = 0; k <= inv.nu; ++k) P.set(k, pow_int(w, k - inv.nu) * inv.P.coeff(k));
    r.P = P;
    if (inv.kind == InvariantKind::NONRES) {
        // w^nu = (-1)^l for n = 2 nu
        if (l % 2 != 0) r.mu = -inv.mu;
        fill_lambdas(r);
    }
    return r;
}

// Canonical representative of the rotation orbit and its stabilizer.
FormalInvariant canonicalize(const FormalInvariant& inv, double tol) {
    std::vector<FormalInvariant> orbit = invariant_orbit(inv);
    size_t best = 0;
    for (size_t i = 1; i < orbit.size(); ++i)
        if (compare_keys(invariant_key(orbit[i]), invariant_key(orbit[best]), tol) < 0) best = i;
    FormalInvariant out = orbit[best];
    std::vector<Scalar> key = invariant_key(out);
    std::vector<FormalInvariant> again = invariant_orbit(out);
    out.stabilizer_step = out.group_order;
    for (int l = 1; l < out.group_order; ++l)
        if (compare_keys(invariant_key(again[static_cast<size_t>(l)]), key, tol) == 0) {
            out.stabilizer_step = l;
            break;
        }
    return out;
}

}  // namespace

const char* kind_name(SingularityKind k) {
    switch (k) {
        case SingularityKind::NON_SINGULAR: return "NON_SINGULAR";
        case SingularityKind::REGULAR_STRONG_NONRES: return "REGULAR_STRONG_NONRES";
        case SingularityKind::REGULAR_RESONANT: return "REGULAR_RESONANT";
        case SingularityKind::IRREGULAR_NONRES: return "IRREGULAR_NONRES";
        case SingularityKind::IRREGULAR_RES_NONDEG: return "IRREGULAR_RES_NONDEG";
        case SingularityKind::DEGENERATE: return "DEGENERATE";
    }
    return "?";
}

SingularityClass classify(const Lde& e, double tol) {
    if (!e.exact() && tol <= 0.0) throw ExactnessRequired("resonance tests on float data need a positive tolerance");
    SingularityClass c;
    c.nu = e.nu;
    Jet D = e.discriminant();
    c.delta0 = D.coeff(0);
    const Scalar p0 = e.p.coeff(0), q0 = e.q.coeff(0);
    if (e.nu == 0) {
        bool ordinary = e.nonsingular || (negligible(p0 - Scalar(1), tol) && negligible(q0, tol) &&
                                          e.q.order() >= 1 && negligible(e.q.coeff(1), tol));
        std::optional<Scalar> root;
        try {
            root = sqrt(c.delta0);
        } catch (const ExactnessRequired&) {
        }
        if (root) {
            Scalar a = (p0 - *root) * kHalf, b = (p0 + *root) * kHalf;
            if (compare_lex(a, b, tol) > 0) std::swap(a, b);
            c.exponents = std::make_pair(a, b);
        }
        if (ordinary) {
            c.kind = SingularityKind::NON_SINGULAR;
            return c;
        }
        if (root) {
            if (auto k = root->near_integer(tol)) {
                c.kind = SingularityKind::REGULAR_RESONANT;
                c.k = std::labs(*k);
                return c;
            }
        }
        c.kind = SingularityKind::REGULAR_STRONG_NONRES;
        return c;
    }
    if (!negligible(c.delta0, tol))
        c.kind = SingularityKind::IRREGULAR_NONRES;
    else if (negligible(p0, tol) && D.order() >= 1 && !negligible(D.coeff(1), tol))
        c.kind = SingularityKind::IRREGULAR_RES_NONDEG;
    else
        c.kind = SingularityKind::DEGENERATE;
    return c;
}

QuadraticNormalization normalize_quadratic_differential(const Lde& e, const Scalar& t_param, int root_index,
                                                        double tol) {
    SingularityClass cls = classify(e, tol);
    if (cls.kind == SingularityKind::DEGENERATE)
        throw DegenerateInput("the quadratic differential of a degenerate singularity has no normal form");
    const int nu = e.nu;
    const Jet De = e.discriminant();
    const int M = De.order();
    const bool exact = De.exact();
    QuadraticNormalization out;
    Scalar c(1);
    int shift = -1;  // phi's x^{k+1} coefficient first enters Delta at degree k
    if (nu == 0) {
        out.target = Jet::constant(De.coeff(0), M + 2);
    } else if (cls.kind == SingularityKind::IRREGULAR_NONRES) {
        const int n = 2 * nu;
        const Scalar D0 = De.coeff(0);
        c = nth_root(Scalar(1) / D0, n) * root_of_unity(n, root_index, exact);
        Jet unit_root = sqrt(De * (Scalar(1) / D0));
        out.mu = unit_root.coeff(nu) * pow_int(c, -nu);
        Jet D = Jet::constant(Scalar(1), M + 2) + Jet::monomial(out.mu, nu, M + 2);
        out.target = D * D;
    } else {
        const int n = 2 * nu - 1;
        c = nth_root(Scalar(1) / De.coeff(1), n) * root_of_unity(n, root_index, exact);
        out.target = Jet::x(M + 2);
        shift = 0;
    }
    out.scale = c;
    const int last = M - shift;
    Jet init = Jet::monomial(c, 1, last);
    auto F = [&](const Jet& phi) { return pulled_back_discriminant(out.target, phi, nu) - De; };
    auto free_value = [&](int j) { return j == nu + 1 ? t_param : Scalar(0); };
    DegreeSolve s = solve_by_degree(F, init, 2, last, shift, free_value, [](int j) { return j + 1; }, tol);
    if (!s.ok) {
        std::string where = "degree " + std::to_string(s.failed_degree + shift);
        if (nu == 0)
            throw ResonantObstruction("logarithmic obstruction at " + where + ": " + s.obstruction.str());
        throw ResidualTooLarge("quadratic differential normalization failed at " + where);
    }
    out.T.phi = s.solution;
    out.T.t = Jet::constant(Scalar(1), last);
    out.normalized = apply_transformation(e, invert_transformation(out.T));
    return out;
}

std::vector<FormalInvariant> invariant_orbit(const FormalInvariant& inv) {
    std::vector<FormalInvariant> out;
    for (int l = 0; l < inv.group_order; ++l) out.push_back(rotate(inv, l));
    return out;
}

FormalInvariant formal_invariants(const Lde& e, double tol) {
    SingularityClass cls = classify(e, tol);
    if (cls.kind == SingularityKind::DEGENERATE) throw DegenerateInput("degenerate singularity has no formal invariants");
    FormalInvariant inv;
    inv.nu = e.nu;
    if (cls.regular()) {
        if (!cls.exponents) {
            // Delta(0) has no exact square root: the exponents are irrational
            throw ExactnessRequired("exponents " + cls.delta0.str() + " under a square root");
        }
        inv.kind = InvariantKind::REGULAR;
        inv.lambda1 = Jet::constant(cls.exponents->first, 0);
        inv.lambda2 = Jet::constant(cls.exponents->second, 0);
        inv.P = inv.lambda1 + inv.lambda2;
        return inv;
    }
    QuadraticNormalization qn = normalize_quadratic_differential(e, Scalar(0), 0, tol);
    inv.P = qn.normalized.p.truncated(inv.nu);
    if (cls.kind == SingularityKind::IRREGULAR_NONRES) {
        inv.kind = InvariantKind::NONRES;
        inv.mu = qn.mu;
        inv.group_order = 2 * inv.nu;
        fill_lambdas(inv);
    } else {
        inv.kind = InvariantKind::RES_NONDEG;
        inv.group_order = 2 * inv.nu - 1;
        if (negligible(inv.P.coeff(0), tol)) inv.P.set(0, Scalar(0));
    }
    return canonicalize(inv, tol);
}

bool same_invariants(const FormalInvariant& a, const FormalInvariant& b, double tol) {
    if (a.kind != b.kind || a.nu != b.nu) return false;
    if (a.kind == InvariantKind::REGULAR)
        return approx_equal(a.lambda1.coeff(0), b.lambda1.coeff(0), tol) &&
               approx_equal(a.lambda2.coeff(0), b.lambda2.coeff(0), tol);
    std::vector<Scalar> ka = invariant_key(a), kb = invariant_key(b);
    for (size_t i = 0; i < ka.size(); ++i)
        if (!approx_equal(ka[i], kb[i], tol)) return false;
    return true;
}

Lde normal_form_from_lambdas(int nu, const Jet& lambda1, const Jet& lambda2, int N) {
    Jet l1 = polynomial(lambda1, N), l2 = polynomial(lambda2, N);
    Jet s = l1 + l2, d = l2 - l1;
    Jet L = log_derivative(d, nu);
    Jet p = s + L;
    Jet q = -(l1 * l2) + kHalf * delta(s, nu) - kHalf * (s * L);
    Lde e;
    e.nu = nu;
    e.p = p.truncated(N);
    e.q = q.truncated(N);
    return e;
}

Lde resonant_normal_form(int nu, const Jet& P, int N) {
    // Work in s = x^{1/2}, where delta_nu = (1/2) s^{2 nu + 1} d/ds.
    const int Ns = 2 * N + 1;
    auto dx = [&](const Jet& f) { return kHalf * delta(f, 2 * nu); };
    Jet Ps(0, Ns);
    for (int k = 0; k <= std::min(P.order(), N); ++k) Ps.set(2 * k, P.coeff(k));
    Jet sigma = Ps - Jet::monomial(kHalf, 2 * nu, Ns);
    Jet d = Jet::x(Ns + 2);
    Jet L = dx(d) / d;
    Jet l1 = kHalf * (sigma - d), l2 = kHalf * (sigma + d);
    Jet p = sigma + L;
    Jet q = -(l1 * l2) + kHalf * dx(sigma) - kHalf * (sigma * L);
    auto to_x = [&](const Jet& f) {
        Jet r(0, N);
        for (int k = 0; k <= 2 * N + 1; ++k) {
            Scalar c = f.coeff(k);
            if (k % 2 == 1) {
                if (!c.is_zero())
                    throw ResidualTooLarge("half-integer power x^" + std::to_string(k) + "/2 in the resonant model");
            } else {
                r.set(k / 2, c);
            }
        }
        return r;
    };
    Lde e;
    e.nu = nu;
    e.p = to_x(p);
    e.q = to_x(q);
    return e;
}

Lde formal_normal_form(const FormalInvariant& inv, int N) {
    switch (inv.kind) {
        case InvariantKind::NONRES: return normal_form_from_lambdas(inv.nu, inv.lambda1, inv.lambda2, N);
        case InvariantKind::RES_NONDEG: return resonant_normal_form(inv.nu, inv.P, N);
        case InvariantKind::REGULAR: break;
    }
    throw DegenerateInput("regular exponents alone do not determine a normal form (monodromy type is missing)");
}

EquivalenceResult formal_equivalence(const Lde& e1, const Lde& e2, int N, const Scalar& t_param, bool meromorphic,
                                     double tol) {
    SingularityClass c1 = classify(e1, tol), c2 = classify(e2, tol);
    if (c1.kind == SingularityKind::DEGENERATE || c2.kind == SingularityKind::DEGENERATE)
        throw DegenerateInput("formal equivalence is not decided for degenerate singularities");
    EquivalenceResult res;
    if (e1.nu != e2.nu) {
        res.reason = "Poincare ranks differ (" + std::to_string(e1.nu) + " vs " + std::to_string(e2.nu) + ")";
        return res;
    }
    const int nu = e1.nu;
    if (nu == 0) return regular_formal_equivalence(e1, e2, N, t_param, meromorphic, tol);
    if (c1.kind != c2.kind || !irregular_kind(c1.kind)) {
        res.reason = std::string("singularity classes differ (") + kind_name(c1.kind) + " vs " + kind_name(c2.kind) + ")";
        return res;
    }
    const bool resonant = c1.kind == SingularityKind::IRREGULAR_RES_NONDEG;
    const Jet D1 = e1.discriminant(), D2 = e2.discriminant();
    const int lead = resonant ? 1 : 0;
    const int shift = resonant ? 0 : -1;
    const int last = std::min(D1.order(), D2.order()) - shift;
    Roots cands = roots_of(D2.coeff(lead) / D1.coeff(lead), resonant ? 2 * nu - 1 : 2 * nu);
    auto F = [&](const Jet& phi) { return pulled_back_discriminant(D2, phi, nu) - D1; };
    auto free_value = [&](int j) { return j == nu + 1 ? t_param : Scalar(0); };

    for (const Scalar& c : cands.values) {
        DegreeSolve s =
            solve_by_degree(F, Jet::monomial(c, 1, last), 2, last, shift, free_value, [](int j) { return j + 1; }, tol);
        if (!s.ok) {
            res.reason = "Delta-invariants differ";
            res.failed_degree = s.failed_degree + shift;
            res.obstruction = s.obstruction;
            continue;
        }
        const Jet& phi = s.solution;
        Jet psi = delta_ratio(phi, nu);
        Jet u = kHalf * (psi * compose(e2.p, phi) + log_derivative(psi, nu) - e1.p);
        int bad = -1;
        for (int k = 0; k < nu; ++k)
            if (!negligible(u.coeff(k), tol)) {
                bad = k;
                break;
            }
        if (bad >= 0) {
            res.reason = "p-invariants differ";
            res.failed_degree = bad;
            res.obstruction = u.coeff(bad);
            continue;
        }
        auto m = u.coeff(nu).near_integer(tol);
        if (!m) {
            res.reason = "p-invariants differ by a non-integer multiple of x^nu";
            res.failed_degree = nu;
            res.obstruction = u.coeff(nu);
            continue;
        }
        if (*m != 0 && !meromorphic) {
            res.reason = "p-invariants differ by the integer shift " + std::to_string(*m) + " (meromorphically equivalent)";
            res.failed_degree = nu;
            res.obstruction = u.coeff(nu);
            continue;
        }
        for (int k = u.low(); k <= nu; ++k) u.set(k, Scalar(0));
        PointTransformation T{phi, exp(delta_inverse(u, nu)), static_cast<int>(*m)};
        Lde back = apply_transformation(e2, T, N);
        bool ok = e1.exact() && e2.exact() ? back.p.agrees_with(e1.p, N) && back.q.agrees_with(e1.q, N)
                                           : back.p.near(e1.p, N, 1e3 * tol) && back.q.near(e1.q, N, 1e3 * tol);
        if (!ok) {
            res.reason = "transformation does not reproduce the equation";
            continue;
        }
        res.equivalent = true;
        res.T = T;
        res.reason.clear();
        res.failed_degree = -1;
        return res;
    }
    if (cands.incomplete)
        throw ExactnessRequired("candidate scalings are roots of unity outside Q(i)");
    return res;
}

std::optional<long> meromorphic_invariant_match(const Lde& e1, const Lde& e2, double tol) {
    if (e1.nu != e2.nu) return std::nullopt;
    FormalInvariant a = formal_invariants(e1, tol), b = formal_invariants(e2, tol);
    if (a.kind != b.kind) return std::nullopt;
    const int nu = a.nu;
    if (a.kind == InvariantKind::REGULAR) {
        Scalar da = a.lambda2.coeff(0) - a.lambda1.coeff(0), db = b.lambda2.coeff(0) - b.lambda1.coeff(0);
        if (!approx_equal(da, db, tol)) return std::nullopt;
        return (a.lambda1.coeff(0) - b.lambda1.coeff(0)).near_integer(tol);
    }
    if (a.kind == InvariantKind::NONRES && !approx_equal(a.mu, b.mu, tol)) return std::nullopt;
    for (int k = 0; k < nu; ++k)
        if (!approx_equal(a.P.coeff(k), b.P.coeff(k), tol)) return std::nullopt;
    return ((a.P.coeff(nu) - b.P.coeff(nu)) * kHalf).near_integer(tol);
}

}  // namespace lode
