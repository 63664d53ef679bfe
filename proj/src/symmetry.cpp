#include "lode/symmetry.hpp"

#include <algorithm>

#include "lode/classify.hpp"
#include "lode/errors.hpp"
#include "lode/reduce.hpp"
#include "lode/regular.hpp"

namespace lode {

namespace {

const Scalar kHalf(mpq_class(1, 2));

struct Field {
    Jet g;  // d/dx coefficient
    Jet f;  // y d/dy coefficient
};

Field as_field(const Lde& e, const SymmetryGenerator& Y) { return {shift(Y.h, e.nu + 1), scaling_part(e, Y)}; }

// c = 2f - delta h - p h, required to be constant.
Scalar constant_part(const Lde& e, const Jet& h, const Jet& f, double tol) {
    Jet rest = Scalar(2) * f - delta(h, e.nu) - e.p * h;
    for (int k = rest.low(); k <= rest.order(); ++k)
        if (k != 0 && !negligible(rest.coeff(k), tol))
            throw ResidualTooLarge("vector field is not a linear symmetry generator (degree " + std::to_string(k) + ")");
    return rest.coeff(0);
}

bool all_negligible(const Jet& j, int upto, double tol) {
    for (int k = j.low(); k <= std::min(upto, j.order()); ++k)
        if (!negligible(j.coeff(k), tol)) return false;
    return true;
}

// Generator with the scaling part normalized to vanish at 0.
SymmetryGenerator from_kernel(const Lde& e, const Jet& h, std::string description) {
    SymmetryGenerator Y{h, Scalar(0), std::move(description)};
    Jet f0 = delta(h, e.nu) + e.p * h;
    Y.c = -f0.coeff(0);
    return Y;
}

SymmetryGenerator scaling_generator(int N) { return {Jet(0, N), Scalar(1), "y d/dy"}; }

// Polynomial root jet of degree nu read to order N.
Jet extend(const Jet& lam, int N) {
    Jet out(0, N);
    for (int k = 0; k <= std::min(lam.order(), N); ++k) out.set(k, lam.coeff(k));
    return out;
}

bool vanishes_from(const Jet& j, int from, double tol) {
    for (int k = from; k <= j.order(); ++k)
        if (!negligible(j.coeff(k), tol)) return false;
    return true;
}

}  // namespace

Jet scaling_part(const Lde& e, const SymmetryGenerator& Y) {
    return kHalf * (delta(Y.h, e.nu) + e.p * Y.h + Y.c);
}

SymmetryCheck verify_symmetry(const Lde& e, const SymmetryGenerator& Y, int N, double tol) {
    const int nu = e.nu;
    const int n = e.order();
    Jet A = shift(e.p, -(nu + 1)) - Jet::monomial(Scalar(nu + 1), -1, n - nu - 1);
    Jet B = shift(e.q, -(2 * nu + 2));
    Field F = as_field(e, Y);
    Jet dg = derivative(F.g), df = derivative(F.f);
    SymmetryCheck out;
    out.alpha = dg;
    const int scale = 2 * nu + 2;
    out.row_yx = shift(Scalar(2) * df - derivative(dg) - F.g * derivative(A) - dg * A, scale);
    out.row_y = shift(derivative(df) - F.g * derivative(B) - Scalar(2) * dg * B - A * df, scale);
    double worst = 0.0;
    for (const Jet* row : {&out.row_y, &out.row_yx}) {
        for (int k = row->low(); k <= std::min(N, row->order()); ++k) {
            Scalar v = row->coeff(k);
            worst = std::max(worst, std::abs(v.value()));
            if (!negligible(v, tol) && (!out.first_degree || k < *out.first_degree)) out.first_degree = k;
        }
    }
    out.residual = worst;
    out.ok = !out.first_degree.has_value();
    return out;
}

SymmetryGenerator bracket(const Lde& e, const SymmetryGenerator& a, const SymmetryGenerator& b, double tol) {
    Field A = as_field(e, a), B = as_field(e, b);
    Jet g = A.g * derivative(B.g) - B.g * derivative(A.g);
    Jet f = A.g * derivative(B.f) - B.g * derivative(A.f);
    SymmetryGenerator out;
    out.h = shift(g, -(e.nu + 1));
    out.c = constant_part(e, out.h, f, tol);
    out.description = "[" + a.description + ", " + b.description + "]";
    return out;
}

SymmetryGenerator pull_back_generator(const Lde& target, const SymmetryGenerator& Y, const PointTransformation& T) {
    const int nu = target.nu;
    Field F = as_field(target, Y);
    Jet dphi = derivative(T.phi);
    Jet g = compose(F.g, T.phi) * inverse(dphi);
    // y = ytilde(phi) / (x^m t): f = ftilde(phi) - g (m / x + t'/t)
    Jet log_factor = derivative(T.t) * inverse(T.t);
    Jet f = compose(F.f, T.phi) - g * log_factor;
    if (T.shift != 0) f = f - Scalar(T.shift) * shift(g, -1);
    Lde e = apply_transformation(target, T);
    SymmetryGenerator out;
    out.h = shift(g, -(nu + 1));
    out.c = constant_part(e, out.h, f, 1e-9);
    out.description = "pullback of " + Y.description;
    return out;
}

SymmetryAlgebra symmetry_algebra(const Lde& e, int N, const std::optional<StokesCollection>& stokes, double tol,
                                 const std::optional<Jet>& factor_difference) {
    SingularityClass cls = classify(e, tol);
    SymmetryAlgebra out;
    out.generators.push_back(scaling_generator(N));
    auto add_kernel = [&](int lowest) {
        for (const Jet& h : symmetric_power_kernel(e, N, tol, lowest))
            out.generators.push_back(from_kernel(e, h, "h delta_" + std::to_string(e.nu) + " + f y d/dy, h = " + h.str()));
    };
    switch (cls.kind) {
        case SingularityKind::DEGENERATE:
            throw DegenerateInput("symmetry algebra of a degenerate irregular singularity");
        case SingularityKind::NON_SINGULAR:
            out.case_label = "nonsingular";
            out.decided_by = "formal kernel of the symmetric power equation";
            add_kernel(-(e.nu + 1));
            break;
        case SingularityKind::REGULAR_STRONG_NONRES:
        case SingularityKind::REGULAR_RESONANT: {
            out.decided_by = "formal kernel of the symmetric power equation (convergent at a regular singularity)";
            if (cls.kind == SingularityKind::REGULAR_STRONG_NONRES || cls.k.value_or(0) == 0)
                out.case_label = "1a";
            else
                out.case_label = frobenius(e, N, tol).epsilon ? "1c" : "1b";
            add_kernel(0);
            break;
        }
        case SingularityKind::IRREGULAR_RES_NONDEG:
            out.case_label = "3";
            out.decided_by = "resonant irregular singularity";
            break;
        case SingularityKind::IRREGULAR_NONRES: {
            const int M = std::min(N, e.order());
            auto normal_form_case = [&](const Jet& h, const std::string& why) {
                out.case_label = "2a";
                out.decided_by = why;
                out.generators.push_back(from_kernel(e, h, "(1/(lambda2 - lambda1)) (delta_" + std::to_string(e.nu) +
                                                               " + (lambda1 + lambda2)/2 y d/dy)"));
            };
            auto reducibility_h = [&] {
                RiccatiSolution rp = riccati_formal(e, 1, M, tol), rm = riccati_formal(e, -1, M, tol);
                return inverse(rp.r - rm.r);
            };
            if (stokes) {
                if (stokes->all_zero(tol))
                    normal_form_case(reducibility_h(), "Stokes data (all multipliers vanish)");
                else {
                    out.case_label = "2b";
                    out.decided_by = "Stokes data (a nonzero multiplier)";
                }
                break;
            }
            FormalInvariant inv = formal_invariants(e, tol);
            for (const FormalInvariant& member : invariant_orbit(inv)) {
                Lde nf = normal_form_from_lambdas(e.nu, member.lambda1, member.lambda2, M);
                int n = std::min(nf.order(), e.order());
                if (all_negligible(nf.p - e.p.truncated(n), n, tol) && all_negligible(nf.q - e.q.truncated(n), n, tol)) {
                    normal_form_case(inverse(extend(member.lambda2, M) - extend(member.lambda1, M)),
                                     "exact match with the formal normal form");
                    break;
                }
            }
            if (!out.case_label.empty()) break;
            if (e.nu == 1 && factor_difference && negligible(factor_difference->coeff(0) - Scalar(1), tol)) {
                // reducible: one multiplier vanishes and s_pi decides
                const Jet& d = *factor_difference;
                Scalar mu = d.coeff(1);
                Jet tail = shift(d - Scalar(1) - Jet::monomial(mu, 1, d.order()), -2);
                Jet r(0, tail.order());
                for (int k = 0; k <= tail.order(); ++k) r.set(k, tail.coeff(k));
                cplx s_pi = laplace_stokes_series(mu.value(), exp(integral(r.to_float())));
                out.notes.push_back("alpha2 - alpha1 = 1 + mu x + ... with mu = " + mu.str() +
                                    "; |s_pi| = " + Scalar::floating(std::abs(s_pi)).str());
                if (std::abs(s_pi) <= 1e-8)
                    normal_form_case(reducibility_h(), "the Laplace formula gives s_pi = 0 for the factorization");
                else {
                    out.case_label = "2b";
                    out.decided_by = "the Laplace formula gives s_pi != 0 for the factorization";
                }
                break;
            }
            if (e.nu == 1 && negligible(e.discriminant().coeff(0) - Scalar(1), tol)) {
                RiccatiSolution rp = riccati_formal(e, 1, M, tol);
                if (vanishes_from(rp.r, 2, tol)) {
                    // lambda2 - lambda1 = 1 + mu x: s_pi = 2 pi i e^{i pi mu} / Gamma(mu)
                    Scalar mu = rp.r.coeff(1);
                    std::optional<long> k = mu.near_integer(tol);
                    out.notes.push_back("the jet of lambda2 - lambda1 is 1 + mu x with mu = " + mu.str());
                    if (k && *k <= 0)
                        normal_form_case(reducibility_h(), "closed-form s_pi vanishes (mu a non-positive integer)");
                    else {
                        out.case_label = "2b";
                        out.decided_by = "closed-form s_pi is nonzero";
                    }
                    break;
                }
                bool polynomial = e.order() >= 3 && vanishes_from(e.p, 2, tol) && vanishes_from(e.q, 3, tol);
                if (polynomial) {
                    Nu1Invariants ni = nu1_invariants(e);
                    out.notes.push_back("s0 s_pi = " + Scalar(ni.s0_s_pi).str());
                    if (std::abs(ni.s0_s_pi) > 1e-6) {
                        out.case_label = "2b";
                        out.decided_by = "trace invariant (s0 s_pi != 0)";
                        break;
                    }
                }
            }
            throw UndecidableWithoutStokes(
                "the analytic class of a non-resonant irregular singularity needs Stokes data here");
        }
    }
    out.dimension = static_cast<int>(out.generators.size());
    return out;
}

}  // namespace lode
