#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lode/classify.hpp"
#include "lode/lde.hpp"
#include "lode/regular.hpp"

namespace lode {

enum class StokesVariant { NONRES, RES_NONDEG };
enum class StokesType { TRANSLATION, MOEBIUS_FLAT };

const char* type_name(StokesType t);

/// Multipliers s_l of the projective Stokes operators on one turn:
/// f -> f + s_l for odd l, f -> f / (1 + s_l f) for even l.
/// The period is the number of multipliers (2 nu, or 2 nu - 1 when resonant).
struct StokesCollection {
    int nu = 1;
    StokesVariant variant = StokesVariant::NONRES;
    std::vector<Scalar> multipliers;
    Scalar mu;  // formal invariant entering the non-resonant extension

    int count() const { return static_cast<int>(multipliers.size()); }
    static StokesType type(long l) { return (l % 2 != 0) ? StokesType::TRANSLATION : StokesType::MOEBIUS_FLAT; }
    /// s_l for any integer l, continued by the extension rule:
    /// non-resonant translations pick up exp(2 pi i mu) per turn and Moebius maps
    /// exp(-2 pi i mu); resonant operators are conjugated by f -> 1/f, which keeps s_l.
    Scalar multiplier(long l) const;
    bool all_zero(double tol) const;
};

/// Witness for sigma'_l = iota^g (c^{-1} sigma_{l+g}) (c iota^g), iota: f -> 1/f.
struct StokesWitness {
    Scalar c;
    int g = 0;
};

/// `b` plays sigma'. g ranges over stabilizer_step * Z_n; c is frozen to 1 when resonant.
std::optional<StokesWitness> stokes_equivalent(const StokesCollection& a, const StokesCollection& b,
                                               int stabilizer_step = 1, double tol = 1e-10);

/// Coefficients of an equation as rational functions num/den (ascending powers),
/// evaluated in floating point along the integration path.
struct CoefficientFunctions {
    int nu = 0;
    std::vector<cplx> p_num{0.0}, p_den{1.0};
    std::vector<cplx> q_num{0.0}, q_den{1.0};

    /// Jets read as polynomials.
    static CoefficientFunctions from_lde(const Lde& e);
};

/// Monodromy of the companion system delta_nu v = [[0, 1], [q, p]] v along the
/// counterclockwise circle |x| = radius, starting from V = I at x = radius:
/// V(e^{2 pi i} x) = V(x) M. Taylor stepping of order `taylor_order` along chords,
/// the number of steps doubled from `steps` until successive M differ by < tol.
Matrix2 numeric_monodromy(const CoefficientFunctions& f, double radius, int steps = 16, double tol = 1e-8,
                          int taylor_order = 20);
Matrix2 numeric_monodromy(const Lde& e, double radius, int steps = 16, double tol = 1e-8, int taylor_order = 20);

struct Nu1Invariants {
    FormalInvariant formal;
    Scalar mu;
    Scalar p1;          // exact formal invariant [p]_1
    cplx cos_invariant;  // (1/2) (det M)^{-1/2} tr M with the branch exp(-i pi (p1 - 1))
    cplx s0_s_pi;
    cplx det_M;
    cplx tr_M;
    Matrix2 M;
};

/// Stokes product from the trace: exp(-i pi mu) (exp(-i pi p1) tr M - 2 cos(pi mu)).
cplx stokes_product_from_trace(cplx mu, cplx p1, cplx tr_M);
/// Closed form of the same product for the polynomial model with r = sqrt(Delta2 + 1):
/// -4 exp(-i pi mu) cos(pi (mu + r) / 2) cos(pi (mu - r) / 2).
cplx stokes_product_closed_form(cplx mu, cplx delta2);

Nu1Invariants nu1_invariants(const CoefficientFunctions& f, const Lde& e, double radius = 1.0, double tol = 1e-8);
Nu1Invariants nu1_invariants(const Lde& e, double radius = 1.0, double tol = 1e-8);

enum class Nu1Verdict { EQUIVALENT, NOT_EQUIVALENT, UNDECIDED };
/// Same formal invariants (mu up to sign) and equal cos invariants. Non-resonant
/// equations with a vanishing Stokes product stay UNDECIDED; the resonant case
/// needs no such condition.
Nu1Verdict nu1_equivalent(const Nu1Invariants& a, const Nu1Invariants& b, double tol = 1e-6);

/// Complex Gamma and its entire reciprocal (exactly 0 at 0, -1, -2, ...).
cplx complex_gamma(cplx z);
cplx reciprocal_gamma(cplx z);

enum class LaplaceFamily { R_ONE, R_EXP_MINUS_X };
/// s_pi for R = 1: 2 pi i exp(i pi mu) / Gamma(mu);
/// for R = exp(-x): 2 pi i exp(i pi mu) sum_j 1 / (j! Gamma(mu + j)).
cplx gamma_stokes(cplx mu, LaplaceFamily family);
/// (exp(2 pi i mu) - 1) int_0^inf exp(-s) s^{-mu} R(1/s) ds, term by term in R's
/// coefficients. Terms integrable at 0 are integrated numerically; the rest use the
/// continuation Gamma(1 - mu - j). Throws DivergentTerm when Re mu >= 1.
cplx laplace_stokes_quadrature(cplx mu, const Jet& R, double tol = 1e-10);

/// The same multiplier summed through the continuation of every term,
/// 2 pi i exp(i pi mu) sum_j (-1)^j R_j / Gamma(mu + j); entire in mu.
cplx laplace_stokes_series(cplx mu, const Jet& R);
/// Stokes data of the degenerate rank-2 example with parameter c:
/// trivial at 0 and a translation by 2 pi i c at pi.
StokesCollection example1_stokes(const Scalar& c);
/// The example equation (delta_2 - alpha2)(delta_2 - alpha1) y = 0 with
/// alpha1 = 1, alpha2 = 1 + x + x^2 + c x^3 / (1 + c x).
Lde example1_equation(const Scalar& c, int N);

/// Conjugation x -> phi = x + x^2 g between the example solutions for c and
/// c_tilde. Analytic: c exp(-1/(2x^2)) = c_tilde t exp(-1/(2 phi^2)), g(0) =
/// log(c_tilde / c). Formal: the constant factor is dropped and g(0) = 0.
/// log t is the Laurent jet log(c / c_tilde) - 1/(2x^2) + 1/(2 phi^2) (without
/// the constant in the formal case); `obstruction` is its x^{-1} coefficient.
struct Example1Conjugation {
    Jet g;
    Jet phi;
    Jet log_t;
    Scalar obstruction;
};
Example1Conjugation example1_conjugation(const Scalar& c, const Scalar& c_tilde, int N, bool analytic = true);

}  // namespace lode
