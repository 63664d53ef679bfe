#include "lode/lde.hpp"

#include <algorithm>

#include "lode/errors.hpp"

namespace lode {

Jet Lde::discriminant() const { return p * p + Scalar(4) * q - Scalar(2) * delta(p, nu); }

JetMatrix companion(const Lde& e) {
    const int n = e.order();
    return {{{Jet(0, n), Jet::constant(Scalar(1), n)}, {e.q.truncated(n), e.p.truncated(n)}}};
}

Lde Lde::to_float() const {
    Lde r = *this;
    r.p = p.to_float();
    r.q = q.to_float();
    return r;
}

Lde Lde::truncated(int order) const {
    Lde r = *this;
    r.p = p.truncated(order);
    r.q = q.truncated(order);
    return r;
}

namespace {

void require_analytic(const Jet& f, const char* name) {
    for (int k = f.low(); k < 0; ++k)
        if (!f.coeff(k).is_zero()) throw DegenerateInput(std::string(name) + " must be analytic at the origin");
}

bool vanishes(const Jet& f, int k) { return k > f.order() || f.coeff(k).is_zero(); }

}  // namespace

Lde Lde::from_delta(int nu, Jet p, Jet q) {
    if (nu < 0) throw DegenerateInput("Poincare rank must be non-negative");
    require_analytic(p, "p");
    require_analytic(q, "q");
    Lde e;
    while (nu >= 1 && vanishes(p, 0) && vanishes(q, 0) && vanishes(q, 1)) {
        p = shift(p, -1) - Jet::monomial(Scalar(1), nu - 1, p.order() - 1);
        q = shift(q, -2);
        e.notes.push_back("rank lowered from " + std::to_string(nu) + " to " + std::to_string(nu - 1));
        --nu;
    }
    e.nu = nu;
    e.p = std::move(p);
    e.q = std::move(q);
    if (nu == 0 && !vanishes(e.p, 0) && e.p.coeff(0) == Scalar(1) && vanishes(e.q, 0) && vanishes(e.q, 1))
        e.nonsingular = true;
    return e;
}

Lde Lde::from_raw(const Jet& a1, const Jet& a0) {
    int m1 = std::max(0, -a1.valuation());
    int m0 = std::max(0, -a0.valuation());
    int nu = std::max(m1 - 1, (m0 + 1) / 2 - 1);
    bool ordinary = nu < 0;
    if (ordinary) nu = 0;
    Jet p = Jet::monomial(Scalar(nu + 1), nu, a1.order() + nu + 1) - shift(a1, nu + 1);
    Jet q = -shift(a0, 2 * nu + 2);
    Lde e = from_delta(nu, std::move(p), std::move(q));
    if (ordinary) e.nonsingular = true;
    return e;
}

Lde Lde::from_factored(int nu, const Jet& alpha1, const Jet& alpha2) {
    Jet p = alpha1 + alpha2;
    Jet q = delta(alpha1, nu) - alpha1 * alpha2;
    return from_delta(nu, std::move(p), std::move(q));
}

Jet delta_ratio(const Jet& phi, int nu) {
    if (phi.valuation() != 1) throw DegenerateInput("phi must be x times a unit");
    Jet unit = shift(phi, -1);
    return pow_int(inverse(unit), nu + 1) * derivative(phi);
}

Lde apply_transformation(const Lde& target, const PointTransformation& T) {
    const int nu = target.nu;
    Jet psi = delta_ratio(T.phi, nu);
    Jet dlog_psi = log_derivative(psi, nu);
    Jet A = psi * compose(target.p, T.phi) + dlog_psi;
    Jet u = log_derivative(T.t, nu) + Jet::monomial(Scalar(T.shift), nu, T.t.order() + nu);
    Jet B = psi * psi * compose(target.q, T.phi);
    Lde e;
    e.nu = nu;
    e.p = A - Scalar(2) * u;
    e.q = B + A * u - delta(u, nu) - u * u;
    e.nonsingular = target.nonsingular;
    return e;
}

Lde apply_transformation(const Lde& target, const PointTransformation& T, int order) {
    Lde e = apply_transformation(target, T);
    if (e.order() < order)
        throw OrderExhausted("transformed equation is known to order " + std::to_string(e.order()) + ", need " +
                             std::to_string(order));
    return e.truncated(order);
}

PointTransformation compose_transformations(const PointTransformation& A, const PointTransformation& B) {
    PointTransformation C;
    C.phi = compose(A.phi, B.phi);
    C.shift = A.shift + B.shift;
    C.t = compose(A.t, B.phi) * B.t;
    if (A.shift != 0) C.t = C.t * pow_int(shift(B.phi, -1), A.shift);
    return C;
}

PointTransformation invert_transformation(const PointTransformation& T) {
    PointTransformation S;
    S.phi = reverse(T.phi);
    S.shift = -T.shift;
    S.t = inverse(compose(T.t, S.phi));
    if (T.shift != 0) S.t = S.t * pow_int(shift(S.phi, -1), -T.shift);
    return S;
}

Jet pulled_back_discriminant(const Jet& delta_tilde, const Jet& phi, int nu) {
    Jet psi = delta_ratio(phi, nu);
    Jet l = log_derivative(psi, nu);
    return psi * psi * compose(delta_tilde, phi) - Scalar(2) * delta(l, nu) + l * l;
}

Jet schwarzian_from_log_derivative(const Jet& l, int nu) { return delta(l, nu) - Scalar(mpq_class(1, 2)) * (l * l); }

Jet schwarzian(const Jet& f, int nu) {
    Jet df = delta(f, nu);
    if (df.is_zero()) throw DegenerateRatio("Schwarzian of a constant");
    return schwarzian_from_log_derivative(log_derivative(df, nu), nu);
}

Jet schwarzian_of_derivative(const Scalar& a, const Jet& kappa, const Jet& W, int nu) {
    Jet l = Jet::monomial(a, nu, W.order() + nu) + kappa + log_derivative(W, nu);
    return schwarzian_from_log_derivative(l, nu);
}

Jet frobenius_residual(const Lde& e, const Scalar& lambda, const Jet& Y) {
    const int nu = e.nu;
    Jet lam = Jet::monomial(lambda, nu, Y.order() + nu);
    Jet dY = delta(Y, nu) + lam * Y;
    Jet ddY = delta(dY, nu) + lam * dY;
    return ddY - e.p * dY - e.q * Y;
}

}  // namespace lode
