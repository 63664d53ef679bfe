#pragma once

#include <array>
#include <string>
#include <vector>

#include "lode/jet.hpp"

namespace lode {

/// delta_nu^2 y - p delta_nu y - q y = 0 with delta_nu = x^{nu+1} d/dx and
/// analytic p, q known as jets. nu is the minimal Poincare rank.
struct Lde {
    int nu = 0;
    Jet p;
    Jet q;
    /// The origin is an ordinary point (no singularity at all).
    bool nonsingular = false;
    /// Human-readable remarks from construction (rank reductions and the like).
    std::vector<std::string> notes;

    int order() const { return std::min(p.order(), q.order()); }
    bool exact() const { return p.exact() && q.exact(); }
    /// p^2 + 4q - 2 delta_nu p.
    Jet discriminant() const;
    Lde to_float() const;
    Lde truncated(int order) const;

    /// Delta form; a non-minimal rank is lowered until it is minimal.
    static Lde from_delta(int nu, Jet p, Jet q);
    /// y'' + a1 y' + a0 y = 0 with Laurent jets a1, a0.
    static Lde from_raw(const Jet& a1, const Jet& a0);
    /// (delta - alpha2)(delta - alpha1) y = 0.
    static Lde from_factored(int nu, const Jet& alpha1, const Jet& alpha2);
};

/// [[0, 1], [q, p]], the matrix of the companion system delta_nu v = A v for
/// v = (y, delta_nu y).
using JetMatrix = std::array<std::array<Jet, 2>, 2>;
JetMatrix companion(const Lde& e);

/// Acts by ytilde(phi(x)) = x^shift t(x) y(x), pulling an equation written in
/// the variable xtilde = phi(x) back to x.
struct PointTransformation {
    Jet phi;
    Jet t;
    int shift = 0;
};

/// Verdict of an equivalence search. When `equivalent`, apply(second, T) == first.
struct EquivalenceResult {
    bool equivalent = false;
    PointTransformation T;
    std::string reason;
    int failed_degree = -1;
    Scalar obstruction;
};

/// x^{nu+1} phi' / phi^{nu+1}, the factor with delta_nu = psi * deltatilde_nu.
Jet delta_ratio(const Jet& phi, int nu);

/// The equation satisfied by y when ytilde solves `target` in the variable phi(x).
Lde apply_transformation(const Lde& target, const PointTransformation& T);
/// As above, throwing OrderExhausted when fewer than `order` coefficients survive.
Lde apply_transformation(const Lde& target, const PointTransformation& T, int order);

/// C with apply(apply(e, A), B) = apply(e, C).
PointTransformation compose_transformations(const PointTransformation& A, const PointTransformation& B);
/// S with apply(apply(e, T), S) = e.
PointTransformation invert_transformation(const PointTransformation& T);

/// psi^2 Dtilde(phi) - 2 delta(delta psi / psi) + (delta psi / psi)^2: the
/// discriminant of any pullback of an equation with discriminant Dtilde.
Jet pulled_back_discriminant(const Jet& delta_tilde, const Jet& phi, int nu);

/// delta l - l^2 / 2 for l = delta^2 f / delta f.
Jet schwarzian_from_log_derivative(const Jet& l, int nu);
/// Schwarzian (delta form) of a Laurent jet f.
Jet schwarzian(const Jet& f, int nu);
/// Schwarzian of a multivalued f given by its derivative
/// delta f = x^a exp(integral kappa delta^{-1}) W.
Jet schwarzian_of_derivative(const Scalar& a, const Jet& kappa, const Jet& W, int nu);

/// delta^2 y - p delta y - q y for y = x^lambda Y with Y a jet.
Jet frobenius_residual(const Lde& e, const Scalar& lambda, const Jet& Y);

}  // namespace lode
