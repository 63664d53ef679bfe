#pragma once

#include <optional>
#include <vector>

#include "lode/lde.hpp"

namespace lode {

enum class SingularityKind {
    NON_SINGULAR,
    REGULAR_STRONG_NONRES,
    REGULAR_RESONANT,
    IRREGULAR_NONRES,
    IRREGULAR_RES_NONDEG,
    DEGENERATE
};

const char* kind_name(SingularityKind k);

struct SingularityClass {
    SingularityKind kind = SingularityKind::DEGENERATE;
    int nu = 0;
    std::optional<long> k;  // |lambda1 - lambda2| for REGULAR_RESONANT
    Scalar delta0;          // Delta(0)
    /// Roots of lambda^2 - p(0) lambda - q(0) when nu = 0 and they are representable.
    std::optional<std::pair<Scalar, Scalar>> exponents;

    bool regular() const { return nu == 0; }
};

/// Float data needs tol > 0 for the resonance tests.
SingularityClass classify(const Lde& e, double tol = 1e-10);

/// Change of variable bringing Delta to its local normal form: the constant
/// Delta(0) (nu = 0), (1 + mu x^nu)^2 (Delta(0) != 0) or x (resonant).
/// apply_transformation(normalized, T) == e, with T.t = 1.
struct QuadraticNormalization {
    PointTransformation T;
    Lde normalized;
    Jet target;
    Scalar mu;
    Scalar scale;  // phi'(0)
};

/// `root_index` picks among the admissible leading coefficients of phi;
/// `t_param` fills the free coefficient of x^{nu+1} in the non-resonant case.
QuadraticNormalization normalize_quadratic_differential(const Lde& e, const Scalar& t_param = Scalar(0),
                                                        int root_index = 0, double tol = 1e-10);

enum class InvariantKind { REGULAR, NONRES, RES_NONDEG };

/// Formal invariants in canonical position.
///  NONRES: lambda2 - lambda1 = 1 + mu x^nu, lambda1 + lambda2 = P (nu-jets).
///  RES_NONDEG: P with P(0) = 0; Delta normalized to x.
///  REGULAR: the exponent pair, lambda1 <= lambda2 lexicographically.
/// The residual rotations form Z_n (n = 2nu, or 2nu - 1 when resonant); the
/// stabilizer of the invariants is G = stabilizer_step * Z_n.
struct FormalInvariant {
    InvariantKind kind = InvariantKind::REGULAR;
    int nu = 0;
    Jet lambda1;
    Jet lambda2;
    Scalar mu;
    Jet P;
    int group_order = 1;
    int stabilizer_step = 1;

    int stabilizer_size() const { return group_order / stabilizer_step; }
};

FormalInvariant formal_invariants(const Lde& e, double tol = 1e-10);

/// The invariants after rotating x by exp(2 pi i l / n); entry l of the result.
std::vector<FormalInvariant> invariant_orbit(const FormalInvariant& inv);

bool same_invariants(const FormalInvariant& a, const FormalInvariant& b, double tol = 1e-10);

/// Equation with solutions exp(integral lambda_j delta^{-1}).
Lde normal_form_from_lambdas(int nu, const Jet& lambda1, const Jet& lambda2, int N);
/// Resonant model: lambda1 + lambda2 = P - x^nu / 2, lambda2 - lambda1 = x^{1/2}.
Lde resonant_normal_form(int nu, const Jet& P, int N);
/// NONRES and RES_NONDEG only; regular exponents alone do not fix a normal form.
Lde formal_normal_form(const FormalInvariant& inv, int N);

/// Jet-level equivalence. On success apply(e2, T) == e1 to order N, with
/// phi = c x + t_param x^{nu+1} + ... in the non-resonant irregular case and t(0) = 1.
/// With `meromorphic`, an integer shift T.shift is allowed.
EquivalenceResult formal_equivalence(const Lde& e1, const Lde& e2, int N, const Scalar& t_param = Scalar(0),
                                     bool meromorphic = false, double tol = 1e-10);

/// Integer m such that x^m relates the canonical invariants: the p-jets differ by
/// 2 m x^nu and everything else agrees.
std::optional<long> meromorphic_invariant_match(const Lde& e1, const Lde& e2, double tol = 1e-10);

}  // namespace lode
