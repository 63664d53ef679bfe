#pragma once

#include <array>
#include <optional>

#include "lode/lde.hpp"

namespace lode {

/// Frobenius data at a regular singularity. Re lambda1 >= Re lambda2 and
///   y1 = x^lambda1 T11,  y2 = x^lambda2 T12 + kappa * y1 * log x,
/// with T11(0) = 1; T12(0) = 1 when lambda1 != lambda2 and T12(0) = 0 otherwise.
/// When k = lambda1 - lambda2 > 0 is an integer, the free coefficient of T12 at
/// degree k is set to zero.
struct RegularData {
    Scalar lambda1;
    Scalar lambda2;
    std::optional<long> k;  // lambda1 - lambda2 when it is a non-negative integer
    bool epsilon = false;   // a logarithmic term is present
    Scalar kappa;           // coefficient of y1 log x (0 when epsilon is false)
    Jet T11;
    Jet T12;
};

RegularData frobenius(const Lde& e, int N, double tol = 1e-10);

enum class MonodromyType { DIAGONALIZABLE, NON_DIAGONALIZABLE };
MonodromyType monodromy_type(const RegularData& d);

using Matrix2 = std::array<std::array<cplx, 2>, 2>;
/// Monodromy of the Frobenius basis (y1, y2) under x -> e^{2 pi i} x, acting on rows.
Matrix2 formal_monodromy(const RegularData& d);

enum class RegularNormalKind { DIAGONAL, EQUAL_EXPONENTS, LOGARITHMIC };

/// (delta - lambda2)(delta - lambda1) y = 0.
Lde regular_normal_diagonal(const Scalar& lambda1, const Scalar& lambda2, int N);
/// (delta - lambda)^2 y = 0.
Lde regular_normal_equal(const Scalar& lambda, int N);
/// (delta - lambda2 + k x^k / (1 - x^k))(delta - lambda1) y = 0.
Lde regular_normal_log(const Scalar& lambda1, const Scalar& lambda2, int k, int N);
/// (delta - lambda2 + k x^k)(delta - lambda1) y = 0.
Lde regular_normal_log_polynomial(const Scalar& lambda1, const Scalar& lambda2, int k, int N);

struct RegularReduction {
    RegularNormalKind kind;
    Lde normal_form;
    PointTransformation T;  // apply(normal_form, T) == input
    RegularData data;
};

RegularReduction reduce_to_normal_form(const Lde& e, int N, double tol = 1e-10);

/// Same exponents and same monodromy type.
bool regular_equivalent(const Lde& a, const Lde& b, int N, double tol = 1e-10);

/// Witness transformation between two regular equations (see EquivalenceResult).
/// `scale` rescales x inside the diagonal and equal-exponent normal forms.
EquivalenceResult regular_formal_equivalence(const Lde& e1, const Lde& e2, int N, const Scalar& scale = Scalar(0),
                                             bool meromorphic = false, double tol = 1e-10);

}  // namespace lode
