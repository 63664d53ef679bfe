#include <doctest.h>

#include "lode/errors.hpp"
#include "lode/lde.hpp"
#include "oracle/gen.hpp"
#include "oracle/series.hpp"

using namespace lode;

namespace {

Scalar q(long n, long d = 1) { return Scalar(mpq_class(n, d)); }

// Right-hand side of the discriminant law computed with the reference series.
oracle::S law_rhs(const oracle::S& dtilde, const oracle::S& phi, int nu) {
    size_t n = phi.n() - 1;
    oracle::S unit(n);
    for (size_t k = 0; k < n; ++k) unit.a[k] = phi.a[k + 1];
    oracle::S psi = oracle::pow_int(unit, -(nu + 1)) * phi.deriv();
    oracle::S l = psi.delta(nu) / psi;
    oracle::S two = oracle::S::constant(oracle::Q(2), psi.n());
    return psi * psi * oracle::compose(dtilde, phi) - two * l.delta(nu) + l * l;
}

Lde random_lde(gen::Rng& rng, int nu, int N) { return Lde::from_delta(nu, rng.unit(N), rng.unit(N)); }

}  // namespace

TEST_CASE("raw form conversion and rank") {
    const int N = 8;
    // y'' + (1/x) y' - (1/x^4) y = 0: m1 = 1, m0 = 4 -> nu = 1
    Jet a1 = inverse(Jet::x(N + 1));
    Jet a0 = -pow_int(inverse(Jet::x(N + 4)), 4);
    Lde e = Lde::from_raw(a1, a0);
    CHECK(e.nu == 1);
    CHECK_FALSE(e.nonsingular);
    // p = 2x - x^2 * (1/x) = x, q = x^4 * x^-4 = 1
    CHECK(e.p.coeff(0) == Scalar(0));
    CHECK(e.p.coeff(1) == Scalar(1));
    CHECK(e.q.coeff(0) == Scalar(1));
    // analytic coefficients: an ordinary point
    Lde o = Lde::from_raw(Jet::constant(Scalar(3), N), Jet::x(N));
    CHECK(o.nonsingular);
    CHECK(o.nu == 0);
    // Euler equation x^2 y'' + x y' - y = 0 is regular singular
    Lde r = Lde::from_raw(inverse(Jet::x(N + 1)), -pow_int(inverse(Jet::x(N + 2)), 2));
    CHECK(r.nu == 0);
    CHECK_FALSE(r.nonsingular);
}

TEST_CASE("delta form lowers a non-minimal rank") {
    const int N = 8;
    // nu = 2 with p(0) = 0 and q = O(x^2)
    Jet p = Jet::x(N) * q(3) + Jet::monomial(Scalar(1), 1, N);
    Jet qq = shift(Jet::constant(Scalar(5), N - 2), 2);
    Lde e = Lde::from_delta(2, p, qq);
    CHECK(e.nu == 1);
    CHECK(e.notes.size() == 1);
    // p' = p/x - x = 4 - x, q' = 5
    CHECK(e.p.coeff(0) == Scalar(4));
    CHECK(e.p.coeff(1) == Scalar(-1));
    CHECK(e.q.coeff(0) == Scalar(5));
}

TEST_CASE("factored form expands to p and q") {
    const int N = 6;
    Jet a1 = Jet::constant(q(1, 2), N), a2 = Jet::x(N) + Scalar(2);
    Lde e = Lde::from_factored(1, a1, a2);
    CHECK(e.p.agrees_with(a1 + a2, N));
    CHECK(e.q.agrees_with(delta(a1, 1) - a1 * a2, N));
}

TEST_CASE("discriminant law against the reference arithmetic") {
    gen::Rng rng(2024);
    const int N = 8;
    for (int trial = 0; trial < 30; ++trial) {
        int nu = static_cast<int>(rng.range(0, 2));
        Lde et = random_lde(rng, nu, N + 2);
        PointTransformation T = rng.transformation(N + 2);
        Lde e = apply_transformation(et, T);
        Jet lhs = e.discriminant();
        auto rhs = law_rhs(oracle::from_jet(et.discriminant().truncated(N + 1)), oracle::from_jet(T.phi), nu);
        int upto = std::min<int>(N, static_cast<int>(rhs.n()) - 1);
        REQUIRE(lhs.order() >= upto);
        CHECK(oracle::equal_upto(rhs, lhs, static_cast<size_t>(upto + 1)));
        // t does not enter the discriminant
        PointTransformation T2 = T;
        T2.t = rng.unit(N + 2);
        CHECK(apply_transformation(et, T2).discriminant().agrees_with(lhs, upto));
        CHECK(pulled_back_discriminant(et.discriminant(), T.phi, nu).agrees_with(lhs, upto));
    }
}

TEST_CASE("composition and inversion of transformations") {
    gen::Rng rng(99);
    const int N = 7;
    for (int trial = 0; trial < 10; ++trial) {
        int nu = static_cast<int>(rng.range(0, 2));
        Lde e = random_lde(rng, nu, N + 4);
        PointTransformation A = rng.transformation(N + 4), B = rng.transformation(N + 4);
        A.shift = static_cast<int>(rng.range(-2, 2));
        B.shift = static_cast<int>(rng.range(-2, 2));
        Lde twice = apply_transformation(apply_transformation(e, A), B);
        Lde once = apply_transformation(e, compose_transformations(A, B));
        CHECK(twice.p.agrees_with(once.p, N - 2));
        CHECK(twice.q.agrees_with(once.q, N - 2));
        Lde back = apply_transformation(apply_transformation(e, A), invert_transformation(A));
        CHECK(back.p.agrees_with(e.p, N - 2));
        CHECK(back.q.agrees_with(e.q, N - 2));
    }
}

TEST_CASE("solutions pull back through a transformation") {
    // ytilde = xtilde^2 solves delta_0^2 - 2 delta_0 = 0 (p = 2, q = 0)
    const int N = 8;
    Lde et = Lde::from_delta(0, Jet::constant(Scalar(2), N), Jet(0, N));
    PointTransformation T;
    T.phi = Jet::x(N) + shift(Jet::constant(Scalar(1), N - 2), 2);  // x + x^2
    T.t = Jet::x(N) + Scalar(1);
    Lde e = apply_transformation(et, T);
    // y = phi^2 / t = x^2 (1 + x)^2 / (1 + x) = x^2 (1 + x)
    Jet Y = Jet::x(N) + Scalar(1);
    Jet res = frobenius_residual(e, Scalar(2), Y);
    CHECK(res.truncated(N - 2).is_zero());
}

TEST_CASE("schwarzian of plain and multivalued ratios") {
    const int N = 8;
    // f = x^a with a = 1/2: l = a, S = -a^2/2
    Jet S = schwarzian_of_derivative(q(1, 2), Jet(0, N), Jet::constant(q(1, 2), N), 0);
    CHECK(S.agrees_with(Jet::constant(q(-1, 8), N), N));
    // Mobius invariance: S((2f + 1)/(f + 3)) = S(f)
    gen::Rng rng(3);
    Jet f = rng.phi(N + 3);
    Jet g = (Scalar(2) * f + Scalar(1)) / (f + Scalar(3));
    CHECK(schwarzian(f, 1).agrees_with(schwarzian(g, 1), N - 1));
}
