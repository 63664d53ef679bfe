#include <doctest.h>

#include "lode/classify.hpp"
#include "lode/errors.hpp"
#include "oracle/gen.hpp"
#include "oracle/series.hpp"

using namespace lode;

namespace {

Scalar q(long n, long d = 1) { return Scalar(mpq_class(n, d)); }

// Equation with the given p and discriminant: q = (Delta - p^2 + 2 delta p) / 4.
Lde with_discriminant(int nu, const Jet& p, const Jet& D) {
    Jet qq = q(1, 4) * (D - p * p + Scalar(2) * delta(p, nu));
    return Lde::from_delta(nu, p, qq.truncated(std::min(p.order(), D.order())));
}

Jet poly(std::initializer_list<Scalar> c, int N) {
    Jet j(0, N);
    int k = 0;
    for (const Scalar& s : c) j.set(k++, s);
    return j;
}

// Random equation with Delta(0) = 1 (or Delta = x + ... when resonant).
Lde random_irregular(gen::Rng& rng, int nu, int N, bool resonant = false) {
    Jet p = rng.jet(N);
    Jet D = rng.jet(N);
    if (resonant) {
        p.set(0, Scalar(0));
        D.set(0, Scalar(0));
        D.set(1, Scalar(1));
    } else {
        D.set(0, Scalar(1));
    }
    return with_discriminant(nu, p, D);
}

// Residual delta lambda + lambda^2 - p lambda - q with the reference series.
oracle::S riccati_residual(const oracle::S& lam, const oracle::S& p, const oracle::S& qq, int nu) {
    return lam.delta(nu) + lam * lam - p * lam - qq;
}

}  // namespace

TEST_CASE("classification of singularities") {
    const int N = 6;
    SingularityClass a = classify(Lde::from_delta(0, poly({q(1, 2)}, N), Jet(0, N)));
    CHECK(a.kind == SingularityKind::REGULAR_STRONG_NONRES);
    REQUIRE(a.exponents);
    CHECK(a.exponents->first == Scalar(0));
    CHECK(a.exponents->second == q(1, 2));

    SingularityClass r = classify(Lde::from_delta(0, poly({2, 1}, N), poly({0, 3}, N)));
    CHECK(r.kind == SingularityKind::REGULAR_RESONANT);
    CHECK(r.k == 2);

    CHECK(classify(Lde::from_delta(0, poly({1, 5}, N), poly({0, 0, 7}, N))).kind == SingularityKind::NON_SINGULAR);
    CHECK(classify(Lde::from_delta(0, poly({1}, N), poly({3}, N))).kind == SingularityKind::REGULAR_STRONG_NONRES);

    Lde irr = with_discriminant(1, poly({2, 1}, N), poly({1, 4}, N));
    CHECK(classify(irr).kind == SingularityKind::IRREGULAR_NONRES);
    Lde res = with_discriminant(1, poly({0, 1}, N), poly({0, 3}, N));
    CHECK(classify(res).kind == SingularityKind::IRREGULAR_RES_NONDEG);

    // alpha1 = 1, alpha2 = 1 + x + x^2 + x^3 / (1 + x): Delta = r^2 - 2 delta_2 r = x^2 + O(x^3)
    Jet r2 = poly({0, 1, 1, 1, -1, 1, -1}, N);
    Lde deg = Lde::from_factored(2, Jet::constant(Scalar(1), N), r2 + Scalar(1));
    oracle::S rr = oracle::from_jet(r2);
    oracle::S Dref = rr * rr - oracle::S::constant(oracle::Q(2), rr.n()) * rr.delta(2);
    CHECK(oracle::equal_upto(Dref, deg.discriminant(), N));
    CHECK(deg.discriminant().valuation() == 2);
    CHECK(classify(deg).kind == SingularityKind::DEGENERATE);
    CHECK_THROWS_AS(normalize_quadratic_differential(deg), DegenerateInput);
    CHECK_THROWS_AS(formal_invariants(deg), DegenerateInput);
    CHECK_THROWS_AS(formal_equivalence(deg, deg, 4), DegenerateInput);

    CHECK_THROWS_AS(classify(irr.to_float(), 0.0), ExactnessRequired);
    CHECK(classify(irr.to_float(), 1e-12).kind == SingularityKind::IRREGULAR_NONRES);
}

TEST_CASE("quadratic differential normal form") {
    const int N = 10;
    SUBCASE("already normal") {
        Jet D = poly({1, 0, q(2, 3)}, N);
        Lde e = with_discriminant(2, poly({1, 2}, N), D * D);
        QuadraticNormalization n = normalize_quadratic_differential(e);
        CHECK(n.mu == q(2, 3));
        CHECK(n.T.phi.agrees_with(Jet::x(n.T.phi.order()), n.T.phi.order()));
    }
    SUBCASE("nu = 1, Delta = 1 + x") {
        Lde e = with_discriminant(1, Jet(0, N), poly({1, 1}, N));
        QuadraticNormalization n = normalize_quadratic_differential(e);
        CHECK(n.mu == q(1, 2));  // x-coefficient of sqrt(1 + x)
        Jet target = poly({1, q(1, 2)}, N);
        target = target * target;
        Jet Dn = n.normalized.discriminant();
        CHECK(Dn.agrees_with(target.truncated(Dn.order()), Dn.order()));
        CHECK(Dn.order() >= N - 2);
        // the discriminant law pulls the target back to 1 + x
        CHECK(pulled_back_discriminant(target, n.T.phi, 1).agrees_with(poly({1, 1}, N), N - 2));
        // the other admissible scaling flips the sign of mu
        CHECK(normalize_quadratic_differential(e, Scalar(0), 1).mu == q(-1, 2));
    }
    SUBCASE("resonant, Delta = x + x^2") {
        Lde e = with_discriminant(1, Jet(0, N), poly({0, 1, 1}, N));
        QuadraticNormalization n = normalize_quadratic_differential(e);
        CHECK(n.T.phi.coeff(1) == Scalar(1));
        CHECK(n.T.phi.coeff(2) == Scalar(1));  // b_1 = a_1 / (2 - 2 + 1)
        Jet Dn = n.normalized.discriminant();
        CHECK(Dn.agrees_with(Jet::x(Dn.order()), Dn.order()));
    }
    SUBCASE("regular resonance with a logarithm is obstructed") {
        // Delta(0) = 1, and the log coefficient of the exponent pair (1, 0) is nonzero
        Lde e = Lde::from_delta(0, poly({1, 1}, N), poly({0, 1}, N));
        CHECK_THROWS_AS(normalize_quadratic_differential(e), ResonantObstruction);
        Lde plain = Lde::from_delta(0, poly({3, 1}, N), poly({q(5, 4), 1}, N));
        Jet Dn = normalize_quadratic_differential(plain).normalized.discriminant();
        CHECK(Dn.agrees_with(Jet::constant(Scalar(14), Dn.order()), Dn.order()));
    }
}

TEST_CASE("normalized discriminants match the model exactly") {
    gen::Rng rng(5);
    const int N = 9;
    for (int trial = 0; trial < 12; ++trial) {
        int nu = 1 + trial % 2;
        bool resonant = trial % 3 == 2;
        Lde e = random_irregular(rng, nu, N, resonant);
        QuadraticNormalization n = normalize_quadratic_differential(e);
        Jet Dn = n.normalized.discriminant();
        CHECK(Dn.order() >= N - 2 * nu - 1);
        CHECK(Dn.agrees_with(n.target.truncated(Dn.order()), Dn.order()));
        if (!resonant) {
            // mu is the residue of sqrt(Delta) delta^{-1}: [sqrt Delta]_nu
            oracle::S D = oracle::from_jet(e.discriminant());
            oracle::S s = oracle::S::constant(oracle::Q(1), D.n());
            for (int it = 0; it < N + 2; ++it) s = oracle::Q(mpq_class(1, 2)) * (s + D / s);
            CHECK(n.mu == oracle::to_scalar(s.a[static_cast<size_t>(nu)]));
        }
    }
}

TEST_CASE("formal invariants") {
    const int N = 10;
    SUBCASE("trace-free, nu = 2") {
        Jet D = poly({1, 0, q(1, 3)}, N);
        FormalInvariant inv = formal_invariants(with_discriminant(2, Jet(0, N), D * D));
        CHECK(inv.kind == InvariantKind::NONRES);
        CHECK(inv.group_order == 4);
        CHECK(inv.stabilizer_step == 2);
        CHECK(inv.stabilizer_size() == 2);
        CHECK(inv.mu == q(-1, 3));
        Jet one(0, N);
        one.set(0, Scalar(1));
        FormalInvariant zero = formal_invariants(with_discriminant(2, Jet(0, N), one));
        CHECK(zero.stabilizer_step == 1);
        CHECK(zero.stabilizer_size() == 4);
    }
    SUBCASE("regular exponents") {
        FormalInvariant inv = formal_invariants(Lde::from_delta(0, poly({1}, N), Jet(0, N)));
        CHECK(inv.kind == InvariantKind::REGULAR);
        CHECK(inv.lambda1.coeff(0) == Scalar(0));
        CHECK(inv.lambda2.coeff(0) == Scalar(1));
    }
    SUBCASE("root jets from p and Delta") {
        Jet D = poly({1, 1}, N);
        Lde e = with_discriminant(1, poly({1, 3}, N), D * D);
        FormalInvariant inv = formal_invariants(e);
        // the orbit contains lambda1 = x, lambda2 = 1 + 2x, mu = 1
        bool found = false;
        for (const FormalInvariant& r : invariant_orbit(inv))
            if (r.mu == Scalar(1) && r.lambda1.agrees_with(poly({0, 1}, 1), 1) &&
                r.lambda2.agrees_with(poly({1, 2}, 1), 1))
                found = true;
        CHECK(found);
        // the lexicographic representative takes mu = -1
        CHECK(inv.mu == Scalar(-1));
        CHECK(inv.lambda1.agrees_with(poly({-1, 2}, 1), 1));
        CHECK(inv.lambda2.agrees_with(poly({0, 1}, 1), 1));
        CHECK(inv.stabilizer_step == 2);
    }
}

TEST_CASE("formal invariants are invariant under point transformations") {
    gen::Rng rng(23);
    const int N = 12;
    for (int trial = 0; trial < 16; ++trial) {
        int nu = 1 + trial % 2;
        bool resonant = nu == 1 && trial % 4 == 3;
        Lde e = random_irregular(rng, nu, N, resonant);
        PointTransformation T = rng.transformation(N);
        // keep the leading scale a unit so the 2nu-th roots stay in Q(i)
        static const Scalar units[4] = {Scalar(1), Scalar(-1), Scalar(0, 1), Scalar(0, -1)};
        T.phi = T.phi * (units[trial % 4] / T.phi.coeff(1));
        Lde f = apply_transformation(e, T);
        FormalInvariant a = formal_invariants(e), b = formal_invariants(f);
        CHECK(same_invariants(a, b));
        CHECK(a.stabilizer_step == b.stabilizer_step);
    }
}

TEST_CASE("formal normal forms") {
    const int N = 10;
    SUBCASE("lambda = 0, 1") {
        Lde e = normal_form_from_lambdas(1, Jet(0, 1), poly({1}, 1), N);
        CHECK(e.p.agrees_with(Jet::constant(Scalar(1), N), N));
        CHECK(e.q.agrees_with(Jet(0, N), N));
        CHECK(e.discriminant().agrees_with(Jet::constant(Scalar(1), N - 1), N - 1));
    }
    SUBCASE("trace-free with mu") {
        const Scalar mu = q(2, 5);
        Lde e = normal_form_from_lambdas(1, poly({q(-1, 2), -q(1, 2) * mu}, 1), poly({q(1, 2), q(1, 2) * mu}, 1), N);
        oracle::S d = oracle::from_jet(poly({1, mu}, N));
        oracle::S L = d.delta(1) / d;  // delta log(1 + mu x) = mu x^2 / (1 + mu x)
        oracle::S D = d * d - oracle::S::constant(oracle::Q(2), d.n()) * L.delta(1) + L * L;
        CHECK(oracle::equal_upto(L, e.p, N));
        CHECK(oracle::equal_upto(D, e.discriminant(), N));
        CHECK(e.p.coeff(2) == mu);
    }
    SUBCASE("random root jets solve the Riccati equations") {
        gen::Rng rng(3);
        for (int trial = 0; trial < 8; ++trial) {
            int nu = 1 + trial % 3;
            Jet s = rng.jet(nu);
            Jet d = Jet::constant(Scalar(1), nu) + Jet::monomial(rng.scalar(), nu, nu);
            Jet l1 = q(1, 2) * (s - d), l2 = q(1, 2) * (s + d);
            Lde e = normal_form_from_lambdas(nu, l1, l2, N);
            oracle::S p = oracle::from_jet(e.p), qq = oracle::from_jet(e.q);
            for (const Jet& l : {l1, l2}) {
                oracle::S lam(static_cast<size_t>(N + 1));
                for (int k = 0; k <= nu; ++k) lam.a[static_cast<size_t>(k)] = oracle::from_scalar(l.coeff(k));
                oracle::S r = riccati_residual(lam, p, qq, nu);
                for (int k = 0; k <= N; ++k) CHECK(r.a[static_cast<size_t>(k)].zero());
            }
        }
    }
    SUBCASE("resonant model") {
        for (int nu = 1; nu <= 3; ++nu) {
            Jet P = nu == 1 ? Jet(0, 1) : poly({0, q(1, 3), Scalar(0, 1)}, nu);
            Lde e = resonant_normal_form(nu, P, N);
            // closed form: p = P, q = (x - P^2 + 2 delta P + (1/4 - nu) x^{2nu}) / 4
            oracle::S Ps = oracle::from_jet(poly({}, N));
            for (int k = 0; k <= std::min(nu, P.order()); ++k)
                Ps.a[static_cast<size_t>(k)] = oracle::from_scalar(P.coeff(k));
            oracle::S X = oracle::S::x(static_cast<size_t>(N + 1));
            oracle::S tail = oracle::S(static_cast<size_t>(N + 1));
            if (2 * nu <= N) tail.a[static_cast<size_t>(2 * nu)] = oracle::Q(mpq_class(1, 4) - nu);
            oracle::S qref = oracle::Q(mpq_class(1, 4)) *
                             (X - Ps * Ps + oracle::S::constant(oracle::Q(2), Ps.n()) * Ps.delta(nu) + tail);
            CHECK(oracle::equal_upto(Ps, e.p, N));
            CHECK(oracle::equal_upto(qref, e.q, N));
            // the root functions in s = x^{1/2} solve the Riccati equations
            const size_t Ns = static_cast<size_t>(2 * N + 2);
            oracle::S ps(Ns), qs(Ns), sig(Ns);
            for (int k = 0; 2 * k < static_cast<int>(Ns); ++k) {
                ps.a[static_cast<size_t>(2 * k)] = oracle::from_scalar(e.p.coeff(k));
                qs.a[static_cast<size_t>(2 * k)] = oracle::from_scalar(e.q.coeff(k));
                sig.a[static_cast<size_t>(2 * k)] = ps.a[static_cast<size_t>(2 * k)];
            }
            sig.a[static_cast<size_t>(2 * nu)] = sig.a[static_cast<size_t>(2 * nu)] - oracle::Q(mpq_class(1, 2));
            oracle::S sv = oracle::S::x(Ns);
            for (int sign : {-1, 1}) {
                oracle::S lam = oracle::Q(mpq_class(1, 2)) * (sig + oracle::Q(sign) * sv);
                oracle::S dl = oracle::Q(mpq_class(1, 2)) * lam.delta(2 * nu);
                oracle::S r = dl + lam * lam - ps * lam - qs;
                for (size_t k = 0; k + 1 < Ns; ++k) CHECK(r.a[k].zero());
            }
        }
        Lde one = resonant_normal_form(1, Jet(0, 1), N);
        CHECK(one.discriminant().agrees_with(poly({0, 1, q(-3, 4)}, N - 1), N - 1));
    }
}

TEST_CASE("formal equivalence") {
    const int N = 8;
    gen::Rng rng(41);
    SUBCASE("identity") {
        for (int nu = 1; nu <= 2; ++nu) {
            Lde e = random_irregular(rng, nu, N + 2 * nu + 4);
            EquivalenceResult r = formal_equivalence(e, e, N);
            REQUIRE(r.equivalent);
            CHECK(r.T.phi.agrees_with(Jet::x(N), N));
            CHECK(r.T.t.agrees_with(Jet::constant(Scalar(1), N), N));
            CHECK(r.T.shift == 0);
        }
    }
    SUBCASE("recovers random transformations") {
        for (int trial = 0; trial < 8; ++trial) {
            int nu = 1 + trial % 2;
            bool resonant = trial % 4 == 3;
            const int M = N + 2 * nu + 6;
            Lde e = random_irregular(rng, nu, M, resonant);
            PointTransformation T = rng.transformation(M);
            T.phi = T.phi * (Scalar(1) / T.phi.coeff(1));
            Lde f = apply_transformation(e, T);
            EquivalenceResult r = formal_equivalence(f, e, N, resonant ? Scalar(0) : T.phi.coeff(nu + 1));
            REQUIRE(r.equivalent);
            CHECK(r.T.phi.agrees_with(T.phi, N));
            CHECK(apply_transformation(e, r.T).q.agrees_with(f.q, N));
        }
    }
    SUBCASE("composition agrees with the direct witness") {
        const int nu = 1, M = N + 10;
        Lde e3 = random_irregular(rng, nu, M);
        PointTransformation A = rng.transformation(M), B = rng.transformation(M);
        A.phi = A.phi * (Scalar(1) / A.phi.coeff(1));
        B.phi = B.phi * (Scalar(1) / B.phi.coeff(1));
        Lde e2 = apply_transformation(e3, A), e1 = apply_transformation(e2, B);
        EquivalenceResult r12 = formal_equivalence(e1, e2, N + 3), r23 = formal_equivalence(e2, e3, N + 3);
        EquivalenceResult r13 = formal_equivalence(e1, e3, N);
        REQUIRE(r12.equivalent);
        REQUIRE(r23.equivalent);
        REQUIRE(r13.equivalent);
        PointTransformation C = compose_transformations(r23.T, r12.T);
        CHECK(C.phi.agrees_with(r13.T.phi, N));
        CHECK(C.t.agrees_with(r13.T.t, N - 1));
    }
    SUBCASE("distinct invariants") {
        Jet D = poly({1, 0, 1}, N + 6);
        Lde a = with_discriminant(1, poly({1, 2}, N + 6), D);
        Lde b = with_discriminant(1, poly({1, 3}, N + 6), D);
        EquivalenceResult r = formal_equivalence(a, b, N);
        CHECK_FALSE(r.equivalent);
        CHECK_FALSE(r.reason.empty());
        Lde c = with_discriminant(1, poly({1, 2}, N + 6), poly({1, 1}, N + 6));
        CHECK_FALSE(formal_equivalence(a, c, N).equivalent);
    }
}

TEST_CASE("meromorphic shift of the invariants") {
    const int N = 10;
    Lde e1 = Lde::from_delta(1, poly({1, q(1, 2)}, N), poly({0, q(1, 3), q(1, 5)}, N));
    PointTransformation T{Jet::x(N), Jet::monomial(Scalar(1), 3, N), 0};
    T.t = Jet::constant(Scalar(1), N);
    T.shift = 3;
    Lde e2 = apply_transformation(e1, T);
    CHECK(e2.p.agrees_with(e1.p - Jet::monomial(Scalar(6), 1, N), N - 1));
    CHECK(meromorphic_invariant_match(e1, e2) == 3);
    CHECK(meromorphic_invariant_match(e1, e1) == 0);
    CHECK_FALSE(formal_equivalence(e2, e1, 6).equivalent);
    EquivalenceResult r = formal_equivalence(e2, e1, 6, Scalar(0), true);
    REQUIRE(r.equivalent);
    CHECK(r.T.shift == 3);
    Lde other = Lde::from_delta(1, poly({1, q(1, 2)}, N), poly({0, q(1, 4), q(1, 5)}, N));
    CHECK_FALSE(meromorphic_invariant_match(e1, other));
}
