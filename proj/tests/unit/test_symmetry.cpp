#include <doctest.h>

#include "lode/classify.hpp"
#include "lode/errors.hpp"
#include "lode/reduce.hpp"
#include "lode/regular.hpp"
#include "lode/symmetry.hpp"
#include "oracle/gen.hpp"

using namespace lode;

namespace {

Scalar q(long n, long d = 1) { return Scalar(mpq_class(n, d)); }

Jet poly(std::initializer_list<Scalar> c, int N) {
    Jet j(0, N);
    int k = 0;
    for (const Scalar& s : c) j.set(k++, s);
    return j;
}

const int N = 12;

// Coefficients of h_target in terms of the h's of the generators plus the
// scaling direction, solved degree by degree on the leading coefficients.
bool in_span(const Lde& e, const SymmetryGenerator& Y, const std::vector<SymmetryGenerator>& gens, int upto) {
    Jet h = Y.h;
    Scalar c = Y.c;
    // greedy elimination by lowest nonzero degree of h
    std::vector<SymmetryGenerator> basis;
    for (const auto& g : gens)
        if (!g.h.is_zero()) basis.push_back(g);
    for (int pass = 0; pass < static_cast<int>(basis.size()) + 1; ++pass) {
        int v = h.valuation();
        if (v > upto) break;
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.h.valuation() != v) continue;
            Scalar a = h.coeff(v) / g.h.coeff(v);
            h = h - a * g.h;
            c = c - a * g.c;
            reduced = true;
            break;
        }
        if (!reduced) return false;
    }
    (void)e;
    for (int k = h.low(); k <= std::min(upto, h.order()); ++k)
        if (!h.coeff(k).is_zero()) return false;
    return true;  // what is left is a multiple of y d/dy
}

}  // namespace

TEST_CASE("scaling is always a symmetry") {
    gen::Rng rng(2);
    for (int nu = 0; nu <= 2; ++nu) {
        Lde e = Lde::from_delta(nu, rng.jet(N), rng.jet(N));
        SymmetryCheck c = verify_symmetry(e, SymmetryGenerator{Jet(0, N), Scalar(1), "y d/dy"}, N);
        CHECK(c.ok);
        CHECK(c.alpha.is_zero());
    }
}

TEST_CASE("bracket conditions reduce to the symmetric power equation") {
    gen::Rng rng(31);
    for (int trial = 0; trial < 6; ++trial) {
        int nu = trial % 3;
        Lde e = Lde::from_delta(nu, rng.jet(N), rng.jet(N));
        if (e.nu != nu) continue;
        SymmetryGenerator Y{rng.jet(N), rng.scalar(), "random"};
        SymmetryCheck c = verify_symmetry(e, Y, N);
        // with f = (c + delta h + p h)/2 the y_x row vanishes identically
        CHECK(c.row_yx.is_zero());
        // the y row is half the symmetric power residual
        const Jet& lhs = c.row_y;
        Jet sp = symmetric_power_residual(e, Y.h);
        int n = std::min(lhs.order(), sp.order());
        CHECK(lhs.agrees_with((q(1, 2) * sp).truncated(n), n));
    }
}

TEST_CASE("regular singularities") {
    SUBCASE("1a: strongly non-resonant") {
        Lde e = regular_normal_diagonal(q(1, 3), q(-1, 4), N);
        SymmetryAlgebra a = symmetry_algebra(e, N);
        CHECK(a.case_label == "1a");
        CHECK(a.dimension == 2);
        SymmetryGenerator d0{Jet::constant(Scalar(1), N), -e.p.coeff(0), "delta_0"};
        CHECK(scaling_part(e, d0).is_zero());
        CHECK(verify_symmetry(e, d0, N).ok);
        for (const auto& g : a.generators) CHECK(verify_symmetry(e, g, N).ok);
        CHECK(in_span(e, d0, a.generators, N - 2));
        // equal exponents fall under the same case
        SymmetryAlgebra eq = symmetry_algebra(regular_normal_equal(q(2, 3), N), N);
        CHECK(eq.case_label == "1a");
        CHECK(eq.dimension == 2);
    }
    SUBCASE("1b: resonant with trivial monodromy") {
        const Scalar l1 = q(5, 2), l2 = q(1, 2);
        Lde e = regular_normal_diagonal(l1, l2, N);
        SymmetryAlgebra a = symmetry_algebra(e, N);
        CHECK(a.case_label == "1b");
        CHECK(a.dimension == 3);
        // x^k (delta_0 + lambda1 y d/dy)
        SymmetryGenerator Y{Jet::monomial(Scalar(1), 2, N), Scalar(0), "x^2 (delta_0 + lambda1 y d/dy)"};
        CHECK(scaling_part(e, Y).agrees_with(Jet::monomial(l1, 2, N - 1), N - 1));
        CHECK(verify_symmetry(e, Y, N).ok);
        CHECK(in_span(e, Y, a.generators, N - 2));
    }
    SUBCASE("1c: resonant, non-diagonalizable") {
        for (int k = 1; k <= 2; ++k) {
            const Scalar l1 = q(1, 3) + Scalar(k), l2 = q(1, 3);
            Lde e = regular_normal_log(l1, l2, k, N);
            SymmetryAlgebra a = symmetry_algebra(e, N);
            CHECK(a.case_label == "1c");
            CHECK(a.dimension == 2);
            // x^k / (1 - x^k) (delta_0 + lambda1 y d/dy)
            Jet h = Jet::monomial(Scalar(1), k, N) * inverse(Jet::constant(Scalar(1), N) - Jet::monomial(Scalar(1), k, N));
            SymmetryGenerator Y{h, Scalar(0), "x^k/(1-x^k) (delta_0 + lambda1 y d/dy)"};
            CHECK(scaling_part(e, Y).agrees_with((l1 * h).truncated(N - 1), N - 1));
            CHECK(verify_symmetry(e, Y, N).ok);
            CHECK(in_span(e, Y, a.generators, N - 2));
            SymmetryCheck d0 = verify_symmetry(e, SymmetryGenerator{Jet::constant(Scalar(1), N), -e.p.coeff(0), "delta_0"}, N);
            CHECK_FALSE(d0.ok);
            CHECK(d0.residual > 0.0);
            // the residual starts where the resonance enters the coefficients
            REQUIRE(d0.first_degree);
            CHECK(*d0.first_degree == k);
        }
    }
    SUBCASE("nonsingular point") {
        SymmetryAlgebra a = symmetry_algebra(Lde::from_delta(0, Jet::constant(Scalar(1), N), Jet(0, N)), N);
        CHECK(a.case_label == "nonsingular");
        CHECK(a.dimension == 4);
    }
}

TEST_CASE("irregular singularities") {
    SUBCASE("2a: formal normal form") {
        for (int nu = 1; nu <= 2; ++nu) {
            Jet l1 = poly({q(-1, 2), q(1, 3)}, nu);
            if (nu == 2) l1.set(2, Scalar(0, 1));
            Jet l2 = l1 + Jet::constant(Scalar(1), nu) + Jet::monomial(q(2, 5), nu, nu);
            Lde e = normal_form_from_lambdas(nu, l1, l2, N);
            SymmetryAlgebra a = symmetry_algebra(e, N);
            CHECK(a.case_label == "2a");
            CHECK(a.dimension == 2);
            const SymmetryGenerator& Y = a.generators.back();
            CHECK(verify_symmetry(e, Y, N - 2).ok);
            // h = 1/(lambda2 - lambda1) and the scaling part is h (lambda1 + lambda2)/2 up to y d/dy
            Jet d = Jet::constant(Scalar(1), N) + Jet::monomial(q(2, 5), nu, N);
            CHECK(Y.h.agrees_with(inverse(d), N - 1));
        }
    }
    SUBCASE("2a/2b for the reducible rank-1 family") {
        for (auto [mu, label] : {std::pair{q(1, 4), "2b"}, std::pair{q(1, 3), "2b"}, std::pair{q(-1), "2a"},
                                 std::pair{q(0), "2a"}}) {
            Lde e = Lde::from_factored(1, Jet(0, N), poly({1, mu}, N));
            SymmetryAlgebra a = symmetry_algebra(e, N);
            CHECK(a.case_label == std::string(label));
            CHECK(a.dimension == (std::string(label) == "2a" ? 2 : 1));
            for (const auto& g : a.generators) CHECK(verify_symmetry(e, g, N - 3).ok);
        }
    }
    SUBCASE("2b from the trace invariant") {
        Lde e = Lde::from_delta(1, poly({1, q(1, 3)}, N), poly({0, q(1, 5), q(2, 7)}, N));
        SymmetryAlgebra a = symmetry_algebra(e, N);
        CHECK(a.case_label == "2b");
        CHECK(a.dimension == 1);
    }
    SUBCASE("Stokes data decide") {
        gen::Rng rng(6);
        Jet p = rng.jet(N), D = rng.jet(N);
        D.set(0, Scalar(1));
        Lde e = Lde::from_delta(2, p, q(1, 4) * (D - p * p + Scalar(2) * delta(p, 2)));
        CHECK_THROWS_AS(symmetry_algebra(e, N), UndecidableWithoutStokes);
        StokesCollection s;
        s.nu = 2;
        s.multipliers = {Scalar(0), Scalar(0), Scalar(0), Scalar(0)};
        SymmetryAlgebra a = symmetry_algebra(e, N, s);
        CHECK(a.case_label == "2a");
        CHECK(a.dimension == 2);
        CHECK(verify_symmetry(e, a.generators.back(), N - 6).ok);
        s.multipliers[1] = q(1, 2);
        CHECK(symmetry_algebra(e, N, s).dimension == 1);
    }
    SUBCASE("3: resonant") {
        Lde e = resonant_normal_form(1, Jet(0, 1), N);
        SymmetryAlgebra a = symmetry_algebra(e, N);
        CHECK(a.case_label == "3");
        CHECK(a.dimension == 1);
    }
    SUBCASE("degenerate") {
        Lde deg = Lde::from_factored(2, Jet::constant(Scalar(1), N), poly({1, 1, 1, 1, -1, 1, -1}, N));
        CHECK_THROWS_AS(symmetry_algebra(deg, N), DegenerateInput);
    }
}

TEST_CASE("symmetry algebras are closed") {
    std::vector<Lde> fixtures = {regular_normal_diagonal(q(5, 2), q(1, 2), N), regular_normal_log(q(4, 3), q(1, 3), 1, N),
                                 normal_form_from_lambdas(1, poly({0, q(1, 2)}, 1), poly({1, q(1, 4)}, 1), N),
                                 Lde::from_delta(0, Jet::constant(Scalar(1), N), Jet(0, N))};
    for (const Lde& e : fixtures) {
        SymmetryAlgebra a = symmetry_algebra(e, N);
        for (const auto& y1 : a.generators)
            for (const auto& y2 : a.generators) {
                SymmetryGenerator b = bracket(e, y1, y2);
                CHECK(verify_symmetry(e, b, N - 4).ok);
                CHECK(in_span(e, b, a.generators, N - 4));
            }
    }
}

TEST_CASE("generators pull back along transformations") {
    gen::Rng rng(19);
    for (int trial = 0; trial < 6; ++trial) {
        int nu = trial % 2;
        Lde target = nu == 0 ? regular_normal_diagonal(q(5, 2), q(1, 2), N + 4)
                             : normal_form_from_lambdas(1, poly({0, q(1, 2)}, 1), poly({1, q(1, 4)}, 1), N + 4);
        PointTransformation T = rng.transformation(N + 4);
        if (nu == 0) T.shift = static_cast<int>(rng.range(-2, 2));
        Lde e = apply_transformation(target, T);
        for (const auto& Y : symmetry_algebra(target, N + 4).generators) {
            SymmetryGenerator P = pull_back_generator(target, Y, T);
            CHECK(verify_symmetry(e, P, N - 4).ok);
        }
    }
}
