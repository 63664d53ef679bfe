#include "lode/regular.hpp"

#include <numbers>

#include "lode/errors.hpp"

namespace lode {

namespace {

Scalar indicial(const Scalar& s, const Scalar& p0, const Scalar& q0) { return s * s - p0 * s - q0; }

// sum_{j=1}^{n} (p_j (lambda + n - j) + q_j) c_{n-j}
Scalar recursion_rhs(const Lde& e, const Scalar& lambda, const std::vector<Scalar>& c, int n) {
    Scalar s(0);
    for (int j = 1; j <= n; ++j) {
        const Scalar& cj = c[static_cast<size_t>(n - j)];
        if (cj.is_zero()) continue;
        s += (e.p.coeff(j) * (lambda + Scalar(n - j)) + e.q.coeff(j)) * cj;
    }
    return s;
}

// Coefficient of x^{lambda1 + m} in 2 delta y1 - p y1.
Scalar log_source(const Lde& e, const Scalar& lambda1, const std::vector<Scalar>& a, int m) {
    if (m < 0) return Scalar(0);
    Scalar s = Scalar(2) * (lambda1 + Scalar(m)) * a[static_cast<size_t>(m)];
    for (int j = 0; j <= m; ++j) s -= e.p.coeff(j) * a[static_cast<size_t>(m - j)];
    return s;
}

Jet one_plus(const Jet& g) { return g + Scalar(1); }

}  // namespace

RegularData frobenius(const Lde& e, int N, double tol) {
    if (e.nu != 0) throw DegenerateInput("Frobenius data needs a regular singularity");
    N = std::min(N, e.order());
    const Scalar p0 = e.p.coeff(0), q0 = e.q.coeff(0);
    Scalar root = sqrt(p0 * p0 + Scalar(4) * q0);
    Scalar la = (p0 + root) / Scalar(2), lb = (p0 - root) / Scalar(2);
    RegularData d;
    if (compare_lex(la, lb, tol) >= 0) {
        d.lambda1 = la;
        d.lambda2 = lb;
    } else {
        d.lambda1 = lb;
        d.lambda2 = la;
    }
    Scalar diff = d.lambda1 - d.lambda2;
    if (auto k = diff.near_integer(tol); k && *k >= 0) d.k = *k;

    std::vector<Scalar> a(static_cast<size_t>(N + 1)), c(static_cast<size_t>(N + 1));
    a[0] = Scalar(1);
    for (int n = 1; n <= N; ++n)
        a[static_cast<size_t>(n)] = recursion_rhs(e, d.lambda1, a, n) / indicial(d.lambda1 + Scalar(n), p0, q0);

    const Scalar& l2 = d.lambda2;
    if (!d.k) {
        c[0] = Scalar(1);
        for (int n = 1; n <= N; ++n) c[static_cast<size_t>(n)] = recursion_rhs(e, l2, c, n) / indicial(l2 + Scalar(n), p0, q0);
    } else if (*d.k == 0) {
        d.epsilon = true;
        d.kappa = Scalar(1);
        c[0] = Scalar(0);
        for (int n = 1; n <= N; ++n)
            c[static_cast<size_t>(n)] = (recursion_rhs(e, l2, c, n) - log_source(e, d.lambda1, a, n)) /
                                        indicial(l2 + Scalar(n), p0, q0);
    } else {
        const int k = static_cast<int>(*d.k);
        c[0] = Scalar(1);
        for (int n = 1; n <= N; ++n) {
            Scalar R = recursion_rhs(e, l2, c, n);
            if (n < k) {
                c[static_cast<size_t>(n)] = R / indicial(l2 + Scalar(n), p0, q0);
            } else if (n == k) {
                if (!negligible(R, tol)) {
                    d.epsilon = true;
                    d.kappa = R / Scalar(k);
                }
                c[static_cast<size_t>(n)] = Scalar(0);
            } else {
                if (d.epsilon) R -= d.kappa * log_source(e, d.lambda1, a, n - k);
                c[static_cast<size_t>(n)] = R / indicial(l2 + Scalar(n), p0, q0);
            }
        }
        if (N < k) throw OrderExhausted("order " + std::to_string(N) + " does not reach the resonance at degree " +
                                        std::to_string(k));
    }
    d.T11 = Jet(0, std::move(a));
    d.T12 = Jet(0, std::move(c));
    return d;
}

MonodromyType monodromy_type(const RegularData& d) {
    return d.epsilon ? MonodromyType::NON_DIAGONALIZABLE : MonodromyType::DIAGONALIZABLE;
}

Matrix2 formal_monodromy(const RegularData& d) {
    const cplx two_pi_i(0.0, 2.0 * std::numbers::pi);
    cplx e1 = std::exp(two_pi_i * d.lambda1.value());
    cplx e2 = std::exp(two_pi_i * d.lambda2.value());
    Matrix2 M{};
    M[0][0] = e1;
    M[1][1] = e2;
    M[0][1] = d.epsilon ? two_pi_i * d.kappa.value() * e1 : cplx(0.0);
    return M;
}

Lde regular_normal_diagonal(const Scalar& lambda1, const Scalar& lambda2, int N) {
    return Lde::from_factored(0, Jet::constant(lambda1, N), Jet::constant(lambda2, N));
}

Lde regular_normal_equal(const Scalar& lambda, int N) { return regular_normal_diagonal(lambda, lambda, N); }

Lde regular_normal_log(const Scalar& lambda1, const Scalar& lambda2, int k, int N) {
    Jet geometric(0, N);  // x^k / (1 - x^k)
    for (int j = k; j <= N; j += k) geometric.set(j, Scalar(1));
    Jet a2 = Jet::constant(lambda2, N) - Scalar(k) * geometric;
    return Lde::from_factored(0, Jet::constant(lambda1, N), a2);
}

Lde regular_normal_log_polynomial(const Scalar& lambda1, const Scalar& lambda2, int k, int N) {
    Jet a2 = Jet::constant(lambda2, N) - Jet::monomial(Scalar(k), k, N);
    return Lde::from_factored(0, Jet::constant(lambda1, N), a2);
}

RegularReduction reduce_to_normal_form(const Lde& e, int N, double tol) {
    RegularReduction out;
    out.data = frobenius(e, N + 1, tol);
    const RegularData& d = out.data;
    const int M = d.T11.order();
    Jet ratio = d.T12 / d.T11;
    Jet g;
    Scalar c(1);
    if (!d.epsilon) {
        out.kind = RegularNormalKind::DIAGONAL;
        Jet target = log(ratio);
        Scalar gap = d.lambda2 - d.lambda1;
        g = jet_newton_solve([&](const Jet& h) { return gap * log(one_plus(h)) - target.truncated(h.order()); },
                             Scalar(0), M);
        out.normal_form = regular_normal_diagonal(d.lambda1, d.lambda2, N + 1);
    } else if (*d.k == 0) {
        out.kind = RegularNormalKind::EQUAL_EXPONENTS;
        g = exp(ratio) - Scalar(1);
        out.normal_form = regular_normal_equal(d.lambda1, N + 1);
    } else {
        out.kind = RegularNormalKind::LOGARITHMIC;
        const int k = static_cast<int>(*d.k);
        c = nth_root(d.kappa / Scalar(k), k);
        Jet xk = Jet::monomial(d.kappa, k, M);
        g = jet_newton_solve(
            [&](const Jet& h) {
                Jet u = one_plus(h);
                return pow_int(u, -k) + xk * log(u) - ratio.truncated(h.order());
            },
            Scalar(0), M);
        out.normal_form = regular_normal_log(d.lambda1, d.lambda2, k, N + 1);
    }
    Jet unit = one_plus(g);
    out.T.phi = shift(unit, 1) * c;
    out.T.t = inverse(d.T11 * pow(unit, -d.lambda1));
    return out;
}

bool regular_equivalent(const Lde& a, const Lde& b, int N, double tol) {
    RegularData da = frobenius(a, N, tol), db = frobenius(b, N, tol);
    return approx_equal(da.lambda1, db.lambda1, tol) && approx_equal(da.lambda2, db.lambda2, tol) &&
           da.epsilon == db.epsilon;
}

EquivalenceResult regular_formal_equivalence(const Lde& e1, const Lde& e2, int N, const Scalar& scale,
                                             bool meromorphic, double tol) {
    EquivalenceResult res;
    if (e1.nu != 0 || e2.nu != 0) {
        res.reason = "both equations must have a regular singularity";
        return res;
    }
    RegularReduction r1 = reduce_to_normal_form(e1, N, tol);
    RegularReduction r2 = reduce_to_normal_form(e2, N, tol);
    Scalar m_s = r2.data.lambda1 - r1.data.lambda1;
    auto m = m_s.near_integer(tol);
    if (!m || !approx_equal(r2.data.lambda2 - r1.data.lambda2, Scalar(*m), tol) ||
        !approx_equal(r1.data.lambda1 - r1.data.lambda2, r2.data.lambda1 - r2.data.lambda2, tol)) {
        res.reason = "exponent pairs differ";
        return res;
    }
    if (*m != 0 && !meromorphic) {
        res.reason = "exponents differ by the integer shift " + std::to_string(*m) + " (meromorphically equivalent)";
        return res;
    }
    if (r1.data.epsilon != r2.data.epsilon) {
        res.reason = "monodromy types differ";
        return res;
    }
    PointTransformation mid;
    const int M = std::min(r1.T.phi.order(), r2.T.phi.order());
    Scalar a = Scalar(1);
    if (!negligible(scale, tol) && r1.kind != RegularNormalKind::LOGARITHMIC) a = a + scale;
    mid.phi = Jet::monomial(a, 1, M);
    mid.t = Jet::constant(Scalar(1), M);
    mid.shift = static_cast<int>(*m);
    res.T = compose_transformations(invert_transformation(r2.T), compose_transformations(mid, r1.T));
    res.equivalent = true;
    return res;
}

}  // namespace lode
