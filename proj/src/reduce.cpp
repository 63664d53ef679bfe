#include "lode/reduce.hpp"

#include "lode/classify.hpp"
#include "lode/errors.hpp"

namespace lode {

namespace {

const Scalar kHalf(mpq_class(1, 2));

bool is_negligible(const Scalar& s, double tol) { return s.exact() ? s.is_zero() : s.near_zero(tol); }

// Null space of a dense matrix (rows x cols) by Gauss-Jordan elimination.
std::vector<std::vector<Scalar>> null_space(std::vector<std::vector<Scalar>> A, size_t cols, double tol) {
    std::vector<int> pivot_col;
    size_t row = 0;
    for (size_t c = 0; c < cols && row < A.size(); ++c) {
        size_t best = A.size();
        double best_abs = 0.0;
        for (size_t r = row; r < A.size(); ++r) {
            if (is_negligible(A[r][c], tol)) continue;
            double a = std::abs(A[r][c].value());
            if (best == A.size() || (!A[r][c].exact() && a > best_abs)) {
                best = r;
                best_abs = a;
                if (A[r][c].exact()) break;
            }
        }
        if (best == A.size()) continue;
        std::swap(A[row], A[best]);
        Scalar inv = Scalar(1) / A[row][c];
        for (size_t k = c; k < cols; ++k) A[row][k] *= inv;
        for (size_t r = 0; r < A.size(); ++r) {
            if (r == row || A[r][c].is_zero()) continue;
            Scalar f = A[r][c];
            for (size_t k = c; k < cols; ++k)
                if (!A[row][k].is_zero()) A[r][k] -= f * A[row][k];
            A[r][c] = Scalar(0);
        }
        pivot_col.push_back(static_cast<int>(c));
        ++row;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<Scalar>> basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(cols, Scalar(0));
        v[f] = Scalar(1);
        for (size_t r = 0; r < pivot_col.size(); ++r) v[static_cast<size_t>(pivot_col[r])] = -A[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

const char* verdict_name(ReducibilityVerdict v) {
    switch (v) {
        case ReducibilityVerdict::UNKNOWN: return "UNKNOWN";
        case ReducibilityVerdict::IRREDUCIBLE: return "IRREDUCIBLE";
        case ReducibilityVerdict::REDUCIBLE: return "REDUCIBLE";
        case ReducibilityVerdict::NORMAL_FORM_EQUIVALENT: return "NORMAL_FORM_EQUIVALENT";
    }
    return "?";
}

Jet riccati_residual(const Lde& e, const Jet& r) {
    return Scalar(2) * delta(r, e.nu) - r * r + e.discriminant();
}

RiccatiSolution riccati_formal(const Lde& e, int sign, int N, double tol) {
    Jet D = e.discriminant();
    N = std::min(N, D.order());
    RiccatiSolution out;
    out.sign = sign >= 0 ? 1 : -1;
    Scalar r0 = sqrt(D.coeff(0));
    if (out.sign < 0) r0 = -r0;
    if (e.nu > 0 && is_negligible(r0, tol))
        throw DegenerateInput("the Riccati equation needs Delta(0) != 0 when nu > 0");
    auto F = [&](const Jet& r) { return Scalar(2) * delta(r, e.nu) - r * r + D.truncated(r.order()); };
    DegreeSolve s = solve_by_degree(F, Jet::constant(r0, N), 1, N, 0, nullptr, nullptr, tol);
    if (!s.ok)
        throw ResonantObstruction("Riccati equation obstructed at degree " + std::to_string(s.failed_degree) + ": " +
                                  s.obstruction.str());
    out.r = s.solution;
    return out;
}

Lde expand(const Factorization& f, int nu) {
    Lde e;
    e.nu = nu;
    e.p = f.alpha1 + f.alpha2;
    e.q = delta(f.alpha1, nu) - f.alpha1 * f.alpha2;
    int n = std::min(e.p.order(), e.q.order());
    e.p = e.p.truncated(n);
    e.q = e.q.truncated(n);
    return e;
}

Factorization factor(const Lde& e, const RiccatiSolution& r, double tol) {
    Factorization f;
    f.alpha1 = kHalf * (e.p - r.r);
    f.alpha2 = kHalf * (e.p + r.r);
    Lde back = expand(f, e.nu);
    int n = std::min(back.order(), e.order());
    Jet dp = (back.p - e.p).truncated(n), dq = (back.q - e.q).truncated(n);
    for (int k = 0; k <= n; ++k)
        if (!is_negligible(dp.coeff(k), tol) || !is_negligible(dq.coeff(k), tol))
            throw ResidualTooLarge("factorization does not reproduce the equation at degree " + std::to_string(k));
    return f;
}

Jet symmetric_power_residual(const Lde& e, const Jet& h) {
    const int nu = e.nu;
    Jet D = e.discriminant();
    Jet dh = delta(h, nu);
    return delta(delta(dh, nu), nu) - D * dh - kHalf * (delta(D, nu) * h);
}

Jet symmetric_factorized_residual(const Jet& r, const Jet& h, int nu) {
    Jet inner = delta(h, nu) + r * h;
    Jet mid = delta(inner, nu);
    return delta(mid, nu) - r * mid;
}

std::vector<Jet> symmetric_power_kernel(const Lde& e, int N, double tol, int lowest) {
    const int nu = e.nu;
    const int K = std::min(N, e.discriminant().order());
    const size_t cols = static_cast<size_t>(K - lowest + 1);
    // column j - lowest holds the image of x^j, read at degrees lowest..K+nu
    std::vector<std::vector<Scalar>> A(static_cast<size_t>(K + nu - lowest + 1), std::vector<Scalar>(cols, Scalar(0)));
    for (int j = lowest; j <= K; ++j) {
        Jet img = symmetric_power_residual(e, Jet::monomial(Scalar(1), j, K));
        for (int d = lowest; d <= K + nu && d <= img.order(); ++d)
            A[static_cast<size_t>(d - lowest)][static_cast<size_t>(j - lowest)] = img.coeff(d);
    }
    std::vector<Jet> out;
    for (auto& v : null_space(std::move(A), cols, tol)) out.emplace_back(lowest, std::move(v));
    return out;
}

ReducibilityReport reducibility_report(const Lde& e, const std::optional<StokesCollection>& stokes, int N,
                                       double tol) {
    SingularityClass cls = classify(e, tol);
    if (cls.kind != SingularityKind::IRREGULAR_NONRES)
        throw DegenerateInput(std::string("reducibility report needs a non-resonant irregular singularity, got ") +
                              kind_name(cls.kind));
    ReducibilityReport rep;
    rep.scope = stokes ? "ANALYTIC" : "FORMAL";
    rep.plus = riccati_formal(e, 1, N, tol);
    rep.minus = riccati_formal(e, -1, N, tol);
    auto vanishes = [&](const Jet& j, int upto) {
        for (int k = std::min(0, j.low()); k <= upto; ++k)
            if (!is_negligible(j.coeff(k), tol)) return false;
        return true;
    };
    int n = rep.plus.r.order();
    rep.riccati_residuals_vanish =
        vanishes(riccati_residual(e, rep.plus.r), n) && vanishes(riccati_residual(e, rep.minus.r), n);
    rep.kernel_dimension = static_cast<int>(symmetric_power_kernel(e, N, tol).size());
    rep.h = inverse(rep.plus.r - rep.minus.r);
    Jet res = symmetric_power_residual(e, rep.h);
    rep.h_in_kernel = vanishes(res, std::min(res.order(), rep.h.order() + e.nu));
    rep.notes.push_back("formal Riccati solutions exist for both signs; convergence is not decided at this level");
    if (!rep.riccati_residuals_vanish) rep.notes.push_back("Riccati residual check failed");
    if (!rep.h_in_kernel) rep.notes.push_back("h = 1/(r+ - r-) failed the symmetric power check");
    if (rep.kernel_dimension < 1) rep.notes.push_back("symmetric power kernel is unexpectedly empty");
    if (stokes) {
        if (stokes->count() % 2 != 0)
            throw DegenerateInput("non-resonant Stokes data needs an even number of multipliers");
        bool odd_zero = true, even_zero = true;
        for (int l = 0; l < stokes->count(); ++l) {
            bool z = stokes->multipliers[static_cast<size_t>(l)].near_zero(tol);
            (l % 2 ? odd_zero : even_zero) &= z;
        }
        if (odd_zero && even_zero)
            rep.verdict = ReducibilityVerdict::NORMAL_FORM_EQUIVALENT;
        else if (odd_zero || even_zero)
            rep.verdict = ReducibilityVerdict::REDUCIBLE;
        else
            rep.verdict = ReducibilityVerdict::IRREDUCIBLE;
    }
    return rep;
}

}  // namespace lode
