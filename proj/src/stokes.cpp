#include "lode/stokes.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lode/errors.hpp"

namespace lode {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

// exp(sign * 2 pi i mu k), exact when mu k is an integer or half-integer.
Scalar turn_factor(const Scalar& mu, long k, int sign) {
    Scalar a = mu * Scalar(k) * Scalar(sign);
    if (a.exact()) {
        Scalar twice = a * Scalar(2);
        if (auto n = twice.as_integer()) return (*n % 2 == 0) ? Scalar(1) : Scalar(-1);
    }
    return Scalar(std::exp(2.0 * kPi * kI * a.value()));
}

bool scalars_match(const Scalar& a, const Scalar& b, double tol) {
    if (a.exact() && b.exact()) return a == b;
    return std::abs(a.value() - b.value()) <= tol * std::max(1.0, std::abs(b.value()));
}

using Poly = std::vector<cplx>;

cplx horner(const Poly& c, cplx x) {
    cplx v = 0.0;
    for (size_t k = c.size(); k-- > 0;) v = v * x + c[k];
    return v;
}

// Coefficients in tau of c(a + d tau), truncated to K + 1 terms.
Poly rebase(const Poly& c, cplx a, cplx d, int K) {
    Poly out(static_cast<size_t>(K + 1), 0.0);
    for (size_t k = c.size(); k-- > 0;) {
        // out = out * (a + d tau) + c_k
        for (size_t j = out.size(); j-- > 0;) out[j] = out[j] * a + (j > 0 ? out[j - 1] * d : 0.0);
        out[0] += c[k];
    }
    return out;
}

Poly series_divide(const Poly& num, const Poly& den) {
    Poly out(num.size(), 0.0);
    for (size_t k = 0; k < num.size(); ++k) {
        cplx s = num[k];
        for (size_t j = 1; j <= k && j < den.size(); ++j) s -= den[j] * out[k - j];
        out[k] = s / den[0];
    }
    return out;
}

Matrix2 mat_zero() { return Matrix2{{{0.0, 0.0}, {0.0, 0.0}}}; }
Matrix2 mat_identity() { return Matrix2{{{1.0, 0.0}, {0.0, 1.0}}}; }

Matrix2 mat_mul(const Matrix2& a, const Matrix2& b) {
    Matrix2 r = mat_zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

double mat_norm(const Matrix2& a) {
    double n = 0.0;
    for (const auto& row : a)
        for (cplx v : row) n = std::max(n, std::abs(v));
    return n;
}

// Transfer matrix of w(tau) dV/dtau = d A(tau) V from tau = 0 to 1 with V(0) = I,
// where x = a + d tau and w = x^{nu+1}.
Matrix2 chord(const CoefficientFunctions& f, cplx a, cplx d, int min_terms) {
    const int K = 4 * min_terms;
    Poly P = series_divide(rebase(f.p_num, a, d, K), rebase(f.p_den, a, d, K));
    Poly Q = series_divide(rebase(f.q_num, a, d, K), rebase(f.q_den, a, d, K));
    Poly one(static_cast<size_t>(f.nu + 2), 0.0);
    one.back() = 1.0;
    Poly w = rebase(one, a, d, std::min(K, f.nu + 1));
    std::vector<Matrix2> v{mat_identity()};
    Matrix2 sum = v[0];
    int small_run = 0;
    for (int k = 0; k < K; ++k) {
        Matrix2 acc = mat_zero();
        for (int j = 0; j <= k; ++j) {
            const Matrix2& vk = v[static_cast<size_t>(k - j)];
            Matrix2 Aj{{{0.0, j == 0 ? 1.0 : 0.0}, {Q[static_cast<size_t>(j)], P[static_cast<size_t>(j)]}}};
            Matrix2 t = mat_mul(Aj, vk);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) acc[r][c] += d * t[r][c];
        }
        for (int j = 1; j <= std::min(k + 1, f.nu + 1); ++j) {
            const Matrix2& vk = v[static_cast<size_t>(k + 1 - j)];
            double m = static_cast<double>(k + 1 - j);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) acc[r][c] -= w[static_cast<size_t>(j)] * m * vk[r][c];
        }
        cplx scale = 1.0 / (w[0] * static_cast<double>(k + 1));
        for (auto& row : acc)
            for (cplx& x : row) x *= scale;
        v.push_back(acc);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) sum[r][c] += acc[r][c];
        double n = mat_norm(acc);
        small_run = (n <= 1e-17 * std::max(1.0, mat_norm(sum))) ? small_run + 1 : 0;
        if (k + 1 >= min_terms && small_run >= 3) break;
    }
    return sum;
}

int winding_number(const Poly& den, double radius, double& min_abs) {
    const int samples = 4096;
    double total = 0.0;
    cplx prev = horner(den, radius);
    min_abs = std::abs(prev);
    for (int s = 1; s <= samples; ++s) {
        cplx x = std::polar(radius, 2.0 * kPi * s / samples);
        cplx cur = horner(den, x);
        min_abs = std::min(min_abs, std::abs(cur));
        total += std::arg(cur / prev);
        prev = cur;
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

Poly jet_poly(const Jet& j) {
    Poly out;
    for (int k = 0; k <= j.order(); ++k) out.push_back(j.coeff(k).value());
    if (out.empty()) out.push_back(0.0);
    return out;
}

}  // namespace

const char* type_name(StokesType t) {
    return t == StokesType::TRANSLATION ? "TRANSLATION" : "MOEBIUS_FLAT";
}

Scalar StokesCollection::multiplier(long l) const {
    const long n = count();
    if (n == 0) throw DegenerateInput("empty Stokes collection");
    long k = l >= 0 ? l / n : -((-l + n - 1) / n);
    long r = l - k * n;
    const Scalar& s = multipliers[static_cast<size_t>(r)];
    if (variant == StokesVariant::RES_NONDEG || k == 0) return s;
    return s * turn_factor(mu, k, type(l) == StokesType::TRANSLATION ? 1 : -1);
}

bool StokesCollection::all_zero(double tol) const {
    return std::all_of(multipliers.begin(), multipliers.end(), [&](const Scalar& s) { return negligible(s, tol); });
}

std::optional<StokesWitness> stokes_equivalent(const StokesCollection& a, const StokesCollection& b,
                                               int stabilizer_step, double tol) {
    const int n = a.count();
    if (n != b.count() || a.variant != b.variant || n == 0) return std::nullopt;
    const bool resonant = a.variant == StokesVariant::RES_NONDEG;
    const int step = std::max(1, stabilizer_step);
    for (int g = 0; g < n; g += step) {
        std::optional<Scalar> c;
        if (resonant) c = Scalar(1);
        bool ok = true;
        for (int l = 0; l < n && ok; ++l) {
            Scalar s = a.multiplier(l + g), sp = b.multiplier(l);
            bool zs = negligible(s, tol), zp = negligible(sp, tol);
            if (zs != zp) ok = false;
            if (zs || !ok) continue;
            // odd: s' = s / c, even: s' = c s
            Scalar need = (StokesCollection::type(l + g) == StokesType::TRANSLATION) ? s / sp : sp / s;
            if (!c)
                c = need;
            else if (!scalars_match(need, *c, tol))
                ok = false;
        }
        if (ok) return StokesWitness{c.value_or(Scalar(1)), g};
    }
    return std::nullopt;
}

CoefficientFunctions CoefficientFunctions::from_lde(const Lde& e) {
    CoefficientFunctions f;
    f.nu = e.nu;
    f.p_num = jet_poly(e.p);
    f.q_num = jet_poly(e.q);
    return f;
}

Matrix2 numeric_monodromy(const CoefficientFunctions& f, double radius, int steps, double tol, int taylor_order) {
    if (!(radius > 0.0)) throw PoleOnPath("the integration radius must be positive");
    for (const Poly* den : {&f.p_den, &f.q_den}) {
        double min_abs = 0.0;
        int wn = winding_number(*den, radius, min_abs);
        double scale = 0.0;
        for (cplx c : *den) scale = std::max(scale, std::abs(c));
        if (min_abs <= 1e-12 * std::max(1.0, scale)) throw PoleOnPath("a coefficient has a pole on |x| = radius");
        if (wn != 0) throw PoleOnPath("a coefficient has a pole inside |x| = radius other than the origin");
    }
    auto run = [&](int n) {
        Matrix2 V = mat_identity();
        for (int s = 0; s < n; ++s) {
            cplx a = std::polar(radius, 2.0 * kPi * s / n);
            cplx b = std::polar(radius, 2.0 * kPi * (s + 1) / n);
            V = mat_mul(chord(f, a, b - a, taylor_order), V);
        }
        return V;
    };
    int n = std::max(8, steps);
    Matrix2 prev = run(n);
    while (n < (1 << 15)) {
        n *= 2;
        Matrix2 cur = run(n);
        Matrix2 diff = cur;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) diff[r][c] -= prev[r][c];
        if (std::isfinite(mat_norm(cur)) && mat_norm(diff) <= tol * std::max(1.0, mat_norm(cur))) return cur;
        prev = cur;
    }
    throw ToleranceNotMet("monodromy did not settle within 32768 steps");
}

Matrix2 numeric_monodromy(const Lde& e, double radius, int steps, double tol, int taylor_order) {
    return numeric_monodromy(CoefficientFunctions::from_lde(e), radius, steps, tol, taylor_order);
}

cplx stokes_product_from_trace(cplx mu, cplx p1, cplx tr_M) {
    return std::exp(-kI * kPi * mu) * (std::exp(-kI * kPi * p1) * tr_M - 2.0 * std::cos(kPi * mu));
}

cplx stokes_product_closed_form(cplx mu, cplx delta2) {
    cplx r = std::sqrt(delta2 + 1.0);
    return -4.0 * std::exp(-kI * kPi * mu) * std::cos(kPi * (mu + r) / 2.0) * std::cos(kPi * (mu - r) / 2.0);
}

Nu1Invariants nu1_invariants(const CoefficientFunctions& f, const Lde& e, double radius, double tol) {
    if (e.nu != 1) throw DegenerateInput("the trace invariant needs Poincare rank 1");
    Nu1Invariants out;
    out.formal = formal_invariants(e);
    if (out.formal.kind == InvariantKind::REGULAR) throw DegenerateInput("the trace invariant needs rank 1");
    out.mu = out.formal.mu;
    out.p1 = out.formal.P.coeff(1);
    out.M = numeric_monodromy(f, radius, 16, tol);
    out.det_M = out.M[0][0] * out.M[1][1] - out.M[0][1] * out.M[1][0];
    out.tr_M = out.M[0][0] + out.M[1][1];
    const cplx p1 = out.p1.value();
    out.cos_invariant = 0.5 * std::exp(-kI * kPi * (p1 - 1.0)) * out.tr_M;
    out.s0_s_pi = stokes_product_from_trace(out.mu.value(), p1, out.tr_M);
    return out;
}

Nu1Invariants nu1_invariants(const Lde& e, double radius, double tol) {
    return nu1_invariants(CoefficientFunctions::from_lde(e), e, radius, tol);
}

Nu1Verdict nu1_equivalent(const Nu1Invariants& a, const Nu1Invariants& b, double tol) {
    if (!same_invariants(a.formal, b.formal, tol)) return Nu1Verdict::NOT_EQUIVALENT;
    if (std::abs(a.cos_invariant - b.cos_invariant) > tol * std::max(1.0, std::abs(a.cos_invariant)))
        return Nu1Verdict::NOT_EQUIVALENT;
    if (a.formal.kind == InvariantKind::RES_NONDEG) return Nu1Verdict::EQUIVALENT;
    if (std::abs(a.s0_s_pi) <= tol || std::abs(b.s0_s_pi) <= tol) return Nu1Verdict::UNDECIDED;
    return Nu1Verdict::EQUIVALENT;
}

// Lanczos, g = 7, n = 9.
cplx complex_gamma(cplx z) {
    static const double coef[9] = {0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
                                   771.32342877765313,      -176.61502916214059,   12.507343278686905,
                                   -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * complex_gamma(1.0 - z));
    z -= 1.0;
    cplx x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (z + static_cast<double>(i));
    cplx t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cplx reciprocal_gamma(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) return 0.0;
    if (z.real() < 0.5) return std::sin(kPi * z) * complex_gamma(1.0 - z) / kPi;
    return 1.0 / complex_gamma(z);
}

cplx gamma_stokes(cplx mu, LaplaceFamily family) {
    const cplx pref = 2.0 * kPi * kI * std::exp(kI * kPi * mu);
    if (family == LaplaceFamily::R_ONE) return pref * reciprocal_gamma(mu);
    cplx sum = 0.0;
    double fact = 1.0;
    for (int j = 0; j < 200; ++j) {
        if (j > 0) fact *= j;
        cplx term = reciprocal_gamma(mu + static_cast<double>(j)) / fact;
        sum += term;
        if (j > 4 && std::abs(term) <= 1e-17 * std::max(1.0, std::abs(sum))) break;
    }
    return pref * sum;
}

cplx laplace_stokes_quadrature(cplx mu, const Jet& R, double tol) {
    if (mu.real() >= 1.0) throw DivergentTerm("the Laplace integral diverges at 0 for Re mu >= 1");
    const cplx pref = std::exp(2.0 * kPi * kI * mu) - 1.0;
    boost::math::quadrature::exp_sinh<double> integrator;
    const double inf = std::numeric_limits<double>::infinity();
    cplx total = 0.0;
    for (int j = std::max(0, R.low()); j <= R.order(); ++j) {
        cplx Rj = R.coeff(j).value();
        if (Rj == 0.0) continue;
        // R(1/s) contributes R_j s^{-j}
        const cplx a = -mu - static_cast<double>(j);
        if (a.real() > -1.0) {
            const double alpha = a.real(), beta = a.imag();
            auto re = [&](double s) { return std::exp(-s + alpha * std::log(s)) * std::cos(beta * std::log(s)); };
            auto im = [&](double s) { return std::exp(-s + alpha * std::log(s)) * std::sin(beta * std::log(s)); };
            double I_re = integrator.integrate(re, 0.0, inf, tol);
            double I_im = beta == 0.0 ? 0.0 : integrator.integrate(im, 0.0, inf, tol);
            total += pref * Rj * cplx(I_re, I_im);
        } else {
            // (e^{2 pi i mu} - 1) Gamma(1 - mu - j) continued, via the reflection formula
            double sign = (j % 2 == 0) ? 1.0 : -1.0;
            total += Rj * 2.0 * kPi * kI * std::exp(kI * kPi * mu) * sign * reciprocal_gamma(mu + static_cast<double>(j));
        }
    }
    return total;
}

cplx laplace_stokes_series(cplx mu, const Jet& R) {
    const cplx pref = 2.0 * kPi * kI * std::exp(kI * kPi * mu);
    cplx total = 0.0;
    for (int j = std::max(0, R.low()); j <= R.order(); ++j) {
        double sign = (j % 2 == 0) ? 1.0 : -1.0;
        total += R.coeff(j).value() * sign * reciprocal_gamma(mu + static_cast<double>(j));
    }
    return pref * total;
}

StokesCollection example1_stokes(const Scalar& c) {
    StokesCollection s;
    s.nu = 2;
    s.variant = StokesVariant::NONRES;
    s.mu = Scalar(0);
    s.multipliers = {Scalar(0), Scalar(cplx(0.0, 2.0 * kPi)) * c};
    return s;
}

Lde example1_equation(const Scalar& c, int N) {
    Jet one = Jet::constant(Scalar(1), N);
    Jet x = Jet::x(N);
    Jet tail = Jet::monomial(c, 3, N) * inverse(one + c * x);
    return Lde::from_factored(2, one, one + x + x * x + tail.truncated(N));
}

Example1Conjugation example1_conjugation(const Scalar& c, const Scalar& c_tilde, int N, bool analytic) {
    if (negligible(c, 0.0) || negligible(c_tilde, 0.0)) throw DegenerateInput("the example needs c, c_tilde != 0");
    Scalar ratio = c_tilde / c;
    Scalar g0(0);
    if (analytic && ratio != Scalar(1)) g0 = log(ratio.to_float());
    Jet x = Jet::x(N + 2);
    Jet rhs = (analytic ? ratio : Scalar(1)) * (Jet::constant(Scalar(1), N + 2) + c * x);
    auto F = [&](const Jet& g) {
        Jet xg = shift(g, 1);
        Jet w = inverse(xg + Scalar(1));
        Jet phi = x.truncated(xg.order() + 1) + shift(g, 2);
        return exp(g * w) * (Scalar(1) + c_tilde * phi) * derivative(phi) * w * w - rhs;
    };
    DegreeSolve s = solve_by_degree(F, Jet::constant(g0, N), 1, N, 0, nullptr, nullptr, 1e-12);
    if (!s.ok) throw ResidualTooLarge("conjugation series failed at degree " + std::to_string(s.failed_degree));
    Example1Conjugation out;
    out.g = s.solution;
    out.phi = Jet::x(N + 2) + shift(out.g, 2);
    Jet w = inverse(shift(out.g, 1) + Scalar(1));
    out.log_t = shift(Scalar(mpq_class(1, 2)) * (w * w - Scalar(1)), -2);
    if (analytic) out.log_t = out.log_t - g0;
    out.obstruction = out.log_t.coeff(-1);
    return out;
}

}  // namespace lode
