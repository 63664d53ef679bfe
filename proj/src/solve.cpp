#include <algorithm>

#include "lode/errors.hpp"
#include "lode/jet.hpp"

namespace lode {

namespace {

Jet extend(const Jet& g, int order) {
    if (g.order() >= order) return g;
    Jet r(g.low(), order);
    for (int k = g.low(); k <= g.order(); ++k) r.set(k, g.coeff(k));
    return r;
}

}  // namespace

Jet jet_newton_solve(const std::function<Jet(const Jet&)>& F, const Scalar& g0, int N) {
    const double tol = 1e-12;
    Jet g = Jet::constant(g0, N);
    Jet base = F(g);
    if (!negligible(base.coeff(0), tol)) throw NoRootAtOrigin("F(g0) = " + base.coeff(0).str());
    Jet probe = g + Jet::monomial(Scalar(1), 1, N);
    Scalar J = (F(probe) - base).coeff(1);
    if (negligible(J, tol)) throw SingularJacobian("dF/dg vanishes at the origin");
    Scalar Jinv = Scalar(1) / J;
    for (int pass = 0; pass <= N; ++pass) {
        Jet r = F(g);
        if (r.order() < N) throw OrderExhausted("F lost order during Newton iteration");
        r = r.truncated(N);
        if (r.is_zero()) break;
        g = g - r * Jinv;
        g.set(0, g0);
    }
    Jet r = F(g).truncated(N);
    for (int k = r.low(); k <= N; ++k)
        if (!negligible(r.coeff(k), tol * std::max(1.0, std::abs(g.coeff(std::max(k, 0)).value()))))
            throw ResidualTooLarge("Newton residual at degree " + std::to_string(k) + " is " + r.coeff(k).str());
    return g;
}

DegreeSolve solve_by_degree(const std::function<Jet(const Jet&)>& F, const Jet& init, int first, int last, int shift,
                            const std::function<Scalar(int)>& free_value, const std::function<int(int)>& order_hint,
                            double tol) {
    DegreeSolve out;
    Jet g = extend(init, last);
    auto eval_at = [&](const Jet& h, int k) {
        int t = order_hint ? std::max(k, order_hint(k)) : h.order();
        Jet r = F(h.truncated(t));
        if (r.order() < k + shift) r = F(h);
        return r.coeff(k + shift);
    };
    for (int k = first; k <= last; ++k) {
        Scalar r = eval_at(g, k);
        Jet probe = g;
        probe.set(k, g.coeff(k) + Scalar(1));
        Scalar L = eval_at(probe, k) - r;
        if (negligible(L, tol)) {
            out.free_degrees.push_back(k);
            g.set(k, free_value ? free_value(k) : Scalar(0));
            Scalar res = eval_at(g, k);
            if (!negligible(res, tol)) {
                out.ok = false;
                out.failed_degree = k;
                out.obstruction = res;
                out.solution = g;
                return out;
            }
            continue;
        }
        g.set(k, g.coeff(k) - r / L);
    }
    out.solution = g;
    return out;
}

}  // namespace lode
