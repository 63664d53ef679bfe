#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lode/scalar.hpp"

namespace lode {

/// Truncated Laurent series sum_{k=low}^{order} c_k x^k, known exactly up to
/// and including `order`. Every operation tracks how far its result is valid.
class Jet {
public:
    Jet() : Jet(0, 0) {}
    /// Zero jet valid through `order`.
    Jet(int low, int order);
    /// Coefficients c_low, c_low+1, ... ; order = low + size - 1.
    Jet(int low, std::vector<Scalar> coeffs);
    /// Constant jet valid through `order`.
    static Jet constant(const Scalar& c, int order);
    /// c x^k valid through `order`.
    static Jet monomial(const Scalar& c, int k, int order);
    /// The identity x valid through `order`.
    static Jet x(int order) { return monomial(Scalar(1), 1, order); }

    int low() const { return low_; }
    int order() const { return order_; }
    /// Index of the first nonzero coefficient; order + 1 for a zero jet.
    int valuation() const;
    bool is_zero() const { return valuation() > order_; }
    bool exact() const;

    /// Coefficient of x^k. Throws OrderExhausted beyond the order.
    Scalar coeff(int k) const;
    void set(int k, const Scalar& v);
    Scalar operator[](int k) const { return coeff(k); }

    Jet truncated(int order) const;
    Jet to_float() const;
    /// Degree k part only: sum_{j <= k}.
    std::vector<Scalar> coefficients(int from, int to) const;

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Scalar& s);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator*(Jet a, const Scalar& s) { return a *= s; }
    friend Jet operator*(const Scalar& s, Jet a) { return a *= s; }
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator+(Jet a, const Scalar& s);
    friend Jet operator-(Jet a, const Scalar& s) { return a + (-s); }
    friend Jet operator+(const Scalar& s, Jet a) { return a + s; }
    friend Jet operator-(const Scalar& s, const Jet& a) { return (-a) + s; }

    /// Exact coefficient-wise equality up to the smaller order.
    bool agrees_with(const Jet& o, int up_to) const;
    bool near(const Jet& o, int up_to, double tol) const;

    std::string str() const;

private:
    void normalize();
    int low_;
    int order_;
    std::vector<Scalar> c_;
};

/// x^k f, exact.
Jet shift(const Jet& f, int k);
/// 1/g; order drops to order(g) - 2 val(g).
Jet inverse(const Jet& g);
/// f(g(x)) for g with positive valuation.
Jet compose(const Jet& f, const Jet& g);
/// Compositional inverse of f = c1 x + ... with c1 != 0.
Jet reverse(const Jet& f);
Jet pow_int(const Jet& f, int n);
Jet exp(const Jet& f);
Jet log(const Jet& f);
Jet sqrt(const Jet& f);
/// f^alpha for f(0) != 0 with principal branch at the constant term.
Jet pow(const Jet& f, const Scalar& alpha);
/// d/dx.
Jet derivative(const Jet& f);
/// Antiderivative with zero constant; needs a vanishing residue.
Jet integral(const Jet& f);
/// delta_nu = x^{nu+1} d/dx.
Jet delta(const Jet& f, int nu);
/// Right inverse of delta_nu: x^j -> x^{j-nu}/(j-nu); needs coeff(nu) = 0.
Jet delta_inverse(const Jet& f, int nu);
/// delta_nu f / f.
Jet log_derivative(const Jet& f, int nu);

/// Newton iteration for F(g) = 0 with g(0) = g0, a series solution to order N.
/// J is read off from F(g0 + x) - F(g0). Throws NoRootAtOrigin, SingularJacobian.
Jet jet_newton_solve(const std::function<Jet(const Jet&)>& F, const Scalar& g0, int N);

/// Outcome of a degree-by-degree solve.
struct DegreeSolve {
    bool ok = true;
    Jet solution;
    int failed_degree = -1;
    Scalar obstruction;
    std::vector<int> free_degrees;
};

/// Solves F(g) = 0 one coefficient at a time for degrees first..last, starting
/// from `init`. The coefficient of g at degree k enters F first at degree
/// k + shift. Where that linear coefficient vanishes, the degree is free and
/// takes `free_value`; a nonzero residual there is reported as an obstruction.
/// `order_hint(k)` (optional) gives the truncation of g sufficient to read F at
/// degree k + shift.
DegreeSolve solve_by_degree(const std::function<Jet(const Jet&)>& F, const Jet& init, int first, int last,
                            int shift, const std::function<Scalar(int)>& free_value,
                            const std::function<int(int)>& order_hint = nullptr, double tol = 0.0);

}  // namespace lode
