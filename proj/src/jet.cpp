#include "lode/jet.hpp"

#include <algorithm>
#include <sstream>

#include "lode/errors.hpp"

namespace lode {

Jet::Jet(int low, int order) : low_(std::min({low, 0, order + 1})), order_(order) {
    c_.assign(static_cast<size_t>(order_ - low_ + 1), Scalar(0));
}

Jet::Jet(int low, std::vector<Scalar> coeffs) : low_(low), order_(low + static_cast<int>(coeffs.size()) - 1) {
    c_ = std::move(coeffs);
    if (low_ > 0) {
        c_.insert(c_.begin(), static_cast<size_t>(low_), Scalar(0));
        low_ = 0;
    }
    normalize();
}

Jet Jet::constant(const Scalar& c, int order) {
    Jet j(0, order);
    if (order >= 0) j.c_[0 - j.low_] = c;
    return j;
}

Jet Jet::monomial(const Scalar& c, int k, int order) {
    Jet j(std::min(k, 0), order);
    if (k <= order) j.set(k, c);
    return j;
}

void Jet::normalize() {
    int v = valuation();
    int new_low = std::min({0, v, order_ + 1});
    if (new_low > low_) {
        c_.erase(c_.begin(), c_.begin() + (new_low - low_));
        low_ = new_low;
    }
}

int Jet::valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return low_ + static_cast<int>(i);
    return order_ + 1;
}

bool Jet::exact() const {
    return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.exact(); });
}

Scalar Jet::coeff(int k) const {
    if (k > order_)
        throw OrderExhausted("coefficient " + std::to_string(k) + " requested from a jet of order " +
                             std::to_string(order_));
    if (k < low_) return Scalar(0);
    return c_[static_cast<size_t>(k - low_)];
}

void Jet::set(int k, const Scalar& v) {
    if (k > order_) throw OrderExhausted("cannot set coefficient beyond the order");
    if (k < low_) {
        c_.insert(c_.begin(), static_cast<size_t>(low_ - k), Scalar(0));
        low_ = k;
    }
    c_[static_cast<size_t>(k - low_)] = v;
}

Jet Jet::truncated(int order) const {
    if (order >= order_) return *this;
    Jet r(low_, order);
    for (int k = r.low_; k <= order; ++k) r.c_[static_cast<size_t>(k - r.low_)] = coeff(k);
    r.normalize();
    return r;
}

Jet Jet::to_float() const {
    Jet r = *this;
    for (auto& s : r.c_) s = s.to_float();
    return r;
}

std::vector<Scalar> Jet::coefficients(int from, int to) const {
    std::vector<Scalar> out;
    for (int k = from; k <= to; ++k) out.push_back(coeff(k));
    return out;
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (auto& s : r.c_) s = -s;
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    int order = std::min(order_, o.order_);
    int low = std::min(low_, o.low_);
    Jet r(low, order);
    for (int k = r.low_; k <= order; ++k) {
        Scalar s = k >= low_ ? c_[static_cast<size_t>(k - low_)] : Scalar(0);
        if (k >= o.low_) s += o.c_[static_cast<size_t>(k - o.low_)];
        r.c_[static_cast<size_t>(k - r.low_)] = std::move(s);
    }
    r.normalize();
    *this = std::move(r);
    return *this;
}

Jet& Jet::operator-=(const Jet& o) { return *this += -o; }

Jet& Jet::operator*=(const Scalar& s) {
    for (auto& c : c_) c *= s;
    normalize();
    return *this;
}

Jet operator+(Jet a, const Scalar& s) {
    if (a.order_ < 0) return a;
    a.set(0, a.coeff(0) + s);
    a.normalize();
    return a;
}

Jet operator*(const Jet& a, const Jet& b) {
    int va = a.valuation(), vb = b.valuation();
    int order = std::min(a.order_ + vb, b.order_ + va);
    Jet r(std::min(0, va + vb), order);
    for (int m = std::max(va + vb, r.low_); m <= order; ++m) {
        Scalar s(0);
        bool any = false;
        for (int i = va; i <= m - vb; ++i) {
            const Scalar& x = a.c_[static_cast<size_t>(i - a.low_)];
            if (x.is_zero()) continue;
            const Scalar& y = b.c_[static_cast<size_t>(m - i - b.low_)];
            if (y.is_zero()) continue;
            if (!any) {
                s = x * y;
                any = true;
            } else {
                s += x * y;
            }
        }
        r.c_[static_cast<size_t>(m - r.low_)] = std::move(s);
    }
    r.normalize();
    return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * inverse(b); }

bool Jet::agrees_with(const Jet& o, int up_to) const {
    if (order_ < up_to || o.order_ < up_to)
        throw OrderExhausted("comparison to order " + std::to_string(up_to) + " needs jets of that order");
    for (int k = std::min(low_, o.low_); k <= up_to; ++k)
        if (coeff(k) != o.coeff(k)) return false;
    return true;
}

bool Jet::near(const Jet& o, int up_to, double tol) const {
    if (order_ < up_to || o.order_ < up_to)
        throw OrderExhausted("comparison to order " + std::to_string(up_to) + " needs jets of that order");
    for (int k = std::min(low_, o.low_); k <= up_to; ++k)
        if (std::abs(coeff(k).value() - o.coeff(k).value()) > tol) return false;
    return true;
}

std::string Jet::str() const {
    std::ostringstream os;
    bool first = true;
    for (int k = low_; k <= order_; ++k) {
        Scalar c = coeff(k);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (k != 0) os << "x^" << k;
    }
    if (first) os << "0";
    os << " + O(x^" << order_ + 1 << ")";
    return os.str();
}

Jet shift(const Jet& f, int k) {
    Jet r(std::min(0, f.low() + k), f.order() + k);
    for (int j = f.low(); j <= f.order(); ++j) {
        Scalar c = f.coeff(j);
        if (!c.is_zero()) r.set(j + k, c);
    }
    return r;
}

Jet inverse(const Jet& g) {
    int v = g.valuation();
    int N = g.order();
    if (v > N) throw DivisionByZeroSeries("inverse of a jet that vanishes to its order " + std::to_string(N));
    int len = N - v + 1;
    std::vector<Scalar> u(static_cast<size_t>(len));
    for (int j = 0; j < len; ++j) u[static_cast<size_t>(j)] = g.coeff(v + j);
    Scalar inv0 = Scalar(1) / u[0];
    std::vector<Scalar> h(static_cast<size_t>(len));
    h[0] = inv0;
    for (int n = 1; n < len; ++n) {
        Scalar s(0);
        for (int j = 1; j <= n; ++j)
            if (!u[static_cast<size_t>(j)].is_zero()) s += u[static_cast<size_t>(j)] * h[static_cast<size_t>(n - j)];
        h[static_cast<size_t>(n)] = -(s * inv0);
    }
    return Jet(-v, std::move(h));
}

Jet compose(const Jet& f, const Jet& g) {
    for (int k = g.low(); k <= std::min(0, g.order()); ++k)
        if (!g.coeff(k).is_zero()) throw DegenerateInput("inner series of a composition must vanish at the origin");
    int vg = g.valuation();
    long cap_l = static_cast<long>(f.order() + 1) * vg - 1;
    int cap = static_cast<int>(std::min<long>(cap_l, 1 << 20));
    if (f.order() < 0) {
        // only a polar part is known; the unknown x^0 term limits the result to order -1
        cap = std::min(cap, -1);
    }
    Jet acc = Jet::constant(Scalar(0), cap);
    int top = f.order();
    if (top >= 0) {
        acc = Jet::constant(f.coeff(top), cap);
        for (int k = top - 1; k >= 0; --k) acc = acc * g + Jet::constant(f.coeff(k), cap);
    }
    if (f.low() < 0) {
        Jet w = inverse(g);
        Jet neg = Jet::constant(f.coeff(f.low()), cap);
        for (int k = f.low() + 1; k <= -1; ++k) neg = neg * w + Jet::constant(f.coeff(k), cap);
        neg = neg * w;
        acc += neg;
    }
    return acc.truncated(cap);
}

Jet reverse(const Jet& f) {
    int N = f.order();
    if (N < 1) throw OrderExhausted("reverse needs a jet of order >= 1");
    if (f.low() < 0 || !f.coeff(0).is_zero()) throw DegenerateInput("reverse needs f(0) = 0");
    Scalar c1 = f.coeff(1);
    if (c1.is_zero()) throw SingularJacobian("reverse needs f'(0) != 0");
    Jet g(0, 1);
    g.set(1, Scalar(1) / c1);
    for (int k = 2; k <= N; ++k) {
        Jet gk(0, k);
        for (int j = 1; j < k; ++j) gk.set(j, g.coeff(j));
        Jet h = compose(f.truncated(k), gk);
        gk.set(k, -(h.coeff(k) / c1));
        g = std::move(gk);
    }
    return g;
}

Jet pow_int(const Jet& f, int n) {
    if (n < 0) return inverse(pow_int(f, -n));
    Jet r = Jet::constant(Scalar(1), f.order() + std::max(0, (n - 1) * f.valuation()));
    Jet b = f;
    bool first = true;
    while (n) {
        if (n & 1) {
            r = first ? b : r * b;
            first = false;
        }
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

namespace {

void require_analytic(const Jet& f, const char* what) {
    for (int k = f.low(); k < 0; ++k)
        if (!f.coeff(k).is_zero()) throw EssentialSingularity(std::string(what) + " of a series with a pole");
}

}  // namespace

Jet exp(const Jet& f) {
    require_analytic(f, "exp");
    int N = f.order();
    if (N < 0) throw OrderExhausted("exp of an empty jet");
    Scalar f0 = f.coeff(0);
    Scalar e0 = exp(f0);
    std::vector<Scalar> E(static_cast<size_t>(N + 1));
    E[0] = Scalar(1);
    for (int n = 1; n <= N; ++n) {
        Scalar s(0);
        for (int k = 1; k <= n; ++k) {
            Scalar fk = f.coeff(k);
            if (!fk.is_zero()) s += Scalar(k) * fk * E[static_cast<size_t>(n - k)];
        }
        E[static_cast<size_t>(n)] = s / Scalar(n);
    }
    return Jet(0, std::move(E)) * e0;
}

Jet log(const Jet& f) {
    require_analytic(f, "log");
    int N = f.order();
    if (N < 0) throw OrderExhausted("log of an empty jet");
    Scalar f0 = f.coeff(0);
    if (f0.is_zero()) throw DivisionByZeroSeries("log of a series vanishing at the origin");
    Scalar l0 = log(f0);
    std::vector<Scalar> a(static_cast<size_t>(N + 1)), L(static_cast<size_t>(N + 1));
    for (int k = 0; k <= N; ++k) a[static_cast<size_t>(k)] = f.coeff(k) / f0;
    L[0] = l0;
    for (int n = 1; n <= N; ++n) {
        Scalar s(0);
        for (int k = 1; k < n; ++k)
            if (!a[static_cast<size_t>(n - k)].is_zero()) s += Scalar(k) * L[static_cast<size_t>(k)] * a[static_cast<size_t>(n - k)];
        L[static_cast<size_t>(n)] = a[static_cast<size_t>(n)] - s / Scalar(n);
    }
    return Jet(0, std::move(L));
}

namespace {

Scalar constant_power(const Scalar& f0, const Scalar& alpha) {
    if (auto n = alpha.as_integer()) return pow_int(f0, *n);
    if (f0 == Scalar(1)) return f0;
    if (f0.exact() && alpha.exact() && alpha.is_real()) {
        const mpq_class& a = alpha.re_q();
        if (a.get_den().fits_sint_p() && a.get_num().fits_slong_p()) {
            int q = static_cast<int>(a.get_den().get_si());
            Scalar r = nth_root(f0, q);
            return pow_int(r, a.get_num().get_si());
        }
    }
    if (f0.exact() && alpha.exact()) throw ExactnessRequired("power " + f0.str() + "^" + alpha.str());
    cplx v = f0.value();
    if (v.imag() == 0.0 && v.real() < 0.0 && !alpha.near_integer(0.0))
        throw BranchAmbiguity("non-integer power of a negative constant term");
    return Scalar(std::pow(v, alpha.value()));
}

}  // namespace

Jet pow(const Jet& f, const Scalar& alpha) {
    if (auto n = alpha.as_integer(); n && std::labs(*n) <= 64) return pow_int(f, static_cast<int>(*n));
    require_analytic(f, "pow");
    int v = f.valuation();
    if (v > f.order()) throw DivisionByZeroSeries("power of a zero jet");
    if (v != 0) throw EssentialSingularity("fractional power of a series vanishing at the origin");
    int N = f.order();
    Scalar f0 = f.coeff(0);
    Scalar c0 = constant_power(f0, alpha);
    std::vector<Scalar> a(static_cast<size_t>(N + 1)), P(static_cast<size_t>(N + 1));
    for (int k = 0; k <= N; ++k) a[static_cast<size_t>(k)] = f.coeff(k) / f0;
    P[0] = Scalar(1);
    for (int n = 1; n <= N; ++n) {
        Scalar s(0);
        for (int k = 1; k <= n; ++k) {
            const Scalar& ak = a[static_cast<size_t>(k)];
            if (ak.is_zero()) continue;
            s += (alpha * Scalar(k) - Scalar(n - k)) * ak * P[static_cast<size_t>(n - k)];
        }
        P[static_cast<size_t>(n)] = s / Scalar(n);
    }
    return Jet(0, std::move(P)) * c0;
}

Jet sqrt(const Jet& f) {
    int v = f.valuation();
    if (v > f.order()) throw DivisionByZeroSeries("sqrt of a zero jet");
    if (v == 0) return pow(f, Scalar(mpq_class(1, 2)));
    if (v % 2 != 0) throw EssentialSingularity("sqrt of a series of odd valuation");
    return shift(pow(shift(f, -v), Scalar(mpq_class(1, 2))), v / 2);
}

Jet derivative(const Jet& f) {
    Jet r(std::min(0, f.low() - 1), f.order() - 1);
    for (int k = f.low(); k <= f.order(); ++k)
        if (k != 0) {
            Scalar c = f.coeff(k);
            if (!c.is_zero()) r.set(k - 1, Scalar(k) * c);
        }
    return r;
}

Jet integral(const Jet& f) {
    if (f.order() >= -1 && !f.coeff(-1).is_zero()) throw EssentialSingularity("integral of a series with a residue");
    Jet r(std::min(0, f.low() + 1), f.order() + 1);
    for (int k = f.low(); k <= f.order(); ++k)
        if (k != -1) {
            Scalar c = f.coeff(k);
            if (!c.is_zero()) r.set(k + 1, c / Scalar(k + 1));
        }
    return r;
}

Jet delta(const Jet& f, int nu) {
    Jet r(std::min(0, f.low() + nu), f.order() + nu);
    for (int k = f.low(); k <= f.order(); ++k)
        if (k != 0) {
            Scalar c = f.coeff(k);
            if (!c.is_zero()) r.set(k + nu, Scalar(k) * c);
        }
    return r;
}

Jet delta_inverse(const Jet& f, int nu) {
    if (f.order() >= nu && !f.coeff(nu).is_zero())
        throw EssentialSingularity("delta inverse of a series with a logarithmic term");
    Jet r(std::min(0, f.low() - nu), f.order() - nu);
    for (int j = f.low(); j <= f.order(); ++j)
        if (j != nu) {
            Scalar c = f.coeff(j);
            if (!c.is_zero()) r.set(j - nu, c / Scalar(j - nu));
        }
    return r;
}

Jet log_derivative(const Jet& f, int nu) { return delta(f, nu) / f; }

}  // namespace lode
