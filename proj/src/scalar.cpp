#include "lode/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "lode/errors.hpp"

namespace lode {

namespace {

// Exact rational n-th root of a non-negative rational, if it exists.
std::optional<mpq_class> rational_root(const mpq_class& q, unsigned n) {
    if (sgn(q) < 0) return std::nullopt;
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class rn, rd;
    if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n) == 0) return std::nullopt;
    if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n) == 0) return std::nullopt;
    mpq_class r(rn, rd);
    r.canonicalize();
    return r;
}

std::optional<Scalar> exact_sqrt(const Scalar& z) {
    const mpq_class& a = z.re_q();
    const mpq_class& b = z.im_q();
    if (sgn(b) == 0) {
        if (sgn(a) >= 0) {
            auto r = rational_root(a, 2);
            if (!r) return std::nullopt;
            return Scalar(*r, 0);
        }
        auto r = rational_root(mpq_class(-a), 2);
        if (!r) return std::nullopt;
        return Scalar(0, *r);
    }
    mpq_class mod2 = a * a + b * b;
    auto mod = rational_root(mod2, 2);
    if (!mod) return std::nullopt;
    auto re = rational_root(mpq_class((*mod + a) / 2), 2);
    auto im = rational_root(mpq_class((*mod - a) / 2), 2);
    if (!re || !im) return std::nullopt;
    mpq_class imv = sgn(b) < 0 ? mpq_class(-*im) : *im;
    return Scalar(*re, imv);
}

}  // namespace

Scalar::Scalar(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {
    re_.canonicalize();
    im_.canonicalize();
}

Scalar Scalar::parse_rational(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ParseError("empty number");
    auto dot = t.find('.');
    auto exp_pos = t.find_first_of("eE");
    try {
        if (dot != std::string::npos || exp_pos != std::string::npos) {
            // decimal literal -> exact rational
            std::string mant = exp_pos == std::string::npos ? t : t.substr(0, exp_pos);
            long e10 = exp_pos == std::string::npos ? 0 : std::stol(t.substr(exp_pos + 1));
            bool neg = !mant.empty() && mant[0] == '-';
            if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) mant = mant.substr(1);
            std::string digits;
            long frac = 0;
            auto d = mant.find('.');
            if (d == std::string::npos) {
                digits = mant;
            } else {
                digits = mant.substr(0, d) + mant.substr(d + 1);
                frac = static_cast<long>(mant.size() - d - 1);
            }
            if (digits.empty()) throw ParseError("bad decimal '" + text + "'");
            for (char c : digits)
                if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad decimal '" + text + "'");
            mpq_class v{mpz_class(digits, 10)};
            long shift = e10 - frac;
            mpz_class p10;
            mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
            if (shift >= 0)
                v *= p10;
            else
                v /= p10;
            if (neg) v = -v;
            return Scalar(v, 0);
        }
        mpq_class v;
        if (v.set_str(t, 10) != 0) throw ParseError("bad rational '" + text + "'");
        if (v.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
        return Scalar(v, 0);
    } catch (const std::invalid_argument&) {
        throw ParseError("bad number '" + text + "'");
    }
}

cplx Scalar::value() const {
    if (!exact_) return z_;
    return {re_.get_d(), im_.get_d()};
}

bool Scalar::is_zero() const {
    if (exact_) return sgn(re_) == 0 && sgn(im_) == 0;
    return z_ == cplx(0.0, 0.0);
}

bool Scalar::is_real() const {
    if (exact_) return sgn(im_) == 0;
    return z_.imag() == 0.0;
}

std::optional<long> Scalar::as_integer() const {
    if (!exact_) return std::nullopt;
    if (sgn(im_) != 0 || re_.get_den() != 1 || !re_.get_num().fits_slong_p()) return std::nullopt;
    return re_.get_num().get_si();
}

std::optional<long> Scalar::near_integer(double tol) const {
    if (exact_) return as_integer();
    double r = std::round(z_.real());
    if (std::abs(z_ - cplx(r, 0.0)) <= tol) return static_cast<long>(r);
    return std::nullopt;
}

Scalar Scalar::conj() const {
    if (exact_) return Scalar(re_, -im_);
    return Scalar(std::conj(z_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (exact_ && o.exact_) {
        re_ += o.re_;
        im_ += o.im_;
    } else {
        z_ = value() + o.value();
        exact_ = false;
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    if (exact_ && o.exact_) {
        re_ -= o.re_;
        im_ -= o.im_;
    } else {
        z_ = value() - o.value();
        exact_ = false;
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (exact_ && o.exact_) {
        if (sgn(im_) == 0 && sgn(o.im_) == 0) {
            re_ *= o.re_;
        } else {
            mpq_class r = re_ * o.re_ - im_ * o.im_;
            mpq_class i = re_ * o.im_ + im_ * o.re_;
            re_ = std::move(r);
            im_ = std::move(i);
        }
    } else {
        z_ = value() * o.value();
        exact_ = false;
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw DivisionByZeroSeries("scalar division by zero");
    if (exact_ && o.exact_) {
        if (sgn(o.im_) == 0) {
            re_ /= o.re_;
            im_ /= o.re_;
        } else {
            mpq_class d = o.re_ * o.re_ + o.im_ * o.im_;
            mpq_class r = (re_ * o.re_ + im_ * o.im_) / d;
            mpq_class i = (im_ * o.re_ - re_ * o.im_) / d;
            re_ = std::move(r);
            im_ = std::move(i);
        }
    } else {
        z_ = value() / o.value();
        exact_ = false;
    }
    return *this;
}

Scalar Scalar::operator-() const {
    if (exact_) return Scalar(mpq_class(-re_), mpq_class(-im_));
    return Scalar(-z_);
}

bool Scalar::operator==(const Scalar& o) const {
    if (exact_ && o.exact_) return re_ == o.re_ && im_ == o.im_;
    return value() == o.value();
}

std::string Scalar::str() const {
    if (exact_) {
        if (sgn(im_) == 0) return re_.get_str();
        std::string s = sgn(re_) == 0 ? "" : re_.get_str();
        std::string i = im_.get_str();
        if (!s.empty() && sgn(im_) > 0) s += "+";
        return s + i + "i";
    }
    char buf[96];
    if (z_.imag() == 0.0)
        std::snprintf(buf, sizeof buf, "%.17g", z_.real());
    else
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z_.real(), z_.imag());
    return buf;
}

int compare_lex(const Scalar& a, const Scalar& b, double tol) {
    if (a.exact() && b.exact()) {
        int c = cmp(a.re_q(), b.re_q());
        if (c != 0) return c < 0 ? -1 : 1;
        c = cmp(a.im_q(), b.im_q());
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    cplx x = a.value(), y = b.value();
    if (std::abs(x.real() - y.real()) > tol) return x.real() < y.real() ? -1 : 1;
    if (std::abs(x.imag() - y.imag()) > tol) return x.imag() < y.imag() ? -1 : 1;
    return 0;
}

bool approx_equal(const Scalar& a, const Scalar& b, double tol) {
    if (a.exact() && b.exact()) return a == b;
    return std::abs(a.value() - b.value()) <= tol * std::max(1.0, std::abs(b.value()));
}

Scalar pow_int(Scalar base, long e) {
    if (e < 0) return Scalar(1) / pow_int(base, -e);
    Scalar r(1);
    while (e) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return r;
}

Scalar sqrt(const Scalar& z) {
    if (!z.exact()) return Scalar(std::sqrt(z.value()));
    if (auto r = exact_sqrt(z)) return *r;
    throw ExactnessRequired("square root of " + z.str() + " is not in Q(i)");
}

Scalar nth_root(const Scalar& z, int n) {
    if (n <= 0) throw DegenerateInput("root order must be positive");
    if (n == 1) return z;
    if (!z.exact()) return Scalar(std::pow(z.value(), 1.0 / n));
    if (z.is_zero()) return z;
    if (z.is_real()) {
        const mpq_class& a = z.re_q();
        if (sgn(a) > 0) {
            if (auto r = rational_root(a, static_cast<unsigned>(n))) return Scalar(*r, 0);
        } else if (n % 2 == 1) {
            if (auto r = rational_root(mpq_class(-a), static_cast<unsigned>(n))) return Scalar(mpq_class(-*r), 0);
        }
    }
    if ((n & (n - 1)) == 0) {
        Scalar r = z;
        for (int m = n; m > 1; m /= 2) r = sqrt(r);
        return r;
    }
    throw ExactnessRequired(std::to_string(n) + "-th root of " + z.str() + " is not in Q(i)");
}

Scalar root_of_unity(int n, int l, bool exact) {
    l = ((l % n) + n) % n;
    if (exact) {
        if (n == 1 || l == 0) return Scalar(1);
        if (n == 2) return Scalar(-1);
        if (n == 4) {
            static const Scalar units[4] = {Scalar(1), Scalar(0, 1), Scalar(-1), Scalar(0, -1)};
            return units[l];
        }
        if (2 * l == n) return Scalar(-1);
        if (4 * l == n) return Scalar(0, 1);
        if (4 * l == 3 * n) return Scalar(0, -1);
        throw ExactnessRequired("root of unity of order " + std::to_string(n) + " is not in Q(i)");
    }
    double ang = 2.0 * std::numbers::pi * l / n;
    return Scalar(cplx(std::cos(ang), std::sin(ang)));
}

std::vector<Scalar> all_roots(const Scalar& z, int n) {
    Scalar r0 = nth_root(z, n);
    std::vector<Scalar> out;
    out.reserve(n);
    for (int l = 0; l < n; ++l) out.push_back(r0 * root_of_unity(n, l, z.exact()));
    return out;
}

Scalar exp(const Scalar& z) {
    if (z.exact()) {
        if (z.is_zero()) return Scalar(1);
        throw ExactnessRequired("exp(" + z.str() + ") is not in Q(i)");
    }
    return Scalar(std::exp(z.value()));
}

Scalar log(const Scalar& z) {
    if (z.is_zero()) throw DivisionByZeroSeries("log of zero");
    if (z.exact()) {
        if (z == Scalar(1)) return Scalar(0);
        throw ExactnessRequired("log(" + z.str() + ") is not in Q(i)");
    }
    cplx v = z.value();
    if (v.imag() == 0.0 && v.real() < 0.0) throw BranchAmbiguity("log on the negative real axis");
    return Scalar(std::log(v));
}

cplx exp_i_pi(cplx z) { return std::exp(cplx(0.0, std::numbers::pi) * z); }

}  // namespace lode
