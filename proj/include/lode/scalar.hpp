#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace lode {

using cplx = std::complex<double>;

/// A complex number held either exactly in Q(i) or as a double-precision float.
/// Arithmetic between two exact values stays exact; anything touching a float
/// value is carried out in floating point.
class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : re_(v) {}
    Scalar(long v) : re_(v) {}
    Scalar(const mpq_class& re, const mpq_class& im = 0);
    explicit Scalar(cplx z) : exact_(false), z_(z) {}

    static Scalar floating(double re, double im = 0.0) { return Scalar(cplx(re, im)); }
    /// Parses "n", "n/d" or a decimal like "0.25" (decimal becomes exact rational).
    static Scalar parse_rational(const std::string& text);

    bool exact() const { return exact_; }
    const mpq_class& re_q() const { return re_; }
    const mpq_class& im_q() const { return im_; }
    cplx value() const;
    double real() const { return value().real(); }
    double imag() const { return value().imag(); }

    bool is_zero() const;
    bool near_zero(double tol) const { return std::abs(value()) <= tol; }
    bool is_real() const;
    /// Integer value when the scalar is an exact integer.
    std::optional<long> as_integer() const;
    /// Integer value when the scalar is within tol of one (exact: only exact integers).
    std::optional<long> near_integer(double tol) const;

    Scalar to_float() const { return Scalar(value()); }
    Scalar conj() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    Scalar operator-() const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    /// Exact equality for exact values, bitwise equality of doubles otherwise.
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const;

private:
    bool exact_ = true;
    mpq_class re_{0};
    mpq_class im_{0};
    cplx z_{0.0, 0.0};
};

/// Lexicographic comparison on (Re, Im). Exact when both are exact, otherwise
/// differences below tol count as ties.
int compare_lex(const Scalar& a, const Scalar& b, double tol = 0.0);

bool approx_equal(const Scalar& a, const Scalar& b, double tol);

/// Exactly zero for exact scalars, within tol for floats.
inline bool negligible(const Scalar& s, double tol) { return s.exact() ? s.is_zero() : s.near_zero(tol); }

Scalar pow_int(Scalar base, long e);
/// Principal square root. Exact inputs need a square in Q(i).
Scalar sqrt(const Scalar& z);
/// One n-th root (principal for floats). Exact inputs need an exact root.
Scalar nth_root(const Scalar& z, int n);
/// All n-th roots of z, in order of increasing argument offset from the first.
std::vector<Scalar> all_roots(const Scalar& z, int n);
/// exp(2 pi i l / n); exact only for n in {1, 2, 4}.
Scalar root_of_unity(int n, int l, bool exact);
/// exp(z); exact only for z = 0.
Scalar exp(const Scalar& z);
/// Principal log(z); exact only for z = 1.
Scalar log(const Scalar& z);
/// exp(i pi z) in floating point.
cplx exp_i_pi(cplx z);

}  // namespace lode
