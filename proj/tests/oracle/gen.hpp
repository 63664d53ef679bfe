#pragma once
// Hand-rolled random generators for property tests. Small rationals keep
// exact arithmetic cheap.

#include <random>

#include "lode/jet.hpp"
#include "lode/lde.hpp"

namespace gen {

class Rng {
public:
    explicit Rng(unsigned seed) : eng_(seed) {}
    long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }

    /// Rational with numerator in [-m, m] and denominator in [1, d].
    mpq_class rational(long m = 3, long d = 3) {
        mpq_class q(range(-m, m), range(1, d));
        q.canonicalize();
        return q;
    }
    mpq_class nonzero_rational(long m = 3, long d = 3) {
        for (;;) {
            mpq_class q = rational(m, d);
            if (q != 0) return q;
        }
    }
    /// Mostly real; complex with probability pc.
    lode::Scalar scalar(double pc = 0.25, long m = 3, long d = 3) {
        mpq_class re = rational(m, d);
        mpq_class im = coin(pc) ? rational(m, d) : mpq_class(0);
        return lode::Scalar(re, im);
    }
    lode::Scalar nonzero_scalar(double pc = 0.25) {
        for (;;) {
            lode::Scalar s = scalar(pc);
            if (!s.is_zero()) return s;
        }
    }
    /// Analytic jet of the given order; `sparse` zeroes coefficients at random.
    lode::Jet jet(int order, double pc = 0.25, double sparse = 0.3) {
        std::vector<lode::Scalar> c;
        for (int k = 0; k <= order; ++k) c.push_back(coin(sparse) ? lode::Scalar(0) : scalar(pc));
        return lode::Jet(0, std::move(c));
    }
    /// Jet with nonzero constant term.
    lode::Jet unit(int order, double pc = 0.25) {
        lode::Jet j = jet(order, pc);
        j.set(0, nonzero_scalar(pc));
        return j;
    }
    /// phi = c x + ... with c != 0.
    lode::Jet phi(int order, double pc = 0.25) { return lode::shift(unit(order - 1, pc), 1); }
    /// Random point transformation with t(0) = 1.
    lode::PointTransformation transformation(int order, double pc = 0.25) {
        lode::PointTransformation T;
        T.phi = phi(order, pc);
        T.t = jet(order, pc);
        T.t.set(0, lode::Scalar(1));
        return T;
    }

    std::mt19937& engine() { return eng_; }

private:
    std::mt19937 eng_;
};

}  // namespace gen
