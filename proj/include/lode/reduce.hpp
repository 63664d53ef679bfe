#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lode/lde.hpp"
#include "lode/stokes.hpp"

namespace lode {

/// Formal solution of 2 delta_nu r = r^2 - Delta with r(0) = sign * sqrt(Delta(0)).
struct RiccatiSolution {
    Jet r;
    int sign = 1;
};

/// (delta_nu - alpha2)(delta_nu - alpha1).
struct Factorization {
    Jet alpha1;
    Jet alpha2;
};

/// Throws ResonantObstruction when a degree cannot be solved (nu = 0 with an
/// integer exponent difference and a nonzero residual there).
RiccatiSolution riccati_formal(const Lde& e, int sign, int N, double tol = 1e-10);
/// 2 delta r - r^2 + Delta.
Jet riccati_residual(const Lde& e, const Jet& r);

/// alpha1 = (p - r) / 2, alpha2 = (p + r) / 2; ResidualTooLarge if they do not
/// reproduce (p, q).
Factorization factor(const Lde& e, const RiccatiSolution& r, double tol = 1e-10);
/// p = alpha1 + alpha2, q = -alpha1 alpha2 + delta alpha1, with no rank reduction.
Lde expand(const Factorization& f, int nu);

/// delta^3 h - Delta delta h - (1/2)(delta Delta) h.
Jet symmetric_power_residual(const Lde& e, const Jet& h);
/// (delta - r) delta (delta + r) h.
Jet symmetric_factorized_residual(const Jet& r, const Jet& h, int nu);
/// Basis of power-series solutions of the symmetric power equation, known to
/// order min(N, order of Delta): the null space of the truncated linear system.
/// `lowest` < 0 admits Laurent solutions starting at x^lowest.
std::vector<Jet> symmetric_power_kernel(const Lde& e, int N, double tol = 1e-10, int lowest = 0);

enum class ReducibilityVerdict { UNKNOWN, IRREDUCIBLE, REDUCIBLE, NORMAL_FORM_EQUIVALENT };
const char* verdict_name(ReducibilityVerdict v);

struct ReducibilityReport {
    /// "FORMAL" without Stokes data, "ANALYTIC" with it.
    std::string scope;
    RiccatiSolution plus;
    RiccatiSolution minus;
    int kernel_dimension = 0;
    Jet h;  // 1 / (r_plus - r_minus)
    bool riccati_residuals_vanish = false;
    bool h_in_kernel = false;
    ReducibilityVerdict verdict = ReducibilityVerdict::UNKNOWN;
    std::vector<std::string> notes;
};

/// IRREGULAR_NONRES input. With Stokes data: normal-form equivalent iff all
/// multipliers vanish, reducible iff all odd or all even ones vanish.
ReducibilityReport reducibility_report(const Lde& e, const std::optional<StokesCollection>& stokes, int N,
                                       double tol = 1e-10);

}  // namespace lode
