#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lode/lde.hpp"
#include "lode/stokes.hpp"

namespace lode {

/// Y = h delta_nu + (1/2)(c + delta_nu h + p h) y d/dy, that is
/// Y = g d/dx + f y d/dy with g = x^{nu+1} h.
struct SymmetryGenerator {
    Jet h;
    Scalar c;
    std::string description;
};

/// The y d/dy coefficient (1/2)(c + delta h + p h).
Jet scaling_part(const Lde& e, const SymmetryGenerator& Y);

struct SymmetryCheck {
    bool ok = false;
    /// Largest coefficient of the bracket residual [X, pr Y] - alpha X.
    double residual = 0.0;
    /// First degree with a nonzero residual (unset when ok).
    std::optional<int> first_degree;
    Jet alpha;  // dg/dx
    /// Residual entries of the y and y_x rows of the prolonged bracket, times
    /// x^{2nu+2}; the y row is then half the symmetric power residual of h.
    Jet row_y;
    Jet row_yx;
};

/// [X, pr Y] = alpha X with alpha = dg/dx, compared coefficient-wise through
/// degree N (or as far as the jets reach).
SymmetryCheck verify_symmetry(const Lde& e, const SymmetryGenerator& Y, int N, double tol = 1e-10);

/// [Y1, Y2] rewritten in generator form; throws ResidualTooLarge when the result
/// is not of that form (its c part is not constant).
SymmetryGenerator bracket(const Lde& e, const SymmetryGenerator& a, const SymmetryGenerator& b, double tol = 1e-10);

/// The generator of `e = apply(target, T)` induced by a generator of `target`.
SymmetryGenerator pull_back_generator(const Lde& target, const SymmetryGenerator& Y, const PointTransformation& T);

struct SymmetryAlgebra {
    /// "1a", "1b", "1c", "2a", "2b", "3", or "nonsingular".
    std::string case_label;
    int dimension = 0;
    std::vector<SymmetryGenerator> generators;
    /// How the analytic case was decided.
    std::string decided_by;
    std::vector<std::string> notes;
};

/// Analytic linear symmetries. For rank nu > 0 non-resonant inputs the case is
/// decided by an exact match with a formal normal form, by user Stokes data, or
/// for nu = 1 by the trace invariant or the closed-form multiplier; otherwise
/// UndecidableWithoutStokes. `factor_difference` is alpha2 - alpha1 of a known
/// analytic factorization (delta - alpha2)(delta - alpha1), when there is one.
SymmetryAlgebra symmetry_algebra(const Lde& e, int N, const std::optional<StokesCollection>& stokes = std::nullopt,
                                 double tol = 1e-10, const std::optional<Jet>& factor_difference = std::nullopt);

}  // namespace lode
