#pragma once

#include "freeclt/measure.hpp"
#include "freeclt/transforms.hpp"

namespace freeclt {

/// Solution record for the subordination equation
///   z = n Z(z) - (n-1) F(Z(z)),
/// where F is the reciprocal Cauchy transform of the base measure. `Sn` is
/// the subordination map of the rescaled n-fold convolution, Z(sqrt(n) z) /
/// sqrt(n).
struct SubordinationSolution {
    Complex z;
    int n = 1;
    Complex Z;
    Complex Sn;
    int iterations = 0;
    double residual = 0.0;
};

struct SolveOptions {
    double tol = 1e-12; // relative to max(1, |z|)
    int max_iter = 10000;
};

/// Solves the subordination equation at z in the upper half plane. The
/// residual satisfies |z - n Z + (n-1) F(Z)| <= tol * max(1, |z|); for n = 1
/// the solution is Z = z with zero iterations.
SubordinationSolution solve_Z(const Measure& m, int n, Complex z, const SolveOptions& options = {});

/// Cauchy transform of the standardized n-fold free additive convolution,
/// sqrt(n) / F(Z(sqrt(n) z)).
Complex cauchy_mu_n(const Measure& m, int n, Complex z, const SolveOptions& options = {});

/// Independent check for atomic base measures: clearing denominators turns
/// the subordination equation into a polynomial in Z whose relevant root is
/// tracked by homotopy from high in the upper half plane. Agrees with solve_Z
/// to ~1e-10 and costs a dense eigenvalue solve per continuation step.
Complex polynomial_oracle(const Measure& m, int n, Complex z);

/// Weighted uniform distance between the subordination map of the
/// standardized n-fold convolution and the reciprocal Cauchy transform of the
/// matched free Meixner law, scaled by n^{3/2}; evaluated just above the real
/// axis across the grid. Stays bounded in n for measures with finite sixth
/// moment.
double meixner_closeness(const Measure& m, int n, const GridSpec& grid);

} // namespace freeclt
