#pragma once

#include <array>
#include <complex>
#include <vector>

#include "freeclt/measure.hpp"

namespace freeclt {

using Complex = std::complex<double>;

/// Cauchy transform G(z) = integral of 1/(z - u) d mu(u), defined for
/// Im z > 0; maps the upper half plane into the lower one.
Complex cauchy(const Measure& m, Complex z);
Complex cauchy_derivative(const Measure& m, Complex z);

/// Reciprocal Cauchy transform F = 1/G, a self-map of the upper half plane.
Complex reciprocal_cauchy(const Measure& m, Complex z);
Complex reciprocal_cauchy_derivative(const Measure& m, Complex z);

/// Closed form for the reciprocal Cauchy transform of the free Meixner family
/// member with parameters (a, b, d); requires b < 1, d < 1 but no further
/// admissibility, so it also serves the expansion coefficients as n varies.
Complex meixner_reciprocal(double a, double b, double d, Complex z);

/// Finite representation of F(z) = z + sum t_i / (v_i - z): the reciprocal
/// Cauchy transform of a mean-zero atomic measure is determined by atoms
/// (v_i, t_i) with t_i > 0 and total mass equal to the measure's variance.
struct TauRepresentation {
    std::vector<Atom> atoms;
    /// Raw moments m_2 .. m_8 of the source measure, in that order.
    std::array<double, 7> source_moments{};

    double total() const;
};

/// Computes the representation above for a mean-zero atomic measure with at
/// least two atoms. The representing atoms sit at the zeros of G between
/// consecutive source atoms, with weights -1/G'(v_i).
TauRepresentation tau_from_atomic(const Measure& m);

/// k-th raw moment of the source measure recovered combinatorially from the
/// moments of its representing measure.
double moments_from_tau(const TauRepresentation& t, int k);

/// k-th raw moment read off the large-argument expansion of the Cauchy
/// transform at z = iy. Accuracy degrades with k; throws PrecisionLoss when
/// the surviving signal falls within 1e6 ulps of the cancelled terms.
double moments_from_cauchy(const Measure& m, int k, double y = 1e4);

struct TruncationResult {
    TauRepresentation tau;
    /// Atomic measure whose reciprocal Cauchy transform matches the truncated
    /// representation.
    Measure star;
};

/// Drops representing atoms with |v_i| > sqrt(n-1)/pi. When nothing is
/// removed the atom list is returned unchanged.
TruncationResult truncate_tau(const TauRepresentation& t, int n);

/// Atomic measure with reciprocal Cauchy transform z + sum t_i / (v_i - z):
/// one atom per real zero of that rational function, weight 1/F'(zero).
Measure measure_from_tau(const TauRepresentation& t);

} // namespace freeclt
