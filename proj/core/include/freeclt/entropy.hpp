#pragma once

#include <vector>

#include "freeclt/density.hpp"
#include "freeclt/expansion.hpp"
#include "freeclt/measure.hpp"

namespace freeclt {

/// Logarithmic energy  E(p) = double integral of log|x - y| p(x) p(y) dx dy
/// for a piecewise-linear density. The kernel is integrated exactly against
/// the hat-function products cell pair by cell pair, so the log singularity
/// on the diagonal costs no accuracy. The profile mass must be within 0.01 of
/// 1 and is renormalized internally. Semicircle reference value: -1/4.
double log_energy(const DensityProfile& p);

/// Free entropy  chi(p) = E(p) + 3/4 + log(2 pi)/2; maximized by the
/// semicircle law among standardized densities.
double free_entropy(const DensityProfile& p);

/// chi of the semicircle law: log(2 pi e)/2.
double chi_semicircle();

/// Free Fisher information  Phi(p) = (4 pi^2 / 3) integral of p(x)^3 dx.
/// Square-root edges (exponent near 1/2) integrate through a sine
/// substitution aligned with the grid; edge exponents at or below -1/3 make
/// the cube non-integrable.
double fisher_information(const DensityProfile& p);

/// Logarithmic potential integral of log|x - u| p(u) du of a piecewise-linear
/// density, cell-exact through the interior singularity.
double log_potential(const DensityProfile& p, double x);

/// u-weighted variant: integral of u log|x - u| p(u) du.
double weighted_log_potential(const DensityProfile& p, double x);

/// Logarithmic potential of the semicircle law on [-2, 2]:
///   integral of log|x - y| p_w(y) dy = x^2/4 - 1/2.
double semicircle_log_potential(double x);

/// Odd comparison potential -x + x^3/6 on [-2, 2]; the first-order expansion
/// of the potential shift under third-moment skew.
double odd_log_potential(double x);

/// Entropy and Fisher summary of the standardized n-fold convolution.
struct EntropyReport {
    int n = 1;
    double chi = 0.0;
    double fisher = 0.0;
    double log_energy = 0.0;
    double chi_deficit = 0.0;  // chi_semicircle() - chi
    double fisher_excess = 0.0; // fisher - 1
};

EntropyReport entropy_report(const Measure& m, int n, const GridSpec& grid,
                             const EpsPolicy& eps = {});

/// Per-n reports plus power-law fits of the deficit and excess columns. A fit
/// is marked invalid when a column is not strictly positive (at the semicircle
/// fixed point the deficits sit at numerical zero).
struct RateReport {
    std::vector<EntropyReport> reports;
    bool chi_fit_valid = false;
    RateFit chi_fit;
    bool fisher_fit_valid = false;
    RateFit fisher_fit;
};

/// Requires a geometric n list of length >= 3 in ascending order.
RateReport rate_report(const Measure& m, const std::vector<int>& ns, const GridSpec& grid,
                       const EpsPolicy& eps = {});

} // namespace freeclt
