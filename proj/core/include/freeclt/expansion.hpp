#pragma once

#include <vector>

#include "freeclt/measure.hpp"

namespace freeclt {

/// Coefficients driving the n-fold asymptotics of a standardized base measure
/// with third and fourth moments m3, m4:
///   a_n = m3 / sqrt(n),          b_n = (m4 - m3^2 - 1) / n,
///   d_n = (m4 - m3^2) / n,       e_n = (1 - b_n) / sqrt(1 - d_n).
/// Note d_n - b_n = 1/n exactly.
struct CltCoefficients {
    int n = 1;
    double m3 = 0.0;
    double m4 = 0.0;
    double a_n = 0.0;
    double b_n = 0.0;
    double d_n = 0.0;
    double e_n = 1.0;
};

CltCoefficients coefficients(double m3, double m4, int n);
CltCoefficients coefficients(const Measure& m, int n);

/// Second-order expansion density
///   v_n(x) = (1 + d_n/2 - a_n^2 - 1/n - a_n x - (b_n - a_n^2 - 1/n) x^2)
///            * p_w(e_n x),
/// with p_w the semicircle density. Approximates the density of the
/// standardized n-fold convolution to o(1/n) in L1.
double v_n_density(const CltCoefficients& c, double x);

/// Variant with x^2 coefficient (b_n - 1/n); identical to v_n when m3 = 0.
double th7_density(const CltCoefficients& c, double x);

/// Leading term of the L1 distance to the semicircle law:
///   2|m3| / (pi sqrt(n))  when m3 != 0,
///   2|m4 - 2| / (pi n)    when m3 = 0.
double l1_leading_term(double m3, double m4, int n);

/// Power-law fit v ~ constant * n^{-exponent} by least squares on log-log
/// pairs.
struct RateFit {
    double exponent = 0.0;
    double constant = 0.0;
};

RateFit fit_log_rate(const std::vector<double>& ns, const std::vector<double>& values);

} // namespace freeclt
