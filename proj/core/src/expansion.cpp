#include "freeclt/expansion.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace freeclt {

namespace {

double semicircle_density(double x) {
    const double s = 4.0 - x * x;
    return s > 0.0 ? std::sqrt(s) / (2.0 * std::numbers::pi) : 0.0;
}

} // namespace

CltCoefficients coefficients(double m3, double m4, int n) {
    if (n < 1) throw InadmissibleParameters("expansion coefficients require n >= 1");
    if (m4 < 1.0 + m3 * m3 - 1e-12)
        throw MomentInconsistency("no standardized measure has m4 = " + std::to_string(m4) +
                                  " below 1 + m3^2 = " + std::to_string(1.0 + m3 * m3));
    CltCoefficients c;
    c.n = n;
    c.m3 = m3;
    c.m4 = m4;
    c.a_n = m3 / std::sqrt(static_cast<double>(n));
    c.b_n = (m4 - m3 * m3 - 1.0) / n;
    c.d_n = (m4 - m3 * m3) / n;
    if (c.b_n >= 1.0 || c.d_n >= 1.0)
        throw MomentInconsistency("n = " + std::to_string(n) +
                                  " is too small for these moments: the expansion requires "
                                  "b_n < 1 and d_n < 1");
    c.e_n = (1.0 - c.b_n) / std::sqrt(1.0 - c.d_n);
    return c;
}

CltCoefficients coefficients(const Measure& m, int n) {
    if (std::abs(mean(m)) > 1e-9 || std::abs(variance(m) - 1.0) > 1e-9)
        throw InadmissibleParameters("expansion coefficients require a standardized measure");
    return coefficients(moment(m, 3), moment(m, 4), n);
}

double v_n_density(const CltCoefficients& c, double x) {
    const double inv_n = 1.0 / c.n;
    const double poly = 1.0 + 0.5 * c.d_n - c.a_n * c.a_n - inv_n - c.a_n * x -
                        (c.b_n - c.a_n * c.a_n - inv_n) * x * x;
    return poly * semicircle_density(c.e_n * x);
}

double th7_density(const CltCoefficients& c, double x) {
    const double inv_n = 1.0 / c.n;
    const double poly = 1.0 + 0.5 * c.d_n - c.a_n * c.a_n - inv_n - c.a_n * x -
                        (c.b_n - inv_n) * x * x;
    return poly * semicircle_density(c.e_n * x);
}

double l1_leading_term(double m3, double m4, int n) {
    if (n < 1) throw InadmissibleParameters("leading term requires n >= 1");
    if (m3 != 0.0) return 2.0 * std::abs(m3) / (std::numbers::pi * std::sqrt(static_cast<double>(n)));
    return 2.0 * std::abs(m4 - 2.0) / (std::numbers::pi * n);
}

RateFit fit_log_rate(const std::vector<double>& ns, const std::vector<double>& values) {
    if (ns.size() != values.size() || ns.size() < 2)
        throw InadmissibleParameters("rate fit requires at least two (n, value) pairs");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (!(ns[i] > 0.0) || !(values[i] > 0.0))
            throw InadmissibleParameters("rate fit requires positive n and values");
        const double x = std::log(ns[i]);
        const double y = std::log(values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double count = static_cast<double>(ns.size());
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / count;
    return {-slope, std::exp(intercept)};
}

} // namespace freeclt
