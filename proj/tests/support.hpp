#pragma once

#include "freeclt/measure.hpp"
#include "freeclt/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace testsupport {

inline constexpr double kPi = std::numbers::pi;

inline std::mt19937 test_rng(unsigned seed = 0x5eed1234u) { return std::mt19937(seed); }

/// Gauss-Chebyshev (second kind): integral over [-1,1] of g(t) sqrt(1-t^2) dt.
template <class G>
double gc2_integral(const G& g, int nodes = 4000) {
    double sum = 0.0;
    for (int j = 1; j <= nodes; ++j) {
        const double theta = kPi * j / (nodes + 1);
        const double s = std::sin(theta);
        sum += s * s * g(std::cos(theta));
    }
    return sum * kPi / (nodes + 1);
}

/// Gauss-Chebyshev (first kind): integral over [-1,1] of g(t) / sqrt(1-t^2) dt.
template <class G>
double gc1_integral(const G& g, int nodes = 4000) {
    double sum = 0.0;
    for (int j = 1; j <= nodes; ++j) {
        const double theta = kPi * (2 * j - 1) / (2 * nodes);
        sum += g(std::cos(theta));
    }
    return sum * kPi / nodes;
}

inline double semicircle_moment_oracle(int k) {
    return gc2_integral([k](double t) { return std::pow(2.0 * t, k) * 2.0 / kPi; });
}

/// Moments of the free Meixner density via the square-root edge substitution
/// x = a + R t, R = 2 sqrt(1-d)/(1-b); the remaining factor is rational in t.
inline double meixner_moment_oracle(double a, double b, double d, int k) {
    const double radius = 2.0 * std::sqrt(1.0 - d) / (1.0 - b);
    const double scale = radius * std::sqrt(1.0 - d) / kPi;
    return gc2_integral([=](double t) {
        const double x = a + radius * t;
        const double f = b * x * x + a * (1.0 - b) * x + 1.0 - d;
        return scale * std::pow(x, k) / f;
    });
}

inline double arcsine_moment_oracle(double center, double half_width, int k) {
    return gc1_integral([=](double t) { return std::pow(center + half_width * t, k) / kPi; });
}

inline freeclt::Measure bernoulli() {
    return freeclt::Measure::atomic({{-1.0, 0.5}, {1.0, 0.5}});
}

/// atoms((0, 3/4), (1, 1/4)) standardized: positions -1/sqrt(3) and sqrt(3),
/// third moment 2/sqrt(3), fourth moment 7/3.
inline freeclt::Measure skewed_two_atom() {
    return freeclt::standardize(freeclt::Measure::atomic({{0.0, 0.75}, {1.0, 0.25}}));
}

/// Standardized discretization of the semicircle law on Chebyshev nodes:
/// positions 2 cos(theta_j), weights proportional to sin^2(theta_j).
inline freeclt::Measure chebyshev_semicircle_atoms(int count = 50) {
    std::vector<freeclt::Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(count));
    double total = 0.0;
    for (int j = 1; j <= count; ++j) {
        const double theta = kPi * j / (count + 1);
        const double w = std::sin(theta) * std::sin(theta);
        atoms.push_back({2.0 * std::cos(theta), w});
        total += w;
    }
    for (auto& atom : atoms) atom.weight /= total;
    std::sort(atoms.begin(), atoms.end(),
              [](const freeclt::Atom& l, const freeclt::Atom& r) { return l.position < r.position; });
    return freeclt::standardize(freeclt::Measure::atomic(std::move(atoms)));
}

/// Random standardized atomic measure with `count` atoms, pairwise gaps at
/// least 0.15 before standardization.
inline freeclt::Measure random_standardized_atoms(std::mt19937& rng, int count) {
    std::uniform_real_distribution<double> position(-2.0, 2.0);
    std::uniform_real_distribution<double> weight(0.2, 1.0);
    std::vector<double> positions;
    while (static_cast<int>(positions.size()) < count) {
        const double candidate = position(rng);
        const bool clear = std::all_of(positions.begin(), positions.end(), [&](double p) {
            return std::abs(p - candidate) >= 0.15;
        });
        if (clear) positions.push_back(candidate);
    }
    std::sort(positions.begin(), positions.end());
    std::vector<freeclt::Atom> atoms;
    double total = 0.0;
    for (double p : positions) {
        const double w = weight(rng);
        atoms.push_back({p, w});
        total += w;
    }
    for (auto& atom : atoms) atom.weight /= total;
    return freeclt::standardize(freeclt::Measure::atomic(std::move(atoms)));
}

/// Cauchy transform of the arcsine law on [-sqrt(2), sqrt(2)], branch mapping
/// the upper half plane into the lower one.
inline freeclt::Complex arcsine_cauchy(freeclt::Complex z) {
    const double edge = std::sqrt(2.0);
    return 1.0 / (std::sqrt(z - edge) * std::sqrt(z + edge));
}

inline double arcsine_density_value(double x) {
    return std::abs(x) < std::sqrt(2.0) ? 1.0 / (kPi * std::sqrt(2.0 - x * x)) : 0.0;
}

inline double semicircle_density_value(double x) {
    const double r = 4.0 - x * x;
    return r > 0.0 ? std::sqrt(r) / (2.0 * kPi) : 0.0;
}

inline freeclt::DensityProfile dilate_profile(const freeclt::DensityProfile& p, double lambda) {
    freeclt::DensityProfile out = p;
    out.x0 = p.x0 * lambda;
    out.dx = p.dx * lambda;
    out.support_lo = p.support_lo * lambda;
    out.support_hi = p.support_hi * lambda;
    for (double& v : out.values) v /= lambda;
    return out;
}

/// Brute-force series oracle for the moments encoded by a representation
/// F(z) = z + sum t_i/(v_i - z): expands G = 1/(z - H), H(z) = sum t_i/(z - v_i),
/// as a power series in w = 1/z by plain truncated polynomial arithmetic.
inline double tau_series_moment_oracle(const std::vector<freeclt::Atom>& tau_atoms, int k) {
    const int degree = k + 1;
    std::vector<double> u(degree + 1, 0.0); // u = w * H(1/w), series in w
    for (int j = 0; j + 2 <= degree; ++j) {
        double c = 0.0;
        for (const auto& atom : tau_atoms) c += atom.weight * std::pow(atom.position, j);
        u[j + 2] = c;
    }
    std::vector<double> sum(degree + 1, 0.0); // sum of u^r, r >= 0
    std::vector<double> power(degree + 1, 0.0);
    sum[0] = 1.0;
    power[0] = 1.0;
    for (int r = 1; 2 * r <= degree; ++r) {
        std::vector<double> next(degree + 1, 0.0);
        for (int i = 0; i <= degree; ++i) {
            if (power[i] == 0.0) continue;
            for (int j = 0; i + j <= degree; ++j) next[i + j] += power[i] * u[j];
        }
        power = std::move(next);
        for (int i = 0; i <= degree; ++i) sum[i] += power[i];
    }
    return sum[k]; // G = w * sum, so m_k is the w^k coefficient of the sum
}

} // namespace testsupport
