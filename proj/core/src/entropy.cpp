#include "freeclt/entropy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "freeclt/expansion.hpp"
#include "freeclt/parallel.hpp"
#include "quadrature.hpp"

namespace freeclt {

namespace {

constexpr double kPi = std::numbers::pi;

// Correlation kernels of the piecewise-linear hat products, reduced to cubic
// polynomials in the single variable s (ascending coefficients):
//   f1 = (1-s)^2 (2+s) / 6,  f2 = (1-s)^3 / 6,  f3 = (1-s)(1+4s+s^2) / 6.
constexpr std::array<double, 4> kF1 = {2.0 / 6, -3.0 / 6, 0.0, 1.0 / 6};
constexpr std::array<double, 4> kF2 = {1.0 / 6, -3.0 / 6, 3.0 / 6, -1.0 / 6};
constexpr std::array<double, 4> kF3 = {1.0 / 6, 3.0 / 6, -3.0 / 6, -1.0 / 6};

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Antiderivative of u^j log|u|, zero at u = 0.
double lambda_log(int j, double u) {
    if (u == 0.0) return 0.0;
    const double inv = 1.0 / (j + 1);
    return std::pow(u, j + 1) * inv * (std::log(std::abs(u)) - inv);
}

/// Exact integral of f(s) log|m + s| over [0, 1]; safe for small |m| where
/// the logarithm is singular inside or at the ends of the cell.
double log_moment_exact(const std::array<double, 4>& f, double m) {
    double total = 0.0;
    for (int k = 0; k < 4; ++k) {
        if (f[static_cast<std::size_t>(k)] == 0.0) continue;
        double acc = 0.0;
        for (int j = 0; j <= k; ++j)
            acc += binom(k, j) * std::pow(-m, k - j) *
                   (lambda_log(j, m + 1.0) - lambda_log(j, m));
        total += f[static_cast<std::size_t>(k)] * acc;
    }
    return total;
}

/// Series form for |m| >= 8: log|m| f-mass plus the expansion of
/// log(1 + s/m), which avoids the heavy cancellation of the exact form at
/// large offsets.
double log_moment_series(const std::array<double, 4>& f, double m) {
    double mass = 0.0;
    for (int k = 0; k < 4; ++k) mass += f[static_cast<std::size_t>(k)] / (k + 1);
    double acc = std::log(std::abs(m)) * mass;
    double mp = m;
    for (int r = 1; r <= 60; ++r) {
        double fmom = 0.0;
        for (int k = 0; k < 4; ++k) fmom += f[static_cast<std::size_t>(k)] / (r + k + 1);
        const double term = (r % 2 == 1 ? 1.0 : -1.0) / (r * mp) * fmom;
        acc += term;
        if (std::abs(term) < 1e-18) break;
        mp *= m;
    }
    return acc;
}

double log_moment(const std::array<double, 4>& f, double m) {
    return std::abs(m) <= 7.0 ? log_moment_exact(f, m) : log_moment_series(f, m);
}

struct Trimmed {
    std::vector<double> values; // renormalized, nonzero range only
    std::size_t first = 0;
    double mass = 0.0;
};

Trimmed prepare(const DensityProfile& p, const char* caller) {
    if (p.values.size() < 2)
        throw GridTooCoarse(std::string(caller) + " requires at least 2 nodes");
    if (!std::isfinite(p.support_lo) || !std::isfinite(p.support_hi) ||
        !std::isfinite(p.x0) || !std::isfinite(p.dx))
        throw UnboundedSupport(std::string(caller) + " requires a finite support");
    Trimmed t;
    t.mass = p.mass();
    if (std::abs(t.mass - 1.0) > 0.01)
        throw InadmissibleParameters(std::string(caller) + " requires mass within 0.01 of 1, got " +
                                     std::to_string(t.mass));
    std::size_t first = 0;
    std::size_t last = p.values.size() - 1;
    while (first < last && p.values[first] == 0.0) ++first;
    while (last > first && p.values[last] == 0.0) --last;
    // Keep one zero node on each side: the ramp cells between the last zero
    // node and the first nonzero node carry mass, and dropping them would make
    // the integrated density differ from the profile's piecewise-linear one.
    if (first > 0) --first;
    if (last + 1 < p.values.size()) ++last;
    if (first == last) throw DegenerateMeasure(std::string(caller) + " requires a nonzero density");
    t.first = first;
    t.values.assign(p.values.begin() + static_cast<std::ptrdiff_t>(first),
                    p.values.begin() + static_cast<std::ptrdiff_t>(last + 1));
    for (double& v : t.values) v /= t.mass;
    return t;
}

double chi_from_energy(double energy) {
    const double chi = energy + 0.75 + 0.5 * std::log(2.0 * kPi);
    if (chi < -10.0)
        std::cerr << "NonphysicalProfile: free entropy " << chi
                  << " is far below every probability density on this scale\n";
    return chi;
}

std::optional<double> edge_exponent(const DensityProfile& p, const std::vector<double>& values,
                                    std::size_t first, bool left_edge) {
    const double lo = p.support_lo;
    const double hi = p.support_hi;
    const double width = hi - lo;
    const double d_min = 2.0 * p.dx;
    const double d_max = 0.05 * width;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double x = p.x_at(first + i);
        const double d = left_edge ? x - lo : hi - x;
        if (d < d_min || d > d_max || values[i] <= 0.0) continue;
        const double lx = std::log(d);
        const double ly = std::log(values[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
    }
    if (count < 4) return std::nullopt;
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

} // namespace

double log_energy(const DensityProfile& p) {
    const Trimmed t = prepare(p, "log energy");
    const std::size_t cells = t.values.size() - 1;
    const auto span = static_cast<std::ptrdiff_t>(cells);

    // Kernel tables over all integer cell offsets. a00 couples like node
    // roles (left-left and right-right), a01/a10 the crossed ones.
    const std::size_t table_size = 2 * cells - 1;
    const auto offset = static_cast<std::ptrdiff_t>(cells) - 1;
    std::vector<double> a00(table_size), a01(table_size), a10(table_size);
    parallel_for(table_size, [&](std::size_t idx) {
        const double m = static_cast<double>(static_cast<std::ptrdiff_t>(idx) - offset);
        a00[idx] = log_moment(kF1, m) + log_moment(kF1, -m);
        a01[idx] = log_moment(kF2, m) + log_moment(kF3, -m);
        a10[idx] = log_moment(kF3, m) + log_moment(kF2, -m);
    });

    std::vector<double> row(cells);
    parallel_for(cells, [&](std::size_t i) {
        const double* left = t.values.data();
        const double* right = t.values.data() + 1;
        double s_ll = 0.0, s_lr = 0.0, s_rl = 0.0, s_rr = 0.0;
        const std::ptrdiff_t base = static_cast<std::ptrdiff_t>(i) + offset;
        for (std::ptrdiff_t j = 0; j < span; ++j) {
            const double lj = left[j];
            const double rj = right[j];
            const std::size_t k = static_cast<std::size_t>(base - j);
            s_ll += lj * a00[k];
            s_lr += rj * a01[k];
            s_rl += lj * a10[k];
            s_rr += rj * a00[k];
        }
        row[i] = t.values[i] * (s_ll + s_lr) + t.values[i + 1] * (s_rl + s_rr);
    });

    double pair_sum = 0.0;
    for (double r : row) pair_sum += r;

    double lin_mass = 0.0;
    for (std::size_t i = 0; i < cells; ++i) lin_mass += 0.5 * (t.values[i] + t.values[i + 1]);
    lin_mass *= p.dx;

    return p.dx * p.dx * pair_sum + std::log(p.dx) * lin_mass * lin_mass;
}

double free_entropy(const DensityProfile& p) { return chi_from_energy(log_energy(p)); }

double chi_semicircle() { return 0.5 * std::log(2.0 * kPi) + 0.5; }

double fisher_information(const DensityProfile& p) {
    const Trimmed t = prepare(p, "Fisher information");
    const double lo = p.support_lo;
    const double hi = p.support_hi;
    if (!(hi > lo)) throw DegenerateMeasure("Fisher information requires a support of positive width");

    const auto alpha_left = edge_exponent(p, t.values, t.first, true);
    const auto alpha_right = edge_exponent(p, t.values, t.first, false);
    for (const auto& alpha : {alpha_left, alpha_right}) {
        if (alpha && *alpha <= -1.0 / 3.0)
            throw NonIntegrableCube("edge exponent " + std::to_string(*alpha) +
                                    " puts the cubed density outside L1");
    }

    auto value_at = [&](double x) { return p.value_at(x) / t.mass; };

    const bool sqrt_edges = alpha_left && alpha_right && *alpha_left >= 0.25 &&
                            *alpha_left <= 0.75 && *alpha_right >= 0.25 && *alpha_right <= 0.75;
    double integral = 0.0;
    if (sqrt_edges) {
        // x = c + r sin(theta) flattens square-root edges; panel boundaries
        // are placed on the grid nodes so the interpolant is smooth inside
        // every panel.
        const double c = 0.5 * (lo + hi);
        const double r = 0.5 * (hi - lo);
        std::vector<double> thetas;
        thetas.reserve(t.values.size() + 2);
        thetas.push_back(-0.5 * kPi);
        for (std::size_t i = 0; i < t.values.size(); ++i) {
            const double x = p.x_at(t.first + i);
            if (x <= lo || x >= hi) continue;
            thetas.push_back(std::asin(std::clamp((x - c) / r, -1.0, 1.0)));
        }
        thetas.push_back(0.5 * kPi);
        const auto& gl = detail::gauss_legendre(5);
        for (std::size_t k = 0; k + 1 < thetas.size(); ++k) {
            const double mid = 0.5 * (thetas[k] + thetas[k + 1]);
            const double half = 0.5 * (thetas[k + 1] - thetas[k]);
            if (!(half > 0.0)) continue;
            for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
                const double theta = mid + half * gl.nodes[q];
                const double v = value_at(c + r * std::sin(theta));
                integral += half * gl.weights[q] * v * v * v * r * std::cos(theta);
            }
        }
    } else {
        for (std::size_t i = 0; i + 1 < t.values.size(); ++i) {
            const double a = t.values[i];
            const double b = t.values[i + 1];
            integral += 0.5 * p.dx * (a * a * a + b * b * b);
        }
    }
    return (4.0 * kPi * kPi / 3.0) * integral;
}

namespace {

double potential_impl(const DensityProfile& p, double x, bool weighted) {
    const Trimmed t = prepare(p, "log potential");
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < t.values.size(); ++i) {
        const double u1 = p.x_at(t.first + i);
        const double slope = (t.values[i + 1] - t.values[i]) / p.dx;
        const double head = t.values[i] + slope * (x - u1); // a + b x in u - x coordinates
        const double lo = u1 - x;
        const double hi = lo + p.dx;
        const double l0 = lambda_log(0, hi) - lambda_log(0, lo);
        const double l1 = lambda_log(1, hi) - lambda_log(1, lo);
        if (weighted) {
            const double l2 = lambda_log(2, hi) - lambda_log(2, lo);
            acc += x * head * l0 + (head + slope * x) * l1 + slope * l2;
        } else {
            acc += head * l0 + slope * l1;
        }
    }
    return acc;
}

} // namespace

double log_potential(const DensityProfile& p, double x) { return potential_impl(p, x, false); }

double weighted_log_potential(const DensityProfile& p, double x) {
    return potential_impl(p, x, true);
}

double semicircle_log_potential(double x) {
    if (std::abs(x) > 2.0)
        throw OutsideSupport("the potential identity holds on [-2, 2], got x = " +
                             std::to_string(x));
    return 0.25 * x * x - 0.5;
}

double odd_log_potential(double x) {
    if (std::abs(x) > 2.0)
        throw OutsideSupport("the potential identity holds on [-2, 2], got x = " +
                             std::to_string(x));
    return -x + x * x * x / 6.0;
}

EntropyReport entropy_report(const Measure& m, int n, const GridSpec& grid,
                             const EpsPolicy& eps) {
    const DensityProfile profile = invert_density(m, n, grid, eps);
    EntropyReport report;
    report.n = n;
    report.log_energy = log_energy(profile);
    report.chi = chi_from_energy(report.log_energy);
    report.fisher = fisher_information(profile);
    report.chi_deficit = chi_semicircle() - report.chi;
    report.fisher_excess = report.fisher - 1.0;
    return report;
}

RateReport rate_report(const Measure& m, const std::vector<int>& ns, const GridSpec& grid,
                       const EpsPolicy& eps) {
    if (ns.size() < 3)
        throw InadmissibleParameters("rate report requires at least three n values");
    for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
        if (ns[i] < 1 || ns[i + 1] <= ns[i])
            throw InadmissibleParameters("rate report requires ascending positive n values");
        // Geometric spacing: constant ratio between consecutive entries.
        if (i > 0 && ns[i + 1] * ns[0] != ns[1] * ns[i])
            throw InadmissibleParameters("rate report requires a geometric n list");
    }

    RateReport out;
    out.reports.reserve(ns.size());
    for (int n : ns) out.reports.push_back(entropy_report(m, n, grid, eps));

    std::vector<double> n_values(ns.begin(), ns.end());
    std::vector<double> deficits, excesses;
    deficits.reserve(ns.size());
    excesses.reserve(ns.size());
    for (const EntropyReport& r : out.reports) {
        deficits.push_back(r.chi_deficit);
        excesses.push_back(r.fisher_excess);
    }
    const auto positive = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
    };
    if (positive(deficits)) {
        out.chi_fit = fit_log_rate(n_values, deficits);
        out.chi_fit_valid = true;
    }
    if (positive(excesses)) {
        out.fisher_fit = fit_log_rate(n_values, excesses);
        out.fisher_fit_valid = true;
    }
    return out;
}

} // namespace freeclt
