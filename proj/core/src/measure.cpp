#include "freeclt/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "quadrature.hpp"

namespace freeclt {

namespace {

constexpr double kPi = std::numbers::pi;

// Catalan numbers C_0 .. C_8: even semicircle moments m_{2j} = C_j.
constexpr std::array<double, 9> kCatalan = {1, 1, 2, 5, 14, 42, 132, 429, 1430};

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

void check_order(int k) {
    if (k < 0) throw UnsupportedMoment("moment order must be nonnegative, got " + std::to_string(k));
    if (k > kMaxMomentOrder)
        throw UnsupportedMoment("moment order " + std::to_string(k) + " exceeds cap " +
                                std::to_string(kMaxMomentOrder));
}

/// Meixner absolutely continuous mass by the substitution x = a + R sin(t),
/// which removes the square-root edge singularities exactly.
double meixner_ac_mass(const FreeMeixnerMeasure& m, int moment_order) {
    const double R = 2.0 * std::sqrt(1.0 - m.d) / (1.0 - m.b);
    const auto& q = detail::gauss_legendre(256);
    double acc = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        const double t = 0.5 * kPi * q.nodes[i];
        const double c = std::cos(t);
        const double x = m.a + R * std::sin(t);
        const double integrand =
            std::sqrt(1.0 - m.d) * R * c * c / (kPi * m.f(x)) * std::pow(x, moment_order);
        acc += 0.5 * kPi * q.weights[i] * integrand;
    }
    return acc;
}

double arcsine_moment(const ArcsineMeasure& m, int k) {
    // E[(c + h S)^k] with S arcsine on [-1, 1]: E[S^{2j}] = binom(2j, j) / 4^j.
    double acc = 0.0;
    for (int j = 0; 2 * j <= k; ++j) {
        acc += binomial(k, 2 * j) * std::pow(m.center, k - 2 * j) *
               std::pow(m.half_width, 2 * j) * binomial(2 * j, j) / std::pow(4.0, j);
    }
    return acc;
}

double grid_moment(const DensityProfile& p, int k) {
    if (p.mass_tolerance > 1e-2)
        throw NonIntegrable("grid density mass tolerance " + std::to_string(p.mass_tolerance) +
                            " marks the profile as unresolved");
    // A cell whose single outermost node already carries more than 1% of the
    // mass means the grid terminated inside a region of substantial density.
    std::size_t first = 0;
    std::size_t last = p.size() - 1;
    while (first < last && p.values[first] == 0.0) ++first;
    while (last > first && p.values[last] == 0.0) --last;
    if (p.values[first] * p.dx > 1e-2 || p.values[last] * p.dx > 1e-2)
        throw NonIntegrable("grid density carries unresolved mass at a grid edge");

    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        const double x1 = p.x_at(i);
        const double x2 = p.x_at(i + 1);
        const double slope = (p.values[i + 1] - p.values[i]) / p.dx;
        const double a = p.values[i] - slope * x1;
        // Exact integral of (a + slope x) x^k over the cell.
        const double t1 = a * (std::pow(x2, k + 1) - std::pow(x1, k + 1)) / (k + 1);
        const double t2 = slope * (std::pow(x2, k + 2) - std::pow(x1, k + 2)) / (k + 2);
        acc += t1 + t2;
    }
    return acc;
}

} // namespace

double DensityProfile::mass() const {
    if (values.size() < 2) return 0.0;
    double s = 0.0;
    for (double v : values) s += v;
    s -= 0.5 * (values.front() + values.back());
    return s * dx;
}

double DensityProfile::value_at(double x) const {
    if (values.size() < 2) return 0.0;
    const double t = (x - x0) / dx;
    if (t < 0.0 || t > static_cast<double>(values.size() - 1)) return 0.0;
    const auto i = static_cast<std::size_t>(std::min(t, static_cast<double>(values.size() - 2)));
    const double frac = t - static_cast<double>(i);
    return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

void DensityProfile::validate() const {
    if (!(dx > 0.0) || !std::isfinite(dx) || !std::isfinite(x0))
        throw InadmissibleParameters("density profile requires finite x0 and positive dx");
    if (values.size() < 2)
        throw GridTooCoarse("density profile requires at least 2 nodes, got " +
                            std::to_string(values.size()));
    for (double v : values)
        if (!std::isfinite(v) || v < 0.0)
            throw InadmissibleParameters("density profile values must be finite and nonnegative");
    const double slack = 1e-9 * dx;
    if (support_lo < x0 - slack || support_hi > x_back() + slack || support_lo > support_hi)
        throw InadmissibleParameters("density profile support must lie inside the grid range");
    const double defect = std::abs(1.0 - mass());
    if (defect > mass_tolerance + 1e-12)
        throw InadmissibleParameters("density profile mass deviates from 1 by " +
                                     std::to_string(defect) + ", tolerance " +
                                     std::to_string(mass_tolerance));
}

double FreeMeixnerMeasure::support_lo() const { return a - 2.0 * std::sqrt(1.0 - d) / (1.0 - b); }
double FreeMeixnerMeasure::support_hi() const { return a + 2.0 * std::sqrt(1.0 - d) / (1.0 - b); }

Measure Measure::atomic(std::vector<Atom> atoms) {
    if (atoms.empty()) throw DegenerateMeasure("atomic measure requires at least one atom");
    for (const Atom& a : atoms) {
        if (!std::isfinite(a.position) || !std::isfinite(a.weight))
            throw InadmissibleParameters("atom positions and weights must be finite");
        if (a.weight <= 0.0)
            throw InadmissibleParameters("atom weights must be positive, got " +
                                         std::to_string(a.weight));
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& l, const Atom& r) { return l.position < r.position; });
    std::vector<Atom> merged;
    merged.reserve(atoms.size());
    for (const Atom& a : atoms) {
        if (!merged.empty() && a.position - merged.back().position <= 1e-12)
            merged.back().weight += a.weight;
        else
            merged.push_back(a);
    }
    double total = 0.0;
    for (const Atom& a : merged) total += a.weight;
    if (std::abs(total - 1.0) > 1e-12)
        throw InadmissibleParameters("atom weights sum to " + std::to_string(total) +
                                     ", expected 1 within 1e-12");
    return Measure(AtomicMeasure{std::move(merged)});
}

Measure Measure::semicircle() { return Measure(SemicircleMeasure{}); }

Measure Measure::free_meixner(double a, double b, double d) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(d))
        throw InadmissibleParameters("free Meixner parameters must be finite");
    if (b >= 1.0 || d >= 1.0)
        throw InadmissibleParameters("free Meixner family requires b < 1 and d < 1");
    FreeMeixnerMeasure m{a, b, d};
    // f must stay positive across the support: check endpoints and, when the
    // parabola opens upward or downward, its vertex.
    const double lo = m.support_lo();
    const double hi = m.support_hi();
    double fmin = std::min(m.f(lo), m.f(hi));
    if (b != 0.0) {
        const double vx = -a * (1.0 - b) / (2.0 * b);
        if (vx > lo && vx < hi) fmin = std::min(fmin, m.f(vx));
    }
    if (!(fmin > 0.0))
        throw InadmissibleParameters("free Meixner parameters put a zero of f inside the support");
    // The density formula must account for all of the mass; a deficit signals
    // hidden atoms outside the absolutely continuous part.
    const double ac = meixner_ac_mass(m, 0);
    if (std::abs(ac - 1.0) > 1e-8)
        throw InadmissibleParameters(
            "free Meixner parameters leave mass outside the absolutely continuous part "
            "(density integrates to " +
            std::to_string(ac) + ")");
    return Measure(m);
}

Measure Measure::arcsine(double center, double half_width) {
    if (!std::isfinite(center) || !(half_width > 0.0) || !std::isfinite(half_width))
        throw InadmissibleParameters("arcsine law requires finite center and positive half width");
    return Measure(ArcsineMeasure{center, half_width});
}

Measure Measure::grid_density(DensityProfile profile, bool renormalize) {
    if (renormalize) {
        if (profile.values.size() < 2)
            throw GridTooCoarse("density profile requires at least 2 nodes");
        const double mass = profile.mass();
        if (!(mass > 0.0) || !std::isfinite(mass))
            throw DegenerateMeasure("density profile carries no mass to normalize");
        for (double& v : profile.values) v /= mass;
        profile.mass_tolerance = 1e-12;
    }
    profile.validate();
    return Measure(GridMeasure{std::move(profile)});
}

double moment(const Measure& m, int k) {
    check_order(k);
    if (k == 0) return 1.0;
    return std::visit(
        [k](const auto& alt) -> double {
            using T = std::decay_t<decltype(alt)>;
            if constexpr (std::is_same_v<T, AtomicMeasure>) {
                double acc = 0.0;
                for (const Atom& a : alt.atoms) acc += a.weight * std::pow(a.position, k);
                return acc;
            } else if constexpr (std::is_same_v<T, SemicircleMeasure>) {
                return (k % 2 != 0) ? 0.0 : kCatalan[static_cast<std::size_t>(k / 2)];
            } else if constexpr (std::is_same_v<T, FreeMeixnerMeasure>) {
                return meixner_ac_mass(alt, k);
            } else if constexpr (std::is_same_v<T, ArcsineMeasure>) {
                return arcsine_moment(alt, k);
            } else {
                return grid_moment(alt.profile, k);
            }
        },
        m.data());
}

double mean(const Measure& m) { return moment(m, 1); }

double variance(const Measure& m) {
    const double m1 = moment(m, 1);
    return moment(m, 2) - m1 * m1;
}

Measure standardize(const Measure& m) {
    if (!m.is_atomic()) throw InadmissibleParameters("standardize requires an atomic measure");
    const double mu = mean(m);
    const double var = variance(m);
    if (var <= 1e-14)
        throw DegenerateMeasure("cannot standardize a measure with variance " +
                                std::to_string(var));
    if (std::abs(mu) <= 1e-14 && std::abs(var - 1.0) <= 1e-14) return m;
    const double sigma = std::sqrt(var);
    std::vector<Atom> atoms = m.as_atomic().atoms;
    for (Atom& a : atoms) a.position = (a.position - mu) / sigma;
    return Measure::atomic(std::move(atoms));
}

double density_at(const Measure& m, double x) {
    return std::visit(
        [x](const auto& alt) -> double {
            using T = std::decay_t<decltype(alt)>;
            if constexpr (std::is_same_v<T, AtomicMeasure>) {
                throw AtomicDensity("atomic measures have no density");
            } else if constexpr (std::is_same_v<T, SemicircleMeasure>) {
                const double s = 4.0 - x * x;
                return s > 0.0 ? std::sqrt(s) / (2.0 * kPi) : 0.0;
            } else if constexpr (std::is_same_v<T, FreeMeixnerMeasure>) {
                const double r = 4.0 * (1.0 - alt.d) -
                                 (1.0 - alt.b) * (1.0 - alt.b) * (x - alt.a) * (x - alt.a);
                return r > 0.0 ? std::sqrt(r) / (2.0 * kPi * alt.f(x)) : 0.0;
            } else if constexpr (std::is_same_v<T, ArcsineMeasure>) {
                const double u = x - alt.center;
                const double s = alt.half_width * alt.half_width - u * u;
                return s > 0.0 ? 1.0 / (kPi * std::sqrt(s)) : 0.0;
            } else {
                return alt.profile.value_at(x);
            }
        },
        m.data());
}

DensityProfile sample_density(const Measure& m, const GridSpec& grid) {
    if (!(grid.hi > grid.lo) || grid.points < 2)
        throw InadmissibleParameters("grid requires hi > lo and at least 2 points");
    DensityProfile p;
    p.x0 = grid.lo;
    p.dx = (grid.hi - grid.lo) / static_cast<double>(grid.points - 1);
    p.values.resize(grid.points);
    for (std::size_t i = 0; i < grid.points; ++i) p.values[i] = density_at(m, p.x_at(i));

    double lo = grid.lo;
    double hi = grid.hi;
    std::visit(
        [&](const auto& alt) {
            using T = std::decay_t<decltype(alt)>;
            if constexpr (std::is_same_v<T, SemicircleMeasure>) {
                lo = -2.0;
                hi = 2.0;
            } else if constexpr (std::is_same_v<T, FreeMeixnerMeasure>) {
                lo = alt.support_lo();
                hi = alt.support_hi();
            } else if constexpr (std::is_same_v<T, ArcsineMeasure>) {
                lo = alt.center - alt.half_width;
                hi = alt.center + alt.half_width;
            } else if constexpr (std::is_same_v<T, GridMeasure>) {
                lo = alt.profile.support_lo;
                hi = alt.profile.support_hi;
            }
        },
        m.data());
    p.support_lo = std::max(lo, grid.lo);
    p.support_hi = std::min(hi, grid.hi);
    p.mass_tolerance = std::abs(1.0 - p.mass()) + 1e-15;
    return p;
}

} // namespace freeclt
