#include "freeclt/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "freeclt/expansion.hpp"
#include "freeclt/parallel.hpp"

namespace freeclt {

namespace {

constexpr double kPi = std::numbers::pi;

// Scale-invariant cap on a standardized density with an absolutely
// continuous part; values far above it on a single node are atoms the grid
// cannot represent.
constexpr double kDensityCap = 51.0;

double boundary_density(const Measure& m, int n, double x, const EpsPolicy& eps,
                        const SolveOptions& options) {
    auto at_height = [&](double h) {
        return -cauchy_mu_n(m, n, Complex(x, h), options).imag() / kPi;
    };
    if (eps.kind == EpsPolicy::Kind::fixed) return at_height(eps.eps);
    return 2.0 * at_height(0.5 * eps.eps) - at_height(eps.eps);
}

} // namespace

DensityProfile invert_density(const Measure& m, int n, const GridSpec& grid,
                              const EpsPolicy& eps, const SolveOptions& options) {
    if (grid.points < 201)
        throw GridTooCoarse("density inversion requires at least 201 grid points, got " +
                            std::to_string(grid.points));
    if (!(grid.hi > grid.lo))
        throw InadmissibleParameters("grid requires hi > lo");
    if (!(eps.eps > 0.0) || !std::isfinite(eps.eps))
        throw InadmissibleParameters("inversion height must be finite and positive");

    DensityProfile p;
    p.x0 = grid.lo;
    p.dx = (grid.hi - grid.lo) / static_cast<double>(grid.points - 1);
    p.values.resize(grid.points);
    parallel_for(grid.points, [&](std::size_t i) {
        p.values[i] = boundary_density(m, n, p.x_at(i), eps, options);
    });

    double clipped = 0.0;
    for (double& v : p.values) {
        if (v < 0.0) {
            clipped += -v * p.dx;
            v = 0.0;
        }
    }

    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        if (p.values[i] > kDensityCap && p.values[i] - p.values[i - 1] > 0.5 &&
            p.values[i] - p.values[i + 1] > 0.5)
            throw GridTooCoarse("isolated density spike of height " +
                                std::to_string(p.values[i]) + " at x = " +
                                std::to_string(p.x_at(i)) +
                                "; the measure has an atom the grid cannot resolve");
    }

    constexpr double kSupportFloor = 1e-7;
    std::size_t first = 0;
    std::size_t last = p.size() - 1;
    while (first < last && p.values[first] <= kSupportFloor) ++first;
    while (last > first && p.values[last] <= kSupportFloor) --last;
    p.support_lo = p.x_at(first);
    p.support_hi = p.x_at(last);
    p.mass_tolerance = std::abs(1.0 - p.mass()) + clipped + 1e-15;
    return p;
}

double l1_distance(const DensityProfile& p, const DensityProfile& q) {
    if (p.values.size() < 2 || q.values.size() < 2)
        throw GridTooCoarse("L1 distance requires profiles with at least 2 nodes");
    if (p.support_hi < q.support_lo || q.support_hi < p.support_lo)
        throw DisjointGrids("the density supports do not overlap");
    const double lo = std::min(p.x0, q.x0);
    const double hi = std::max(p.x_back(), q.x_back());
    const double dx = std::min(p.dx, q.dx);
    const auto points = static_cast<std::size_t>(std::ceil((hi - lo) / dx)) + 1;

    double acc = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        const double x = lo + dx * static_cast<double>(i);
        const double diff = std::abs(p.value_at(x) - q.value_at(x));
        acc += (i == 0 || i + 1 == points) ? 0.5 * diff : diff;
    }
    return acc * dx;
}

Window support_window(const CltCoefficients& c, double margin) {
    if (!(margin >= 0.0) || !std::isfinite(margin))
        throw InadmissibleParameters("window margin must be finite and nonnegative");
    const double half = 2.0 / c.e_n;
    if (margin >= half)
        throw EmptyWindow("margin " + std::to_string(margin) +
                          " swallows the support half width " + std::to_string(half));
    return {c.a_n - half + margin, c.a_n + half - margin};
}

Window support_window(const CltCoefficients& c) {
    return support_window(c, std::pow(static_cast<double>(c.n), -1.2));
}

} // namespace freeclt
