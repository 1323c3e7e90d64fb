#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "freeclt/density.hpp"

#include "support.hpp"

#include <cmath>
#include <vector>

using namespace freeclt;
using namespace testsupport;

namespace {

// Independent high-resolution quadrature value of
// integral |p_w - arcsine([-sqrt2, sqrt2])|; curves cross at sqrt(3 - sqrt5).
constexpr double kSemicircleArcsineL1 = 0.5914361512197350;

DensityProfile triangle_profile(double lo, double hi) {
    DensityProfile p;
    const std::size_t points = 101;
    p.x0 = lo;
    p.dx = (hi - lo) / static_cast<double>(points - 1);
    p.values.resize(points);
    const double width = hi - lo;
    for (std::size_t i = 0; i < points; ++i) {
        const double t = 2.0 * (p.x_at(i) - lo) / width - 1.0;
        p.values[i] = 2.0 / width * (1.0 - std::abs(t));
    }
    p.support_lo = lo;
    p.support_hi = hi;
    p.mass_tolerance = 1e-9;
    return p;
}

double mass_outside(const DensityProfile& p, const Window& w) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double x = p.x_at(i);
        if (x < w.lo || x > w.hi) acc += p.values[i] * p.dx;
    }
    return acc;
}

} // namespace

TEST_CASE("Bernoulli doubling inverts to the arcsine density") {
    const DensityProfile p = invert_density(bernoulli(), 2, {-2.0, 2.0, 2001});
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double x = p.x_at(i);
        if (std::abs(x) <= 1.2)
            CHECK(std::abs(p.values[i] - arcsine_density_value(x)) <= 1e-6);
    }
    // Trapezoid mass overshoots by O(sqrt(dx)) at inverse-square-root edges
    // (about 0.5 * sqrt(0.002) here), and mass_tolerance must own the excess.
    CHECK(p.mass() >= 0.99);
    CHECK(p.mass() <= 1.03);
    CHECK(p.mass_tolerance >= std::abs(1.0 - p.mass()));
}

TEST_CASE("the semicircle is reproduced at any convolution order") {
    const DensityProfile p = invert_density(Measure::semicircle(), 5, {-4.0, 4.0, 2001});
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double x = p.x_at(i);
        if (std::abs(x) <= 1.8)
            CHECK(std::abs(p.values[i] - semicircle_density_value(x)) <= 1e-6);
    }
}

TEST_CASE("density stays below the standardized cap") {
    for (int n : {2, 16}) {
        const DensityProfile p = invert_density(bernoulli(), n, {-4.0, 4.0, 2001});
        for (double v : p.values) CHECK(v <= 51.0);
    }
    const DensityProfile q = invert_density(skewed_two_atom(), 16, {-4.0, 4.0, 2001});
    for (double v : q.values) CHECK(v <= 51.0);
}

TEST_CASE("unresolved atoms raise GridTooCoarse") {
    // n = 1 leaves the atoms in place; the Poisson kernel of an atom is a
    // narrow spike of height 1/(2 pi eps) at a node on the atom.
    CHECK_THROWS_AS(invert_density(bernoulli(), 1, {-2.0, 2.0, 2001}), GridTooCoarse);
    CHECK_THROWS_AS(invert_density(bernoulli(), 2, {-2.0, 2.0, 51}), GridTooCoarse);
}

TEST_CASE("both height policies agree in the interior") {
    const EpsPolicy fixed{EpsPolicy::Kind::fixed, 1e-5};
    const EpsPolicy richardson{};
    const DensityProfile pf = invert_density(bernoulli(), 2, {-2.0, 2.0, 801}, fixed);
    const DensityProfile pr = invert_density(bernoulli(), 2, {-2.0, 2.0, 801}, richardson);
    for (std::size_t i = 0; i < pf.size(); ++i) {
        if (std::abs(pf.x_at(i)) <= 1.0) {
            // The fixed policy carries the O(eps) Poisson bias the Richardson
            // combination cancels.
            CHECK(std::abs(pf.values[i] - pr.values[i]) <= 1e-4);
            CHECK(std::abs(pr.values[i] - arcsine_density_value(pr.x_at(i))) <= 1e-6);
        }
    }
}

TEST_CASE("l1 distance basics") {
    const DensityProfile pw = sample_density(Measure::semicircle(), {-2.5, 2.5, 4001});
    const DensityProfile pa =
        sample_density(Measure::arcsine(0.0, std::sqrt(2.0)), {-2.5, 2.5, 4001});
    const DensityProfile pm =
        sample_density(Measure::free_meixner(0.1, 0.02, 0.05), {-2.5, 2.5, 4001});

    CHECK(l1_distance(pw, pw) == 0.0);
    const double ab = l1_distance(pw, pa);
    CHECK(ab == l1_distance(pa, pw));
    CHECK(ab > 0.0);
    CHECK(l1_distance(pw, pm) <= l1_distance(pw, pa) + l1_distance(pa, pm) + 1e-12);
}

TEST_CASE("l1 against the frozen semicircle/arcsine value") {
    const DensityProfile pw = sample_density(Measure::semicircle(), {-2.5, 2.5, 16001});
    const DensityProfile pa =
        sample_density(Measure::arcsine(0.0, std::sqrt(2.0)), {-2.5, 2.5, 16001});
    // The arcsine edge is a 1/sqrt singularity; the sampled profile loses
    // O(sqrt(dx)) edge mass, which bounds the discretization gap here.
    CHECK(std::abs(l1_distance(pw, pa) - kSemicircleArcsineL1) <= 5e-3);
}

TEST_CASE("disjoint supports are rejected") {
    CHECK_THROWS_AS(l1_distance(triangle_profile(0.0, 1.0), triangle_profile(3.0, 4.0)),
                    DisjointGrids);
}

TEST_CASE("resampling onto the finer grid keeps the distance") {
    const DensityProfile coarse = sample_density(Measure::semicircle(), {-2.5, 2.5, 2001});
    const DensityProfile fine = sample_density(Measure::semicircle(), {-2.5, 2.5, 8001});
    CHECK(l1_distance(coarse, fine) <= 2e-4);
}

TEST_CASE("support window arithmetic") {
    const CltCoefficients c = coefficients(0.0, 1.0, 100); // Bernoulli moments
    const Window w = support_window(c, 0.0);
    const double expected = 2.0 * std::sqrt(0.99);
    CHECK(std::abs(w.lo + expected) <= 1e-14);
    CHECK(std::abs(w.hi - expected) <= 1e-14);
    CHECK_THROWS_AS(support_window(c, expected), EmptyWindow);

    const Measure s = skewed_two_atom();
    const CltCoefficients cs = coefficients(s, 64);
    const Window ws = support_window(cs, 0.1);
    CHECK(std::abs((ws.lo + ws.hi) / 2.0 - cs.a_n) <= 1e-14);
    CHECK(std::abs(cs.a_n - moment(s, 3) / 8.0) <= 1e-14);

    const Window wd = support_window(cs);
    CHECK(wd.lo > ws.lo - 0.1);
    CHECK(wd.hi < ws.hi + 0.1);
}

TEST_CASE("tail mass outside the expansion window decays") {
    for (const Measure& m : {bernoulli(), skewed_two_atom()}) {
        for (int n : {64, 128, 256}) {
            const DensityProfile p = invert_density(m, n, {-4.0, 4.0, 2001});
            const Window w = support_window(coefficients(m, n));
            CHECK(mass_outside(p, w) <= 5.0 * std::pow(n, -1.2));
        }
    }
}

TEST_CASE("symmetric measures invert to symmetric densities") {
    for (int n : {4, 64}) {
        const DensityProfile p = invert_density(bernoulli(), n, {-3.0, 3.0, 1201});
        const std::size_t last = p.size() - 1;
        for (std::size_t i = 0; i < p.size(); ++i)
            CHECK(std::abs(p.values[i] - p.values[last - i]) <= 1e-9);
    }
}

TEST_CASE("grid refinement moves the L1 distance below reporting precision") {
    double values[2];
    int slot = 0;
    for (std::size_t points : {2001u, 4001u}) {
        const DensityProfile pn = invert_density(bernoulli(), 64, {-4.0, 4.0, points});
        const DensityProfile pw = sample_density(Measure::semicircle(), {-4.0, 4.0, points});
        values[slot++] = l1_distance(pn, pw);
    }
    CHECK(std::abs(values[0] - values[1]) < 1e-4);
}
