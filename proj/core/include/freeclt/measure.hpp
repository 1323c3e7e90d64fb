#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "freeclt/errors.hpp"

namespace freeclt {

struct Atom {
    double position = 0.0;
    double weight = 0.0;
};

/// Uniformly spaced piecewise-linear density sample. `support_lo/hi` bound the
/// region where the density is considered nonzero; they always lie inside the
/// grid range. `mass_tolerance` records how far the trapezoid mass is allowed
/// to deviate from 1 for this profile.
struct DensityProfile {
    double x0 = 0.0;
    double dx = 1.0;
    std::vector<double> values;
    double support_lo = 0.0;
    double support_hi = 0.0;
    double mass_tolerance = 1e-8;

    std::size_t size() const noexcept { return values.size(); }
    double x_at(std::size_t i) const noexcept { return x0 + dx * static_cast<double>(i); }
    double x_back() const noexcept { return x_at(values.empty() ? 0 : values.size() - 1); }

    /// Trapezoid mass of the sampled density.
    double mass() const;

    /// Linear interpolation between nodes; 0 outside the grid.
    double value_at(double x) const;

    /// Throws on violated invariants (spacing, negativity, support, mass).
    void validate() const;
};

/// Evaluation grid request: `points` nodes uniformly covering [lo, hi].
struct GridSpec {
    double lo = -4.0;
    double hi = 4.0;
    std::size_t points = 2001;
};

struct AtomicMeasure {
    std::vector<Atom> atoms; // sorted by position, weights > 0, total mass 1
};

/// Standard semicircle law: density sqrt(4 - x^2)/(2 pi) on [-2, 2].
struct SemicircleMeasure {};

/// Absolutely continuous free Meixner family member with parameters (a, b, d),
/// b < 1, d < 1: density sqrt(4(1-d) - (1-b)^2 (x-a)^2) / (2 pi f(x)) on
/// [a - 2 sqrt(1-d)/(1-b), a + 2 sqrt(1-d)/(1-b)], f(x) = b x^2 + a(1-b)x + 1-d.
struct FreeMeixnerMeasure {
    double a = 0.0;
    double b = 0.0;
    double d = 0.0;
    double support_lo() const;
    double support_hi() const;
    double f(double x) const { return b * x * x + a * (1.0 - b) * x + 1.0 - d; }
};

/// Arcsine law on [center - half_width, center + half_width].
struct ArcsineMeasure {
    double center = 0.0;
    double half_width = 1.0;
};

struct GridMeasure {
    DensityProfile profile;
};

using MeasureVariant =
    std::variant<AtomicMeasure, SemicircleMeasure, FreeMeixnerMeasure, ArcsineMeasure, GridMeasure>;

/// Probability measure on the real line, restricted to the shapes the library
/// can transform. Construction validates normalization and admissibility.
class Measure {
public:
    static Measure atomic(std::vector<Atom> atoms);
    static Measure semicircle();
    static Measure free_meixner(double a, double b, double d);
    static Measure arcsine(double center, double half_width);

    /// Wraps a density profile; by default rescales values so the trapezoid
    /// mass is exactly 1 (profiles sampled from exact densities carry O(dx^2)
    /// discretization mass error that would otherwise fail validation).
    static Measure grid_density(DensityProfile profile, bool renormalize = true);

    const MeasureVariant& data() const noexcept { return v_; }

    bool is_atomic() const noexcept { return std::holds_alternative<AtomicMeasure>(v_); }
    const AtomicMeasure& as_atomic() const { return std::get<AtomicMeasure>(v_); }

    template <class T>
    const T* get_if() const noexcept {
        return std::get_if<T>(&v_);
    }

private:
    explicit Measure(MeasureVariant v) : v_(std::move(v)) {}
    MeasureVariant v_;
};

/// Largest moment order the library evaluates.
inline constexpr int kMaxMomentOrder = 16;

/// k-th raw moment, k in [0, kMaxMomentOrder].
double moment(const Measure& m, int k);

double mean(const Measure& m);
double variance(const Measure& m);

/// Affine rescale of an atomic measure to mean 0, variance 1.
Measure standardize(const Measure& m);

/// Density value at x; throws AtomicDensity for atomic measures.
double density_at(const Measure& m, double x);

/// Samples density_at on a uniform grid and packages it as a profile with the
/// achieved trapezoid-mass tolerance.
DensityProfile sample_density(const Measure& m, const GridSpec& grid);

} // namespace freeclt
