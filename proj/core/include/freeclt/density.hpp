#pragma once

#include "freeclt/expansion.hpp"
#include "freeclt/measure.hpp"
#include "freeclt/subordination.hpp"

namespace freeclt {

/// How the boundary density is extracted from the Cauchy transform evaluated
/// at height eps above the real axis. `richardson` combines heights eps and
/// eps/2 to cancel the O(eps) term of the Poisson smoothing; `fixed` reads a
/// single height.
struct EpsPolicy {
    enum class Kind { richardson, fixed };
    Kind kind = Kind::richardson;
    double eps = 1e-5;
};

/// Density of the standardized n-fold free additive convolution of m on the
/// grid, via -Im G/pi just above the axis. Small negative values from the
/// finite height are clipped to zero and the clipped mass is folded into the
/// profile's mass tolerance. A narrow spike far above the scale-invariant
/// density cap signals an unresolved atom and raises GridTooCoarse.
DensityProfile invert_density(const Measure& m, int n, const GridSpec& grid,
                              const EpsPolicy& eps = {}, const SolveOptions& options = {});

/// L1 distance between two sampled densities: both are resampled linearly on
/// the finer spacing over the union of the grid ranges and the absolute
/// difference is integrated by trapezoid. Symmetric in its arguments.
double l1_distance(const DensityProfile& p, const DensityProfile& q);

struct Window {
    double lo = 0.0;
    double hi = 0.0;
};

/// Interior window of the expansion support [a_n - 2/e_n, a_n + 2/e_n],
/// shrunk by `margin` on both sides.
Window support_window(const CltCoefficients& c, double margin);

/// Default margin n^{-6/5}, matching the edge layer the expansion cannot
/// resolve.
Window support_window(const CltCoefficients& c);

} // namespace freeclt
