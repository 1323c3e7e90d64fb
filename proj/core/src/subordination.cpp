#include "freeclt/subordination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Eigenvalues>

#include "freeclt/expansion.hpp"

namespace freeclt {

namespace {

Complex subordination_residual(const Measure& m, int n, Complex target, Complex w) {
    return target - static_cast<double>(n) * w +
           static_cast<double>(n - 1) * reciprocal_cauchy(m, w);
}

/// Roots of a monic polynomial given by ascending coefficients (the leading 1
/// is implicit) via the companion matrix.
std::vector<Complex> monic_roots(const std::vector<Complex>& coeffs) {
    const auto k = static_cast<Eigen::Index>(coeffs.size());
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(k, k);
    for (Eigen::Index i = 0; i + 1 < k; ++i) companion(i + 1, i) = 1.0;
    for (Eigen::Index i = 0; i < k; ++i)
        companion(i, k - 1) = -coeffs[static_cast<std::size_t>(i)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<Complex> roots(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    return roots;
}

} // namespace

SubordinationSolution solve_Z(const Measure& m, int n, Complex z, const SolveOptions& options) {
    if (n < 1) throw InadmissibleParameters("subordination requires n >= 1");
    if (!(z.imag() > 0.0))
        throw LowerHalfPlane("subordination requires Im z > 0, got Im z = " +
                             std::to_string(z.imag()));
    if (!(options.tol > 0.0) || options.max_iter < 1)
        throw InadmissibleParameters("subordination options require tol > 0 and max_iter >= 1");

    const double scale = std::max(1.0, std::abs(z));
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    if (n == 1) return {z, n, z, z / sqrt_n, 0, 0.0};

    const double tol = options.tol * scale;

    // Continuation in the imaginary offset: start high in the half plane
    // where the fixed-point map contracts strongly, then step the target down
    // to z itself. Within each stage Newton steps are tried first and a
    // damped fixed-point step covers the rejections.
    std::vector<double> offsets;
    for (double d = scale; d > 0.25 * z.imag(); d /= 8.0) offsets.push_back(d);
    offsets.push_back(0.0);

    Complex w = z + Complex(0.0, offsets.front());
    int total_iterations = 0;
    double residual = 0.0;

    for (std::size_t stage = 0; stage < offsets.size(); ++stage) {
        const Complex target = z + Complex(0.0, offsets[stage]);
        const double floor_im = target.imag() / n - 1e-15;
        const double stage_tol =
            stage + 1 == offsets.size() ? tol : std::max(tol, 1e-9 * scale);

        Complex g = subordination_residual(m, n, target, w);
        while (std::abs(g) > stage_tol) {
            if (total_iterations >= options.max_iter)
                throw NoConvergence("subordination stalled after " +
                                    std::to_string(total_iterations) + " iterations at |g| = " +
                                    std::to_string(std::abs(g)));
            bool accepted = false;
            const Complex dg =
                -static_cast<double>(n) +
                static_cast<double>(n - 1) * reciprocal_cauchy_derivative(m, w);
            if (dg != Complex(0.0)) {
                const Complex full = -g / dg;
                double lambda = 1.0;
                for (int bt = 0; bt < 4 && !accepted; ++bt, lambda *= 0.5) {
                    const Complex trial = w + lambda * full;
                    if (trial.imag() < floor_im) continue;
                    const Complex g_trial = subordination_residual(m, n, target, trial);
                    if (std::abs(g_trial) < std::abs(g)) {
                        w = trial;
                        g = g_trial;
                        accepted = true;
                    }
                }
            }
            if (!accepted) {
                Complex next =
                    (target + static_cast<double>(n - 1) * reciprocal_cauchy(m, w)) /
                    static_cast<double>(n);
                if (next.imag() < floor_im) next = Complex(next.real(), floor_im);
                w = next;
                g = subordination_residual(m, n, target, w);
            }
            ++total_iterations;
        }
        residual = std::abs(g);
    }
    return {z, n, w, w / sqrt_n, total_iterations, residual};
}

Complex cauchy_mu_n(const Measure& m, int n, Complex z, const SolveOptions& options) {
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const SubordinationSolution sol = solve_Z(m, n, sqrt_n * z, options);
    return sqrt_n / reciprocal_cauchy(m, sol.Z);
}

Complex polynomial_oracle(const Measure& m, int n, Complex z) {
    if (!m.is_atomic())
        throw InadmissibleParameters("the polynomial oracle requires an atomic measure");
    if (n < 1) throw InadmissibleParameters("the polynomial oracle requires n >= 1");
    if (!(z.imag() > 0.0))
        throw LowerHalfPlane("the polynomial oracle requires Im z > 0");
    const auto& atoms = m.as_atomic().atoms;
    const std::size_t k = atoms.size();

    // Q(w) = prod (w - u_j), ascending coefficients.
    std::vector<double> q(k + 1, 0.0);
    q[0] = 1.0;
    std::size_t degree = 0;
    for (const Atom& a : atoms) {
        ++degree;
        for (std::size_t i = degree; i > 0; --i) q[i] = q[i - 1] - a.position * q[i];
        q[0] *= -a.position;
    }

    // P(w) = sum_j weight_j * Q(w) / (w - u_j) by synthetic division.
    std::vector<double> p(k, 0.0);
    std::vector<double> s(k, 0.0);
    for (const Atom& a : atoms) {
        s[k - 1] = q[k];
        for (std::size_t i = k - 1; i > 0; --i) s[i - 1] = q[i] + a.position * s[i];
        for (std::size_t i = 0; i < k; ++i) p[i] += a.weight * s[i];
    }

    // Clearing denominators in z = n w - (n-1) F(w) with F = Q/P gives
    // R(w) = n w P(w) - (n-1) Q(w) - z P(w), monic of degree k.
    auto clt_coeffs = [&](Complex at) {
        std::vector<Complex> r(k, 0.0);
        for (std::size_t i = 0; i < k; ++i) {
            Complex c = -static_cast<double>(n - 1) * q[i] - at * p[i];
            if (i > 0) c += static_cast<double>(n) * p[i - 1];
            r[i] = c;
        }
        // Leading coefficient n * p[k-1] - (n-1) * q[k] = 1; no rescale needed.
        return r;
    };

    const Complex z0(0.0, 1000.0);
    auto nearest_pair = [](const std::vector<Complex>& roots, Complex ref) {
        std::size_t best = 0;
        double d1 = std::abs(roots[0] - ref);
        double d2 = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < roots.size(); ++i) {
            const double d = std::abs(roots[i] - ref);
            if (d < d1) {
                d2 = d1;
                d1 = d;
                best = i;
            } else {
                d2 = std::min(d2, d);
            }
        }
        return std::tuple(best, d1, d2);
    };

    auto initial = monic_roots(clt_coeffs(z0));
    auto [idx0, d10, d20] = nearest_pair(initial, z0);
    (void)d10;
    (void)d20;
    Complex current = initial[idx0];

    double t = 0.0;
    double dt = 0.05;
    while (t < 1.0) {
        const double t_next = std::min(1.0, t + dt);
        const Complex z_t = z0 + t_next * (z - z0);
        const auto roots = monic_roots(clt_coeffs(z_t));
        const auto [best, d1, d2] = nearest_pair(roots, current);
        if (roots.size() > 1 && d2 - d1 < 1e-12)
            throw PathAmbiguity("two candidate branches collide along the continuation path");
        if (roots.size() > 1 && d1 > 0.5 * d2) {
            dt *= 0.5;
            if (dt < 1e-7)
                throw PathAmbiguity("continuation step size underflowed before the branches "
                                    "separated");
            continue;
        }
        current = roots[best];
        t = t_next;
        dt = std::min(0.2, dt * 1.5);
    }

    // Newton polish on R at the target point.
    const auto r = clt_coeffs(z);
    for (int it = 0; it < 20; ++it) {
        Complex value = 1.0;
        Complex derivative = 0.0;
        for (std::size_t i = k; i > 0; --i) {
            derivative = derivative * current + value;
            value = value * current + r[i - 1];
        }
        if (derivative == Complex(0.0)) break;
        const Complex step = value / derivative;
        current -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(current))) break;
    }
    return current;
}

double meixner_closeness(const Measure& m, int n, const GridSpec& grid) {
    if (std::abs(mean(m)) > 1e-9 || std::abs(variance(m) - 1.0) > 1e-9)
        throw InadmissibleParameters("the closeness statistic requires a standardized measure");
    if (!(grid.hi > grid.lo) || grid.points < 2)
        throw InadmissibleParameters("grid requires hi > lo and at least 2 points");
    const CltCoefficients c = coefficients(moment(m, 3), moment(m, 4), n);
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double eps = 1e-7;
    const double dx = (grid.hi - grid.lo) / static_cast<double>(grid.points - 1);

    double worst = 0.0;
    for (std::size_t i = 0; i < grid.points; ++i) {
        const double x = grid.lo + dx * static_cast<double>(i);
        const Complex z(x, eps);
        const SubordinationSolution sol = solve_Z(m, n, sqrt_n * z);
        const Complex sn = sol.Z / sqrt_n;
        const Complex matched = meixner_reciprocal(c.a_n, c.b_n, c.d_n, z);
        const double u = c.e_n * (x - c.a_n);
        const double weight = std::sqrt(std::abs(4.0 - u * u));
        worst = std::max(worst, std::abs(sn - matched) * weight);
    }
    return std::pow(static_cast<double>(n), 1.5) * worst;
}

} // namespace freeclt
