#include "freeclt/transforms.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

namespace freeclt {

namespace {

void check_upper(Complex z) {
    if (!(z.imag() > 0.0))
        throw LowerHalfPlane("transform arguments must satisfy Im z > 0, got Im z = " +
                             std::to_string(z.imag()));
}

/// Principal-branch square root of (z - lo)(z - hi) that behaves like z at
/// infinity and maps the upper half plane into itself factor by factor.
Complex edge_root(Complex z, double lo, double hi) {
    return std::sqrt(z - lo) * std::sqrt(z - hi);
}

Complex cauchy_grid(const DensityProfile& p, Complex z, bool derivative) {
    const double x_lo = p.x_at(0);
    const double x_hi = p.x_at(p.size() - 1);
    const double span = x_hi - x_lo;
    const double gap = std::max({x_lo - z.real(), z.real() - x_hi, 0.0});
    if (std::hypot(gap, z.imag()) >= 2.0 * span) {
        // Far from the support the per-cell log differences below lose all
        // relative accuracy, while the integrand is smooth there, so plain
        // trapezoid sums carry only O((dx/dist)^2) relative error.
        Complex acc = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double w = (i == 0 || i + 1 == p.size()) ? 0.5 : 1.0;
            const Complex inv = 1.0 / (z - p.x_at(i));
            acc += (w * p.values[i]) * (derivative ? -inv * inv : inv);
        }
        return acc * p.dx;
    }
    std::vector<Complex> logs(p.size());
    std::vector<Complex> invs;
    if (derivative) invs.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Complex d = z - p.x_at(i);
        logs[i] = std::log(d);
        if (derivative) invs[i] = 1.0 / d;
    }
    Complex acc = 0.0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        const double slope = (p.values[i + 1] - p.values[i]) / p.dx;
        const Complex head = p.values[i] - slope * p.x_at(i) + slope * z;
        if (derivative)
            acc -= head * (invs[i + 1] - invs[i]) + slope * (logs[i + 1] - logs[i]);
        else
            acc += head * (logs[i] - logs[i + 1]) - slope * p.dx;
    }
    return acc;
}

Complex meixner_root(double a, double b, double d, Complex z) {
    const double q = 2.0 * std::sqrt(1.0 - d);
    return edge_root((1.0 - b) * (z - a), -q, q);
}

Complex meixner_reciprocal_derivative(double a, double b, double d, Complex z) {
    const Complex s = meixner_root(a, b, d, z);
    return 0.5 * ((1.0 + b) + (1.0 - b) * (1.0 - b) * (z - a) / s);
}

struct CauchyPair {
    Complex g;
    Complex gp;
};

CauchyPair cauchy_impl(const Measure& m, Complex z, bool derivative) {
    return std::visit(
        [&](const auto& alt) -> CauchyPair {
            using T = std::decay_t<decltype(alt)>;
            if constexpr (std::is_same_v<T, AtomicMeasure>) {
                Complex g = 0.0, gp = 0.0;
                for (const Atom& a : alt.atoms) {
                    const Complex inv = 1.0 / (z - a.position);
                    g += a.weight * inv;
                    if (derivative) gp -= a.weight * inv * inv;
                }
                return {g, gp};
            } else if constexpr (std::is_same_v<T, SemicircleMeasure>) {
                // (z - r)/2 == 2/(z + r); the latter never cancels because Im z
                // and Im r are both positive, while the former loses all digits
                // for |z| >> 1.  Likewise g' = (1 - z/r)/2 == -g/r.
                const Complex r = edge_root(z, -2.0, 2.0);
                const Complex g = 2.0 / (z + r);
                return {g, derivative ? -g / r : 0.0};
            } else if constexpr (std::is_same_v<T, FreeMeixnerMeasure>) {
                const Complex f = meixner_reciprocal(alt.a, alt.b, alt.d, z);
                Complex gp = 0.0;
                if (derivative) {
                    const Complex fp = meixner_reciprocal_derivative(alt.a, alt.b, alt.d, z);
                    gp = -fp / (f * f);
                }
                return {1.0 / f, gp};
            } else if constexpr (std::is_same_v<T, ArcsineMeasure>) {
                const Complex r =
                    edge_root(z - alt.center, -alt.half_width, alt.half_width);
                return {1.0 / r, derivative ? -(z - alt.center) / (r * r * r) : 0.0};
            } else {
                return {cauchy_grid(alt.profile, z, false),
                        derivative ? cauchy_grid(alt.profile, z, true) : 0.0};
            }
        },
        m.data());
}

/// Root of a strictly monotone function on a sign-changing bracket, bisection
/// followed by guarded Newton polish.
template <class F, class DF>
double monotone_root(F&& f, DF&& df, double a, double b) {
    double fa = f(a);
    double fb = f(b);
    const bool increasing = fb > fa;
    for (int it = 0; it < 200 && (b - a) > 1e-16 * std::max({1.0, std::abs(a), std::abs(b)});
         ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if ((fm > 0.0) == increasing)
            b = mid, fb = fm;
        else
            a = mid, fa = fm;
    }
    double x = 0.5 * (a + b);
    for (int it = 0; it < 3; ++it) {
        const double step = f(x) / df(x);
        const double next = x - step;
        if (next <= a || next >= b) break;
        x = next;
    }
    return x;
}

} // namespace

Complex cauchy(const Measure& m, Complex z) {
    check_upper(z);
    return cauchy_impl(m, z, false).g;
}

Complex cauchy_derivative(const Measure& m, Complex z) {
    check_upper(z);
    return cauchy_impl(m, z, true).gp;
}

Complex reciprocal_cauchy(const Measure& m, Complex z) {
    check_upper(z);
    if (const auto* fm = m.get_if<FreeMeixnerMeasure>())
        return meixner_reciprocal(fm->a, fm->b, fm->d, z);
    return 1.0 / cauchy_impl(m, z, false).g;
}

Complex reciprocal_cauchy_derivative(const Measure& m, Complex z) {
    check_upper(z);
    if (const auto* fm = m.get_if<FreeMeixnerMeasure>())
        return meixner_reciprocal_derivative(fm->a, fm->b, fm->d, z);
    const auto [g, gp] = cauchy_impl(m, z, true);
    return -gp / (g * g);
}

Complex meixner_reciprocal(double a, double b, double d, Complex z) {
    check_upper(z);
    if (b >= 1.0 || d >= 1.0)
        throw InadmissibleParameters("meixner_reciprocal requires b < 1 and d < 1");
    const Complex s = meixner_root(a, b, d, z);
    return a + 0.5 * ((1.0 + b) * (z - a) + s);
}

double TauRepresentation::total() const {
    double s = 0.0;
    for (const Atom& a : atoms) s += a.weight;
    return s;
}

TauRepresentation tau_from_atomic(const Measure& m) {
    if (!m.is_atomic())
        throw InadmissibleParameters("tau representation requires an atomic measure");
    const auto& atoms = m.as_atomic().atoms;
    if (atoms.size() < 2)
        throw DegenerateMeasure("tau representation requires at least two atoms");
    if (std::abs(mean(m)) > 1e-12)
        throw InadmissibleParameters("tau representation requires a centered measure, mean = " +
                                     std::to_string(mean(m)));

    auto g = [&](double x) {
        double s = 0.0;
        for (const Atom& a : atoms) s += a.weight / (x - a.position);
        return s;
    };
    auto gp = [&](double x) {
        double s = 0.0;
        for (const Atom& a : atoms) {
            const double inv = 1.0 / (x - a.position);
            s -= a.weight * inv * inv;
        }
        return s;
    };

    TauRepresentation t;
    t.atoms.reserve(atoms.size() - 1);
    for (std::size_t j = 0; j + 1 < atoms.size(); ++j) {
        const double lo = atoms[j].position;
        const double hi = atoms[j + 1].position;
        // G runs from +inf to -inf across each gap between consecutive atoms.
        double delta = (hi - lo) * 1e-13;
        while (!(g(lo + delta) > 0.0 && g(hi - delta) < 0.0) && delta > (hi - lo) * 1e-16)
            delta *= 0.1;
        const double v = monotone_root(g, gp, lo + delta, hi - delta);
        t.atoms.push_back({v, -1.0 / gp(v)});
    }
    for (int k = 2; k <= 8; ++k) t.source_moments[static_cast<std::size_t>(k - 2)] = moment(m, k);

    for (int j = 0; j < 20; ++j) {
        const Complex z(-3.0 + 6.0 * j / 19.0, 0.5 + 0.1 * j);
        Complex rebuilt = z;
        for (const Atom& a : t.atoms) rebuilt += a.weight / (a.position - z);
        const Complex direct = reciprocal_cauchy(m, z);
        if (std::abs(rebuilt - direct) > 1e-10 * std::max(1.0, std::abs(direct)))
            throw PrecisionLoss("tau representation failed to reproduce the reciprocal Cauchy "
                                "transform at a checkpoint");
    }
    return t;
}

double moments_from_tau(const TauRepresentation& t, int k) {
    if (k < 0 || k > kMaxMomentOrder)
        throw UnsupportedMoment("moment order " + std::to_string(k) + " outside [0, " +
                                std::to_string(kMaxMomentOrder) + "]");
    if (t.atoms.empty()) throw EmptyTau("moment recovery requires a nonempty representation");
    if (k == 0) return 1.0;
    if (k == 1) return 0.0;

    // m_k = sum over l >= 1 of the coefficient of total degree k - 2l in the
    // l-fold convolution of the representing measure's moment sequence.
    const std::size_t len = static_cast<std::size_t>(k - 1);
    std::vector<double> tau_m(len, 0.0);
    for (std::size_t s = 0; s < len; ++s)
        for (const Atom& a : t.atoms)
            tau_m[s] += a.weight * std::pow(a.position, static_cast<double>(s));

    std::vector<double> layer = tau_m;
    double acc = 0.0;
    for (int l = 1; 2 * l <= k; ++l) {
        acc += layer[static_cast<std::size_t>(k - 2 * l)];
        if (2 * (l + 1) <= k) {
            std::vector<double> next(len, 0.0);
            for (std::size_t i = 0; i < len; ++i)
                for (std::size_t j = 0; i + j < len; ++j) next[i + j] += layer[i] * tau_m[j];
            layer = std::move(next);
        }
    }
    return acc;
}

double moments_from_cauchy(const Measure& m, int k, double y) {
    if (k < 0 || k > kMaxMomentOrder)
        throw UnsupportedMoment("moment order " + std::to_string(k) + " outside [0, " +
                                std::to_string(kMaxMomentOrder) + "]");
    if (!(y > 0.0) || !std::isfinite(y))
        throw InadmissibleParameters("moments_from_cauchy requires a finite positive height");
    const Complex z(0.0, y);
    Complex partial = cauchy(m, z);
    double max_re = std::abs(partial.real());
    double max_im = std::abs(partial.imag());
    Complex zp = z;
    for (int j = 0; j < k; ++j) {
        const Complex term = moment(m, j) / zp;
        partial -= term;
        max_re = std::max(max_re, std::abs(term.real()));
        max_im = std::max(max_im, std::abs(term.imag()));
        zp *= z;
    }
    // zp is now (iy)^{k+1}; only one component of the cancelled tail reaches
    // the real part of the product below.
    const bool real_component = ((k + 1) % 2) == 0;
    const double signal = real_component ? std::abs(partial.real()) : std::abs(partial.imag());
    const double scale = real_component ? max_re : max_im;
    if (signal < 1e6 * DBL_EPSILON * scale)
        throw PrecisionLoss("surviving expansion term at order " + std::to_string(k) +
                            " is below the cancellation noise floor for y = " +
                            std::to_string(y));
    return (zp * partial).real();
}

Measure measure_from_tau(const TauRepresentation& t) {
    if (t.atoms.empty()) throw EmptyTau("measure recovery requires a nonempty representation");
    auto f = [&](double x) {
        double s = x;
        for (const Atom& a : t.atoms) s += a.weight / (a.position - x);
        return s;
    };
    auto fp = [&](double x) {
        double s = 1.0;
        for (const Atom& a : t.atoms) {
            const double inv = 1.0 / (a.position - x);
            s += a.weight * inv * inv;
        }
        return s;
    };

    std::vector<double> poles;
    poles.reserve(t.atoms.size());
    for (const Atom& a : t.atoms) poles.push_back(a.position);

    std::vector<double> roots;
    roots.reserve(poles.size() + 1);
    const double span = std::max(1.0, poles.back() - poles.front());

    // Outermost brackets: F tends to -inf as x decreases and +inf as x grows.
    double left = poles.front() - 1.0;
    while (f(left) > 0.0) left -= span + std::abs(left);
    double gap = (poles.front() - left) * 1e-13;
    roots.push_back(monotone_root(f, fp, left, poles.front() - gap));

    for (std::size_t j = 0; j + 1 < poles.size(); ++j) {
        gap = (poles[j + 1] - poles[j]) * 1e-13;
        roots.push_back(monotone_root(f, fp, poles[j] + gap, poles[j + 1] - gap));
    }

    double right = poles.back() + 1.0;
    while (f(right) < 0.0) right += span + std::abs(right);
    gap = (right - poles.back()) * 1e-13;
    roots.push_back(monotone_root(f, fp, poles.back() + gap, right));

    std::vector<Atom> atoms;
    atoms.reserve(roots.size());
    double total = 0.0;
    for (double r : roots) {
        const double w = 1.0 / fp(r);
        atoms.push_back({r, w});
        total += w;
    }
    for (Atom& a : atoms) a.weight /= total;
    Measure star = Measure::atomic(std::move(atoms));
    if (std::abs(mean(star)) > 1e-10)
        throw PrecisionLoss("recovered measure drifted off center, mean = " +
                            std::to_string(mean(star)));
    return star;
}

TruncationResult truncate_tau(const TauRepresentation& t, int n) {
    if (n < 2) throw InadmissibleParameters("truncation requires n >= 2");
    if (t.atoms.empty()) throw EmptyTau("truncation requires a nonempty representation");
    const double cutoff = std::sqrt(static_cast<double>(n - 1)) / std::numbers::pi;
    TauRepresentation kept;
    kept.atoms.reserve(t.atoms.size());
    for (const Atom& a : t.atoms)
        if (std::abs(a.position) <= cutoff) kept.atoms.push_back(a);
    if (kept.atoms.empty())
        throw EmptyTau("no representing atoms inside |v| <= sqrt(n-1)/pi for n = " +
                       std::to_string(n));
    if (kept.atoms.size() == t.atoms.size()) kept = t;

    Measure star = measure_from_tau(kept);
    if (kept.atoms.size() != t.atoms.size())
        for (int k = 2; k <= 8; ++k)
            kept.source_moments[static_cast<std::size_t>(k - 2)] = moment(star, k);
    return {std::move(kept), std::move(star)};
}

} // namespace freeclt
