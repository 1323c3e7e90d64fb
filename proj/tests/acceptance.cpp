// Acceptance gate: every release-blocking numeric claim, one line of output
// per criterion. Exit code is the number of failed criteria.

#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "freeclt/density.hpp"
#include "freeclt/entropy.hpp"
#include "freeclt/expansion.hpp"
#include "freeclt/measure.hpp"
#include "freeclt/subordination.hpp"
#include "freeclt/transforms.hpp"

#include "support.hpp"

using namespace freeclt;
using namespace testsupport;

namespace {

int failures = 0;

void line(int id, bool pass, const std::string& detail) {
    std::printf("[%s] %d. %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* format, ...) {
    char buffer[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buffer, sizeof buffer, format, args);
    va_end(args);
    return buffer;
}

double chi_w() { return 0.5 * std::log(2.0 * kPi) + 0.5; }

// ---- criterion 1: closed forms of the entropy functionals ----------------

void criterion_closed_forms() {
    const DensityProfile p8 = sample_density(Measure::semicircle(), {-2.05, 2.05, 8001});
    const DensityProfile p16 = sample_density(Measure::semicircle(), {-2.05, 2.05, 16001});
    const DensityProfile p64 = sample_density(Measure::semicircle(), {-2.05, 2.05, 64001});

    const double chi_err = std::abs(free_entropy(p8) - chi_w());
    const double fisher_err = std::abs(fisher_information(p16) - 1.0);
    const double energy_err = std::abs(log_energy(p8) - (-0.25));

    double plain_err = 0.0;
    double weighted_err = 0.0;
    for (int j = 0; j < 50; ++j) {
        const double x = -1.96 + 0.08 * j;
        plain_err = std::max(plain_err,
                             std::abs(log_potential(p64, x) - (0.25 * x * x - 0.5)));
        weighted_err = std::max(
            weighted_err, std::abs(weighted_log_potential(p64, x) - (-x + x * x * x / 6.0)));
    }

    const bool pass = chi_err <= 1e-4 && fisher_err <= 1e-6 && energy_err <= 1e-4 &&
                      plain_err <= 1e-6 && weighted_err <= 1e-6;
    line(1, pass,
         fmt("closed forms: |chi-chi_w|=%.2e (tol 1e-4), |Phi-1|=%.2e (tol 1e-6), "
             "|logE+1/4|=%.2e (tol 1e-4), potential errors %.2e/%.2e (tol 1e-6)",
             chi_err, fisher_err, energy_err, plain_err, weighted_err));
}

// ---- criterion 2: convolution against independent oracles ----------------

void criterion_convolution_oracles() {
    const DensityProfile p2 = invert_density(bernoulli(), 2, {-2.0, 2.0, 2001});
    double density_err = 0.0;
    for (std::size_t i = 0; i < p2.size(); ++i) {
        const double x = p2.x_at(i);
        if (std::abs(x) > 1.2) continue;
        density_err =
            std::max(density_err, std::abs(p2.values[i] - 1.0 / (kPi * std::sqrt(2.0 - x * x))));
    }

    auto rng = test_rng(0xacce901u);
    const int counts[] = {2, 3, 3, 4, 5};
    double solver_err = 0.0;
    for (int count : counts) {
        const Measure m = random_standardized_atoms(rng, count);
        for (int n : {2, 3, 8, 32}) {
            for (int i = 0; i < 10; ++i) {
                for (int j = 0; j < 10; ++j) {
                    const Complex z(-2.7 + 0.6 * i, 0.05 + 0.272 * j);
                    const Complex solved = solve_Z(m, n, z).Z;
                    const Complex oracle = polynomial_oracle(m, n, z);
                    solver_err = std::max(solver_err, std::abs(solved - oracle));
                }
            }
        }
    }

    const bool pass = density_err <= 1e-6 && solver_err <= 1e-10;
    line(2, pass,
         fmt("convolution oracles: two-atom n=2 vs arcsine max err %.2e on |x|<=1.2 "
             "(tol 1e-6); solver vs polynomial oracle max err %.2e over 5 measures x "
             "n in {2,3,8,32} x 100 z (tol 1e-10)",
             density_err, solver_err));
}

// ---- criteria 3 and 7 share the symmetric two-atom profiles ---------------

std::map<int, DensityProfile> bernoulli_profiles() {
    std::map<int, DensityProfile> out;
    for (int n : {32, 64, 128, 256})
        out.emplace(n, invert_density(bernoulli(), n, {-4.0, 4.0, 2001}));
    return out;
}

void criterion_symmetric_l1(const std::map<int, DensityProfile>& profiles,
                            const DensityProfile& p_w) {
    const double limit = 2.0 / kPi;
    std::vector<double> ns;
    std::vector<double> l1s;
    double worst_rel = 0.0;
    double rel_128 = 0.0;
    for (const auto& [n, profile] : profiles) {
        const double l1 = l1_distance(profile, p_w);
        ns.push_back(n);
        l1s.push_back(l1);
        const double rel = std::abs(n * l1 - limit) / limit;
        worst_rel = std::max(worst_rel, rel);
        if (n == 128) rel_128 = rel;
    }
    const RateFit fit = fit_log_rate(ns, l1s);

    const bool pass = worst_rel <= 0.25 && rel_128 <= 0.10 && fit.exponent >= 0.9 &&
                      fit.exponent <= 1.1;
    line(3, pass,
         fmt("symmetric L1 rate: max |n*L1 - 2/pi| = %.1f%% over n in {32..256} (tol 25%%), "
             "%.1f%% at n=128 (tol 10%%), fitted exponent %.3f (window [0.9, 1.1])",
             100.0 * worst_rel, 100.0 * rel_128, fit.exponent));
}

void criterion_expansion_residual(const std::map<int, DensityProfile>& profiles) {
    auto residual = [&](int n) {
        const DensityProfile& p = profiles.at(n);
        const CltCoefficients c = coefficients(bernoulli(), n);
        const Window window = support_window(c);
        double worst = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double x = p.x_at(i);
            if (x < window.lo || x > window.hi) continue;
            const double u = c.e_n * (x - c.a_n);
            const double weight = std::sqrt(std::max(0.0, 4.0 - u * u));
            worst = std::max(worst,
                             std::abs(p.values[i] - th7_density(c, x - c.a_n)) * weight);
        }
        return worst;
    };

    const double r32 = residual(32);
    const double r64 = residual(64);
    const double r128 = residual(128);
    const double r256 = residual(256);
    const bool pass = r32 >= 2.0 * r128 && r64 >= 2.0 * r256;
    line(7, pass,
         fmt("expansion residual: weighted sup decays %.1fx from n=32 to 128 and %.1fx "
             "from n=64 to 256 (tol >= 2x)",
             r32 / r128, r64 / r256));
}

// ---- criterion 4/5/6: skewed rates and the semicircle fixed point ---------

void criterion_rates() {
    const Measure skewed = skewed_two_atom();
    const double m3 = moment(skewed, 3);

    const DensityProfile p_w = sample_density(Measure::semicircle(), {-4.0, 4.0, 8001});
    const DensityProfile sk256 = invert_density(skewed, 256, {-4.0, 4.0, 8001});
    const DensityProfile b256 = invert_density(bernoulli(), 256, {-4.0, 4.0, 8001});

    // 4: first-order L1 rate in the skewed case.
    const double l1_limit = 2.0 * std::abs(m3) / kPi;
    const double scaled_l1 = std::sqrt(256.0) * l1_distance(sk256, p_w);
    const double l1_rel = std::abs(scaled_l1 - l1_limit) / l1_limit;
    line(4, l1_rel <= 0.15,
         fmt("skewed L1 rate: sqrt(n)*L1 = %.4f vs 2|m3|/pi = %.4f at n=256, off by %.1f%% "
             "(tol 15%%)",
             scaled_l1, l1_limit, 100.0 * l1_rel));

    // 5: entropic rate.
    const double chi_limit = m3 * m3 / 6.0;
    const double sk_deficit = 256.0 * (chi_w() - free_entropy(sk256));
    const double chi_rel = std::abs(sk_deficit - chi_limit) / chi_limit;
    const double b_deficit = 256.0 * (chi_w() - free_entropy(b256));
    line(5, chi_rel <= 0.20 && b_deficit <= 0.02,
         fmt("entropic rate: skewed n*deficit = %.4f vs m3^2/6 = %.4f, off by %.1f%% "
             "(tol 20%%); symmetric n*deficit = %.4f (tol <= 0.02)",
             sk_deficit, chi_limit, 100.0 * chi_rel, b_deficit));

    // 6: Fisher rate plus the fixed point.
    const double fisher_limit = m3 * m3;
    const double sk_excess = 256.0 * (fisher_information(sk256) - 1.0);
    const double fisher_rel = std::abs(sk_excess - fisher_limit) / fisher_limit;
    double w_excess = 0.0;
    for (int n : {2, 4, 16, 64, 256}) {
        const DensityProfile p = invert_density(Measure::semicircle(), n, {-4.0, 4.0, 4001});
        w_excess = std::max(w_excess, std::abs(fisher_information(p) - 1.0));
    }
    line(6, fisher_rel <= 0.15 && w_excess <= 1e-4,
         fmt("Fisher rate: skewed n*excess = %.4f vs m3^2 = %.4f, off by %.1f%% (tol 15%%); "
             "semicircle |excess| <= %.2e over n in {2..256} (tol 1e-4)",
             sk_excess, fisher_limit, 100.0 * fisher_rel, w_excess));
}

// ---- criterion 8: moment identities ---------------------------------------

void criterion_moments() {
    auto rng = test_rng(0xacce908u);
    std::uniform_int_distribution<int> count(2, 6);
    double round_trip_err = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const Measure m = random_standardized_atoms(rng, count(rng));
        const TauRepresentation tau = tau_from_atomic(m);
        for (int k = 2; k <= 8; ++k)
            round_trip_err =
                std::max(round_trip_err, std::abs(moments_from_tau(tau, k) - moment(m, k)));
    }

    const double catalan[] = {1.0, 1.0, 2.0, 5.0, 14.0};
    bool catalan_exact = true;
    for (int j = 0; j <= 4; ++j)
        catalan_exact = catalan_exact && moment(Measure::semicircle(), 2 * j) == catalan[j];

    line(8, round_trip_err <= 1e-9 && catalan_exact,
         fmt("moment identities: tau round trip max err %.2e for k=2..8 over 20 random "
             "measures (tol 1e-9); semicircle even moments %s 1,1,2,5,14",
             round_trip_err, catalan_exact ? "equal" : "DIFFER FROM"));
}

// ---- criterion 9: module invariants in property form ----------------------

DensityProfile unit_variance_mixture(std::mt19937& rng) {
    std::uniform_int_distribution<int> count(2, 4);
    std::uniform_real_distribution<double> center(-2.0, 2.0);
    std::uniform_real_distribution<double> width(0.3, 1.2);
    std::uniform_real_distribution<double> share(0.2, 1.0);
    const int k = count(rng);
    std::vector<double> c(k), s(k), w(k);
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        c[i] = center(rng);
        s[i] = width(rng);
        w[i] = share(rng);
        total += w[i];
    }

    DensityProfile p;
    p.x0 = -8.0;
    p.dx = 16.0 / 4000.0;
    p.values.resize(4001);
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        const double x = p.x_at(i);
        double v = 0.0;
        for (int j = 0; j < k; ++j) {
            const double t = (x - c[j]) / s[j];
            v += w[j] / total * std::exp(-0.5 * t * t) / (s[j] * std::sqrt(2.0 * kPi));
        }
        p.values[i] = v;
    }
    const double mass = p.mass();
    for (double& v : p.values) v /= mass;

    double mean = 0.0;
    for (std::size_t i = 0; i < p.values.size(); ++i) mean += p.x_at(i) * p.values[i] * p.dx;
    double var = 0.0;
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        const double d = p.x_at(i) - mean;
        var += d * d * p.values[i] * p.dx;
    }
    const double scale = 1.0 / std::sqrt(var);
    DensityProfile out;
    out.x0 = (p.x0 - mean) * scale;
    out.dx = p.dx * scale;
    out.values = p.values;
    for (double& v : out.values) v /= scale;
    out.support_lo = out.x0;
    out.support_hi = out.x0 + out.dx * 4000.0;
    out.mass_tolerance = 1e-6;
    return out;
}

void criterion_invariants(const std::map<int, DensityProfile>& bernoulli_2001) {
    auto rng = test_rng(0xacce909u);
    std::uniform_real_distribution<double> re(-3.0, 3.0);
    std::uniform_real_distribution<double> im(1e-3, 3.0);

    const std::vector<Measure> zoo = {
        Measure::semicircle(),
        Measure::arcsine(0.25, 1.5),
        Measure::free_meixner(0.1, 0.02, 0.05),
        bernoulli(),
        skewed_two_atom(),
        Measure::grid_density(sample_density(Measure::semicircle(), {-2.1, 2.1, 2001})),
    };

    // Half-plane mapping: G maps C+ to C-, F maps C+ into itself expansively.
    bool mapping_ok = true;
    for (const Measure& m : zoo) {
        for (int trial = 0; trial < 40; ++trial) {
            const Complex z(re(rng), im(rng));
            const Complex g = cauchy(m, z);
            const Complex f = reciprocal_cauchy(m, z);
            mapping_ok = mapping_ok && g.imag() < 0.0 &&
                         f.imag() >= z.imag() * (1.0 - 1e-12);
        }
    }

    // Mass normalization at infinity: |z G(z) - 1| -> 0 along the imaginary
    // axis, monotonically over decades.
    bool mass_ok = true;
    for (const Measure& m : zoo) {
        double prev = 2.0;
        for (double y : {1e3, 1e4, 1e5, 1e6}) {
            const double defect = std::abs(Complex(0, y) * cauchy(m, Complex(0, y)) - 1.0);
            mass_ok = mass_ok && defect < prev;
            prev = defect;
        }
        mass_ok = mass_ok && prev <= 1e-5;
    }

    // Dilation covariance of the log energy: scaling x by lambda adds
    // log(lambda).
    const DensityProfile w4001 = sample_density(Measure::semicircle(), {-2.05, 2.05, 4001});
    const double base_energy = log_energy(w4001);
    bool dilation_ok = true;
    for (double lambda : {0.5, 2.0}) {
        const DensityProfile scaled = dilate_profile(w4001, lambda);
        dilation_ok = dilation_ok &&
                      std::abs(log_energy(scaled) - (base_energy + std::log(lambda))) <= 1e-5;
    }

    // Entropy maximality of the semicircle among unit-variance densities.
    bool maximal_ok = true;
    for (int trial = 0; trial < 5; ++trial) {
        const DensityProfile mixture = unit_variance_mixture(rng);
        maximal_ok = maximal_ok && free_entropy(mixture) <= chi_w() + 1e-6;
    }

    // Tail-mass bound in slack form: mass outside the default interior window
    // stays within 5 n^{-6/5}.
    auto outside_window = [](const Measure& m, int n, const DensityProfile& p) {
        const Window window = support_window(coefficients(m, n));
        double outside = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double x = p.x_at(i);
            if (x < window.lo || x > window.hi) outside += p.values[i] * p.dx;
        }
        return outside;
    };
    bool tail_ok = true;
    for (int n : {64, 256}) {
        const double bound = 5.0 * std::pow(n, -1.2);
        tail_ok = tail_ok && outside_window(bernoulli(), n, bernoulli_2001.at(n)) <= bound;
        const DensityProfile sk = invert_density(skewed_two_atom(), n, {-4.0, 4.0, 2001});
        tail_ok = tail_ok && outside_window(skewed_two_atom(), n, sk) <= bound;
    }

    const bool pass = mapping_ok && mass_ok && dilation_ok && maximal_ok && tail_ok;
    line(9, pass,
         fmt("invariants: half-plane mapping %s, mass limit %s, dilation covariance %s, "
             "entropy maximality %s, tail-mass slack %s",
             mapping_ok ? "ok" : "VIOLATED", mass_ok ? "ok" : "VIOLATED",
             dilation_ok ? "ok" : "VIOLATED", maximal_ok ? "ok" : "VIOLATED",
             tail_ok ? "ok" : "VIOLATED"));
}

} // namespace

int main() {
    const DensityProfile p_w2001 = sample_density(Measure::semicircle(), {-4.0, 4.0, 2001});
    const std::map<int, DensityProfile> b_profiles = bernoulli_profiles();

    criterion_closed_forms();
    criterion_convolution_oracles();
    criterion_symmetric_l1(b_profiles, p_w2001);
    criterion_rates();
    criterion_expansion_residual(b_profiles);
    criterion_moments();
    criterion_invariants(b_profiles);

    if (failures == 0)
        std::printf("all 9 acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
