#include "quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace freeclt::detail {

namespace {

Quadrature compute(int n) {
    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Tricomi initial guess for the i-th root of P_n, then Newton.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.nodes[n - 1 - i] = x;
        q.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return q;
}

} // namespace

const Quadrature& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    static std::mutex mutex;
    static std::map<int, Quadrature> cache;
    std::lock_guard lock(mutex);
    auto [it, inserted] = cache.try_emplace(n);
    if (inserted) it->second = compute(n);
    return it->second;
}

} // namespace freeclt::detail
