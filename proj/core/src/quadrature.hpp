#pragma once

#include <vector>

namespace freeclt::detail {

/// Nodes and weights on [-1, 1].
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached Gauss-Legendre rule with n points; exact for polynomials of degree
/// 2n-1, near machine precision for analytic integrands at n ~ 100s.
const Quadrature& gauss_legendre(int n);

} // namespace freeclt::detail
