#pragma once

#include <vector>

namespace rlw {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// The same rule mapped affinely onto [lo, hi].
QuadratureRule gauss_legendre(int n, double lo, double hi);

} // namespace rlw
