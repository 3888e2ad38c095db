#pragma once

#include "rlw/basis.hpp"

#include <vector>

namespace rlw {

/// Time-dependent parameters delta_{-1}..delta_{N+1} of the spline expansion.
///
/// Storage index is parameter index + 1.
struct CoefficientVector {
    std::vector<double> delta;
    double t = 0.0;

    CoefficientVector() = default;
    explicit CoefficientVector(int n_elements, double time = 0.0)
        : delta(static_cast<std::size_t>(n_elements) + 3, 0.0), t(time) {}

    int n_elements() const noexcept { return static_cast<int>(delta.size()) - 3; }

    double operator[](int i) const { return delta[static_cast<std::size_t>(i + 1)]; }
    double& operator[](int i) { return delta[static_cast<std::size_t>(i + 1)]; }
};

/// U_N at the knots x_0..x_N.
std::vector<double> knot_values(const CoefficientVector& state, const ExpBasis& basis);
/// U_N' at the knots.
std::vector<double> knot_slopes(const CoefficientVector& state, const ExpBasis& basis);
/// U_N^(deriv)(x) anywhere in [a, b] by summing the four overlapping splines.
double evaluate(const CoefficientVector& state, const ExpBasis& basis, const Mesh& mesh, double x,
                int deriv = 0);

} // namespace rlw
