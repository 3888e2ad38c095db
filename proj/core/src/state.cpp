#include "rlw/state.hpp"

#include <algorithm>
#include <cmath>

namespace rlw {

std::vector<double> knot_values(const CoefficientVector& state, const ExpBasis& basis) {
    const int n = state.n_elements();
    const double a1 = basis.alpha1();
    std::vector<double> u(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        u[static_cast<std::size_t>(m)] = a1 * state[m - 1] + state[m] + a1 * state[m + 1];
    }
    return u;
}

std::vector<double> knot_slopes(const CoefficientVector& state, const ExpBasis& basis) {
    const int n = state.n_elements();
    const double a2 = basis.alpha2();
    std::vector<double> ux(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        ux[static_cast<std::size_t>(m)] = a2 * (state[m - 1] - state[m + 1]);
    }
    return ux;
}

double evaluate(const CoefficientVector& state, const ExpBasis& basis, const Mesh& mesh, double x,
                int deriv) {
    const int n = state.n_elements();
    const int m = std::clamp(static_cast<int>(std::floor((x - mesh.a()) / mesh.h())), 0, n - 1);
    double sum = 0.0;
    for (int i = m - 1; i <= m + 2; ++i) {
        sum += state[i] * eval_piece(basis, mesh, i, x, deriv);
    }
    return sum;
}

} // namespace rlw
