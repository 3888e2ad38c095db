#include "rlw/assembly.hpp"

#include "rlw/errors.hpp"
#include "rlw/quadrature.hpp"

#include <string>

namespace rlw {

ElementMatrices element_matrices(const ExpBasis& basis, int quad_order) {
    if (quad_order < 4) {
        throw InvalidParameter("element_matrices: quadrature order must be >= 4, got " +
                               std::to_string(quad_order));
    }
    const double h = basis.h();
    const QuadratureRule rule = gauss_legendre(quad_order, 0.0, h);

    ElementMatrices e;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double xi = rule.nodes[q];
        const double w = rule.weights[q];
        // local spline l is centred at x_m + (l - 1) h
        std::array<double, 4> v{};
        std::array<double, 4> d1{};
        std::array<double, 4> d2{};
        for (int l = 0; l < 4; ++l) {
            const double offset = xi - (l - 1) * h;
            v[l] = basis.eval(offset, 0);
            d1[l] = basis.eval(offset, 1);
            d2[l] = basis.eval(offset, 2);
        }
        for (int j = 0; j < 4; ++j) {
            for (int i = 0; i < 4; ++i) {
                e.mass[j][i] += w * v[j] * v[i];
                e.advection[j][i] += w * v[j] * d1[i];
                e.dispersion[j][i] += w * v[j] * d2[i];
                for (int k = 0; k < 4; ++k) {
                    e.nonlinear[j][k][i] += w * v[j] * v[k] * d1[i];
                }
            }
        }
    }
    return e;
}

BandMatrix assemble_block(const Block4& block, int n_elements) {
    if (n_elements < 4) {
        throw InvalidParameter("assemble: at least 4 elements required");
    }
    BandMatrix g(n_elements + 3, kGlobalBandwidth, kGlobalBandwidth);
    // element m couples parameters m-1..m+2, i.e. rows/cols m..m+3
    for (int m = 0; m < n_elements; ++m) {
        for (int j = 0; j < 4; ++j) {
            for (int i = 0; i < 4; ++i) {
                g.at(m + j, m + i) += block[j][i];
            }
        }
    }
    return g;
}

GlobalOperators assemble_global(const ElementMatrices& elem, int n_elements) {
    return GlobalOperators{assemble_block(elem.mass, n_elements),
                           assemble_block(elem.advection, n_elements),
                           assemble_block(elem.dispersion, n_elements)};
}

BandMatrix apply_nonlinear(const Tensor4& elem_c, std::span<const double> delta, int n_elements) {
    if (delta.size() != static_cast<std::size_t>(n_elements) + 3) {
        throw DimensionError("apply_nonlinear: expected " + std::to_string(n_elements + 3) +
                             " parameters, got " + std::to_string(delta.size()));
    }
    BandMatrix g(n_elements + 3, kGlobalBandwidth, kGlobalBandwidth);
    for (int m = 0; m < n_elements; ++m) {
        const double* dm = delta.data() + m;
        for (int j = 0; j < 4; ++j) {
            for (int i = 0; i < 4; ++i) {
                double sum = 0.0;
                for (int k = 0; k < 4; ++k) {
                    sum += elem_c[j][k][i] * dm[k];
                }
                g.at(m + j, m + i) += sum;
            }
        }
    }
    return g;
}

} // namespace rlw
