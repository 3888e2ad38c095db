#pragma once

#include "rlw/banded.hpp"
#include "rlw/basis.hpp"

#include <array>
#include <span>

namespace rlw {

using Block4 = std::array<std::array<double, 4>, 4>;
/// Indexed [j][k][i]: test function j, coefficient k, differentiated trial i.
using Tensor4 = std::array<Block4, 4>;

/// Integrals over one element [x_m, x_{m+1}] of the four overlapping splines
/// B_{m-1}..B_{m+2} (local indices 0..3).
///
/// Layout follows the Galerkin row convention: first index is the test
/// function j, last index the trial function i.
struct ElementMatrices {
    Block4 mass{};       ///< int B_j B_i
    Block4 advection{};  ///< int B_j B_i'
    Block4 dispersion{}; ///< int B_j B_i''
    Tensor4 nonlinear{}; ///< int B_j B_k B_i'
};

/// Gauss-Legendre integration of the element integrals; quad_order >= 4.
///
/// On a uniform mesh every element is a translate of [0, h], so the result
/// is shared by all elements.
ElementMatrices element_matrices(const ExpBasis& basis, int quad_order = 8);

/// Global operators over the N+3 parameters delta_{-1}..delta_{N+1}, stored
/// with row/column index i+1 for parameter i.
struct GlobalOperators {
    BandMatrix mass;
    BandMatrix advection;
    BandMatrix dispersion;
};

GlobalOperators assemble_global(const ElementMatrices& elem, int n_elements);

/// Single (N+3)x(N+3) operator from one 4x4 element block.
BandMatrix assemble_block(const Block4& block, int n_elements);

/// C(delta): entry (j, i) = sum over elements and k of delta_k int B_j B_k B_i'.
///
/// `delta` has length N+3. Linear in delta.
BandMatrix apply_nonlinear(const Tensor4& elem_c, std::span<const double> delta, int n_elements);

/// Bandwidth of the assembled operators: three sub- and super-diagonals.
inline constexpr int kGlobalBandwidth = 3;

} // namespace rlw
