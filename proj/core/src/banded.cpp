#include "rlw/banded.hpp"

#include "rlw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rlw {

BandMatrix::BandMatrix(int n, int lower, int upper) : n_(n), lower_(lower), upper_(upper) {
    if (n < 0 || lower < 0 || upper < 0) {
        throw DimensionError("band matrix: negative dimension or bandwidth");
    }
    data_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(lower + upper + 1), 0.0);
}

double& BandMatrix::at(int i, int j) {
    if (!in_band(i, j)) {
        throw DimensionError("band matrix: entry (" + std::to_string(i) + ", " +
                             std::to_string(j) + ") is outside the band");
    }
    return data_[index(i, j)];
}

void BandMatrix::add_scaled(const BandMatrix& other, double scale) {
    if (other.n_ != n_ || other.lower_ != lower_ || other.upper_ != upper_) {
        throw DimensionError("band matrix: shape mismatch in add_scaled");
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] += scale * other.data_[k];
    }
}

std::vector<double> BandMatrix::multiply(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(n_)) {
        throw DimensionError("band matrix: vector length " + std::to_string(x.size()) +
                             " does not match size " + std::to_string(n_));
    }
    std::vector<double> y(x.size(), 0.0);
    for (int i = 0; i < n_; ++i) {
        const int j0 = std::max(0, i - lower_);
        const int j1 = std::min(n_ - 1, i + upper_);
        double sum = 0.0;
        for (int j = j0; j <= j1; ++j) {
            sum += data_[index(i, j)] * x[static_cast<std::size_t>(j)];
        }
        y[static_cast<std::size_t>(i)] = sum;
    }
    return y;
}

double BandMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

std::vector<double> band_solve(BandMatrix m, std::vector<double> rhs) {
    const int n = m.size();
    if (rhs.size() != static_cast<std::size_t>(n)) {
        throw DimensionError("band_solve: rhs length does not match matrix size");
    }
    const int kl = m.lower();
    const int ku = m.upper();
    const double guard = 1e-14 * m.max_abs();

    for (int k = 0; k < n; ++k) {
        const double pivot = m(k, k);
        if (!(std::abs(pivot) > guard) || !std::isfinite(pivot)) {
            throw SingularSystem("band_solve: pivot " + std::to_string(pivot) + " at row " +
                                 std::to_string(k));
        }
        const int i1 = std::min(n - 1, k + kl);
        const int j1 = std::min(n - 1, k + ku);
        for (int i = k + 1; i <= i1; ++i) {
            const double l = m(i, k) / pivot;
            if (l == 0.0) {
                continue;
            }
            m.at(i, k) = l;
            for (int j = k + 1; j <= j1; ++j) {
                m.at(i, j) -= l * m(k, j);
            }
            rhs[static_cast<std::size_t>(i)] -= l * rhs[static_cast<std::size_t>(k)];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        double sum = rhs[static_cast<std::size_t>(i)];
        const int j1 = std::min(n - 1, i + ku);
        for (int j = i + 1; j <= j1; ++j) {
            sum -= m(i, j) * rhs[static_cast<std::size_t>(j)];
        }
        rhs[static_cast<std::size_t>(i)] = sum / m(i, i);
    }
    return rhs;
}

} // namespace rlw
