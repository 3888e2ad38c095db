#pragma once

#include <span>
#include <vector>

namespace rlw {

/// Square matrix with `lower` sub- and `upper` super-diagonals.
///
/// Element (i, j) is stored at row i, slot j - i + lower; everything outside
/// the band is structurally zero.
class BandMatrix {
public:
    BandMatrix() = default;
    BandMatrix(int n, int lower, int upper);

    int size() const noexcept { return n_; }
    int lower() const noexcept { return lower_; }
    int upper() const noexcept { return upper_; }

    bool in_band(int i, int j) const noexcept {
        return i >= 0 && j >= 0 && i < n_ && j < n_ && j - i <= upper_ && i - j <= lower_;
    }

    /// Zero outside the band.
    double operator()(int i, int j) const noexcept {
        return in_band(i, j) ? data_[index(i, j)] : 0.0;
    }

    /// Throws DimensionError outside the band.
    double& at(int i, int j);

    /// this += scale * other; shapes must match.
    void add_scaled(const BandMatrix& other, double scale);

    std::vector<double> multiply(std::span<const double> x) const;

    double max_abs() const noexcept;

private:
    std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(lower_ + upper_ + 1) +
               static_cast<std::size_t>(j - i + lower_);
    }

    int n_ = 0;
    int lower_ = 0;
    int upper_ = 0;
    std::vector<double> data_;
};

/// Direct banded LU (no pivoting) followed by substitution.
///
/// A pivot below 1e-14 * max|entry| raises SingularSystem.
std::vector<double> band_solve(BandMatrix matrix, std::vector<double> rhs);

} // namespace rlw
