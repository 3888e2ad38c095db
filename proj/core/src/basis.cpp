#include "rlw/basis.hpp"

#include "rlw/errors.hpp"

#include <cmath>
#include <string>

namespace rlw {

namespace {

// Below this argument the series forms are used; their terms fall off like
// w^2/((2k)(2k+1)), so a few terms reach machine precision.
constexpr double kSeriesCutoff = 0.5;

// z*cosh(z) - sinh(z) = sum_{k>=1} 2k z^{2k+1} / (2k+1)!
double z_cosh_minus_sinh(double z) {
    if (std::abs(z) >= kSeriesCutoff) {
        return z * std::cosh(z) - std::sinh(z);
    }
    const double z2 = z * z;
    double term = z * z2 / 6.0; // z^3/3!
    double sum = 0.0;
    for (int k = 1; k < 40; ++k) {
        const double add = 2.0 * k * term;
        sum += add;
        if (std::abs(add) <= 1e-18 * std::abs(sum)) {
            break;
        }
        term *= z2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
    return sum;
}

} // namespace

double sinh_minus_identity(double w) {
    if (std::abs(w) >= kSeriesCutoff) {
        return std::sinh(w) - w;
    }
    const double w2 = w * w;
    double term = w * w2 / 6.0;
    double sum = 0.0;
    for (int k = 1; k < 40; ++k) {
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) {
            break;
        }
        term *= w2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
    return sum;
}

double cosh_minus_one(double w) {
    const double half = std::sinh(0.5 * w);
    return 2.0 * half * half;
}

Mesh::Mesh(double a, double b, int n_elements) : a_(a), b_(b), n_(n_elements), h_(0.0) {
    if (!(b > a)) {
        throw InvalidParameter("mesh: require a < b");
    }
    if (n_elements < 4) {
        throw InvalidParameter("mesh: at least 4 elements required, got " +
                               std::to_string(n_elements));
    }
    h_ = (b - a) / n_elements;
}

double Mesh::knot(int i) const noexcept {
    return a_ + i * h_;
}

std::vector<double> Mesh::knots() const {
    std::vector<double> x(static_cast<std::size_t>(n_) + 1);
    for (int i = 0; i <= n_; ++i) {
        x[static_cast<std::size_t>(i)] = knot(i);
    }
    return x;
}

ExpBasis::ExpBasis(double p, double h) : p_(p), h_(h) {
    if (!(p > 0.0) || !(h > 0.0) || !std::isfinite(p) || !std::isfinite(h)) {
        throw InvalidParameter("exponential basis: p and h must be positive (p=" +
                               std::to_string(p) + ", h=" + std::to_string(h) + ")");
    }
    const double z = p * h;
    s_ = std::sinh(z);
    c_ = std::cosh(z);
    den_ = z_cosh_minus_sinh(z);
    if (!std::isfinite(den_) || !std::isfinite(s_) || std::abs(den_) < 1e-14) {
        throw DegenerateTension("exponential basis: p*h*cosh(ph) - sinh(ph) = " +
                                std::to_string(den_) + " is degenerate");
    }
    const double one_minus_c = -cosh_minus_one(z);

    b2_ = p / (2.0 * den_);
    a1_ = z * c_ / den_;
    b1_ = -0.5 * p * (2.0 * c_ + 1.0) / den_;
    c1_ = (2.0 * c_ + 1.0 - 2.0 * s_) / (4.0 * den_);
    d1_ = -(2.0 * c_ + 1.0 + 2.0 * s_) / (4.0 * den_);

    alpha1_ = sinh_minus_identity(z) / (2.0 * den_);
    alpha2_ = p * one_minus_c / (2.0 * den_);
    alpha3_ = p * p * s_ / (2.0 * den_);
}

double ExpBasis::eval(double offset, int deriv) const {
    if (deriv < 0 || deriv > 2) {
        throw InvalidParameter("exponential basis: derivative order must be 0, 1 or 2");
    }
    const double r = std::abs(offset);
    const double sign = offset < 0.0 ? -1.0 : 1.0;
    if (r > 2.0 * h_) {
        return 0.0;
    }
    if (r <= h_) {
        // a1 + b1 r + c1 e^{pr} + d1 e^{-pr}, regrouped around r = 0
        const double w = p_ * r;
        const double k = c_ + 0.5;
        switch (deriv) {
        case 0:
            return 1.0 + (k * sinh_minus_identity(w) - s_ * cosh_minus_one(w)) / den_;
        case 1:
            return sign * p_ * (k * cosh_minus_one(w) - s_ * std::sinh(w)) / den_;
        default:
            return p_ * p_ * (k * std::sinh(w) - s_ * std::cosh(w)) / den_;
        }
    }
    // b2 [ (r - 2h) - sinh(p (r - 2h)) / p ]
    const double w = p_ * (2.0 * h_ - r);
    switch (deriv) {
    case 0:
        return sinh_minus_identity(w) / (2.0 * den_);
    case 1:
        return -sign * p_ * cosh_minus_one(w) / (2.0 * den_);
    default:
        return p_ * p_ * std::sinh(w) / (2.0 * den_);
    }
}

double ExpBasis::knot_value(int offset, int deriv) const {
    if (offset < -2 || offset > 2) {
        throw InvalidParameter("knot_value: offset must lie in -2..2");
    }
    if (deriv < 0 || deriv > 2) {
        throw InvalidParameter("knot_value: derivative order must be 0, 1 or 2");
    }
    if (offset == -2 || offset == 2) {
        return 0.0;
    }
    switch (deriv) {
    case 0:
        return offset == 0 ? 1.0 : alpha1_;
    case 1:
        // rising flank on the left, so B'(x_{i-1}) = -alpha2 > 0
        return offset == 0 ? 0.0 : (offset < 0 ? -alpha2_ : alpha2_);
    default:
        return offset == 0 ? -2.0 * alpha3_ : alpha3_;
    }
}

double eval_piece(const ExpBasis& basis, const Mesh& mesh, int i, double x, int deriv) {
    return basis.eval(x - mesh.knot(i), deriv);
}

} // namespace rlw
