#pragma once

#include <vector>

namespace rlw {

/// Uniform knot grid a = x_0 < ... < x_N = b.
///
/// Knots outside [a,b] (negative indices, or indices above N) are
/// generated by the same formula; they carry the phantom splines
/// B_{-1} and B_{N+1}.
class Mesh {
public:
    Mesh(double a, double b, int n_elements);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    int n_elements() const noexcept { return n_; }
    double h() const noexcept { return h_; }

    /// x_i = a + i*h, for any integer i.
    double knot(int i) const noexcept;
    /// x_0 .. x_N.
    std::vector<double> knots() const;

private:
    double a_;
    double b_;
    int n_;
    double h_;
};

/// Exponential B-spline family with tension p on a uniform grid of spacing h.
///
/// Every basis function is a translate of one function centred at zero with
/// support [-2h, 2h]. The inner pieces (|x| <= h) combine a constant, a
/// linear term and two exponentials; the outer pieces are linear minus a
/// hyperbolic sine. Coefficients are kept in the closed form, but evaluation
/// goes through sinh(w) - w and cosh(w) - 1 so that small p*h (the cubic
/// limit) does not lose digits to cancellation.
class ExpBasis {
public:
    /// Throws InvalidParameter for p <= 0 or h <= 0, DegenerateTension when
    /// |p*h*cosh(ph) - sinh(ph)| < 1e-14 or the coefficients overflow.
    ExpBasis(double p, double h);

    double p() const noexcept { return p_; }
    double h() const noexcept { return h_; }
    double s() const noexcept { return s_; }
    double c() const noexcept { return c_; }

    // Piecewise coefficients in the closed form.
    double b2() const noexcept { return b2_; }
    double a1() const noexcept { return a1_; }
    double b1() const noexcept { return b1_; }
    double c1() const noexcept { return c1_; }
    double d1() const noexcept { return d1_; }

    /// p*h*c - s, computed without cancellation.
    double denominator() const noexcept { return den_; }

    /// U_i = alpha1*d_{i-1} + d_i + alpha1*d_{i+1}
    double alpha1() const noexcept { return alpha1_; }
    /// U'_i = alpha2*(d_{i-1} - d_{i+1})
    double alpha2() const noexcept { return alpha2_; }
    /// U''_i = alpha3*(d_{i-1} - 2 d_i + d_{i+1})
    double alpha3() const noexcept { return alpha3_; }

    /// Value (deriv = 0), slope (1) or curvature (2) of the basis function
    /// centred at 0, at signed distance `offset`. Zero outside [-2h, 2h].
    double eval(double offset, int deriv = 0) const;

    /// Closed-form value at knot offsets -2..2 relative to the centre.
    double knot_value(int offset, int deriv = 0) const;

private:
    double p_;
    double h_;
    double s_;
    double c_;
    double den_;
    double b2_;
    double a1_;
    double b1_;
    double c1_;
    double d1_;
    double alpha1_;
    double alpha2_;
    double alpha3_;
};

inline ExpBasis make_basis(double p, double h) { return ExpBasis(p, h); }

/// B_i^{(deriv)}(x) where B_i is centred at mesh.knot(i); i may be -1 or N+1.
double eval_piece(const ExpBasis& basis, const Mesh& mesh, int i, double x, int deriv = 0);

/// sinh(w) - w without cancellation near zero.
double sinh_minus_identity(double w);
/// cosh(w) - 1 without cancellation near zero.
double cosh_minus_one(double w);

} // namespace rlw
