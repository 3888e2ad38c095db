#pragma once

#include "rlw/assembly.hpp"
#include "rlw/basis.hpp"
#include "rlw/diagnostics.hpp"
#include "rlw/state.hpp"

#include <functional>
#include <optional>
#include <span>

namespace rlw {

using ScalarFunction = std::function<double(double)>;

/// How the nonlinear operator on the implicit side is refreshed between inner passes.
enum class InnerUpdate {
    /// C(delta^{n+1}) from the latest solve: fixed-point iteration on the
    /// implicit trapezoidal step.
    latest_iterate,
    /// C(delta*) with delta* = delta^{n+1} + (delta^{n+1} - delta^n) / 2.
    extrapolated,
};

/// u_t + u_x + eps u u_x - mu u_xxt = 0 on [a, b] with Dirichlet data
/// beta1(t), beta2(t) and u(x, 0) = f(x).
struct RLWProblem {
    double epsilon = 1.0;
    double mu = 1.0;
    double a = 0.0;
    double b = 1.0;
    int n_elements = 4;
    double dt = 0.1;
    double t_final = 0.0;
    double tension = 1.0;
    ScalarFunction left_boundary = [](double) { return 0.0; };
    ScalarFunction right_boundary = [](double) { return 0.0; };
    ScalarFunction initial = [](double) { return 0.0; };
    int inner_iters = 3;
    InnerUpdate inner_update = InnerUpdate::latest_iterate;
    int quad_order = 8;

    /// Throws InvalidParameter on any precondition violation.
    void validate() const;
    /// Number of time steps to reach t_final.
    int step_count() const;
};

/// Everything that stays fixed over a run: mesh, basis, element and global operators.
struct Discretization {
    Mesh mesh;
    ExpBasis basis;
    ElementMatrices element;
    GlobalOperators global;
    BandMatrix implicit_base; ///< A - mu D

    explicit Discretization(const RLWProblem& problem);
};

/// Interpolates the initial profile at every knot with zero end slopes.
CoefficientVector fit_initial(const RLWProblem& problem, const ExpBasis& basis, const Mesh& mesh);

/// One Crank-Nicolson step with `problem.inner_iters` inner passes.
CoefficientVector step(const CoefficientVector& state, const Discretization& disc,
                       const RLWProblem& problem);

struct RunOptions {
    /// u(x, t) when known; fills the L-infinity column.
    std::function<double(double x, double t)> exact;
    double crest_min_height = 0.0; ///< 0 disables crest tracking
    std::size_t max_crests = 8;
    /// Called for every recorded row as soon as it is available.
    std::function<void(const ReportRow&, const CoefficientVector&, const Discretization&)> on_record;
};

/// Advances from the fitted initial state to t_final, recording diagnostics
/// at `record_times` (each a multiple of dt within [0, t_final]).
RunReport run(const RLWProblem& problem, std::span<const double> record_times,
              const RunOptions& options = {});

} // namespace rlw
