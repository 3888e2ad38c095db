#include "rlw/solver.hpp"

#include "rlw/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <string>

namespace rlw {

void RLWProblem::validate() const {
    if (!(epsilon > 0.0) || !(mu > 0.0)) {
        throw InvalidParameter("problem: epsilon and mu must be positive");
    }
    if (!(b > a)) {
        throw InvalidParameter("problem: require a < b");
    }
    if (n_elements < 4) {
        throw InvalidParameter("problem: at least 4 elements required");
    }
    if (!(dt > 0.0)) {
        throw InvalidParameter("problem: dt must be positive");
    }
    if (!(t_final >= 0.0)) {
        throw InvalidParameter("problem: t_final must be non-negative");
    }
    if (t_final > 0.0 && t_final < dt * (1.0 - 1e-9)) {
        throw InvalidParameter("problem: t_final must be zero or at least dt");
    }
    if (inner_iters < 1) {
        throw InvalidParameter("problem: at least one inner pass is required");
    }
    if (!left_boundary || !right_boundary || !initial) {
        throw InvalidParameter("problem: boundary and initial functions must be set");
    }
    step_count();
}

int RLWProblem::step_count() const {
    const double ratio = t_final / dt;
    const double steps = std::round(ratio);
    if (std::abs(ratio - steps) > 1e-8 * std::max(1.0, ratio)) {
        throw InvalidParameter("problem: t_final is not a multiple of dt");
    }
    return static_cast<int>(steps);
}

Discretization::Discretization(const RLWProblem& problem)
    : mesh(problem.a, problem.b, problem.n_elements),
      basis(problem.tension, mesh.h()),
      element(element_matrices(basis, problem.quad_order)),
      global(assemble_global(element, problem.n_elements)),
      implicit_base(global.mass) {
    implicit_base.add_scaled(global.dispersion, -problem.mu);
}

CoefficientVector fit_initial(const RLWProblem& problem, const ExpBasis& basis, const Mesh& mesh) {
    const int n = mesh.n_elements();
    const double a1 = basis.alpha1();
    // zero end slopes give delta_{-1} = delta_1 and delta_{N+1} = delta_{N-1}
    BandMatrix m(n + 1, 1, 1);
    std::vector<double> rhs(static_cast<std::size_t>(n) + 1);
    for (int row = 0; row <= n; ++row) {
        m.at(row, row) = 1.0;
        if (row > 0) {
            m.at(row, row - 1) = a1;
        }
        if (row < n) {
            m.at(row, row + 1) = a1;
        }
        rhs[static_cast<std::size_t>(row)] = problem.initial(mesh.knot(row));
    }
    m.at(0, 1) = 2.0 * a1;
    m.at(n, n - 1) = 2.0 * a1;

    const auto sol = band_solve(std::move(m), std::move(rhs));
    CoefficientVector state(n, 0.0);
    for (int i = 0; i <= n; ++i) {
        state[i] = sol[static_cast<std::size_t>(i)];
    }
    state[-1] = state[1];
    state[n + 1] = state[n - 1];
    return state;
}

namespace {

// Drops the first and last Galerkin rows and folds delta_{-1}, delta_{N+1}
// into the remaining ones through the Dirichlet identities
// alpha1 d_{-1} + d_0 + alpha1 d_1 = beta1 (and mirrored on the right).
std::vector<double> solve_reduced(const BandMatrix& lhs, const std::vector<double>& rhs_full,
                                  double alpha1, double beta1, double beta2, int n) {
    const int size = n + 1;
    const int bw = lhs.lower();
    BandMatrix reduced(size, bw, bw);
    std::vector<double> rhs(static_cast<std::size_t>(size));
    for (int r = 0; r < size; ++r) {
        const int row = r + 1;
        for (int c = std::max(0, r - bw); c <= std::min(size - 1, r + bw); ++c) {
            reduced.at(r, c) = lhs(row, c + 1);
        }
        rhs[static_cast<std::size_t>(r)] = rhs_full[static_cast<std::size_t>(row)];
    }
    for (int r = 0; r < size; ++r) {
        const int row = r + 1;
        const double left = lhs(row, 0);
        if (left != 0.0) {
            reduced.at(r, 0) -= left / alpha1;
            reduced.at(r, 1) -= left;
            rhs[static_cast<std::size_t>(r)] -= left * beta1 / alpha1;
        }
        const double right = lhs(row, n + 2);
        if (right != 0.0) {
            reduced.at(r, n) -= right / alpha1;
            reduced.at(r, n - 1) -= right;
            rhs[static_cast<std::size_t>(r)] -= right * beta2 / alpha1;
        }
    }
    return band_solve(std::move(reduced), std::move(rhs));
}

} // namespace

CoefficientVector step(const CoefficientVector& state, const Discretization& disc,
                       const RLWProblem& problem) {
    const int n = disc.mesh.n_elements();
    if (state.n_elements() != n) {
        throw DimensionError("step: state does not match the discretization");
    }
    const double dt = problem.dt;
    const double eps = problem.epsilon;
    const double alpha1 = disc.basis.alpha1();
    const double t_next = state.t + dt;
    const double beta1 = problem.left_boundary(t_next);
    const double beta2 = problem.right_boundary(t_next);

    // explicit side: [(A - mu D) - dt/2 (B + eps C(delta^n))] delta^n
    BandMatrix explicit_op = disc.implicit_base;
    explicit_op.add_scaled(disc.global.advection, -0.5 * dt);
    explicit_op.add_scaled(apply_nonlinear(disc.element.nonlinear, state.delta, n), -0.5 * dt * eps);
    const std::vector<double> rhs = explicit_op.multiply(state.delta);

    BandMatrix linear_part = disc.implicit_base;
    linear_part.add_scaled(disc.global.advection, 0.5 * dt);

    CoefficientVector next(n, t_next);
    std::vector<double> lagged = state.delta;
    for (int pass = 0; pass < problem.inner_iters; ++pass) {
        BandMatrix lhs = linear_part;
        lhs.add_scaled(apply_nonlinear(disc.element.nonlinear, lagged, n), 0.5 * dt * eps);
        std::vector<double> sol;
        try {
            sol = solve_reduced(lhs, rhs, alpha1, beta1, beta2, n);
        } catch (const SingularSystem& e) {
            std::ostringstream msg;
            msg << e.what() << " (step to t=" << t_next << ")";
            throw SingularSystem(msg.str(), t_next);
        }
        for (int i = 0; i <= n; ++i) {
            next[i] = sol[static_cast<std::size_t>(i)];
        }
        next[-1] = (beta1 - next[0] - alpha1 * next[1]) / alpha1;
        next[n + 1] = (beta2 - next[n] - alpha1 * next[n - 1]) / alpha1;

        switch (problem.inner_update) {
        case InnerUpdate::latest_iterate:
            lagged = next.delta;
            break;
        case InnerUpdate::extrapolated:
            for (std::size_t k = 0; k < lagged.size(); ++k) {
                lagged[k] = next.delta[k] + 0.5 * (next.delta[k] - state.delta[k]);
            }
            break;
        }
    }
    return next;
}

RunReport run(const RLWProblem& problem, std::span<const double> record_times,
              const RunOptions& options) {
    problem.validate();
    const int steps = problem.step_count();

    std::set<int> record_steps;
    for (double t : record_times) {
        const double ratio = t / problem.dt;
        const double k = std::round(ratio);
        if (t < 0.0 || std::abs(ratio - k) > 1e-8 * std::max(1.0, ratio) || k > steps) {
            std::ostringstream msg;
            msg << "run: record time " << t << " is not a multiple of dt within [0, T]";
            throw InvalidParameter(msg.str());
        }
        record_steps.insert(static_cast<int>(k));
    }

    const Discretization disc(problem);
    RunReport report;
    auto meta = [&](const std::string& key, double value) {
        std::array<char, 32> buf{};
        const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
        report.metadata.emplace_back(key, std::string(buf.data(), res.ptr));
    };
    meta("p", problem.tension);
    meta("h", disc.mesh.h());
    meta("dt", problem.dt);
    meta("a", problem.a);
    meta("b", problem.b);
    meta("epsilon", problem.epsilon);
    meta("mu", problem.mu);

    auto record = [&](const CoefficientVector& state) {
        ReportRow row;
        row.t = state.t;
        if (options.exact) {
            row.linf = linf_error(state, disc.basis, disc.mesh,
                                  [&](double x) { return options.exact(x, state.t); });
        }
        row.invariants = invariants(state, disc.basis, disc.mesh, problem.mu);
        if (options.crest_min_height > 0.0) {
            row.crests = track_crests(state, disc.basis, disc.mesh, options.crest_min_height);
            if (row.crests.size() > options.max_crests) {
                row.crests.resize(options.max_crests);
            }
        }
        if (options.on_record) {
            options.on_record(row, state, disc);
        }
        report.rows.push_back(std::move(row));
    };

    CoefficientVector state = fit_initial(problem, disc.basis, disc.mesh);
    state.t = 0.0;
    if (record_steps.contains(0)) {
        record(state);
    }
    for (int k = 1; k <= steps; ++k) {
        state = step(state, disc, problem);
        state.t = k * problem.dt;
        if (record_steps.contains(k)) {
            record(state);
        }
    }
    return report;
}

} // namespace rlw
