#include "doctest.h"
#include "support/oracles.hpp"

#include "rlw/errors.hpp"
#include "rlw/problems.hpp"
#include "rlw/solver.hpp"

#include <cmath>

namespace {

rlw::RLWProblem soliton_problem(double c = 0.1, double dt = 0.1, double t_final = 0.0) {
    rlw::SolitonSpec spec;
    spec.c = c;
    rlw::RLWProblem pr;
    pr.a = -40.0;
    pr.b = 60.0;
    pr.n_elements = 800;
    pr.dt = dt;
    pr.t_final = t_final;
    pr.tension = 0.01262;
    pr.initial = [spec](double x) { return rlw::exact_soliton(spec, x, 0.0); };
    return pr;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
    return d;
}

oracle::Dense to_dense(const rlw::BandMatrix& m) {
    auto d = oracle::zeros(static_cast<std::size_t>(m.size()));
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) d[i][j] = m(i, j);
    }
    return d;
}

} // namespace

TEST_CASE("fit_initial") {
    SUBCASE("zero data") {
        auto pr = soliton_problem();
        pr.initial = [](double) { return 0.0; };
        const rlw::Discretization disc(pr);
        const auto st = rlw::fit_initial(pr, disc.basis, disc.mesh);
        for (double v : st.delta) CHECK(v == 0.0);
    }

    SUBCASE("soliton knot values are reproduced") {
        const auto pr = soliton_problem();
        const rlw::Discretization disc(pr);
        const auto st = rlw::fit_initial(pr, disc.basis, disc.mesh);
        const auto u = rlw::knot_values(st, disc.basis);
        for (int m = 0; m <= pr.n_elements; ++m) {
            CHECK(std::fabs(u[m] - pr.initial(disc.mesh.knot(m))) <= 1e-10);
        }
    }

    SUBCASE("constant data against a dense solve") {
        rlw::RLWProblem pr;
        pr.a = 0.0;
        pr.b = 3.0;
        pr.n_elements = 10;
        pr.tension = 1.0;
        pr.initial = [](double) { return 1.0; };
        const rlw::Discretization disc(pr);
        const auto st = rlw::fit_initial(pr, disc.basis, disc.mesh);
        const int n = pr.n_elements;
        const double a1 = disc.basis.alpha1();
        const double a2 = disc.basis.alpha2();

        // unknowns delta_{-1}..delta_{N+1}: interpolation rows plus zero end slopes
        auto m = oracle::zeros(n + 3);
        std::vector<double> rhs(n + 3, 0.0);
        for (int k = 0; k <= n; ++k) {
            m[k][k] = a1;
            m[k][k + 1] = 1.0;
            m[k][k + 2] = a1;
            rhs[k] = 1.0;
        }
        m[n + 1][0] = a2;
        m[n + 1][2] = -a2;
        m[n + 2][n] = a2;
        m[n + 2][n + 2] = -a2;
        const auto ref = oracle::dense_solve(m, rhs);
        CHECK(max_abs_diff(st.delta, ref) <= 1e-12);
        for (int k = 0; k <= n; ++k) {
            CHECK(std::fabs(a1 * st[k - 1] + st[k] + a1 * st[k + 1] - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("zero state is a fixed point") {
    auto pr = soliton_problem();
    pr.initial = [](double) { return 0.0; };
    const rlw::Discretization disc(pr);
    rlw::CoefficientVector st(pr.n_elements, 0.0);
    for (int k = 0; k < 5; ++k) {
        st = rlw::step(st, disc, pr);
        for (double v : st.delta) REQUIRE(v == 0.0);
    }
}

TEST_CASE("linear step against a dense Crank-Nicolson solve") {
    rlw::RLWProblem pr;
    pr.epsilon = 0.0;
    pr.a = 0.0;
    pr.b = 6.0;
    pr.n_elements = 20;
    pr.tension = 1.0;
    pr.dt = 0.1;
    pr.left_boundary = [](double t) { return 0.3 * t; };
    pr.right_boundary = [](double t) { return -0.1 * t; };
    pr.initial = [](double x) { return std::exp(-(x - 3.0) * (x - 3.0)); };
    const rlw::Discretization disc(pr);
    auto st = rlw::fit_initial(pr, disc.basis, disc.mesh);
    st.t = 0.4;
    const auto next = rlw::step(st, disc, pr);

    const int n = pr.n_elements;
    const double a1 = disc.basis.alpha1();
    const auto base = to_dense(disc.implicit_base);
    const auto adv = to_dense(disc.global.advection);
    auto plus = base, minus = base;
    for (int i = 0; i < n + 3; ++i) {
        for (int j = 0; j < n + 3; ++j) {
            plus[i][j] += 0.5 * pr.dt * adv[i][j];
            minus[i][j] -= 0.5 * pr.dt * adv[i][j];
        }
    }
    const auto full_rhs = oracle::dense_multiply(minus, st.delta);
    auto m = oracle::zeros(n + 3);
    std::vector<double> rhs(n + 3);
    for (int r = 1; r <= n + 1; ++r) {
        m[r] = plus[r];
        rhs[r] = full_rhs[r];
    }
    m[0].assign(n + 3, 0.0);
    m[0][0] = a1;
    m[0][1] = 1.0;
    m[0][2] = a1;
    rhs[0] = pr.left_boundary(0.5);
    m[n + 2].assign(n + 3, 0.0);
    m[n + 2][n] = a1;
    m[n + 2][n + 1] = 1.0;
    m[n + 2][n + 2] = a1;
    rhs[n + 2] = pr.right_boundary(0.5);
    const auto ref = oracle::dense_solve(m, rhs);

    double scale = 0.0;
    for (double v : ref) scale = std::max(scale, std::fabs(v));
    CHECK(max_abs_diff(next.delta, ref) <= 1e-10 * scale);
    CHECK(next.t == doctest::Approx(0.5));
}

TEST_CASE("linear step is reversed by a step with -dt") {
    rlw::RLWProblem pr;
    pr.epsilon = 0.0;
    pr.a = 0.0;
    pr.b = 12.0;
    pr.n_elements = 40;
    pr.tension = 1.0;
    pr.dt = 0.1;
    pr.initial = [](double x) { return std::exp(-(x - 6.0) * (x - 6.0)); };
    const rlw::Discretization disc(pr);
    const auto st0 = rlw::fit_initial(pr, disc.basis, disc.mesh);
    // boundary data equal to the fitted end values, held constant
    const auto u0 = rlw::knot_values(st0, disc.basis);
    const double left = u0.front(), right = u0.back();
    pr.left_boundary = [left](double) { return left; };
    pr.right_boundary = [right](double) { return right; };

    const auto st1 = rlw::step(st0, disc, pr);
    auto back = pr;
    back.dt = -pr.dt;
    const auto st2 = rlw::step(st1, disc, back);
    double scale = 0.0;
    for (double v : st0.delta) scale = std::max(scale, std::fabs(v));
    CHECK(max_abs_diff(st2.delta, st0.delta) <= 1e-9 * scale);
}

TEST_CASE("boundary identities hold after every step") {
    auto pr = soliton_problem();
    pr.left_boundary = [](double t) { return 0.01 * std::sin(t); };
    pr.right_boundary = [](double t) { return 0.005 * t; };
    const rlw::Discretization disc(pr);
    auto st = rlw::fit_initial(pr, disc.basis, disc.mesh);
    const int n = pr.n_elements;
    const double a1 = disc.basis.alpha1();
    for (int k = 1; k <= 50; ++k) {
        st = rlw::step(st, disc, pr);
        st.t = k * pr.dt;
        CHECK(std::fabs(a1 * st[-1] + st[0] + a1 * st[1] - pr.left_boundary(st.t)) <= 1e-10);
        CHECK(std::fabs(a1 * st[n - 1] + st[n] + a1 * st[n + 1] - pr.right_boundary(st.t)) <= 1e-10);
        CHECK(std::fabs(rlw::evaluate(st, disc.basis, disc.mesh, pr.a) - pr.left_boundary(st.t)) <= 1e-10);
        CHECK(std::fabs(rlw::evaluate(st, disc.basis, disc.mesh, pr.b) - pr.right_boundary(st.t)) <= 1e-10);
    }
}

TEST_CASE("one soliton step keeps the crest and agrees with two half steps") {
    const auto pr = soliton_problem();
    const rlw::Discretization disc(pr);
    const auto st0 = rlw::fit_initial(pr, disc.basis, disc.mesh);
    const auto one = rlw::step(st0, disc, pr);

    auto half = pr;
    half.dt = 0.05;
    auto two = rlw::step(st0, disc, half);
    two = rlw::step(two, disc, half);

    const auto u0 = rlw::knot_values(st0, disc.basis);
    const auto u1 = rlw::knot_values(one, disc.basis);
    const auto u2 = rlw::knot_values(two, disc.basis);
    const double peak0 = *std::max_element(u0.begin(), u0.end());
    const double peak1 = *std::max_element(u1.begin(), u1.end());
    CHECK(std::fabs(peak1 - peak0) < 1e-4);
    CHECK(max_abs_diff(u1, u2) < 1e-6);
}

TEST_CASE("C2 drift over 200 steps") {
    const auto pr = soliton_problem(0.1, 0.1, 20.0);
    const double times[] = {0.0, 20.0};
    const auto rep = rlw::run(pr, times);
    REQUIRE(rep.rows.size() == 2);
    CHECK(std::fabs(rep.rows[1].invariants.c2 - rep.rows[0].invariants.c2) <= 1e-6);
    CHECK(rep.well_formed());
}

TEST_CASE("step-halving convergence at t=4") {
    rlw::SolitonSpec spec;
    auto err = [&](double dt) {
        auto pr = soliton_problem(0.1, dt, 4.0);
        const double times[] = {4.0};
        rlw::RunOptions opt;
        opt.exact = [spec](double x, double t) { return rlw::exact_soliton(spec, x, t); };
        return *rlw::run(pr, times, opt).rows.at(0).linf;
    };
    const double ratio = err(0.1) / err(0.05);
    CAPTURE(ratio);
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.0);
}

TEST_CASE("run bookkeeping") {
    SUBCASE("T = 0 gives one row with zero error") {
        rlw::SolitonSpec spec;
        const auto pr = soliton_problem(0.1, 0.1, 0.0);
        const double times[] = {0.0};
        rlw::RunOptions opt;
        opt.exact = [spec](double x, double t) { return rlw::exact_soliton(spec, x, t); };
        const auto rep = rlw::run(pr, times, opt);
        REQUIRE(rep.rows.size() == 1);
        CHECK(rep.rows[0].t == 0.0);
        CHECK(*rep.rows[0].linf < 1e-12);
    }
    SUBCASE("record times must be multiples of dt in range") {
        const auto pr = soliton_problem(0.1, 0.1, 1.0);
        const double off_grid[] = {0.25};
        CHECK_THROWS_AS(rlw::run(pr, off_grid), rlw::InvalidParameter);
        const double beyond[] = {2.0};
        CHECK_THROWS_AS(rlw::run(pr, beyond), rlw::InvalidParameter);
    }
    SUBCASE("metadata") {
        const auto pr = soliton_problem(0.1, 0.1, 0.0);
        const auto rep = rlw::run(pr, {});
        bool has_p = false;
        for (const auto& [k, v] : rep.metadata) {
            if (k == "p") {
                has_p = true;
                CHECK(v == "0.01262");
            }
        }
        CHECK(has_p);
    }
    SUBCASE("invalid problems") {
        auto pr = soliton_problem(0.1, 0.1, 1.0);
        pr.mu = 0.0;
        CHECK_THROWS_AS(pr.validate(), rlw::InvalidParameter);
        pr = soliton_problem(0.1, 0.3, 1.0);
        CHECK_THROWS_AS(pr.validate(), rlw::InvalidParameter);
        pr = soliton_problem(0.1, -0.1, 1.0);
        CHECK_THROWS_AS(pr.validate(), rlw::InvalidParameter);
    }
}
