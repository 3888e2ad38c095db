#include "doctest.h"

#include "rlw/basis.hpp"
#include "rlw/diagnostics.hpp"
#include "rlw/errors.hpp"
#include "rlw/problems.hpp"

#include <cmath>
#include <random>

TEST_CASE("exact soliton crest and speed") {
    rlw::SolitonSpec spec;
    CHECK(spec.velocity() == doctest::Approx(1.1));
    CHECK(spec.amplitude() == doctest::Approx(0.3));
    for (double t : {0.0, 3.0, 17.5}) {
        CHECK(rlw::exact_soliton(spec, 1.1 * t, t) == doctest::Approx(0.3).epsilon(1e-14));
    }
    rlw::SolitonSpec small;
    small.c = 0.03;
    CHECK(small.amplitude() == doctest::Approx(0.09));
    CHECK(rlw::exact_soliton(spec, 400.0, 0.0) < 1e-20);
}

TEST_CASE("exact soliton satisfies the equation") {
    // central differences with spacing 1e-4, evaluated in extended precision
    // so the mixed third derivative is not swamped by rounding
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> ux(-30.0, 50.0), ut(0.0, 20.0);
    for (double c : {0.1, 0.03}) {
        rlw::SolitonSpec spec;
        spec.c = c;
        auto u = [&](long double x, long double t) { return rlw::exact_soliton(spec, x, t); };
        const long double d = 1e-4L;
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const long double x = ux(rng), t = ut(rng);
            const long double u0 = u(x, t);
            const long double u_t = (u(x, t + d) - u(x, t - d)) / (2 * d);
            const long double u_x = (u(x + d, t) - u(x - d, t)) / (2 * d);
            auto u_xx = [&](long double tt) {
                return (u(x + d, tt) - 2 * u(x, tt) + u(x - d, tt)) / (d * d);
            };
            const long double u_xxt = (u_xx(t + d) - u_xx(t - d)) / (2 * d);
            const long double r = u_t + u_x + spec.epsilon * u0 * u_x - spec.mu * u_xxt;
            worst = std::max(worst, static_cast<double>(std::fabs(r)));
        }
        CAPTURE(c);
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("exact soliton analytic invariants at t=0") {
    rlw::SolitonSpec spec;
    const rlw::Mesh mesh(-40.0, 60.0, 800);
    std::vector<double> u, ux;
    const double k = spec.wave_number();
    for (double x : mesh.knots()) {
        u.push_back(rlw::exact_soliton(spec, x, 0.0));
        const double th = std::tanh(k * x);
        ux.push_back(-2.0 * k * th * u.back());
    }
    const auto inv = rlw::invariants_from_knots(u, ux, mesh.h(), spec.mu);
    CHECK(inv.c1 == doctest::Approx(3.9799297).epsilon(1e-4));
    CHECK(inv.c2 == doctest::Approx(0.81046249).epsilon(1e-4));
    CHECK(inv.c3 == doctest::Approx(2.579007).epsilon(1e-4));
}

TEST_CASE("soliton spec validation") {
    rlw::SolitonSpec spec;
    CHECK_NOTHROW(spec.validate());
    spec.c = -0.5;
    CHECK_THROWS_AS(spec.validate(), rlw::InvalidParameter);
    spec.c = 0.1;
    spec.mu = 0.0;
    CHECK_THROWS_AS(spec.validate(), rlw::InvalidParameter);
}

TEST_CASE("two-soliton initial condition") {
    const double v1 = rlw::two_soliton_ic(0.4, 0.3, 15.0, 35.0, 15.0);
    CHECK(std::fabs(v1 - 5.333375) < 1e-3);
    CHECK(v1 == doctest::Approx(5.3333).epsilon(1e-4));
    // wave 2 alone: 3 * 0.36 / 0.64
    CHECK(rlw::soliton_amplitude_for_wave_number(0.3) == doctest::Approx(1.6875).epsilon(1e-14));
    const double v2 = rlw::two_soliton_ic(0.4, 0.3, 15.0, 35.0, 35.0);
    CHECK(std::fabs(v2 - 1.687502) < 1e-3);
    CHECK(rlw::two_soliton_ic(0.4, 0.3, 15.0, 35.0, 1e4) == 0.0);
    CHECK(rlw::two_soliton_ic(0.4, 0.3, 15.0, 35.0, -1e4) == 0.0);
    CHECK_THROWS_AS(rlw::soliton_amplitude_for_wave_number(0.5), rlw::InvalidParameter);
}

TEST_CASE("wave maker boundary") {
    const rlw::WaveMakerSpec wm;
    CHECK(rlw::wavemaker_beta(wm, 0.0) == 0.0);
    CHECK(rlw::wavemaker_beta(wm, 0.15) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rlw::wavemaker_beta(wm, 0.3) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(rlw::wavemaker_beta(wm, 10.0) == 2.0);
    CHECK(rlw::wavemaker_beta(wm, 20.0) == 0.0);
    CHECK(rlw::wavemaker_beta(wm, 25.0) == 0.0);
    for (double knot : {wm.tau, wm.t0 - wm.tau, wm.t0}) {
        const double e = 1e-12;
        CAPTURE(knot);
        CHECK(std::fabs(rlw::wavemaker_beta(wm, knot + e) - rlw::wavemaker_beta(wm, knot - e)) < 1e-10);
    }
    rlw::WaveMakerSpec bad;
    bad.tau = 12.0;
    CHECK_THROWS_AS(bad.validate(), rlw::InvalidParameter);
    bad.tau = 0.0;
    CHECK_THROWS_AS(bad.validate(), rlw::InvalidParameter);
}
