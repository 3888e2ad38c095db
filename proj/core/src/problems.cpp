#include "rlw/problems.hpp"

#include "rlw/errors.hpp"

#include <cmath>

namespace rlw {

void SolitonSpec::validate() const {
    if (!(epsilon > 0.0) || !(mu > 0.0)) {
        throw InvalidParameter("soliton: epsilon and mu must be positive");
    }
    if (!(epsilon * c / (mu * (1.0 + epsilon * c)) > 0.0)) {
        throw InvalidParameter("soliton: wave number is not real for these parameters");
    }
}

double SolitonSpec::wave_number() const {
    return 0.5 * std::sqrt(epsilon * c / (mu * (1.0 + epsilon * c)));
}

namespace {

template <class Real>
Real soliton_value(const SolitonSpec& spec, Real x, Real t) {
    const Real c = spec.c;
    const Real k = Real(0.5) * std::sqrt(spec.epsilon * c / (spec.mu * (1 + spec.epsilon * c)));
    const Real ch = std::cosh(k * (x - spec.x0 - (1 + spec.epsilon * c) * t));
    return 3 * c / (ch * ch);
}

} // namespace

double exact_soliton(const SolitonSpec& spec, double x, double t) {
    return soliton_value<double>(spec, x, t);
}

long double exact_soliton(const SolitonSpec& spec, long double x, long double t) {
    return soliton_value<long double>(spec, x, t);
}

double soliton_amplitude_for_wave_number(double k) {
    const double four_k2 = 4.0 * k * k;
    if (four_k2 == 1.0) {
        throw InvalidParameter("two-soliton: 4k^2 = 1 gives an infinite amplitude");
    }
    return 3.0 * four_k2 / (1.0 - four_k2);
}

double two_soliton_ic(double k1, double k2, double x1, double x2, double x) {
    const double c1 = std::cosh(k1 * (x - x1));
    const double c2 = std::cosh(k2 * (x - x2));
    return soliton_amplitude_for_wave_number(k1) / (c1 * c1) +
           soliton_amplitude_for_wave_number(k2) / (c2 * c2);
}

void WaveMakerSpec::validate() const {
    if (!(tau > 0.0) || !(tau < 0.5 * t0)) {
        throw InvalidParameter("wave maker: require 0 < tau < t0/2");
    }
}

double wavemaker_beta(const WaveMakerSpec& spec, double t) {
    if (t < 0.0 || t > spec.t0) {
        return 0.0;
    }
    if (t <= spec.tau) {
        return spec.u0 * t / spec.tau;
    }
    if (t < spec.t0 - spec.tau) {
        return spec.u0;
    }
    return spec.u0 * (spec.t0 - t) / spec.tau;
}

} // namespace rlw
