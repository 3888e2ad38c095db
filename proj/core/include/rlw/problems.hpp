#pragma once

namespace rlw {

/// 3c sech^2(k (x - x0 - (1 + eps c) t)) with k = sqrt(eps c / (mu (1 + eps c))) / 2.
struct SolitonSpec {
    double c = 0.1;
    double x0 = 0.0;
    double epsilon = 1.0;
    double mu = 1.0;

    double amplitude() const noexcept { return 3.0 * c; }
    double velocity() const noexcept { return 1.0 + epsilon * c; }
    double wave_number() const;
    void validate() const;
};

double exact_soliton(const SolitonSpec& spec, double x, double t);
/// Extended-precision evaluation, for finite-difference checks.
long double exact_soliton(const SolitonSpec& spec, long double x, long double t);

/// Amplitude 3A of the sech^2 pulse with wave number k, A = 4k^2 / (1 - 4k^2).
double soliton_amplitude_for_wave_number(double k);

/// Sum of two sech^2 pulses of wave numbers k1, k2 centred at x1, x2.
double two_soliton_ic(double k1, double k2, double x1, double x2, double x);

/// Trapezoidal ramp applied as the left boundary value.
struct WaveMakerSpec {
    double u0 = 2.0;
    double tau = 0.3;
    double t0 = 20.0;

    void validate() const;
};

/// U0 t/tau on [0, tau], U0 until t0 - tau, U0 (t0 - t)/tau down to t0, zero after.
double wavemaker_beta(const WaveMakerSpec& spec, double t);

} // namespace rlw
