#pragma once

#include <span>
#include <string>

namespace keen {

/// Ponderomotive drive E_pond(x, t) = a_dr k_dr a(t) sin(k_dr x - w_dr t) with
/// the tanh switch-on/switch-off envelope
///   g(t) = (tanh((t - t_left) / tw_left) - tanh((t - t_right) / tw_right)) / 2,
///   a(t) = (g(t) - g(t0)) / (1 - g(t0)).
struct DriveParams {
    double amplitude = 0.0;   // a_dr
    double wavenumber = 0.26; // k_dr
    double frequency = 0.37;  // w_dr
    double duration = 0.0;    // T_dr
    double t0 = 0.0;
    double t_left = 69.0;
    double t_right = 207.0;
    double tw_left = 20.0;
    double tw_right = 20.0;

    /// Canonical case: a_dr = 0.2, T_dr = 100.
    static DriveParams canonical();
    /// Weak case: a_dr = 0.00625, T_dr = 200.
    static DriveParams weak();
    /// Weak amplitude with a different drive duration.
    static DriveParams weak_with_duration(double duration);
    /// Shared shape with t_right tied to the duration; amplitude 0 gives no drive.
    static DriveParams preset(double amplitude, double duration);

    /// Parses `canonical`, `weak` or `weak-Tdr<N>`; throws std::invalid_argument.
    static DriveParams from_case(const std::string& name);

    /// Resets t_right = 207 + duration.
    void set_duration(double duration);
};

double envelope(const DriveParams& p, double t);
double ponderomotive_field(const DriveParams& p, double t, double x);

/// Vectorised over a uniform grid x_i = i * dx.
void ponderomotive_field(const DriveParams& p, double t, double dx, std::span<double> out);

}  // namespace keen
