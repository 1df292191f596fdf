#pragma once

namespace momint::dimensional {

// CODATA hbar and the 87Rb atomic mass used throughout.
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double mass_rb87 = 1.44316060e-25;   // kg

struct LaserParams {
    double rabi = 0.0;      // Rabi frequency Omega [rad/s]
    double detuning = 0.0;  // Delta [rad/s], must be nonzero
    double t_pulse = 0.0;   // pulse duration [s]
};

struct LabContext {
    double mass = mass_rb87;  // kg
    double omega = 0.0;       // trap angular frequency [rad/s]
    double t_flight = 0.0;    // free flight duration [s]; zero allowed
    double delta_s = 0.0;     // imaging resolution [m]
    bool has_laser = false;
    LaserParams laser;

    void validate() const;
};

// Imprinted phase of the far-detuned pulse: phi = -(Omega^2 / 4 Delta) t_pulse,
// returned signed.
double imprinted_phase(const LabContext& ctx);

// Pulse duration that imprints the requested phase (inverse of the above).
double pulse_duration_for_phase(double phi, const LabContext& ctx);

// Reduce a signed phase into [0, 2pi) for use with the notch metrics.
double wrap_phase(double phi);

// Notch velocity  v0 = sqrt(hbar omega / m) (pi/2)^{3/2} (phi - pi)/pi  [m/s].
double notch_velocity(double phi, const LabContext& ctx);

// Notch displacement after free flight, s0 = t_flight * v0  [m].
double notch_displacement(double phi, const LabContext& ctx);

// Resolvance r = (t_flight / delta_s) sqrt(hbar omega / m) (pi/2)^{3/2}.
double resolvance(const LabContext& ctx);

}  // namespace momint::dimensional
