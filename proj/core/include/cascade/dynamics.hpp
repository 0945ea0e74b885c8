#pragma once

#include "cascade/aero_env.hpp"

namespace cascade {

/// The five phase variables of the longitudinal model. Pitch attitude is a
/// derived quantity (alpha + theta), never stored, so d(attitude)/dt == q
/// holds exactly by construction. All angles in radians.
struct State {
    double v = 0.0;     // airspeed [m/s]
    double theta = 0.0; // flight path angle [rad]
    double alpha = 0.0; // angle of attack [rad]
    double q = 0.0;     // pitch rate [rad/s]
    double h = 0.0;     // altitude [m]

    /// Pitch attitude angle, alpha + theta [rad].
    double pitch_attitude() const { return alpha + theta; }

    friend bool operator==(const State&, const State&) = default;
};

/// Actuator settings applied to the plant at one instant.
struct ControlInput {
    double delta_m = 0.0; // stabilizer deflection [rad]
    double delta_p = 0.0; // nozzle deflection [rad]
    double thrust = 0.0;  // engine thrust [N]
};

/// Time derivatives of the five states.
struct StateRates {
    double v_dot = 0.0;
    double theta_dot = 0.0;
    double alpha_dot = 0.0;
    double q_dot = 0.0;
    double h_dot = 0.0;
};

/// dv/dt: thrust component along the velocity vector minus drag minus the
/// gravity component. Density is evaluated from s.h and may be scaled for
/// perturbation studies (the control laws always use scale 1).
double airspeed_rate(const State& s, const ControlInput& u,
                     const AircraftParams& p, AeroMode mode,
                     double density_scale = 1.0);

/// dtheta/dt: thrust component across the velocity vector plus lift minus
/// the gravity turn term. In Simplified mode this is the control-design
/// model (the stabilizer lift term is absent). Throws std::domain_error for
/// v <= 0.
double path_angle_rate(const State& s, const ControlInput& u,
                       const AircraftParams& p, AeroMode mode,
                       double density_scale = 1.0);

/// All five rates: (dv/dt, dtheta/dt, q - dtheta/dt, pitch moment / Izz,
/// v sin theta). The dtheta/dt used inside dalpha/dt matches the selected
/// mode, so d(alpha + theta)/dt == q identically.
StateRates state_derivatives(const State& s, const ControlInput& u,
                             const AircraftParams& p, AeroMode mode,
                             double density_scale = 1.0);

} // namespace cascade
