#include "cascade/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace cascade {

double airspeed_rate(const State& s, const ControlInput& u,
                     const AircraftParams& p, AeroMode mode,
                     double density_scale) {
    const double rho = density_scale * air_density(s.h);
    const AeroCoefficients c =
        aero_coefficients(s.alpha, s.q, s.v, u.delta_m, p, mode);
    return (u.thrust / p.m) * std::cos(s.alpha + u.delta_p) -
           0.5 * rho * s.v * s.v * p.S * c.CX / p.m - p.g * std::sin(s.theta);
}

double path_angle_rate(const State& s, const ControlInput& u,
                       const AircraftParams& p, AeroMode mode,
                       double density_scale) {
    if (s.v <= 0.0) {
        throw std::domain_error("path_angle_rate: airspeed must be positive");
    }
    const double rho = density_scale * air_density(s.h);
    const AeroCoefficients c =
        aero_coefficients(s.alpha, s.q, s.v, u.delta_m, p, mode);
    return (u.thrust / (p.m * s.v)) * std::sin(s.alpha + u.delta_p) +
           0.5 * rho * s.v * p.S * c.CY / p.m -
           (p.g / s.v) * std::cos(s.theta);
}

StateRates state_derivatives(const State& s, const ControlInput& u,
                             const AircraftParams& p, AeroMode mode,
                             double density_scale) {
    if (s.v <= 0.0) {
        throw std::domain_error("state_derivatives: airspeed must be positive");
    }
    const double rho = density_scale * air_density(s.h);
    const AeroCoefficients c =
        aero_coefficients(s.alpha, s.q, s.v, u.delta_m, p, mode);

    StateRates r;
    r.v_dot = (u.thrust / p.m) * std::cos(s.alpha + u.delta_p) -
              0.5 * rho * s.v * s.v * p.S * c.CX / p.m -
              p.g * std::sin(s.theta);
    r.theta_dot = (u.thrust / (p.m * s.v)) * std::sin(s.alpha + u.delta_p) +
                  0.5 * rho * s.v * p.S * c.CY / p.m -
                  (p.g / s.v) * std::cos(s.theta);
    r.alpha_dot = s.q - r.theta_dot;
    r.q_dot = (0.5 * rho * s.v * s.v * p.S * p.l * c.Cm +
               u.thrust * (p.y_p + p.x_p * std::sin(u.delta_p))) /
              p.Izz;
    r.h_dot = s.v * std::sin(s.theta);
    return r;
}

} // namespace cascade
