#pragma once

#include <string>

namespace cascade {

/// Which aerodynamic coefficient set to evaluate. The full set carries the
/// stabilizer lift contribution CY_delta_m * delta_m; the simplified set
/// drops exactly that term. All control laws are synthesized against the
/// simplified set; the plant may run either one.
enum class AeroMode { Full, Simplified };

/// Physical and aerodynamic constants of the 5D longitudinal model plus the
/// actuator bounds. Values are not validated on construction; call
/// validate() after filling the struct (scenario parsing does).
struct AircraftParams {
    double m = 12000.0;        // mass [kg]
    double S = 28.0;           // wing reference area [m^2]
    double l = 3.5;            // mean aerodynamic chord [m]
    double Izz = 76000.0;      // pitch-axis moment of inertia [kg m^2]
    double g = 9.81;           // gravitational acceleration [m/s^2]

    double CX0 = 0.03;         // zero-lift drag coefficient [-]
    double k_induced = 0.12;   // induced drag factor, CX = CX0 + k*CY^2 [-]
    double CY_alpha = 2.2;     // lift coefficient on sin(2*alpha) [-]
    double CY_delta_m = 0.4;   // stabilizer lift coefficient [-]
    double Cm_alpha = -0.35;   // pitch moment coefficient on sin(2*alpha) [-]
    double Cm_delta_m = -0.9;  // stabilizer moment effectiveness [-]
    double Cm_q = -6.0;        // pitch damping on (l/v)*q [-]

    double x_p = 6.0;          // nozzle moment arm along body x [m], signed
    double y_p = 0.0;          // nozzle thrust-line offset [m], signed

    double delta_m_max = 0.44; // stabilizer deflection bound [rad]
    double delta_p_max = 0.5;  // nozzle deflection bound [rad]
    double P_min = 10000.0;    // thrust lower bound [N]
    double P_max = 130000.0;   // thrust upper bound [N]

    /// Checks the structural invariants (positive mass/areas/bounds,
    /// Cm_delta_m != 0, 0 <= P_min <= P_max). Throws std::invalid_argument
    /// naming the offending field.
    void validate() const;

    /// The documented nominal fighter-class parameter set used by the
    /// built-in presets. These values are implementer-chosen to be
    /// magnitude-realistic; no published aircraft is reproduced.
    static AircraftParams nominal_fighter() { return AircraftParams{}; }

    friend bool operator==(const AircraftParams&, const AircraftParams&) = default;
};

/// Lift, drag and pitch moment coefficients at one flight condition.
struct AeroCoefficients {
    double CY = 0.0; // lift [-]
    double CX = 0.0; // drag [-]
    double Cm = 0.0; // pitch moment [-]
};

/// Atmospheric density [kg/m^3] of the power-law standard atmosphere
///   rho(h) = 1.2256 * (1 - 0.2257e-4 * h)^4.256.
/// Valid for 0 <= h < 1/0.2257e-4 (~44306.6 m); outside that range the base
/// of the power would be non-positive and a std::domain_error is thrown.
/// Out-of-range altitude is a hard error, not a clamp: a scenario that
/// leaves the model's envelope is a scenario bug.
double air_density(double altitude_m);

/// d(rho)/dh of the same model [kg/m^4]; same domain as air_density.
double air_density_gradient(double altitude_m);

/// Highest altitude (exclusive) accepted by air_density [m].
double air_density_ceiling();

/// Aerodynamic coefficients at the given flight condition.
///   CY = CY_alpha*sin(2a) [+ CY_delta_m*delta_m in Full mode]
///   CX = CX0 + k*CY^2
///   Cm = Cm_alpha*sin(2a) + Cm_delta_m*delta_m + Cm_q*(l/v)*q
/// The pitch-damping term divides by airspeed; v <= 0 throws
/// std::domain_error.
AeroCoefficients aero_coefficients(double alpha, double q, double v,
                                   double delta_m, const AircraftParams& p,
                                   AeroMode mode);

} // namespace cascade
