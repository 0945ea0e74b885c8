#pragma once

#include "cascade/alpha_manifold.hpp"
#include "cascade/dynamics.hpp"

#include <optional>

namespace cascade {

/// Which actuator channels were clipped by saturate().
struct SaturationFlags {
    bool delta_m = false;
    bool delta_p = false;
    bool thrust = false;

    bool any() const { return delta_m || delta_p || thrust; }
    int bits() const {
        return (delta_m ? 1 : 0) | (delta_p ? 2 : 0) | (thrust ? 4 : 0);
    }
};

/// Componentwise clamp of the raw actuator demand to the aircraft bounds.
/// flags records which channels clipped; clamping is log-and-clip only, no
/// anti-windup.
ControlInput saturate(const ControlInput& raw, const AircraftParams& p,
                      SaturationFlags& flags);

/// Estimates of the two derivative terms of the stabilizer law that have no
/// closed form: the second total derivative of the solved angle-of-attack
/// command and the total derivative of the simplified path-angle rate.
struct DerivativeEstimates {
    double d2phi_dt2 = 0.0;    // [rad/s^2]
    double da2prime_dt = 0.0;  // [rad/s^2]
};

/// Previous-step samples of the analytically computed series
/// (dphi/dt, A2') used for backward differencing. Owned by one simulation
/// run; updated once per integration step at the step start.
struct RateSample {
    bool valid = false;
    double dphi_dt = 0.0;
    double a2prime = 0.0;
};

/// First-order backward differences of the two series. Returns zeros at the
/// first step (no history yet).
DerivativeEstimates second_derivative_estimates(const RateSample& prev,
                                                double dphi_dt,
                                                double a2prime, double dt);

/// One full evaluation of the cascade: the solved angle-of-attack command,
/// the nozzle rate, the total phi rate, the pitch-rate command, and the
/// stabilizer deflection, along with the diagnostics the test suites check.
struct ControlComputation {
    AlphaCommand alpha_cmd;
    double a1prime = 0.0;       // simplified dv/dt at the current state
    double a2prime = 0.0;       // simplified dtheta/dt at the current state
    double w0 = 0.0;            // drift part of dphi/dt (no nozzle motion)
    double delta_p_rate = 0.0;  // commanded nozzle rate [rad/s]
    double dphi_dt = 0.0;       // total time derivative of phi [rad/s]
    double q_cmd = 0.0;         // pitch-rate command [rad/s]
    DerivativeEstimates estimates;
    double delta_m_raw = 0.0;   // stabilizer demand before clamping [rad]
    double delta_m = 0.0;       // stabilizer demand after clamping [rad]
    bool delta_m_saturated = false;

    // Assembly identities, recorded so logs can be audited offline. Both
    // are zero up to rounding when the laws are assembled correctly.
    double stage3_residual = 0.0; // attitude-shaping equation at delta_p_rate
    double stage4_residual = 0.0; // pitch-moment shaping equation at delta_m
};

/// Guard floors for the law evaluation.
struct ControlLawConfig {
    AlphaSolverConfig solver;
    double pressure_floor = 1e-3; // minimum 0.5*rho*v^2*S*l [N m]

    friend bool operator==(const ControlLawConfig&, const ControlLawConfig&) = default;
};

/// Pitch-rate command: q_cmd = a2*(alpha - phi) + A2' + dphi/dt.
double q_command(double alpha, double phi, double a2prime, double dphi_dt,
                 double a2);

/// Nozzle-rate law: solves the attitude-shaping equation for d(delta_p)/dt,
///   delta_p_rate = [a4*(attitude - target) - a2*(alpha - phi) - A2' - W0]
///                  / (dphi/ddelta_p),
/// where W0 = dphi/dt with the nozzle frozen:
///   W0 = phi_t + phi_v*A1' + phi_h*v*sin(theta) + phi_theta*A2'.
/// A1' and A2' are the simplified-model rates (A1' enters through W0).
/// Throws NozzleLawSingular when |dphi/ddelta_p| is below the singularity
/// floor.
double nozzle_rate_law(const State& s, const AlphaCommand& cmd,
                       double attitude_target, const Gains& gains,
                       double a2prime, double w0, double singular_eps,
                       double t);

/// Chain rule: dphi/dt = W0 + (dphi/ddelta_p) * delta_p_rate.
double total_phi_rate(const AlphaCommand& cmd, double w0,
                      double delta_p_rate);

/// Stabilizer law: solves the pitch-moment shaping equation for delta_m,
///   delta_m = [ (Izz*(W2 + W3) - P*(y_p + x_p*sin(delta_p))) / (q_bar*S*l)
///               - W4 ] / Cm_delta_m,
/// with W2 = a3*(q - a2*(alpha-phi) - A2' - dphi/dt),
///      W3 = a2*(dalpha/dt - dphi/dt) + dA2'/dt + d2phi/dt2,
///      W4 = Cm_alpha*sin(2 alpha) + Cm_q*(l/v)*q,
/// dalpha/dt evaluated on the design model as q - A2'. Throws
/// DegeneratePressure when the dynamic-pressure group is below the floor.
double stabilizer_law(const State& s, double delta_p, double thrust,
                      double phi, double a2prime, double dphi_dt,
                      const DerivativeEstimates& est, const Gains& gains,
                      const AircraftParams& p, double pressure_floor,
                      double t);

/// Runs the whole cascade at one instant. When `frozen` is supplied the
/// derivative estimates are taken from it (integrator substeps reuse the
/// step-start estimates); otherwise they are backward differences against
/// `prev`. The control laws evaluate the simplified aero model throughout,
/// independent of what the plant runs.
ControlComputation compute_control(double t, const State& s, double delta_p,
                                   double thrust,
                                   const ManeuverProgram& prog,
                                   const Gains& gains,
                                   const AircraftParams& p,
                                   const RateSample& prev, double dt,
                                   std::optional<double> warm_start = {},
                                   std::optional<DerivativeEstimates> frozen = {},
                                   const ControlLawConfig& cfg = {});

} // namespace cascade
