#pragma once

#include "cascade/aero_env.hpp"

#include <optional>

namespace cascade {

/// The tracking targets: a sinusoidal flight-path-angle program
/// theta_ref(t) = theta_m * (1 + sin(omega t)) and a constant pitch
/// attitude command. omega = 0 degenerates to holding theta_m.
struct ManeuverProgram {
    double theta_m = 0.05;          // program amplitude [rad]
    double omega = 0.1;             // program frequency [rad/s]
    double attitude_target = 0.08;  // commanded constant pitch attitude [rad]

    double theta_ref(double t) const;       // theta_m * (1 + sin(omega t))
    double theta_ref_rate(double t) const;  // theta_m * omega * cos(omega t)

    /// Throws std::invalid_argument if omega < 0.
    void validate() const;

    friend bool operator==(const ManeuverProgram&, const ManeuverProgram&) = default;
};

/// The four shaping coefficients of the attractor cascade, all strictly
/// negative [1/s]. a1 shapes the path-angle error, a2 the angle-of-attack
/// error, a4 the attitude error and a3 the pitch-rate error (a4 enters the
/// chain before a3; the index order is historical and kept as-is).
struct Gains {
    double a1 = -1.0;
    double a2 = -3.0;
    double a3 = -8.0;
    double a4 = -1.2;

    /// Throws std::invalid_argument if any coefficient is >= 0.
    void validate() const;

    friend bool operator==(const Gains&, const Gains&) = default;
};

/// Everything the Stage-1 manifold equation depends on besides the angle of
/// attack itself: time plus the (v, theta, h) state slice and the current
/// nozzle deflection and thrust.
struct ManifoldPoint {
    double t = 0.0;
    double v = 0.0;       // [m/s]
    double theta = 0.0;   // [rad]
    double h = 0.0;       // [m]
    double delta_p = 0.0; // [rad]
    double thrust = 0.0;  // [N]
};

/// Solver knobs. The default bracket covers the physical angle-of-attack
/// envelope; the manifold equation is periodic in alpha, so a root nearest
/// the warm start is selected when several fall inside a widened bracket.
struct AlphaSolverConfig {
    double bracket = 0.5235987755982988; // +/- pi/6 [rad]
    double tolerance = 1e-10;            // |G| and step tolerance
    int max_iterations = 100;
    double singular_eps = 1e-8;          // floor on |dG/dalpha| and |dphi/ddelta_p|
    int scan_cells = 32;                 // coarse sign-change scan resolution

    friend bool operator==(const AlphaSolverConfig&, const AlphaSolverConfig&) = default;
};

/// Sensitivities of the solved angle-of-attack command, obtained by
/// implicit differentiation of the manifold equation.
struct PhiPartials {
    double d_t = 0.0;       // [rad/s]
    double d_v = 0.0;       // [rad/(m/s)]
    double d_h = 0.0;       // [rad/m]
    double d_theta = 0.0;   // [-]
    double d_delta_p = 0.0; // [-]
};

/// A solved Stage-1 command: the angle of attack that puts the simplified
/// path-angle dynamics on the commanded error decay, the residual achieved,
/// and the implicit partials needed by the nozzle and stabilizer laws.
struct AlphaCommand {
    double phi = 0.0;      // solved angle of attack [rad]
    double residual = 0.0; // |G(phi)|
    PhiPartials partials;
};

/// The Stage-1 manifold function
///   G(alpha) = A2'(alpha, ...) - theta_m*omega*cos(omega t)
///              - a1*(theta - theta_ref(t)),
/// where A2' is the simplified path-angle rate. Its zero in alpha defines
/// the angle-of-attack command surface. Throws std::domain_error for v <= 0.
double manifold_residual(const ManifoldPoint& mp, double alpha,
                         const ManeuverProgram& prog, double a1,
                         const AircraftParams& p);

/// dG/dalpha, analytic.
double manifold_residual_slope(const ManifoldPoint& mp, double alpha,
                               const AircraftParams& p);

/// Solves G(alpha) = 0 by safeguarded Newton (analytic slope) with
/// bisection fallback on a bracketing sign change. The returned root is the
/// one nearest the warm start (nearest zero when no warm start is given);
/// re-solving at the returned phi reproduces it. The residual of the result
/// satisfies |G(phi)| <= cfg.tolerance.
///
/// Throws NoRootInBracket when no root exists inside the bracket,
/// AmbiguousRoot when two roots are equidistant from the warm start within
/// tolerance, and ManifoldSingular when the slope at the root is below
/// cfg.singular_eps (partials would be meaningless).
AlphaCommand solve_alpha_command(const ManifoldPoint& mp,
                                 const ManeuverProgram& prog, double a1,
                                 const AircraftParams& p,
                                 std::optional<double> warm_start = {},
                                 const AlphaSolverConfig& cfg = {});

/// Implicit-function-theorem sensitivities at a solved root phi:
/// each partial is -(dG/dx)/(dG/dalpha) with analytic dG/dx. Throws
/// ManifoldSingular when |dG/dalpha| < cfg.singular_eps.
PhiPartials phi_partials(const ManifoldPoint& mp, double phi,
                         const ManeuverProgram& prog, double a1,
                         const AircraftParams& p,
                         const AlphaSolverConfig& cfg = {});

} // namespace cascade
