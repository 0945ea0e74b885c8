#pragma once

#include "cascade/control_laws.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cascade {

/// The integrated phase space: the five plant states plus the nozzle
/// deflection, which the nozzle law drives in rate form.
struct ExtendedState {
    State state;
    double delta_p = 0.0; // nozzle deflection [rad]

    std::array<double, 6> to_array() const {
        return {state.v, state.theta, state.alpha, state.q, state.h, delta_p};
    }
    static ExtendedState from_array(const std::array<double, 6>& a) {
        return {{a[0], a[1], a[2], a[3], a[4]}, a[5]};
    }

    friend bool operator==(const ExtendedState&, const ExtendedState&) = default;
};

/// Piecewise-constant, right-continuous thrust program. Steps down model
/// engine failures.
struct ThrustSchedule {
    struct Point {
        double t = 0.0;      // breakpoint [s]
        double thrust = 0.0; // value from t onward [N]
        friend bool operator==(const Point&, const Point&) = default;
    };
    std::vector<Point> points;

    static ThrustSchedule constant(double thrust) { return {{{0.0, thrust}}}; }

    /// Value at time t (the last breakpoint with breakpoint time <= t).
    double at(double t) const;

    /// Breakpoints strictly increasing, first at t <= 0, all values within
    /// [P_min, P_max]. Throws std::invalid_argument.
    void validate(const AircraftParams& p) const;

    friend bool operator==(const ThrustSchedule&, const ThrustSchedule&) = default;
};

/// One classical 4th-order Runge-Kutta step of dx/dt = rhs(t, x).
template <std::size_t N, typename Rhs>
std::array<double, N> rk4_step(Rhs&& rhs, const std::array<double, N>& x,
                               double t, double dt) {
    auto blend = [](const std::array<double, N>& a, double c,
                    const std::array<double, N>& b) {
        std::array<double, N> out{};
        for (std::size_t i = 0; i < N; ++i) out[i] = a[i] + c * b[i];
        return out;
    };
    const std::array<double, N> k1 = rhs(t, x);
    const std::array<double, N> k2 = rhs(t + 0.5 * dt, blend(x, 0.5 * dt, k1));
    const std::array<double, N> k3 = rhs(t + 0.5 * dt, blend(x, 0.5 * dt, k2));
    const std::array<double, N> k4 = rhs(t + dt, blend(x, dt, k3));
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = x[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

/// Per-step record of states, controls, commands and diagnostics.
struct LogRecord {
    double t = 0.0;
    ExtendedState x;
    double delta_m = 0.0;    // applied stabilizer deflection [rad]
    double thrust = 0.0;     // applied thrust [N]
    double phi = 0.0;        // solved angle-of-attack command [rad]
    double q_cmd = 0.0;      // pitch-rate command [rad/s]
    double residual_g = 0.0; // |G(phi)| of the manifold solve
    double clf = 0.0;        // V = theta_err^2 + attitude_err^2
    SaturationFlags sat;

    // Auditing fields, not part of the CSV contract.
    double delta_p_rate = 0.0;
    double dphi_dt = 0.0;
    double stage3_residual = 0.0;
    double stage4_residual = 0.0;
};

struct SimulationFailure {
    double t = 0.0;
    std::string reason;
};

/// Uniform-grid trajectory log. When a control-law failure aborts the run
/// the records up to the failure are kept and `failure` is set.
struct TrajectoryLog {
    double dt = 0.0;
    std::vector<LogRecord> records;
    std::optional<SimulationFailure> failure;

    bool completed() const { return !failure.has_value(); }
};

struct Scenario;

/// Integrates the extended system under the cascade control with fixed-step
/// RK4. The plant runs the scenario's aero mode and density scale; the
/// control laws always run the simplified model at nominal density. The
/// angle-of-attack command is re-solved at every integrator substep (warm
/// started from the step-start solution) while the backward-difference
/// derivative estimates are frozen across the step.
TrajectoryLog simulate(const Scenario& scenario);

/// An initial condition on the command manifolds, plus the attitude target
/// that makes it consistent.
struct ManifoldStart {
    ExtendedState state;
    double attitude_target = 0.0;
};

/// Constructs a start on the angle-of-attack and pitch-rate manifolds:
/// theta(0) = theta_ref(0) + theta_offset, alpha(0) solved from the Stage-1
/// equation, attitude target chosen as alpha(0) + theta(0) (zero initial
/// attitude error) and q(0) = 0 accordingly.
ManifoldStart make_manifold_start(double v, double h, double delta_p,
                                  double thrust, const ManeuverProgram& prog,
                                  const AircraftParams& p, double a1,
                                  double theta_offset = 0.0,
                                  const AlphaSolverConfig& cfg = {});

/// Start for the path-angle decay experiment. Because the pitch attitude is
/// held while theta moves, alpha is kinematically locked to the attitude
/// channel; demanding a decaying theta error with zero initial attitude
/// error would push the whole lift correction through the nozzle, whose
/// authority over the command manifold is small. Instead the attitude
/// target is offset by (1 + dphi/dtheta) * theta_offset and the two
/// terminal channels decay synchronously (use gains with a4 == a1), which
/// keeps the nozzle motion second-order. q(0) sits on the pitch-rate
/// manifold: q(0) = a4 * initial attitude error.
ManifoldStart make_decay_start(double v, double h, double delta_p,
                               double thrust, const ManeuverProgram& prog,
                               const AircraftParams& p, const Gains& gains,
                               double theta_offset,
                               const AlphaSolverConfig& cfg = {});

} // namespace cascade
