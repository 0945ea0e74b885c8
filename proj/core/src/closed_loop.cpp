#include "cascade/closed_loop.hpp"

#include "cascade/analysis.hpp"
#include "cascade/errors.hpp"
#include "cascade/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cascade {

double ThrustSchedule::at(double t) const {
    if (points.empty()) {
        throw std::invalid_argument("ThrustSchedule: empty schedule");
    }
    double value = points.front().thrust;
    for (const Point& pt : points) {
        if (pt.t <= t) {
            value = pt.thrust;
        } else {
            break;
        }
    }
    return value;
}

void ThrustSchedule::validate(const AircraftParams& p) const {
    if (points.empty()) {
        throw std::invalid_argument("ThrustSchedule: at least one breakpoint required");
    }
    if (points.front().t > 0.0) {
        throw std::invalid_argument("ThrustSchedule: first breakpoint must be at t <= 0");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i > 0 && !(points[i].t > points[i - 1].t)) {
            throw std::invalid_argument(
                "ThrustSchedule: breakpoints must be strictly increasing");
        }
        if (points[i].thrust < p.P_min || points[i].thrust > p.P_max) {
            throw std::invalid_argument(
                "ThrustSchedule: thrust value outside [P_min, P_max]");
        }
    }
}

namespace {

std::array<double, 6> extended_rates(const ControlComputation& c,
                                     const ExtendedState& x, double thrust,
                                     const Scenario& sc) {
    const ControlInput u{c.delta_m, x.delta_p, thrust};
    const StateRates r = state_derivatives(x.state, u, sc.aircraft,
                                           sc.plant_mode, sc.density_scale);
    return {r.v_dot, r.theta_dot, r.alpha_dot, r.q_dot, r.h_dot,
            c.delta_p_rate};
}

} // namespace

TrajectoryLog simulate(const Scenario& sc) {
    sc.validate();

    TrajectoryLog log;
    log.dt = sc.dt;
    const auto n_steps =
        static_cast<std::size_t>(std::llround(sc.t_final / sc.dt));
    log.records.reserve(n_steps + 1);

    ExtendedState x = sc.initial;
    RateSample prev;
    std::optional<double> warm = x.state.alpha;
    bool delta_p_clipped = false;

    for (std::size_t n = 0; n <= n_steps; ++n) {
        const double t = static_cast<double>(n) * sc.dt;
        const double thrust = sc.thrust.at(t);

        ControlComputation c0;
        try {
            c0 = compute_control(t, x.state, x.delta_p, thrust, sc.program,
                                 sc.gains, sc.aircraft, prev, sc.dt, warm,
                                 std::nullopt, sc.control);
        } catch (const SynthesisError& e) {
            log.failure = SimulationFailure{t, e.what()};
            return log;
        } catch (const std::domain_error& e) {
            log.failure = SimulationFailure{t, e.what()};
            return log;
        }

        LogRecord rec;
        rec.t = t;
        rec.x = x;
        rec.delta_m = c0.delta_m;
        rec.thrust = thrust;
        rec.phi = c0.alpha_cmd.phi;
        rec.q_cmd = c0.q_cmd;
        rec.residual_g = c0.alpha_cmd.residual;
        rec.clf = clf_value(x, t, sc.program);
        rec.sat.delta_m = c0.delta_m_saturated;
        rec.sat.delta_p = delta_p_clipped;
        rec.sat.thrust = false; // schedule values are validated in-bounds
        rec.delta_p_rate = c0.delta_p_rate;
        rec.dphi_dt = c0.dphi_dt;
        rec.stage3_residual = c0.stage3_residual;
        rec.stage4_residual = c0.stage4_residual;
        log.records.push_back(rec);

        if (n == n_steps) {
            break;
        }

        // The command is re-solved at each substep state (warm started from
        // the step-start root); the derivative estimates stay frozen so the
        // backward-difference series remains defined on the step grid.
        auto rhs = [&](double ti, const std::array<double, 6>& xi_arr) {
            const ExtendedState xi = ExtendedState::from_array(xi_arr);
            const double thrust_i = sc.thrust.at(ti);
            const ControlComputation ci = compute_control(
                ti, xi.state, xi.delta_p, thrust_i, sc.program, sc.gains,
                sc.aircraft, prev, sc.dt, c0.alpha_cmd.phi, c0.estimates,
                sc.control);
            return extended_rates(ci, xi, thrust_i, sc);
        };

        try {
            x = ExtendedState::from_array(rk4_step(rhs, x.to_array(), t, sc.dt));
        } catch (const SynthesisError& e) {
            log.failure = SimulationFailure{t, e.what()};
            return log;
        } catch (const std::domain_error& e) {
            log.failure = SimulationFailure{t, e.what()};
            return log;
        }

        const double clipped = std::clamp(x.delta_p, -sc.aircraft.delta_p_max,
                                          sc.aircraft.delta_p_max);
        delta_p_clipped = clipped != x.delta_p;
        x.delta_p = clipped;

        prev = RateSample{true, c0.dphi_dt, c0.a2prime};
        warm = c0.alpha_cmd.phi;
    }
    return log;
}

ManifoldStart make_manifold_start(double v, double h, double delta_p,
                                  double thrust, const ManeuverProgram& prog,
                                  const AircraftParams& p, double a1,
                                  double theta_offset,
                                  const AlphaSolverConfig& cfg) {
    ManifoldStart out;
    const double theta0 = prog.theta_ref(0.0) + theta_offset;
    const ManifoldPoint mp{0.0, v, theta0, h, delta_p, thrust};
    const AlphaCommand cmd = solve_alpha_command(mp, prog, a1, p, 0.0, cfg);
    out.state.state = State{v, theta0, cmd.phi, 0.0, h};
    out.state.delta_p = delta_p;
    out.attitude_target = cmd.phi + theta0;
    return out;
}

ManifoldStart make_decay_start(double v, double h, double delta_p,
                               double thrust, const ManeuverProgram& prog,
                               const AircraftParams& p, const Gains& gains,
                               double theta_offset,
                               const AlphaSolverConfig& cfg) {
    ManifoldStart out;
    const double theta0 = prog.theta_ref(0.0) + theta_offset;
    const ManifoldPoint mp{0.0, v, theta0, h, delta_p, thrust};
    const AlphaCommand cmd =
        solve_alpha_command(mp, prog, gains.a1, p, 0.0, cfg);
    const double attitude_err0 =
        (1.0 + cmd.partials.d_theta) * theta_offset;
    out.attitude_target = cmd.phi + theta0 - attitude_err0;
    out.state.state =
        State{v, theta0, cmd.phi, gains.a4 * attitude_err0, h};
    out.state.delta_p = delta_p;
    return out;
}

} // namespace cascade
