#include "cascade/control_laws.hpp"

#include "cascade/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cascade {

ControlInput saturate(const ControlInput& raw, const AircraftParams& p,
                      SaturationFlags& flags) {
    ControlInput out = raw;
    out.delta_m = std::clamp(raw.delta_m, -p.delta_m_max, p.delta_m_max);
    out.delta_p = std::clamp(raw.delta_p, -p.delta_p_max, p.delta_p_max);
    out.thrust = std::clamp(raw.thrust, p.P_min, p.P_max);
    flags.delta_m = out.delta_m != raw.delta_m;
    flags.delta_p = out.delta_p != raw.delta_p;
    flags.thrust = out.thrust != raw.thrust;
    return out;
}

DerivativeEstimates second_derivative_estimates(const RateSample& prev,
                                                double dphi_dt,
                                                double a2prime, double dt) {
    DerivativeEstimates est;
    if (prev.valid && dt > 0.0) {
        est.d2phi_dt2 = (dphi_dt - prev.dphi_dt) / dt;
        est.da2prime_dt = (a2prime - prev.a2prime) / dt;
    }
    return est;
}

double q_command(double alpha, double phi, double a2prime, double dphi_dt,
                 double a2) {
    return a2 * (alpha - phi) + a2prime + dphi_dt;
}

double nozzle_rate_law(const State& s, const AlphaCommand& cmd,
                       double attitude_target, const Gains& gains,
                       double a2prime, double w0, double singular_eps,
                       double t) {
    if (std::abs(cmd.partials.d_delta_p) < singular_eps) {
        throw NozzleLawSingular(
            "nozzle_rate_law: |dphi/ddelta_p| below singularity floor", t);
    }
    const double bracket = gains.a4 * (s.pitch_attitude() - attitude_target) -
                           gains.a2 * (s.alpha - cmd.phi) - a2prime - w0;
    return bracket / cmd.partials.d_delta_p;
}

double total_phi_rate(const AlphaCommand& cmd, double w0,
                      double delta_p_rate) {
    return w0 + cmd.partials.d_delta_p * delta_p_rate;
}

double stabilizer_law(const State& s, double delta_p, double thrust,
                      double phi, double a2prime, double dphi_dt,
                      const DerivativeEstimates& est, const Gains& gains,
                      const AircraftParams& p, double pressure_floor,
                      double t) {
    const double rho = air_density(s.h);
    const double pressure_group = 0.5 * rho * s.v * s.v * p.S * p.l;
    if (pressure_group < pressure_floor) {
        throw DegeneratePressure(
            "stabilizer_law: dynamic pressure group below floor", t);
    }
    const double alpha_rate = s.q - a2prime; // design-model dalpha/dt
    const double w2 = gains.a3 * (s.q - gains.a2 * (s.alpha - phi) - a2prime -
                                  dphi_dt);
    const double w3 = gains.a2 * (alpha_rate - dphi_dt) + est.da2prime_dt +
                      est.d2phi_dt2;
    const double w4 = p.Cm_alpha * std::sin(2.0 * s.alpha) +
                      p.Cm_q * (p.l / s.v) * s.q;
    const double nozzle_moment =
        thrust * (p.y_p + p.x_p * std::sin(delta_p));
    return ((p.Izz * (w2 + w3) - nozzle_moment) / pressure_group - w4) /
           p.Cm_delta_m;
}

ControlComputation compute_control(double t, const State& s, double delta_p,
                                   double thrust,
                                   const ManeuverProgram& prog,
                                   const Gains& gains,
                                   const AircraftParams& p,
                                   const RateSample& prev, double dt,
                                   std::optional<double> warm_start,
                                   std::optional<DerivativeEstimates> frozen,
                                   const ControlLawConfig& cfg) {
    ControlComputation c;

    const ManifoldPoint mp{t, s.v, s.theta, s.h, delta_p, thrust};
    c.alpha_cmd =
        solve_alpha_command(mp, prog, gains.a1, p, warm_start, cfg.solver);

    // Design-model rates at the current state. delta_m does not enter the
    // simplified coefficient set, so a placeholder zero is fine here.
    const ControlInput design_u{0.0, delta_p, thrust};
    c.a1prime = airspeed_rate(s, design_u, p, AeroMode::Simplified);
    c.a2prime = path_angle_rate(s, design_u, p, AeroMode::Simplified);

    const PhiPartials& d = c.alpha_cmd.partials;
    c.w0 = d.d_t + d.d_v * c.a1prime + d.d_h * (s.v * std::sin(s.theta)) +
           d.d_theta * c.a2prime;

    c.delta_p_rate =
        nozzle_rate_law(s, c.alpha_cmd, prog.attitude_target, gains,
                        c.a2prime, c.w0, cfg.solver.singular_eps, t);
    c.dphi_dt = total_phi_rate(c.alpha_cmd, c.w0, c.delta_p_rate);
    c.q_cmd = q_command(s.alpha, c.alpha_cmd.phi, c.a2prime, c.dphi_dt,
                        gains.a2);

    c.estimates = frozen ? *frozen
                         : second_derivative_estimates(prev, c.dphi_dt,
                                                       c.a2prime, dt);

    c.delta_m_raw =
        stabilizer_law(s, delta_p, thrust, c.alpha_cmd.phi, c.a2prime,
                       c.dphi_dt, c.estimates, gains, p, cfg.pressure_floor, t);
    c.delta_m = std::clamp(c.delta_m_raw, -p.delta_m_max, p.delta_m_max);
    c.delta_m_saturated = c.delta_m != c.delta_m_raw;

    // Assembly audits. Stage 3: the attitude-shaping equation evaluated at
    // the returned nozzle rate. Stage 4: the pitch-moment shaping equation
    // evaluated at the raw stabilizer demand.
    c.stage3_residual = gains.a4 * (s.pitch_attitude() - prog.attitude_target) -
                        gains.a2 * (s.alpha - c.alpha_cmd.phi) - c.a2prime -
                        c.dphi_dt;
    {
        const double rho = air_density(s.h);
        const double moment_coeff = p.Cm_alpha * std::sin(2.0 * s.alpha) +
                                    p.Cm_delta_m * c.delta_m_raw +
                                    p.Cm_q * (p.l / s.v) * s.q;
        const double q_rate = (0.5 * rho * s.v * s.v * p.S * p.l * moment_coeff +
                               thrust * (p.y_p + p.x_p * std::sin(delta_p))) /
                              p.Izz;
        const double alpha_rate = s.q - c.a2prime;
        const double w3 = gains.a2 * (alpha_rate - c.dphi_dt) +
                          c.estimates.da2prime_dt + c.estimates.d2phi_dt2;
        const double w2 = gains.a3 * (s.q - gains.a2 * (s.alpha - c.alpha_cmd.phi) -
                                      c.a2prime - c.dphi_dt);
        c.stage4_residual = q_rate - w3 - w2;
    }
    return c;
}

} // namespace cascade
