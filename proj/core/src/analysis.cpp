#include "cascade/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cascade {

const std::array<const char*, 6> kRobustnessChannelNames = {
    "v", "theta", "alpha", "q", "h", "delta_p"};

TrackingErrors tracking_errors(const ExtendedState& x, double t,
                               const ManeuverProgram& prog) {
    TrackingErrors e;
    e.theta = x.state.theta - prog.theta_ref(t);
    e.attitude = x.state.pitch_attitude() - prog.attitude_target;
    return e;
}

double clf_value(const ExtendedState& x, double t,
                 const ManeuverProgram& prog) {
    const TrackingErrors e = tracking_errors(x, t, prog);
    return e.theta * e.theta + e.attitude * e.attitude;
}

namespace {

/// Least-squares slope of ln|err| vs t over the window, or nullopt when the
/// window holds fewer than two samples.
std::optional<double> decay_slope(const TrajectoryLog& log,
                                  const std::vector<double>& errors,
                                  double low, double high) {
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        const double mag = std::abs(errors[i]);
        if (mag < low || mag > high) {
            continue;
        }
        const double t = log.records[i].t;
        const double y = std::log(mag);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
        ++count;
    }
    if (count < 2) {
        return std::nullopt;
    }
    const double denom = count * stt - st * st;
    if (denom == 0.0) {
        return std::nullopt;
    }
    return (count * sty - st * sy) / denom;
}

} // namespace

RunMetrics compute_metrics(const TrajectoryLog& log,
                           const ManeuverProgram& prog, const Gains& gains,
                           const MetricsConfig& cfg) {
    if (log.records.empty()) {
        throw std::invalid_argument("compute_metrics: empty log");
    }

    RunMetrics m;
    std::vector<double> theta_err(log.records.size());
    std::vector<double> att_err(log.records.size());
    std::size_t sat_m = 0, sat_p = 0, sat_thrust = 0;
    for (std::size_t i = 0; i < log.records.size(); ++i) {
        const LogRecord& r = log.records[i];
        const TrackingErrors e = tracking_errors(r.x, r.t, prog);
        theta_err[i] = e.theta;
        att_err[i] = e.attitude;
        m.sup_theta_error = std::max(m.sup_theta_error, std::abs(e.theta));
        m.sup_attitude_error = std::max(m.sup_attitude_error, std::abs(e.attitude));
        sat_m += r.sat.delta_m ? 1 : 0;
        sat_p += r.sat.delta_p ? 1 : 0;
        sat_thrust += r.sat.thrust ? 1 : 0;
    }
    m.final_theta_error = std::abs(theta_err.back());
    m.final_attitude_error = std::abs(att_err.back());

    m.theta_decay_rate = decay_slope(log, theta_err, cfg.decay_window_low,
                                     cfg.decay_window_high);
    m.attitude_decay_rate = decay_slope(log, att_err, cfg.decay_window_low,
                                        cfg.decay_window_high);

    // Earliest time from which V never rises above the slack: scan for the
    // last offending step.
    std::size_t monotone_from = 0;
    for (std::size_t i = 0; i + 1 < log.records.size(); ++i) {
        if (log.records[i + 1].clf > log.records[i].clf + cfg.clf_slack) {
            monotone_from = i + 1;
        }
    }
    m.clf_monotone_after = log.records[monotone_from].t;

    const double slowest =
        std::max(std::max(1.0 / std::abs(gains.a1), 1.0 / std::abs(gains.a2)),
                 std::max(1.0 / std::abs(gains.a3), 1.0 / std::abs(gains.a4)));
    m.cascade_transient_end = 5.0 * slowest;
    m.clf_monotone_after_transient =
        m.clf_monotone_after <= m.cascade_transient_end;

    const double n = static_cast<double>(log.records.size());
    m.duty_delta_m = static_cast<double>(sat_m) / n;
    m.duty_delta_p = static_cast<double>(sat_p) / n;
    m.duty_thrust = static_cast<double>(sat_thrust) / n;
    return m;
}

RobustnessVerdict robustness_compare(const TrajectoryLog& simplified,
                                     const TrajectoryLog& full,
                                     const ManeuverProgram& prog,
                                     const RobustnessTolerances& tol) {
    if (simplified.records.size() != full.records.size()) {
        throw std::invalid_argument(
            "robustness_compare: logs have different lengths");
    }
    for (std::size_t i = 0; i < simplified.records.size(); ++i) {
        if (std::abs(simplified.records[i].t - full.records[i].t) > 1e-9) {
            throw std::invalid_argument(
                "robustness_compare: time grids do not match");
        }
    }
    if (simplified.records.empty()) {
        throw std::invalid_argument("robustness_compare: empty logs");
    }

    RobustnessVerdict v;
    const std::array<double, 6> limits = {tol.v,  tol.theta, tol.alpha,
                                          tol.q,  tol.h,     tol.delta_p};
    for (std::size_t i = 0; i < simplified.records.size(); ++i) {
        const std::array<double, 6> a = simplified.records[i].x.to_array();
        const std::array<double, 6> b = full.records[i].x.to_array();
        for (std::size_t c = 0; c < 6; ++c) {
            const double diff = std::abs(a[c] - b[c]);
            if (diff > v.sup_diffs[c]) {
                v.sup_diffs[c] = diff;
            }
            if (diff > limits[c] && !v.first_exceedance_t) {
                v.first_exceedance_t = simplified.records[i].t;
            }
        }
    }
    for (std::size_t c = 0; c < 6; ++c) {
        v.within_limits[c] = v.sup_diffs[c] <= limits[c];
    }

    auto converged = [&](const TrajectoryLog& log) {
        if (!log.completed()) {
            return false;
        }
        const LogRecord& last = log.records.back();
        const TrackingErrors e = tracking_errors(last.x, last.t, prog);
        return std::abs(e.theta) <= tol.convergence_threshold &&
               std::abs(e.attitude) <= tol.convergence_threshold;
    };
    v.simplified_converged = converged(simplified);
    v.full_converged = converged(full);

    v.pass = v.simplified_converged && v.full_converged &&
             std::all_of(v.within_limits.begin(), v.within_limits.end(),
                         [](bool b) { return b; });
    return v;
}

} // namespace cascade
