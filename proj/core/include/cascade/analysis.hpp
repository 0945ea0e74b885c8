#pragma once

#include "cascade/closed_loop.hpp"

#include <array>
#include <optional>

namespace cascade {

/// Tracking errors of the two terminal channels at one instant.
struct TrackingErrors {
    double theta = 0.0;    // theta - theta_ref(t) [rad]
    double attitude = 0.0; // (alpha + theta) - attitude target [rad]
};

TrackingErrors tracking_errors(const ExtendedState& x, double t,
                               const ManeuverProgram& prog);

/// The control Lyapunov function V = theta_err^2 + attitude_err^2.
double clf_value(const ExtendedState& x, double t,
                 const ManeuverProgram& prog);

/// Window and slack used by the metric extraction.
struct MetricsConfig {
    double decay_window_low = 1e-8;  // |error| band for the decay-rate fit
    double decay_window_high = 1e-2;
    double clf_slack = 1e-15;        // tolerated pointwise rise of V [rad^2]

    friend bool operator==(const MetricsConfig&, const MetricsConfig&) = default;
};

/// Summary numbers extracted from one trajectory log.
struct RunMetrics {
    double final_theta_error = 0.0;    // |theta error| at the last record
    double final_attitude_error = 0.0; // |attitude error| at the last record
    double sup_theta_error = 0.0;
    double sup_attitude_error = 0.0;

    /// Least-squares slope of log|error| over the configured window;
    /// empty when the window contains fewer than two samples.
    std::optional<double> theta_decay_rate;
    std::optional<double> attitude_decay_rate;

    /// Earliest time from which V never rises by more than the slack.
    double clf_monotone_after = 0.0;
    /// End of the cascade transient, 5 * max_i |1/a_i|.
    double cascade_transient_end = 0.0;
    /// clf_monotone_after <= cascade_transient_end.
    bool clf_monotone_after_transient = false;

    /// Fraction of records with the channel's saturation flag set.
    double duty_delta_m = 0.0;
    double duty_delta_p = 0.0;
    double duty_thrust = 0.0;
};

/// Extracts metrics from a log. Pure: the same log yields the same metrics.
/// Throws std::invalid_argument on an empty log.
RunMetrics compute_metrics(const TrajectoryLog& log,
                           const ManeuverProgram& prog, const Gains& gains,
                           const MetricsConfig& cfg = {});

/// Channelwise sup-difference limits for the wide-sense-robustness proxy,
/// plus the convergence threshold on the final tracking errors. These are
/// scenario configuration, not derived values.
struct RobustnessTolerances {
    double v = 5.0;         // [m/s]
    double theta = 0.02;    // [rad]
    double alpha = 0.02;    // [rad]
    double q = 0.05;        // [rad/s]
    double h = 100.0;       // [m]
    double delta_p = 0.1;   // [rad]
    double convergence_threshold = 5e-2; // final |errors| bound [rad]

    friend bool operator==(const RobustnessTolerances&,
                           const RobustnessTolerances&) = default;
};

/// Verdict of the simplified-vs-full comparison. The implemented notion is
/// a desk-scale proxy for wide-sense robustness: both runs must converge to
/// the program and stay channelwise close; topological equivalence in the
/// formal sense is not decided here.
struct RobustnessVerdict {
    bool pass = false;
    bool simplified_converged = false;
    bool full_converged = false;
    // Channel order: v, theta, alpha, q, h, delta_p.
    std::array<double, 6> sup_diffs{};
    std::array<bool, 6> within_limits{};
    /// First time any channel difference exceeded its limit (if any).
    std::optional<double> first_exceedance_t;
};

/// Compares two runs of the same scenario grid (one simplified plant, one
/// full plant). Throws std::invalid_argument when the time grids differ.
RobustnessVerdict robustness_compare(const TrajectoryLog& simplified,
                                     const TrajectoryLog& full,
                                     const ManeuverProgram& prog,
                                     const RobustnessTolerances& tol);

/// Names of the channels in RobustnessVerdict order.
extern const std::array<const char*, 6> kRobustnessChannelNames;

} // namespace cascade
