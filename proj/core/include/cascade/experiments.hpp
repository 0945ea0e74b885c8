#pragma once

#include "cascade/canonical2d.hpp"
#include "cascade/scenario.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace cascade {

/// Writes a trajectory log as CSV. Fixed column order:
///   t, v, theta, alpha, q, h, delta_p, delta_m, P, phi, q_cmd,
///   residual_G, V, sat_flags
/// Numeric cells carry 17 significant digits so re-parsing reproduces the
/// log values exactly; sat_flags is a bitmask (1 = delta_m, 2 = delta_p,
/// 4 = thrust).
void export_csv(const TrajectoryLog& log, std::ostream& out);
void export_csv(const TrajectoryLog& log, const std::filesystem::path& file);

/// Columns: t, x1, x2, y1, y2, u1, u2, V, dVdt.
void export_planar_csv(const planar::PlanarLog& log, std::ostream& out);
void export_planar_csv(const planar::PlanarLog& log,
                       const std::filesystem::path& file);

/// key = value rendering of the run metrics (plus the failure marker when
/// the run aborted early).
std::string metrics_summary(const std::string& name, const TrajectoryLog& log,
                            const RunMetrics& metrics);

/// key = value rendering of the robustness verdict.
std::string verdict_summary(const RobustnessVerdict& verdict,
                            const RobustnessTolerances& tol);

/// Exit-status contract shared by the experiment entry points and the CLI:
/// 0 pass, 1 fail, 2 error.
enum class ExperimentStatus : int { Pass = 0, Fail = 1, Error = 2 };

struct ExperimentResult {
    ExperimentStatus status = ExperimentStatus::Error;
    std::string summary; // one-line outcome for the console

    int exit_code() const { return static_cast<int>(status); }
};

/// Runs one scenario and writes trajectory.csv and metrics.txt into outdir.
/// When the scenario sets compare_modes, a simplified-plant reference run
/// is produced as well (trajectory_simplified.csv / trajectory_full.csv)
/// and verdict.txt records the robustness comparison; the verdict decides
/// pass/fail. Plain runs pass when they complete with final tracking
/// errors inside the convergence threshold.
ExperimentResult run_experiment(const Scenario& scenario,
                                const std::filesystem::path& outdir);

/// The built-in planar demonstration: tracks (sin t, cos t) on a nonlinear
/// 2D plant and writes demo2d.csv.
ExperimentResult run_demo2d(const std::filesystem::path& outdir);

/// The demo system used by run_demo2d (exposed for tests).
planar::PlanarSystem demo2d_system();

/// Re-parses `scenario_text` once per value with the INI field at
/// `param_path` (e.g. "gains.a1") overridden, runs the experiments in
/// parallel into outdir/<param>=<value>/ and writes sweep_summary.csv.
/// The overall status is the worst per-run status.
ExperimentResult run_sweep(const std::string& scenario_text,
                           const std::string& param_path,
                           const std::vector<double>& values,
                           const std::filesystem::path& outdir);

} // namespace cascade
