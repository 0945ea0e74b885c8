#include "cascade/experiments.hpp"

#include "cascade/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>

namespace cascade {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_file(const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + file.string());
    }
    return out;
}

} // namespace

void export_csv(const TrajectoryLog& log, std::ostream& out) {
    out << "t,v,theta,alpha,q,h,delta_p,delta_m,P,phi,q_cmd,residual_G,V,"
           "sat_flags\n";
    for (const LogRecord& r : log.records) {
        out << num(r.t) << ',' << num(r.x.state.v) << ','
            << num(r.x.state.theta) << ',' << num(r.x.state.alpha) << ','
            << num(r.x.state.q) << ',' << num(r.x.state.h) << ','
            << num(r.x.delta_p) << ',' << num(r.delta_m) << ','
            << num(r.thrust) << ',' << num(r.phi) << ',' << num(r.q_cmd)
            << ',' << num(r.residual_g) << ',' << num(r.clf) << ','
            << r.sat.bits() << '\n';
    }
}

void export_csv(const TrajectoryLog& log, const std::filesystem::path& file) {
    auto out = open_file(file);
    export_csv(log, out);
}

void export_planar_csv(const planar::PlanarLog& log, std::ostream& out) {
    out << "t,x1,x2,y1,y2,u1,u2,V,dVdt\n";
    for (const planar::PlanarRecord& r : log.records) {
        out << num(r.t) << ',' << num(r.x[0]) << ',' << num(r.x[1]) << ','
            << num(r.y[0]) << ',' << num(r.y[1]) << ',' << num(r.u[0]) << ','
            << num(r.u[1]) << ',' << num(r.clf) << ',' << num(r.clf_rate)
            << '\n';
    }
}

void export_planar_csv(const planar::PlanarLog& log,
                       const std::filesystem::path& file) {
    auto out = open_file(file);
    export_planar_csv(log, out);
}

std::string metrics_summary(const std::string& name, const TrajectoryLog& log,
                            const RunMetrics& m) {
    std::ostringstream out;
    out << "name = " << name << "\n";
    out << "completed = " << (log.completed() ? "true" : "false") << "\n";
    if (log.failure) {
        out << "failure_time = " << num(log.failure->t) << "\n";
        out << "failure_reason = " << log.failure->reason << "\n";
    }
    out << "final_theta_error = " << num(m.final_theta_error) << "\n";
    out << "final_attitude_error = " << num(m.final_attitude_error) << "\n";
    out << "sup_theta_error = " << num(m.sup_theta_error) << "\n";
    out << "sup_attitude_error = " << num(m.sup_attitude_error) << "\n";
    out << "theta_decay_rate = "
        << (m.theta_decay_rate ? num(*m.theta_decay_rate) : "none") << "\n";
    out << "attitude_decay_rate = "
        << (m.attitude_decay_rate ? num(*m.attitude_decay_rate) : "none")
        << "\n";
    out << "clf_monotone_after = " << num(m.clf_monotone_after) << "\n";
    out << "cascade_transient_end = " << num(m.cascade_transient_end) << "\n";
    out << "clf_monotone_after_transient = "
        << (m.clf_monotone_after_transient ? "true" : "false") << "\n";
    out << "duty_delta_m = " << num(m.duty_delta_m) << "\n";
    out << "duty_delta_p = " << num(m.duty_delta_p) << "\n";
    out << "duty_thrust = " << num(m.duty_thrust) << "\n";
    return out.str();
}

std::string verdict_summary(const RobustnessVerdict& v,
                            const RobustnessTolerances& tol) {
    const std::array<double, 6> limits = {tol.v,  tol.theta, tol.alpha,
                                          tol.q,  tol.h,     tol.delta_p};
    std::ostringstream out;
    out << "verdict = " << (v.pass ? "PASS" : "FAIL") << "\n";
    out << "simplified_converged = "
        << (v.simplified_converged ? "true" : "false") << "\n";
    out << "full_converged = " << (v.full_converged ? "true" : "false")
        << "\n";
    for (std::size_t c = 0; c < 6; ++c) {
        out << "sup_diff_" << kRobustnessChannelNames[c] << " = "
            << num(v.sup_diffs[c]) << "\n";
        out << "limit_" << kRobustnessChannelNames[c] << " = "
            << num(limits[c]) << "\n";
    }
    out << "first_exceedance_t = "
        << (v.first_exceedance_t ? num(*v.first_exceedance_t) : "none")
        << "\n";
    return out.str();
}

namespace {

/// Metrics file that stays writable even when the run died before its
/// first record.
void write_metrics(const Scenario& sc, const TrajectoryLog& log,
                   const std::filesystem::path& file) {
    if (log.records.empty()) {
        auto out = open_file(file);
        out << "name = " << sc.name << "\ncompleted = false\n";
        if (log.failure) {
            out << "failure_time = " << num(log.failure->t) << "\n";
            out << "failure_reason = " << log.failure->reason << "\n";
        }
        return;
    }
    const RunMetrics m = compute_metrics(log, sc.program, sc.gains, sc.metrics);
    open_file(file) << metrics_summary(sc.name, log, m);
}

ExperimentResult run_single(const Scenario& sc,
                            const std::filesystem::path& outdir) {
    const TrajectoryLog log = simulate(sc);
    export_csv(log, outdir / "trajectory.csv");
    write_metrics(sc, log, outdir / "metrics.txt");

    if (!log.completed()) {
        return {ExperimentStatus::Error,
                "simulation failed at t = " + num(log.failure->t) + ": " +
                    log.failure->reason};
    }
    const RunMetrics m = compute_metrics(log, sc.program, sc.gains, sc.metrics);
    const bool converged =
        m.final_theta_error <= sc.tolerances.convergence_threshold &&
        m.final_attitude_error <= sc.tolerances.convergence_threshold;
    if (!converged) {
        return {ExperimentStatus::Fail,
                "final tracking errors exceed the convergence threshold"};
    }
    return {ExperimentStatus::Pass,
            "final |theta err| = " + num(m.final_theta_error) +
                ", |attitude err| = " + num(m.final_attitude_error)};
}

ExperimentResult run_comparison(const Scenario& sc,
                                const std::filesystem::path& outdir) {
    Scenario reference = sc;
    reference.plant_mode = AeroMode::Simplified;
    reference.name = sc.name + "_simplified";
    Scenario test = sc;
    test.plant_mode = AeroMode::Full;
    test.name = sc.name + "_full";

    const TrajectoryLog log_ref = simulate(reference);
    const TrajectoryLog log_full = simulate(test);
    export_csv(log_ref, outdir / "trajectory_simplified.csv");
    export_csv(log_full, outdir / "trajectory_full.csv");
    write_metrics(reference, log_ref, outdir / "metrics_simplified.txt");
    write_metrics(test, log_full, outdir / "metrics_full.txt");

    if (!log_ref.completed() || !log_full.completed()) {
        const auto& failure =
            log_ref.completed() ? *log_full.failure : *log_ref.failure;
        return {ExperimentStatus::Error,
                "simulation failed at t = " + num(failure.t) + ": " +
                    failure.reason};
    }

    const RobustnessVerdict verdict =
        robustness_compare(log_ref, log_full, sc.program, sc.tolerances);
    open_file(outdir / "verdict.txt") << verdict_summary(verdict, sc.tolerances);
    return {verdict.pass ? ExperimentStatus::Pass : ExperimentStatus::Fail,
            verdict.pass ? "robustness verdict PASS"
                         : "robustness verdict FAIL"};
}

} // namespace

ExperimentResult run_experiment(const Scenario& scenario,
                                const std::filesystem::path& outdir) {
    try {
        std::filesystem::create_directories(outdir);
        return scenario.compare_modes ? run_comparison(scenario, outdir)
                                      : run_single(scenario, outdir);
    } catch (const std::exception& e) {
        return {ExperimentStatus::Error, e.what()};
    }
}

planar::PlanarSystem demo2d_system() {
    planar::PlanarSystem sys;
    sys.f1 = [](double x2) { return x2 * x2; };
    sys.f2 = [](double x1) { return std::sin(x1); };
    sys.chi1 = {[](double t) { return std::sin(t); },
                [](double t) { return std::cos(t); }};
    sys.chi2 = {[](double t) { return std::cos(t); },
                [](double t) { return -std::sin(t); }};
    sys.g1 = [](double y) { return -1.0 * y; };
    sys.g2 = [](double y) { return -1.5 * y; };
    return sys;
}

ExperimentResult run_demo2d(const std::filesystem::path& outdir) {
    try {
        std::filesystem::create_directories(outdir);
        const planar::PlanarSystem sys = demo2d_system();
        planar::validate_shaping(sys);
        const planar::PlanarLog log =
            planar::simulate_2d(sys, {1.0, 1.0}, 10.0, 1e-3);
        export_planar_csv(log, outdir / "demo2d.csv");
        return {ExperimentStatus::Pass,
                "final V = " + num(log.records.back().clf)};
    } catch (const std::exception& e) {
        return {ExperimentStatus::Error, e.what()};
    }
}

ExperimentResult run_sweep(const std::string& scenario_text,
                           const std::string& param_path,
                           const std::vector<double>& values,
                           const std::filesystem::path& outdir) {
    try {
        if (values.empty()) {
            return {ExperimentStatus::Error, "sweep: no values given"};
        }
        std::filesystem::create_directories(outdir);

        // Build each variant by overriding the INI field, so any scenario
        // key can be swept.
        std::vector<Scenario> variants;
        for (double value : values) {
            namespace pt = boost::property_tree;
            pt::ptree tree;
            std::istringstream in(scenario_text);
            pt::read_ini(in, tree);
            tree.put(param_path, num(value));
            std::ostringstream patched;
            pt::write_ini(patched, tree);
            Scenario sc = parse_scenario(patched.str());
            sc.name += "_" + param_path + "=" + num(value);
            variants.push_back(std::move(sc));
        }

        std::vector<std::future<ExperimentResult>> futures;
        std::vector<std::filesystem::path> dirs;
        for (std::size_t i = 0; i < variants.size(); ++i) {
            dirs.push_back(outdir /
                           (param_path + "=" + num(values[i])));
            futures.push_back(std::async(std::launch::async, run_experiment,
                                         variants[i], dirs.back()));
        }

        auto summary = open_file(outdir / "sweep_summary.csv");
        summary << "value,exit_code,summary\n";
        ExperimentStatus worst = ExperimentStatus::Pass;
        for (std::size_t i = 0; i < futures.size(); ++i) {
            const ExperimentResult r = futures[i].get();
            summary << num(values[i]) << ',' << r.exit_code() << ",\""
                    << r.summary << "\"\n";
            if (r.exit_code() > static_cast<int>(worst)) {
                worst = r.status;
            }
        }
        return {worst, "swept " + std::to_string(values.size()) +
                           " values of " + param_path};
    } catch (const std::exception& e) {
        return {ExperimentStatus::Error, e.what()};
    }
}

} // namespace cascade
