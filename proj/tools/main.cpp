// Command-line front end: run scenarios or presets, the planar demo, the
// acceptance verifier, and parameter sweeps. Exit codes: 0 pass, 1 fail,
// 2 error.

#include "cascade/experiments.hpp"
#include "cascade/verification.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

fs::path resolve_outdir(const std::string& cli_value) {
    if (!cli_value.empty()) {
        return cli_value;
    }
    if (const char* env = std::getenv("CASCADE_OUTPUT_DIR")) {
        return env;
    }
    return "out";
}

bool is_preset(const std::string& name) {
    const auto& names = cascade::preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::string read_file(const fs::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw std::runtime_error("cannot open scenario file: " + file.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Scenario text from either a preset name or a file path.
std::string scenario_text(const std::string& source) {
    if (is_preset(source)) {
        return cascade::serialize_scenario(cascade::make_preset(source));
    }
    return read_file(source);
}

int report(const cascade::ExperimentResult& result) {
    std::cout << (result.exit_code() == 0 ? "PASS: " :
                  result.exit_code() == 1 ? "FAIL: " : "ERROR: ")
              << result.summary << "\n";
    return result.exit_code();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Attractor-cascade tracking control for the 5D "
                 "thrust-vectoring longitudinal model"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string outdir_flag;
    app.add_option("-o,--output", outdir_flag,
                   "Output directory (default: $CASCADE_OUTPUT_DIR or ./out)");

    std::string run_source;
    auto* run_cmd =
        app.add_subcommand("run", "Run a scenario file or a named preset");
    run_cmd->add_option("scenario", run_source,
                        "Scenario file path or preset name (baseline, "
                        "robustness, engine_failure, density, gain_sweep)")
        ->required();

    auto* demo_cmd =
        app.add_subcommand("demo2d", "Run the planar tracking demonstration");

    auto* verify_cmd =
        app.add_subcommand("verify", "Run the acceptance criteria suite");

    std::string sweep_source, sweep_param;
    std::vector<double> sweep_values;
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "Run a scenario repeatedly with one field overridden");
    sweep_cmd->add_option("scenario", sweep_source,
                          "Scenario file path or preset name")
        ->required();
    sweep_cmd->add_option("--param", sweep_param,
                          "Scenario field to vary, e.g. gains.a1")
        ->required();
    sweep_cmd
        ->add_option("--values", sweep_values,
                     "Comma-separated values for the field")
        ->required()
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);
    const fs::path outdir = resolve_outdir(outdir_flag);

    try {
        if (run_cmd->parsed()) {
            if (run_source == "gain_sweep") {
                // The gain-sweep preset is sugar for a sweep over gains.a1.
                return report(cascade::run_sweep(
                    scenario_text("gain_sweep"), "gains.a1",
                    {-0.5, -1.0, -2.0}, outdir));
            }
            const cascade::Scenario sc =
                cascade::parse_scenario(scenario_text(run_source));
            return report(cascade::run_experiment(sc, outdir));
        }
        if (demo_cmd->parsed()) {
            return report(cascade::run_demo2d(outdir));
        }
        if (verify_cmd->parsed()) {
            const auto results = cascade::verification::run_all(&std::cout);
            const bool ok = cascade::verification::all_passed(results);
            std::cout << (ok ? "all criteria passed\n"
                             : "some criteria FAILED\n");
            return ok ? 0 : 1;
        }
        if (sweep_cmd->parsed()) {
            return report(cascade::run_sweep(scenario_text(sweep_source),
                                             sweep_param, sweep_values,
                                             outdir));
        }
    } catch (const std::exception& e) {
        std::cerr << "ERROR: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
