#pragma once

#include "cascade/analysis.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace cascade {

/// Everything one experiment needs: aircraft, maneuver, gains, thrust
/// program, initial condition, plant configuration and run controls.
/// Parsed from INI-style text (see parse_scenario) or built by a preset.
struct Scenario {
    std::string name = "scenario";

    AircraftParams aircraft;
    ManeuverProgram program;
    Gains gains;
    ThrustSchedule thrust = ThrustSchedule::constant(45000.0);
    ExtendedState initial{{200.0, 0.05, 0.06, 0.0, 3000.0}, 0.0};

    AeroMode plant_mode = AeroMode::Simplified;
    /// When set, the experiment runner also runs the scenario with a
    /// simplified plant and emits the robustness comparison verdict.
    bool compare_modes = false;
    double density_scale = 1.0; // plant-side density perturbation factor
    double dt = 1e-3;           // integrator step [s]
    double t_final = 30.0;      // run length [s]

    RobustnessTolerances tolerances;
    MetricsConfig metrics;
    ControlLawConfig control;
    std::uint64_t seed = 0;     // RNG seed for sampled-property suites

    /// Enforces the declared invariants (dt > 0, t_final > dt,
    /// density_scale > 0, gains negative, schedule and aircraft valid,
    /// initial airspeed positive). Throws with the violated invariant named.
    void validate() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses INI-style scenario text: `key = value` lines grouped under
/// `[section]` headers. Unknown keys are rejected; omitted keys keep the
/// documented defaults. The full grammar is documented in the README.
/// Throws ScenarioError with the offending line/field on malformed input
/// and on invariant violations.
Scenario parse_scenario(const std::string& text);

/// Reads and parses a scenario file.
Scenario load_scenario(const std::filesystem::path& file);

/// Serializes a scenario to INI text. Values are printed with enough digits
/// that parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& s);

/// Built-in experiment presets. Every preset is also expressible as a plain
/// scenario file: serialize_scenario of the result re-parses to the same
/// scenario.
///   baseline        on-manifold start, simplified plant
///   robustness      full plant, 0.8x density, thrust step at t = 5 s
///   engine_failure  simplified plant, thrust drop to the lower bound at 10 s
///   density         simplified plant at 0.8x density
///   gain_sweep      baseline dynamics; the sweep driver varies gains.a1
Scenario make_preset(const std::string& name);

/// Names accepted by make_preset.
const std::vector<std::string>& preset_names();

} // namespace cascade
