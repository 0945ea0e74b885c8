#include "cascade/scenario.hpp"

#include "cascade/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace cascade {

namespace {

namespace pt = boost::property_tree;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& section, const std::string& key,
                    const std::string& raw) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(raw, &pos);
        while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) {
            ++pos;
        }
        if (pos != raw.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw ScenarioError("scenario field [" + section + "] " + key +
                            ": not a number: '" + raw + "'");
    }
}

ThrustSchedule parse_schedule(const std::string& raw) {
    ThrustSchedule sched;
    std::istringstream in(raw);
    std::string pair;
    while (in >> pair) {
        const auto colon = pair.find(':');
        if (colon == std::string::npos) {
            throw ScenarioError(
                "scenario field [thrust] schedule: expected 't:P' pairs, got '" +
                pair + "'");
        }
        ThrustSchedule::Point p;
        p.t = parse_double("thrust", "schedule", pair.substr(0, colon));
        p.thrust = parse_double("thrust", "schedule", pair.substr(colon + 1));
        sched.points.push_back(p);
    }
    if (sched.points.empty()) {
        throw ScenarioError("scenario field [thrust] schedule: empty");
    }
    return sched;
}

std::string format_schedule(const ThrustSchedule& s) {
    std::string out;
    for (const auto& p : s.points) {
        if (!out.empty()) {
            out += ' ';
        }
        out += format_double(p.t) + ":" + format_double(p.thrust);
    }
    return out;
}

AeroMode parse_mode(const std::string& raw) {
    if (raw == "simplified") {
        return AeroMode::Simplified;
    }
    if (raw == "full") {
        return AeroMode::Full;
    }
    throw ScenarioError(
        "scenario field [sim] plant_mode: expected 'simplified' or 'full', got '" +
        raw + "'");
}

/// Double-valued fields addressable as section/key pairs. Keeps parsing and
/// serialization in lockstep.
struct FieldMap {
    std::map<std::string, std::map<std::string, double*>> fields;

    void add(const std::string& section, const std::string& key, double* p) {
        fields[section][key] = p;
    }

    double* find(const std::string& section, const std::string& key) const {
        auto s = fields.find(section);
        if (s == fields.end()) {
            return nullptr;
        }
        auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : k->second;
    }
};

FieldMap make_field_map(Scenario& s) {
    FieldMap m;
    auto& a = s.aircraft;
    m.add("aircraft", "m", &a.m);
    m.add("aircraft", "S", &a.S);
    m.add("aircraft", "l", &a.l);
    m.add("aircraft", "Izz", &a.Izz);
    m.add("aircraft", "g", &a.g);
    m.add("aircraft", "CX0", &a.CX0);
    m.add("aircraft", "k_induced", &a.k_induced);
    m.add("aircraft", "CY_alpha", &a.CY_alpha);
    m.add("aircraft", "CY_delta_m", &a.CY_delta_m);
    m.add("aircraft", "Cm_alpha", &a.Cm_alpha);
    m.add("aircraft", "Cm_delta_m", &a.Cm_delta_m);
    m.add("aircraft", "Cm_q", &a.Cm_q);
    m.add("aircraft", "x_p", &a.x_p);
    m.add("aircraft", "y_p", &a.y_p);
    m.add("aircraft", "delta_m_max", &a.delta_m_max);
    m.add("aircraft", "delta_p_max", &a.delta_p_max);
    m.add("aircraft", "P_min", &a.P_min);
    m.add("aircraft", "P_max", &a.P_max);

    m.add("program", "theta_m", &s.program.theta_m);
    m.add("program", "omega", &s.program.omega);
    m.add("program", "attitude_target", &s.program.attitude_target);

    m.add("gains", "a1", &s.gains.a1);
    m.add("gains", "a2", &s.gains.a2);
    m.add("gains", "a3", &s.gains.a3);
    m.add("gains", "a4", &s.gains.a4);

    m.add("initial", "v", &s.initial.state.v);
    m.add("initial", "theta", &s.initial.state.theta);
    m.add("initial", "alpha", &s.initial.state.alpha);
    m.add("initial", "q", &s.initial.state.q);
    m.add("initial", "h", &s.initial.state.h);
    m.add("initial", "delta_p", &s.initial.delta_p);

    m.add("sim", "density_scale", &s.density_scale);
    m.add("sim", "dt", &s.dt);
    m.add("sim", "t_final", &s.t_final);

    m.add("robustness", "v", &s.tolerances.v);
    m.add("robustness", "theta", &s.tolerances.theta);
    m.add("robustness", "alpha", &s.tolerances.alpha);
    m.add("robustness", "q", &s.tolerances.q);
    m.add("robustness", "h", &s.tolerances.h);
    m.add("robustness", "delta_p", &s.tolerances.delta_p);
    m.add("robustness", "convergence_threshold",
          &s.tolerances.convergence_threshold);

    m.add("metrics", "decay_window_low", &s.metrics.decay_window_low);
    m.add("metrics", "decay_window_high", &s.metrics.decay_window_high);
    m.add("metrics", "clf_slack", &s.metrics.clf_slack);

    m.add("solver", "bracket", &s.control.solver.bracket);
    m.add("solver", "tolerance", &s.control.solver.tolerance);
    m.add("solver", "singular_eps", &s.control.solver.singular_eps);
    m.add("solver", "pressure_floor", &s.control.pressure_floor);
    return m;
}

} // namespace

namespace {

std::string trim(const std::string& raw) {
    const auto begin = raw.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = raw.find_last_not_of(" \t\r");
    return raw.substr(begin, end - begin + 1);
}

/// Drops everything from the first ';' of each line, so comments may also
/// trail a value.
std::string strip_comments(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto semi = line.find(';');
        if (semi != std::string::npos) {
            line.erase(semi);
        }
        out += line;
        out += '\n';
    }
    return out;
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    pt::ptree tree;
    std::istringstream in(strip_comments(text));
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ScenarioError("scenario parse error at line " +
                            std::to_string(e.line()) + ": " + e.message());
    }

    Scenario s;
    FieldMap fields = make_field_map(s);

    for (const auto& [section_or_key, node] : tree) {
        if (node.empty()) {
            // Top-level key.
            if (section_or_key == "name") {
                s.name = trim(node.data());
            } else {
                throw ScenarioError("scenario: unknown top-level key '" +
                                    section_or_key + "'");
            }
            continue;
        }
        for (const auto& [key, value] : node) {
            const std::string raw = trim(value.data());
            if (section_or_key == "thrust" && key == "schedule") {
                s.thrust = parse_schedule(raw);
            } else if (section_or_key == "sim" && key == "plant_mode") {
                s.plant_mode = parse_mode(raw);
            } else if (section_or_key == "sim" && key == "compare_modes") {
                if (raw == "true" || raw == "false") {
                    s.compare_modes = raw == "true";
                } else {
                    throw ScenarioError(
                        "scenario field [sim] compare_modes: expected true/false");
                }
            } else if (section_or_key == "sim" && key == "seed") {
                s.seed = static_cast<std::uint64_t>(
                    parse_double(section_or_key, key, raw));
            } else if (section_or_key == "solver" && key == "max_iterations") {
                s.control.solver.max_iterations = static_cast<int>(
                    parse_double(section_or_key, key, raw));
            } else if (section_or_key == "solver" && key == "scan_cells") {
                s.control.solver.scan_cells = static_cast<int>(
                    parse_double(section_or_key, key, raw));
            } else if (double* target = fields.find(section_or_key, key)) {
                *target = parse_double(section_or_key, key, raw);
            } else {
                throw ScenarioError("scenario: unknown field [" +
                                    section_or_key + "] " + key);
            }
        }
    }

    s.validate();
    return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw ScenarioError("cannot open scenario file: " + file.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
    // const_cast is confined to building the address map; nothing writes
    // through it on this path.
    FieldMap fields = make_field_map(const_cast<Scenario&>(s));

    std::ostringstream out;
    out << "name = " << s.name << "\n";
    for (const auto& [section, keys] : fields.fields) {
        out << "\n[" << section << "]\n";
        for (const auto& [key, ptr] : keys) {
            out << key << " = " << format_double(*ptr) << "\n";
        }
        if (section == "sim") {
            out << "plant_mode = "
                << (s.plant_mode == AeroMode::Full ? "full" : "simplified")
                << "\n";
            out << "compare_modes = " << (s.compare_modes ? "true" : "false")
                << "\n";
            out << "seed = " << s.seed << "\n";
        }
        if (section == "solver") {
            out << "max_iterations = " << s.control.solver.max_iterations
                << "\n";
            out << "scan_cells = " << s.control.solver.scan_cells << "\n";
        }
    }
    out << "\n[thrust]\nschedule = " << format_schedule(s.thrust) << "\n";
    return out.str();
}

void Scenario::validate() const {
    try {
        aircraft.validate();
        program.validate();
        gains.validate();
        thrust.validate(aircraft);
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(e.what());
    }
    if (!(dt > 0.0)) {
        throw ScenarioError("scenario: dt must be positive");
    }
    if (!(t_final > dt)) {
        throw ScenarioError("scenario: t_final must exceed dt");
    }
    if (!(density_scale > 0.0)) {
        throw ScenarioError("scenario: density_scale must be positive");
    }
    if (!(initial.state.v > 0.0)) {
        throw ScenarioError("scenario: initial airspeed must be positive");
    }
    if (std::abs(initial.delta_p) > aircraft.delta_p_max) {
        throw ScenarioError("scenario: initial delta_p outside actuator bound");
    }
    if (initial.state.h < 0.0 || initial.state.h >= air_density_ceiling()) {
        throw ScenarioError("scenario: initial altitude outside atmosphere model");
    }
    if (!(control.solver.tolerance > 0.0) || !(control.solver.bracket > 0.0)) {
        throw ScenarioError("scenario: solver tolerance and bracket must be positive");
    }
}

} // namespace cascade
