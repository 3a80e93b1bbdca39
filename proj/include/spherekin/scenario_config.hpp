#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "spherekin/sim.hpp"

namespace spherekin {

/// Raised for unreadable, malformed or invalid scenario documents. Parse
/// errors carry the line/column reported by the JSON parser; semantic
/// errors name the offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SurfaceConfig {
    std::string kind = "sinusoidal";  // "sinusoidal" | "plane"
    double a = 0.2;                   // sinusoidal amplitude
    double omega = 2.0;               // sinusoidal spatial frequency
    double slope_x = 0.0;             // plane slopes
    double slope_y = 0.0;
};

struct RobotConfig {
    RobotClass robot_class = RobotClass::ThreeR;
    double radius = 0.2;
    double phi_max = 0.4;
};

struct PathConfig {
    std::string name = "paper-eq60-sine-corrected";
    // circle params
    double cx = 0.0;
    double cy = 0.0;
    double radius = 2.0;
    double angular_speed = 0.05;
    double phase = 0.0;
    // line params
    double x0 = 0.0;
    double y0 = 0.0;
    double vx = 0.1;
    double vy = 0.0;
};

struct InitialStateConfig {
    double x = 0.5;
    double y = -0.5;
    double z = 0.0;  // resolved to the surface height during parsing when absent
    double theta = 0.0;
    double phi = 0.0;
    double psi = 0.0;
    double alpha = 0.0;
};

struct SimConfig {
    double dt = 0.01;
    double t_end = 100.0;
    InitialStateConfig initial_state;
    double z_tol = 4e-7;
};

struct OutputConfig {
    std::string directory = "out";
    bool emit_plot_script = true;
};

/// Mirrors the scenario document. Parsing rejects unknown keys, fills
/// missing ones from the defaults above, and resolves the initial z to the
/// configured surface when it is not given explicitly.
struct ScenarioConfig {
    SurfaceConfig surface;
    RobotConfig robot;
    Gains gains;
    PathConfig path;
    SimConfig sim;
    OutputConfig output;
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config_file(const std::filesystem::path& path);

/// Canonical form: every field present, keys sorted, two-space indent.
/// parse(serialize(parse(text))) is a fixed point.
std::string serialize_config(const ScenarioConfig& config);

Surface build_surface(const SurfaceConfig& config);
DesiredPath build_path(const PathConfig& config, const Surface& surface);

/// Assembles and validates the runnable scenario; invalid values surface
/// as ConfigError naming the field.
Scenario build_scenario(const ScenarioConfig& config);

}  // namespace spherekin
