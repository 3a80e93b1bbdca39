#include "spherekin/scenario_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace spherekin {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) known = true;
        if (!known) throw ConfigError("unknown key \"" + key + "\" in " + where);
    }
}

const json* find(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double get_number(const json& obj, const char* key, double fallback, const std::string& where) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(where + "." + key + " must be a number");
    return v->get<double>();
}

bool get_bool(const json& obj, const char* key, bool fallback, const std::string& where) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(where + "." + key + " must be a boolean");
    return v->get<bool>();
}

std::string get_string(const json& obj, const char* key, const std::string& fallback,
                       const std::string& where) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(where + "." + key + " must be a string");
    return v->get<std::string>();
}

const json& get_object(const json& parent, const char* key, const json& empty) {
    const json* v = find(parent, key);
    if (!v) return empty;
    if (!v->is_object()) throw ConfigError(std::string(key) + " must be an object");
    return *v;
}

SurfaceConfig parse_surface(const json& obj) {
    SurfaceConfig c;
    c.kind = get_string(obj, "kind", c.kind, "surface");
    if (c.kind == "sinusoidal") {
        check_keys(obj, "surface", {"kind", "a", "omega"});
        c.a = get_number(obj, "a", c.a, "surface");
        c.omega = get_number(obj, "omega", c.omega, "surface");
    } else if (c.kind == "plane") {
        check_keys(obj, "surface", {"kind", "slope_x", "slope_y"});
        c.slope_x = get_number(obj, "slope_x", c.slope_x, "surface");
        c.slope_y = get_number(obj, "slope_y", c.slope_y, "surface");
    } else {
        throw ConfigError("surface.kind must be \"sinusoidal\" or \"plane\", got \"" + c.kind +
                          "\"");
    }
    return c;
}

RobotConfig parse_robot(const json& obj) {
    check_keys(obj, "robot", {"class", "R", "phi_max"});
    RobotConfig c;
    const std::string name = get_string(obj, "class", to_string(c.robot_class), "robot");
    const auto cls = robot_class_from_string(name);
    if (!cls)
        throw ConfigError("robot.class must be one of 3R, 2R, RT, RS; got \"" + name + "\"");
    c.robot_class = *cls;
    c.radius = get_number(obj, "R", c.radius, "robot");
    c.phi_max = get_number(obj, "phi_max", c.phi_max, "robot");
    return c;
}

Gains parse_gains(const json& obj) {
    check_keys(obj, "gains",
               {"k_theta", "k_theta1", "k_theta2", "k_phi1", "k_phi2", "k_psi", "k_alpha",
                "k_phi", "k_e"});
    Gains g;
    g.k_theta = get_number(obj, "k_theta", g.k_theta, "gains");
    g.k_theta1 = get_number(obj, "k_theta1", g.k_theta1, "gains");
    g.k_theta2 = get_number(obj, "k_theta2", g.k_theta2, "gains");
    g.k_phi1 = get_number(obj, "k_phi1", g.k_phi1, "gains");
    g.k_phi2 = get_number(obj, "k_phi2", g.k_phi2, "gains");
    g.k_psi = get_number(obj, "k_psi", g.k_psi, "gains");
    g.k_alpha = get_number(obj, "k_alpha", g.k_alpha, "gains");
    g.k_phi = get_number(obj, "k_phi", g.k_phi, "gains");
    g.k_e = get_number(obj, "k_e", g.k_e, "gains");
    return g;
}

PathConfig parse_path(const json& obj) {
    check_keys(obj, "path", {"name", "params"});
    PathConfig c;
    c.name = get_string(obj, "name", c.name, "path");
    const json empty = json::object();
    const json& params = get_object(obj, "params", empty);
    if (c.name == "paper-eq60-literal" || c.name == "paper-eq60-sine-corrected") {
        check_keys(params, "path.params", {});
    } else if (c.name == "circle") {
        check_keys(params, "path.params", {"cx", "cy", "radius", "angular_speed", "phase"});
        c.cx = get_number(params, "cx", c.cx, "path.params");
        c.cy = get_number(params, "cy", c.cy, "path.params");
        c.radius = get_number(params, "radius", c.radius, "path.params");
        c.angular_speed = get_number(params, "angular_speed", c.angular_speed, "path.params");
        c.phase = get_number(params, "phase", c.phase, "path.params");
    } else if (c.name == "line") {
        check_keys(params, "path.params", {"x0", "y0", "vx", "vy"});
        c.x0 = get_number(params, "x0", c.x0, "path.params");
        c.y0 = get_number(params, "y0", c.y0, "path.params");
        c.vx = get_number(params, "vx", c.vx, "path.params");
        c.vy = get_number(params, "vy", c.vy, "path.params");
    } else {
        throw ConfigError(
            "path.name must be one of paper-eq60-literal, paper-eq60-sine-corrected, circle, "
            "line; got \"" +
            c.name + "\"");
    }
    return c;
}

InitialStateConfig parse_initial_state(const json& obj, const Surface& surface) {
    check_keys(obj, "sim.initial_state", {"x", "y", "z", "theta", "phi", "psi", "alpha"});
    InitialStateConfig c;
    c.x = get_number(obj, "x", c.x, "sim.initial_state");
    c.y = get_number(obj, "y", c.y, "sim.initial_state");
    c.z = get_number(obj, "z", surface.eval(c.x, c.y), "sim.initial_state");
    c.theta = get_number(obj, "theta", c.theta, "sim.initial_state");
    c.phi = get_number(obj, "phi", c.phi, "sim.initial_state");
    c.psi = get_number(obj, "psi", c.psi, "sim.initial_state");
    c.alpha = get_number(obj, "alpha", c.alpha, "sim.initial_state");
    return c;
}

SimConfig parse_sim(const json& obj, const Surface& surface) {
    check_keys(obj, "sim", {"dt", "t_end", "initial_state", "z_tol"});
    SimConfig c;
    c.dt = get_number(obj, "dt", c.dt, "sim");
    c.t_end = get_number(obj, "t_end", c.t_end, "sim");
    c.z_tol = get_number(obj, "z_tol", c.z_tol, "sim");
    const json empty = json::object();
    c.initial_state = parse_initial_state(get_object(obj, "initial_state", empty), surface);
    return c;
}

OutputConfig parse_output(const json& obj) {
    check_keys(obj, "output", {"directory", "emit_plot_script"});
    OutputConfig c;
    c.directory = get_string(obj, "directory", c.directory, "output");
    c.emit_plot_script = get_bool(obj, "emit_plot_script", c.emit_plot_script, "output");
    return c;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(e.what());
    }
    if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
    check_keys(doc, "config", {"surface", "robot", "gains", "path", "sim", "output"});

    const json empty = json::object();
    ScenarioConfig c;
    c.surface = parse_surface(get_object(doc, "surface", empty));
    c.robot = parse_robot(get_object(doc, "robot", empty));
    c.gains = parse_gains(get_object(doc, "gains", empty));
    c.path = parse_path(get_object(doc, "path", empty));
    c.sim = parse_sim(get_object(doc, "sim", empty), build_surface(c.surface));
    c.output = parse_output(get_object(doc, "output", empty));
    return c;
}

ScenarioConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ScenarioConfig& c) {
    json doc;
    json& surface = doc["surface"];
    surface["kind"] = c.surface.kind;
    if (c.surface.kind == "plane") {
        surface["slope_x"] = c.surface.slope_x;
        surface["slope_y"] = c.surface.slope_y;
    } else {
        surface["a"] = c.surface.a;
        surface["omega"] = c.surface.omega;
    }

    json& robot = doc["robot"];
    robot["class"] = to_string(c.robot.robot_class);
    robot["R"] = c.robot.radius;
    robot["phi_max"] = c.robot.phi_max;

    json& gains = doc["gains"];
    gains["k_theta"] = c.gains.k_theta;
    gains["k_theta1"] = c.gains.k_theta1;
    gains["k_theta2"] = c.gains.k_theta2;
    gains["k_phi1"] = c.gains.k_phi1;
    gains["k_phi2"] = c.gains.k_phi2;
    gains["k_psi"] = c.gains.k_psi;
    gains["k_alpha"] = c.gains.k_alpha;
    gains["k_phi"] = c.gains.k_phi;
    gains["k_e"] = c.gains.k_e;

    json& path = doc["path"];
    path["name"] = c.path.name;
    path["params"] = json::object();
    if (c.path.name == "circle") {
        path["params"]["cx"] = c.path.cx;
        path["params"]["cy"] = c.path.cy;
        path["params"]["radius"] = c.path.radius;
        path["params"]["angular_speed"] = c.path.angular_speed;
        path["params"]["phase"] = c.path.phase;
    } else if (c.path.name == "line") {
        path["params"]["x0"] = c.path.x0;
        path["params"]["y0"] = c.path.y0;
        path["params"]["vx"] = c.path.vx;
        path["params"]["vy"] = c.path.vy;
    }

    json& sim = doc["sim"];
    sim["dt"] = c.sim.dt;
    sim["t_end"] = c.sim.t_end;
    sim["z_tol"] = c.sim.z_tol;
    json& init = sim["initial_state"];
    init["x"] = c.sim.initial_state.x;
    init["y"] = c.sim.initial_state.y;
    init["z"] = c.sim.initial_state.z;
    init["theta"] = c.sim.initial_state.theta;
    init["phi"] = c.sim.initial_state.phi;
    init["psi"] = c.sim.initial_state.psi;
    init["alpha"] = c.sim.initial_state.alpha;

    json& output = doc["output"];
    output["directory"] = c.output.directory;
    output["emit_plot_script"] = c.output.emit_plot_script;

    return doc.dump(2) + "\n";
}

Surface build_surface(const SurfaceConfig& c) {
    try {
        if (c.kind == "plane") return make_plane(c.slope_x, c.slope_y);
        return make_sinusoidal(SinusoidalParams{c.a, c.omega});
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("surface: ") + e.what());
    }
}

DesiredPath build_path(const PathConfig& c, const Surface& surface) {
    if (c.name == "paper-eq60-literal")
        return make_benchmark_path(BenchmarkPathVariant::Literal, surface);
    if (c.name == "paper-eq60-sine-corrected")
        return make_benchmark_path(BenchmarkPathVariant::SineCorrected, surface);
    if (c.name == "circle")
        return make_circle_path(surface, c.cx, c.cy, c.radius, c.angular_speed, c.phase);
    if (c.name == "line") return make_line_path(surface, c.x0, c.y0, c.vx, c.vy);
    throw ConfigError("unknown path name \"" + c.name + "\"");
}

Scenario build_scenario(const ScenarioConfig& c) {
    Scenario sc;
    sc.surface = build_surface(c.surface);
    sc.robot_class = c.robot.robot_class;
    sc.radius = c.robot.radius;
    sc.gains = c.gains;
    sc.path = build_path(c.path, sc.surface);
    sc.t_end = c.sim.t_end;
    sc.dt = c.sim.dt;
    sc.initial_state.p0 = {c.sim.initial_state.x, c.sim.initial_state.y, c.sim.initial_state.z};
    sc.initial_state.theta = c.sim.initial_state.theta;
    sc.initial_state.phi = c.sim.initial_state.phi;
    sc.initial_state.psi = c.sim.initial_state.psi;
    sc.initial_state.alpha = c.sim.initial_state.alpha;
    sc.phi_max = c.robot.phi_max;
    sc.z_tol = c.sim.z_tol;

    try {
        validate_scenario(sc);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return sc;
}

}  // namespace spherekin
