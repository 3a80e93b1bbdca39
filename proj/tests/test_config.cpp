#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spherekin/scenario_config.hpp"

using namespace spherekin;

TEST_CASE("empty document yields the documented defaults") {
    const ScenarioConfig c = parse_config("{}");
    CHECK(c.surface.kind == "sinusoidal");
    CHECK(c.surface.a == 0.2);
    CHECK(c.surface.omega == 2.0);
    CHECK(c.robot.robot_class == RobotClass::ThreeR);
    CHECK(c.robot.radius == 0.2);
    CHECK(c.gains.k_theta == 5.0);
    CHECK(c.gains.k_psi == 4.0);
    CHECK(c.gains.k_e == 1.0);
    CHECK(c.path.name == "paper-eq60-sine-corrected");
    CHECK(c.sim.dt == 0.01);
    CHECK(c.sim.t_end == 100.0);
    CHECK(c.sim.z_tol == 4e-7);
    CHECK(c.sim.initial_state.x == 0.5);
    CHECK(c.sim.initial_state.y == -0.5);
    // z is resolved onto the default surface: 0.2(2 cos(1) - 2)
    CHECK(c.sim.initial_state.z ==
          doctest::Approx(0.4 * (std::cos(1.0) - 1.0)).epsilon(1e-14));
    CHECK(c.output.directory == "out");
    CHECK(c.output.emit_plot_script == true);

    CHECK_NOTHROW(build_scenario(c));
}

TEST_CASE("explicit values override defaults") {
    const ScenarioConfig c = parse_config(R"({
      "surface": {"kind": "plane", "slope_x": 0.5, "slope_y": -0.25},
      "robot": {"class": "RS", "R": 0.15, "phi_max": 0.5},
      "gains": {"k_phi": 3.0},
      "path": {"name": "circle", "params": {"cx": 1.0, "radius": 0.8, "angular_speed": 0.1}},
      "sim": {"dt": 0.02, "t_end": 10, "initial_state": {"x": 1.0, "y": 1.0}},
      "output": {"directory": "runs/rs", "emit_plot_script": false}
    })");
    CHECK(c.surface.kind == "plane");
    CHECK(c.surface.slope_x == 0.5);
    CHECK(c.robot.robot_class == RobotClass::RS);
    CHECK(c.robot.radius == 0.15);
    CHECK(c.gains.k_phi == 3.0);
    CHECK(c.gains.k_theta == 5.0);  // untouched default
    CHECK(c.path.name == "circle");
    CHECK(c.path.cx == 1.0);
    CHECK(c.path.cy == 0.0);  // default circle center
    CHECK(c.sim.dt == 0.02);
    CHECK(c.sim.initial_state.z ==
          doctest::Approx(0.5 * 1.0 - 0.25 * 1.0).epsilon(1e-15));
    CHECK(c.output.emit_plot_script == false);

    const Scenario sc = build_scenario(c);
    CHECK(sc.robot_class == RobotClass::RS);
    CHECK(sc.phi_max == 0.5);
    CHECK(run(sc).rows.size() == 501);
}

TEST_CASE("unknown keys are rejected with the offending name") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"surfce": {}})"),
                         doctest::Contains("surfce"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"robot": {"radius": 0.2}})"),
                         doctest::Contains("radius"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"sim": {"initial_state": {"w": 1}}})"),
                         doctest::Contains("w"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"path": {"name": "circle", "params": {"x0": 1}}})"),
        doctest::Contains("x0"), ConfigError);
    // Plane surfaces take no sinusoidal parameters and vice versa.
    CHECK_THROWS_AS(parse_config(R"({"surface": {"kind": "plane", "a": 0.2}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"surface": {"kind": "sinusoidal", "slope_x": 1}})"),
                    ConfigError);
}

TEST_CASE("malformed documents and wrong types") {
    CHECK_THROWS_WITH_AS(parse_config("{"), doctest::Contains("line"), ConfigError);
    CHECK_THROWS_AS(parse_config("[1,2,3]"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"sim": {"dt": "fast"}})"),
                         doctest::Contains("sim.dt"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"output": {"emit_plot_script": "yes"}})"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"surface": {"kind": "mesh"}})"),
                         doctest::Contains("mesh"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"robot": {"class": "5R"}})"),
                         doctest::Contains("5R"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"path": {"name": "spiral"}})"),
                         doctest::Contains("spiral"), ConfigError);
}

TEST_CASE("semantic validation happens at scenario build") {
    SUBCASE("non-positive dt names the field") {
        const ScenarioConfig c = parse_config(R"({"sim": {"dt": 0}})");
        CHECK_THROWS_WITH_AS(build_scenario(c), doctest::Contains("sim.dt"), ConfigError);
    }
    SUBCASE("2R with a nonzero initial turn angle") {
        const ScenarioConfig c = parse_config(
            R"({"robot": {"class": "2R"}, "sim": {"initial_state": {"psi": 0.3}}})");
        CHECK_THROWS_WITH_AS(build_scenario(c), doctest::Contains("psi"), ConfigError);
    }
    SUBCASE("initial state off the surface") {
        const ScenarioConfig c = parse_config(R"({"sim": {"initial_state": {"z": 3.0}}})");
        CHECK_THROWS_WITH_AS(build_scenario(c), doctest::Contains("off the surface"),
                             ConfigError);
    }
    SUBCASE("negative amplitude") {
        // Surface construction happens during parsing (the initial z is
        // resolved onto it), so the error surfaces there already.
        CHECK_THROWS_AS(parse_config(R"({"surface": {"kind": "sinusoidal", "a": -1}})"),
                        ConfigError);
    }
    SUBCASE("non-positive gain") {
        const ScenarioConfig c = parse_config(R"({"gains": {"k_e": 0}})");
        CHECK_THROWS_WITH_AS(build_scenario(c), doctest::Contains("k_e"), ConfigError);
    }
}

TEST_CASE("canonical serialization is a parse fixed point") {
    const char* documents[] = {
        "{}",
        R"({"robot": {"class": "2R"}})",
        R"({"surface": {"kind": "plane", "slope_x": 1.0}, "path": {"name": "line",
            "params": {"x0": 2, "vx": -0.05}}})",
        R"({"path": {"name": "circle", "params": {"radius": 1.25, "phase": 0.5}},
            "gains": {"k_theta": 4.5, "k_e": 0.8}, "sim": {"dt": 0.005}})",
    };
    for (const char* doc : documents) {
        CAPTURE(doc);
        const std::string canonical = serialize_config(parse_config(doc));
        const std::string twice = serialize_config(parse_config(canonical));
        CHECK(canonical == twice);
    }
}

TEST_CASE("missing config file") {
    CHECK_THROWS_WITH_AS(load_config_file("/nonexistent/path/cfg.json"),
                         doctest::Contains("cannot read"), ConfigError);
}
