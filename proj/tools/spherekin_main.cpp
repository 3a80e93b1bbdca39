#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spherekin/scenario_config.hpp"
#include "spherekin/sim.hpp"

namespace fs = std::filesystem;
using namespace spherekin;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitRunError = 3;

constexpr double kConvergenceBound = 0.3;  // meters, for the compare summary

struct Overrides {
    std::string out_dir;
    double dt = 0.0;
    double t_end = 0.0;
    std::string path_variant;
};

void apply_overrides(ScenarioConfig& cfg, const Overrides& ov) {
    if (!ov.out_dir.empty()) cfg.output.directory = ov.out_dir;
    if (ov.dt > 0.0) cfg.sim.dt = ov.dt;
    if (ov.t_end > 0.0) cfg.sim.t_end = ov.t_end;
    if (ov.path_variant == "literal") {
        cfg.path = PathConfig{};
        cfg.path.name = "paper-eq60-literal";
    } else if (ov.path_variant == "sine-corrected") {
        cfg.path = PathConfig{};
        cfg.path.name = "paper-eq60-sine-corrected";
    }
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

double mean_error_last_fifth(const TrajectoryRecord& rec) {
    const std::size_t n = rec.rows.size();
    const std::size_t start = n - std::max<std::size_t>(1, n / 5);
    double sum = 0.0;
    for (std::size_t i = start; i < n; ++i) sum += rec.rows[i].e_norm;
    return sum / static_cast<double>(n - start);
}

/// First time from which |e| stays below the bound to the end; -1 if never.
double sustained_entry_time(const TrajectoryRecord& rec, double bound) {
    double entry = -1.0;
    for (auto it = rec.rows.rbegin(); it != rec.rows.rend(); ++it) {
        if (it->e_norm >= bound) break;
        entry = it->t;
    }
    return entry;
}

std::string run_plot_script() {
    return R"(# Renders the trajectory CSV written next to this script: gnuplot plot.gp
set datafile separator ","
set term pngcairo size 1100,800
set xlabel "x [m]"
set ylabel "y [m]"
set zlabel "z [m]"
set output "trajectory_3d.png"
splot "trajectory.csv" every ::1 using 2:3:4 with lines lw 2 title "actual", \
      "trajectory.csv" every ::1 using 5:6:7 with lines dashtype 2 title "desired"
set output "trajectory_xyz.png"
set xlabel "t [s]"
set multiplot layout 3,1
set ylabel "x [m]"
plot "trajectory.csv" every ::1 using 1:2 with lines title "x", \
     "" every ::1 using 1:5 with lines dashtype 2 title "x_d"
set ylabel "y [m]"
plot "trajectory.csv" every ::1 using 1:3 with lines title "y", \
     "" every ::1 using 1:6 with lines dashtype 2 title "y_d"
set ylabel "z [m]"
plot "trajectory.csv" every ::1 using 1:4 with lines title "z", \
     "" every ::1 using 1:7 with lines dashtype 2 title "z_d"
unset multiplot
)";
}

std::string compare_plot_script() {
    return R"(# Renders the per-class trajectory CSVs written next to this script: gnuplot plot.gp
set datafile separator ","
set term pngcairo size 1100,800
set xlabel "x [m]"
set ylabel "y [m]"
set zlabel "z [m]"
set output "compare_3d.png"
splot "trajectory_3R.csv" every ::1 using 2:3:4 with lines title "3R", \
      "trajectory_2R.csv" every ::1 using 2:3:4 with lines title "2R", \
      "trajectory_RT.csv" every ::1 using 2:3:4 with lines title "RT", \
      "trajectory_RS.csv" every ::1 using 2:3:4 with lines title "RS", \
      "trajectory_3R.csv" every ::1 using 5:6:7 with lines dashtype 2 lc "black" title "desired"
set output "compare_error.png"
set xlabel "t [s]"
set ylabel "|e| [m]"
plot "trajectory_3R.csv" every ::1 using 1:19 with lines title "3R", \
     "trajectory_2R.csv" every ::1 using 1:19 with lines title "2R", \
     "trajectory_RT.csv" every ::1 using 1:19 with lines title "RT", \
     "trajectory_RS.csv" every ::1 using 1:19 with lines title "RS"
)";
}

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    return buf;
}

int cmd_run(const std::string& config_path, const Overrides& ov) {
    ScenarioConfig cfg = load_config_file(config_path);
    apply_overrides(cfg, ov);
    const Scenario scenario = build_scenario(cfg);

    const auto t0 = std::chrono::steady_clock::now();
    const TrajectoryRecord rec = run(scenario);
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);

    const fs::path out_dir = cfg.output.directory;
    fs::create_directories(out_dir);
    write_file(out_dir / "trajectory.csv", to_csv(rec));
    if (cfg.output.emit_plot_script) write_file(out_dir / "plot.gp", run_plot_script());

    const double final_e = rec.rows.back().e_norm;
    const double mean_e = mean_error_last_fifth(rec);

    std::ostringstream info;
    info << "tool: spherekin run\n"
         << "config: " << config_path << "\n"
         << "started: " << timestamp_now() << "\n"
         << "elapsed_seconds: " << elapsed.count() << "\n"
         << "rows: " << rec.rows.size() << "\n";
    write_file(out_dir / "run_info.txt", info.str());

    std::printf("wrote %s (%zu rows)\n", (out_dir / "trajectory.csv").c_str(), rec.rows.size());
    std::printf("final |e| = %.6g m\n", final_e);
    std::printf("mean |e| over last 20%% = %.6g m\n", mean_e);
    std::printf("max contact correction = %.6g m\n", rec.max_contact_correction);
    return kExitOk;
}

int cmd_compare(const std::string& config_path, const Overrides& ov) {
    ScenarioConfig cfg = load_config_file(config_path);
    apply_overrides(cfg, ov);

    const RobotClass classes[] = {RobotClass::ThreeR, RobotClass::TwoR, RobotClass::RT,
                                  RobotClass::RS};

    // Validate all four up front so config errors surface before any run.
    std::vector<Scenario> scenarios;
    for (RobotClass cls : classes) {
        ScenarioConfig per_class = cfg;
        per_class.robot.robot_class = cls;
        if (cls == RobotClass::TwoR) per_class.sim.initial_state.psi = 0.0;
        scenarios.push_back(build_scenario(per_class));
    }

    std::vector<std::future<TrajectoryRecord>> futures;
    for (const Scenario& sc : scenarios)
        futures.push_back(std::async(std::launch::async, [&sc] { return run(sc); }));

    const fs::path out_dir = cfg.output.directory;
    fs::create_directories(out_dir);

    std::string summary = "class,final_e_norm,mean_e_last20,time_to_e_below_0.3,rows\n";
    std::printf("%-6s %12s %14s %18s\n", "class", "final |e|", "mean |e| 20%", "t(|e|<0.3) [s]");
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const TrajectoryRecord rec = futures[i].get();
        const char* name = to_string(classes[i]);
        write_file(out_dir / (std::string("trajectory_") + name + ".csv"), to_csv(rec));

        const double final_e = rec.rows.back().e_norm;
        const double mean_e = mean_error_last_fifth(rec);
        const double entry = sustained_entry_time(rec, kConvergenceBound);
        char line[160];
        std::snprintf(line, sizeof line, "%s,%.17g,%.17g,%.17g,%zu\n", name, final_e, mean_e,
                      entry, rec.rows.size());
        summary += line;
        if (entry >= 0.0)
            std::printf("%-6s %12.4g %14.4g %18.4g\n", name, final_e, mean_e, entry);
        else
            std::printf("%-6s %12.4g %14.4g %18s\n", name, final_e, mean_e, "never");
    }
    write_file(out_dir / "compare_summary.csv", summary);
    if (cfg.output.emit_plot_script) write_file(out_dir / "plot.gp", compare_plot_script());
    std::printf("wrote %s\n", (out_dir / "compare_summary.csv").c_str());
    return kExitOk;
}

int cmd_validate(const std::string& config_path) {
    ScenarioConfig cfg = load_config_file(config_path);
    build_scenario(cfg);  // full validation
    std::cout << serialize_config(cfg);
    return kExitOk;
}

void print_vec(const char* name, const Vec3& v) {
    std::printf("%-7s = [% .12g, % .12g, % .12g]\n", name, v.x, v.y, v.z);
}

void print_mat(const char* name, const Mat3& m) {
    std::printf("%s:\n", name);
    for (int r = 0; r < 3; ++r)
        std::printf("  [% .12g, % .12g, % .12g]\n", m(r, 0), m(r, 1), m(r, 2));
}

int cmd_frames_check(const std::string& kind, double a, double omega, double slope_x,
                     double slope_y, double x, double y, double psi) {
    SurfaceConfig sc;
    sc.kind = kind;
    sc.a = a;
    sc.omega = omega;
    sc.slope_x = slope_x;
    sc.slope_y = slope_y;
    const Surface surface = build_surface(sc);

    const SurfaceSample s = sample_surface(surface, x, y);
    const EulerRotation rot = euler_rotation(s);
    const Mat3 r_rod = rotation_rodrigues(s);
    const Mat3 r_quat = rotation_quaternion(s);
    const Vec3 p0{x, y, surface.eval(x, y)};
    const Transform t = local_to_world(p0, s, psi);

    std::printf("surface: %s at x=%.12g y=%.12g, psi=%.12g\n", surface.label.c_str(), x, y, psi);
    std::printf("z       = %.12g\n", p0.z);
    std::printf("fx      = %.12g\nfy      = %.12g\n", s.fx, s.fy);
    std::printf("s_n     = %.12g\nq_c     = %.12g\n", s.sn, s.qc);
    print_vec("n_hat", s.normal);
    if (rot.degenerate)
        std::printf("e_hat   = degenerate (flat point), gamma = 0\n");
    else
        print_vec("e_hat", rot.axis);
    std::printf("gamma   = %.12g\n", rot.angle);
    print_mat("R (rodrigues route)", r_rod);
    print_mat("R (quaternion route)", r_quat);
    std::printf("max |R_rodrigues - R_quaternion| = %.3g\n", max_abs_diff(r_rod, r_quat));
    std::printf("T (local -> world):\n");
    for (int r = 0; r < 4; ++r)
        std::printf("  [% .12g, % .12g, % .12g, % .12g]\n", t(r, 0), t(r, 1), t(r, 2), t(r, 3));
    const Vec3 heading = t.rotation().column(0);
    print_vec("j_t", s.normal.cross(heading));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kinematics simulator for spherical robots rolling on analytic 3D terrains"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides ov;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "scenario config file (JSON)")->required();
        cmd->add_option("--out", ov.out_dir, "output directory (overrides config)")
            ->envname("SPHEREKIN_OUT");
        cmd->add_option("--dt", ov.dt, "integration step override (s)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--t-end", ov.t_end, "horizon override (s)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--path-variant", ov.path_variant,
                        "switch the bundled reference path variant")
            ->check(CLI::IsMember({"literal", "sine-corrected"}));
    };

    CLI::App* c_run = app.add_subcommand("run", "run one scenario, write trajectory.csv");
    add_common(c_run);
    CLI::App* c_compare =
        app.add_subcommand("compare", "run all four robot classes on the same scenario");
    add_common(c_compare);

    CLI::App* c_validate = app.add_subcommand("validate", "parse a config and print its canonical form");
    c_validate->add_option("--config", config_path, "scenario config file (JSON)")->required();

    std::string fc_kind = "sinusoidal";
    double fc_a = 0.2, fc_omega = 2.0, fc_sx = 0.0, fc_sy = 0.0;
    double fc_x = 0.0, fc_y = 0.0, fc_psi = 0.0;
    CLI::App* c_frames = app.add_subcommand("frames-check", "print contact-frame diagnostics");
    c_frames->add_option("--surface", fc_kind, "surface kind")
        ->check(CLI::IsMember({"sinusoidal", "plane"}));
    c_frames->add_option("--a", fc_a, "sinusoidal amplitude (m)");
    c_frames->add_option("--omega", fc_omega, "sinusoidal spatial frequency (1/m)");
    c_frames->add_option("--slope-x", fc_sx, "plane slope along x");
    c_frames->add_option("--slope-y", fc_sy, "plane slope along y");
    c_frames->add_option("--x", fc_x, "contact x (m)");
    c_frames->add_option("--y", fc_y, "contact y (m)");
    c_frames->add_option("--psi", fc_psi, "turn angle (rad)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (c_run->parsed()) return cmd_run(config_path, ov);
        if (c_compare->parsed()) return cmd_compare(config_path, ov);
        if (c_validate->parsed()) return cmd_validate(config_path);
        if (c_frames->parsed())
            return cmd_frames_check(fc_kind, fc_a, fc_omega, fc_sx, fc_sy, fc_x, fc_y, fc_psi);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const RunError& e) {
        std::cerr << "run failed: " << e.what() << "\n";
        return kExitRunError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRunError;
    }
    return kExitOk;
}
