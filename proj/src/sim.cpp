#include "spherekin/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace spherekin {

namespace {

constexpr int kMaxStepHalvings = 10;

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

}  // namespace

void validate_scenario(const Scenario& sc) {
    require(sc.dt > 0.0 && std::isfinite(sc.dt), "sim.dt must be > 0");
    require(sc.t_end > 0.0 && std::isfinite(sc.t_end), "sim.t_end must be > 0");
    require(sc.radius > 0.0, "robot.R must be > 0");
    require(sc.z_tol > 0.0, "sim.z_tol must be > 0");
    require(sc.phi_max > 0.0, "robot.phi_max must be > 0");
    require(bool(sc.surface.eval) && bool(sc.surface.grad), "scenario needs a surface");
    require(bool(sc.path.position) && bool(sc.path.velocity), "scenario needs a desired path");

    const Gains& g = sc.gains;
    for (const auto& [value, name] :
         {std::pair{g.k_theta, "gains.k_theta"}, {g.k_theta1, "gains.k_theta1"},
          {g.k_theta2, "gains.k_theta2"}, {g.k_phi1, "gains.k_phi1"}, {g.k_phi2, "gains.k_phi2"},
          {g.k_psi, "gains.k_psi"}, {g.k_alpha, "gains.k_alpha"}, {g.k_phi, "gains.k_phi"},
          {g.k_e, "gains.k_e"}}) {
        require(value > 0.0, std::string(name) + " must be > 0");
    }

    const RobotState& s0 = sc.initial_state;
    const double z_surface = sc.surface.eval(s0.p0.x, s0.p0.y);
    require(std::abs(s0.p0.z - z_surface) <= sc.z_tol,
            "sim.initial_state is off the surface by more than sim.z_tol");
    if (sc.robot_class == RobotClass::TwoR)
        require(s0.psi == 0.0, "sim.initial_state.psi must be 0 for robot class 2R");
    if (sc.robot_class == RobotClass::RS)
        require(std::abs(s0.phi) <= sc.phi_max,
                "sim.initial_state.phi exceeds robot.phi_max for robot class RS");

    // Spot-check that the desired path actually lies on the surface.
    for (int i = 0; i <= 4; ++i) {
        const double t = sc.t_end * i / 4.0;
        const Vec3 p = sc.path.position(t);
        require(std::abs(p.z - sc.surface.eval(p.x, p.y)) <= 1e-9,
                "desired path leaves the surface (checked at t=" + std::to_string(t) + ")");
        require(std::isfinite(sc.path.velocity(t).norm()), "desired path velocity must be finite");
    }
}

StepEval evaluate(const Scenario& sc, const RobotState& state, double t) {
    StepEval ev;
    ev.sample = sample_surface(sc.surface, state.p0.x, state.p0.y);
    const double psi = (sc.robot_class == RobotClass::TwoR) ? 0.0 : state.psi;
    ev.transform = local_to_world(state.p0, ev.sample, psi);

    ev.target = sc.path.position(t);
    ev.target_velocity = sc.path.velocity(t);
    const Vec3 heading = ev.transform.rotation().column(0);
    ev.snapshot = make_snapshot(ev.target, state.p0, heading, ev.sample.normal);

    ev.rates = control_rates(sc.robot_class, ev.snapshot, ev.target_velocity, sc.gains, sc.radius);
    if (sc.robot_class == RobotClass::RS) {
        // Tilt limit: stop tilting past the bound.
        const bool at_upper = state.phi >= sc.phi_max && ev.rates.phi_dot > 0.0;
        const bool at_lower = state.phi <= -sc.phi_max && ev.rates.phi_dot < 0.0;
        if (at_upper || at_lower) ev.rates.phi_dot = 0.0;
    }

    const Vec3 v_body = body_velocity(sc.robot_class, state, ev.rates, sc.radius);
    ev.derivative.p0_dot = velocity_to_world(ev.transform, v_body);
    ev.derivative.theta_dot = ev.rates.theta_dot;
    ev.derivative.phi_dot = ev.rates.phi_dot;
    ev.derivative.psi_dot = heading_rate(sc.robot_class, state, ev.rates);
    ev.derivative.alpha_dot = ev.rates.alpha_dot;
    return ev;
}

StateDerivative derivative(const Scenario& sc, const RobotState& state, double t) {
    return evaluate(sc, state, t).derivative;
}

namespace {

RobotState advance(const RobotState& s, const StateDerivative& d, double dt) {
    RobotState n = s;
    n.p0 = s.p0 + dt * d.p0_dot;
    n.theta = s.theta + dt * d.theta_dot;
    n.phi = s.phi + dt * d.phi_dot;
    n.psi = s.psi + dt * d.psi_dot;
    n.alpha = s.alpha + dt * d.alpha_dot;
    n.t = s.t + dt;
    return n;
}

StepResult step_recursive(const Scenario& sc, const RobotState& state, double t, double dt,
                          int depth) {
    const StateDerivative k1 = derivative(sc, state, t);
    const StateDerivative k2 = derivative(sc, advance(state, k1, 0.5 * dt), t + 0.5 * dt);
    const StateDerivative k3 = derivative(sc, advance(state, k2, 0.5 * dt), t + 0.5 * dt);
    const StateDerivative k4 = derivative(sc, advance(state, k3, dt), t + dt);

    StateDerivative k;
    k.p0_dot = (k1.p0_dot + 2.0 * k2.p0_dot + 2.0 * k3.p0_dot + k4.p0_dot) * (1.0 / 6.0);
    k.theta_dot = (k1.theta_dot + 2.0 * k2.theta_dot + 2.0 * k3.theta_dot + k4.theta_dot) / 6.0;
    k.phi_dot = (k1.phi_dot + 2.0 * k2.phi_dot + 2.0 * k3.phi_dot + k4.phi_dot) / 6.0;
    k.psi_dot = (k1.psi_dot + 2.0 * k2.psi_dot + 2.0 * k3.psi_dot + k4.psi_dot) / 6.0;
    k.alpha_dot = (k1.alpha_dot + 2.0 * k2.alpha_dot + 2.0 * k3.alpha_dot + k4.alpha_dot) / 6.0;

    RobotState next = advance(state, k, dt);
    next.t = t + dt;

    const double z_surface = sc.surface.eval(next.p0.x, next.p0.y);
    const double correction = std::abs(next.p0.z - z_surface);
    if (correction > sc.z_tol) {
        if (depth >= kMaxStepHalvings) {
            char msg[128];
            std::snprintf(msg, sizeof msg,
                          "step rejected %d times without meeting z_tol at t=%.6g", depth, t);
            throw RunError(msg, t);
        }
        StepResult first = step_recursive(sc, state, t, 0.5 * dt, depth + 1);
        StepResult second = step_recursive(sc, first.state, t + 0.5 * dt, 0.5 * dt, depth + 1);
        second.contact_correction =
            std::max(first.contact_correction, second.contact_correction);
        return second;
    }

    next.p0.z = z_surface;
    if (sc.robot_class == RobotClass::RS)
        next.phi = std::clamp(next.phi, -sc.phi_max, sc.phi_max);
    return {next, correction};
}

TrajectoryRow make_row(const RobotState& state, const StepEval& ev, double t, double radius) {
    TrajectoryRow row;
    row.t = t;
    row.p0 = state.p0;
    row.target = ev.target;
    row.theta = state.theta;
    row.phi = state.phi;
    row.psi = wrap_pi(state.psi);
    row.alpha = state.alpha;
    row.theta_dot = ev.derivative.theta_dot;
    row.phi_dot = ev.derivative.phi_dot;
    row.psi_dot = ev.derivative.psi_dot;
    row.alpha_dot = ev.derivative.alpha_dot;
    row.e = ev.snapshot.e;
    row.e_norm = ev.snapshot.e_norm;
    row.zeta = ev.snapshot.zeta;
    row.center = center_point(state, ev.sample, radius);
    return row;
}

}  // namespace

StepResult rk4_step(const Scenario& sc, const RobotState& state, double t, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be > 0");
    return step_recursive(sc, state, t, dt, 0);
}

long step_count(double t_end, double dt) {
    return static_cast<long>(std::floor(t_end / dt + 1e-9));
}

TrajectoryRecord run(const Scenario& sc) {
    validate_scenario(sc);

    const long n = step_count(sc.t_end, sc.dt);
    TrajectoryRecord record;
    record.rows.reserve(static_cast<std::size_t>(n) + 1);

    RobotState state = sc.initial_state;
    state.t = 0.0;

    for (long i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) * sc.dt;
        const StepEval ev = evaluate(sc, state, t);
        record.rows.push_back(make_row(state, ev, t, sc.radius));

        if (i < n) {
            StepResult step = rk4_step(sc, state, t, sc.dt);
            record.max_contact_correction =
                std::max(record.max_contact_correction, step.contact_correction);
            state = step.state;
            state.t = static_cast<double>(i + 1) * sc.dt;
        }
    }
    return record;
}

namespace {

void append_value(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

std::string to_csv(const TrajectoryRecord& record) {
    std::string out =
        "t,x0,y0,z0,xd,yd,zd,theta,phi,psi,alpha,"
        "theta_dot,phi_dot,psi_dot,alpha_dot,ex,ey,ez,e_norm,zeta,ox,oy,oz\n";
    for (const TrajectoryRow& r : record.rows) {
        const double values[] = {r.t,         r.p0.x,     r.p0.y,    r.p0.z,     r.target.x,
                                 r.target.y,  r.target.z, r.theta,   r.phi,      r.psi,
                                 r.alpha,     r.theta_dot, r.phi_dot, r.psi_dot, r.alpha_dot,
                                 r.e.x,       r.e.y,      r.e.z,     r.e_norm,   r.zeta,
                                 r.center.x,  r.center.y, r.center.z};
        bool first = true;
        for (double v : values) {
            if (!first) out += ',';
            append_value(out, v);
            first = false;
        }
        out += '\n';
    }
    return out;
}

void write_csv(const TrajectoryRecord& record, std::ostream& out) { out << to_csv(record); }

double wrap_pi(double angle) {
    const double r = std::remainder(angle, 2.0 * std::numbers::pi);
    return (r <= -std::numbers::pi) ? std::numbers::pi : r;
}

namespace {

DesiredPath planar_path(const Surface& surface, std::function<void(double, double&, double&)> xy,
                        std::function<void(double, double&, double&)> xy_dot, std::string label) {
    DesiredPath p;
    p.position = [surface, xy](double t) {
        double x, y;
        xy(t, x, y);
        return Vec3{x, y, surface.eval(x, y)};
    };
    p.velocity = [surface, xy, xy_dot](double t) {
        double x, y, vx, vy;
        xy(t, x, y);
        xy_dot(t, vx, vy);
        const SurfaceGradient g = surface.grad(x, y);
        return Vec3{vx, vy, g.fx * vx + g.fy * vy};
    };
    p.label = std::move(label);
    return p;
}

}  // namespace

DesiredPath make_benchmark_path(BenchmarkPathVariant variant, const Surface& surface) {
    if (variant == BenchmarkPathVariant::Literal) {
        return planar_path(
            surface,
            [](double t, double& x, double& y) { x = 2.0 * std::cos(t / 20.0); y = x; },
            [](double t, double& vx, double& vy) { vx = -0.1 * std::sin(t / 20.0); vy = vx; },
            "paper-eq60-literal");
    }
    return planar_path(
        surface,
        [](double t, double& x, double& y) {
            x = 2.0 * std::cos(t / 20.0);
            y = 2.0 * std::sin(t / 20.0);
        },
        [](double t, double& vx, double& vy) {
            vx = -0.1 * std::sin(t / 20.0);
            vy = 0.1 * std::cos(t / 20.0);
        },
        "paper-eq60-sine-corrected");
}

DesiredPath make_circle_path(const Surface& surface, double cx, double cy, double radius,
                             double angular_speed, double phase) {
    return planar_path(
        surface,
        [=](double t, double& x, double& y) {
            x = cx + radius * std::cos(angular_speed * t + phase);
            y = cy + radius * std::sin(angular_speed * t + phase);
        },
        [=](double t, double& vx, double& vy) {
            vx = -radius * angular_speed * std::sin(angular_speed * t + phase);
            vy = radius * angular_speed * std::cos(angular_speed * t + phase);
        },
        "circle");
}

DesiredPath make_line_path(const Surface& surface, double x0, double y0, double vx, double vy) {
    return planar_path(
        surface,
        [=](double t, double& x, double& y) {
            x = x0 + vx * t;
            y = y0 + vy * t;
        },
        [=](double, double& out_vx, double& out_vy) {
            out_vx = vx;
            out_vy = vy;
        },
        "line");
}

}  // namespace spherekin
