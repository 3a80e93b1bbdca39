#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "spherekin/control.hpp"
#include "spherekin/robots.hpp"

namespace spherekin {

struct Scenario {
    Surface surface;
    RobotClass robot_class = RobotClass::ThreeR;
    double radius = 0.2;  // meters
    Gains gains;
    DesiredPath path;
    double t_end = 100.0;  // seconds
    double dt = 0.01;      // seconds
    RobotState initial_state;
    double phi_max = 0.4;  // RS tilt limit, radians
    double z_tol = 4e-7;   // allowed contact drift per step, meters
};

/// Throws std::invalid_argument when a scenario invariant is violated
/// (non-positive dt/t_end/radius/gains, initial state off the surface,
/// nonzero initial turn angle for the 2R class, path off the surface, ...).
void validate_scenario(const Scenario& scenario);

struct StateDerivative {
    Vec3 p0_dot;
    double theta_dot = 0.0;
    double phi_dot = 0.0;
    double psi_dot = 0.0;  // effective turn rate (driven for RS)
    double alpha_dot = 0.0;
};

/// Full closed-loop evaluation at one (state, t): contact geometry, target,
/// tracking snapshot, controller rates and the resulting state derivative.
struct StepEval {
    SurfaceSample sample;
    Transform transform;
    Vec3 target;
    Vec3 target_velocity;
    TrackingSnapshot snapshot;
    ActuationRates rates;  // after the RS tilt-limit zeroing
    StateDerivative derivative;
};

StepEval evaluate(const Scenario& scenario, const RobotState& state, double t);
StateDerivative derivative(const Scenario& scenario, const RobotState& state, double t);

/// Thrown when a step still drifts off the surface by more than z_tol after
/// the maximum number of halvings; carries the time of the failing step.
struct RunError : std::runtime_error {
    double t;
    RunError(const std::string& message, double t_fail) : std::runtime_error(message), t(t_fail) {}
};

struct StepResult {
    RobotState state;
    double contact_correction = 0.0;  // |z - f(x,y)| before re-projection, max over sub-steps
};

/// Classical 4-stage Runge-Kutta step of the closed-loop derivative. After
/// the step the contact z is re-projected onto the surface and the RS tilt
/// angle is clamped. A step whose pre-projection drift exceeds z_tol is
/// re-taken as two half steps, up to 10 halvings, then RunError.
StepResult rk4_step(const Scenario& scenario, const RobotState& state, double t, double dt);

struct TrajectoryRow {
    double t = 0.0;
    Vec3 p0;
    Vec3 target;
    double theta = 0.0;
    double phi = 0.0;
    double psi = 0.0;  // wrapped to (-pi, pi] for reporting
    double alpha = 0.0;
    double theta_dot = 0.0;
    double phi_dot = 0.0;
    double psi_dot = 0.0;
    double alpha_dot = 0.0;
    Vec3 e;
    double e_norm = 0.0;
    double zeta = 0.0;
    Vec3 center;
};

struct TrajectoryRecord {
    std::vector<TrajectoryRow> rows;
    double max_contact_correction = 0.0;
};

/// Number of integration steps for a horizon; the record has one more row.
long step_count(double t_end, double dt);

/// Runs the scenario from t = 0 to t_end on the fixed dt grid.
/// Deterministic: identical scenarios produce identical records.
TrajectoryRecord run(const Scenario& scenario);

/// CSV with the exact column set and 17-significant-digit values, so that
/// repeated runs are byte-identical.
void write_csv(const TrajectoryRecord& record, std::ostream& out);
std::string to_csv(const TrajectoryRecord& record);

/// Wraps an angle to (-pi, pi].
double wrap_pi(double angle);

// ---- Bundled desired paths (all projected onto the given surface, with
// ---- chain-rule z velocity) ----

enum class BenchmarkPathVariant {
    Literal,       // x and y follow the same cosine: a degenerate diagonal segment
    SineCorrected  // y uses the sine instead: a closed loop of radius 2
};

DesiredPath make_benchmark_path(BenchmarkPathVariant variant, const Surface& surface);
DesiredPath make_circle_path(const Surface& surface, double cx, double cy, double radius,
                             double angular_speed, double phase);
DesiredPath make_line_path(const Surface& surface, double x0, double y0, double vx, double vy);

}  // namespace spherekin
