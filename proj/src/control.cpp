#include "spherekin/control.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spherekin {

namespace {

double normalized_error(double e_norm, double k_e) {
    return e_norm / (k_e + e_norm);  // in [0, 1), monotone in e_norm
}

double require_positive_radius(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("controller: radius must be > 0");
    return radius;
}

}  // namespace

Vec3 tracking_error(const Vec3& target, const Vec3& p0) { return target - p0; }

double deviation_angle(const Vec3& e, const Vec3& heading, const Vec3& normal,
                       double e_epsilon) {
    const Vec3 e_tangent = e - e.dot(normal) * normal;
    if (e_tangent.norm() < e_epsilon) return 0.0;
    const double zeta =
        std::atan2(heading.cross(e_tangent).dot(normal), heading.dot(e_tangent));
    // atan2 covers [-pi, pi]; the angle is defined on (-pi, pi].
    return (zeta == -std::numbers::pi) ? std::numbers::pi : zeta;
}

TrackingSnapshot make_snapshot(const Vec3& target, const Vec3& p0, const Vec3& heading,
                               const Vec3& normal, double e_epsilon) {
    TrackingSnapshot snap;
    snap.e = tracking_error(target, p0);
    snap.e_norm = snap.e.norm();
    snap.zeta = deviation_angle(snap.e, heading, normal, e_epsilon);
    return snap;
}

ActuationRates control_3r(const TrackingSnapshot& snap, const Vec3& desired_velocity,
                          const Gains& g, double radius) {
    require_positive_radius(radius);
    const double n = normalized_error(snap.e_norm, g.k_e);
    ActuationRates r;
    r.theta_dot = g.k_theta * n * std::cos(snap.zeta) + desired_velocity.norm() / radius;
    r.phi_dot = -(g.k_phi1 * n * std::sin(snap.zeta) + g.k_phi2 * std::sin(snap.zeta));
    // Turn toward the projected error: positive turn angle swings the
    // heading clockwise about the normal, so a target on the left
    // (zeta > 0) needs a negative turn rate.
    r.psi_dot = -g.k_psi * snap.zeta;
    return r;
}

ActuationRates control_2r(const TrackingSnapshot& snap, const Gains& g) {
    const double n = normalized_error(snap.e_norm, g.k_e);
    ActuationRates r;
    r.theta_dot = g.k_theta1 * n * std::cos(snap.zeta) + g.k_theta2 * std::cos(snap.zeta);
    r.phi_dot = -(g.k_phi1 * n * std::sin(snap.zeta) + g.k_phi2 * std::sin(snap.zeta));
    r.psi_dot = 0.0;
    return r;
}

ActuationRates control_rt(const TrackingSnapshot& snap, const Vec3& desired_velocity,
                          const Gains& g, double radius) {
    require_positive_radius(radius);
    const double n = normalized_error(snap.e_norm, g.k_e);
    ActuationRates r;
    r.theta_dot = g.k_theta * n * std::cos(snap.zeta) + desired_velocity.norm() / radius;
    r.phi_dot = 0.0;
    r.psi_dot = -g.k_psi * snap.zeta;  // same turn handedness as the 3R law
    return r;
}

ActuationRates control_rs(const TrackingSnapshot& snap, const Vec3& desired_velocity,
                          const Gains& g, double radius) {
    require_positive_radius(radius);
    const double n = normalized_error(snap.e_norm, g.k_e);
    ActuationRates r;
    r.alpha_dot = g.k_alpha * n * std::cos(snap.zeta) + desired_velocity.norm() / radius;
    r.phi_dot = g.k_phi * snap.zeta;
    // The RS turn rate is driven by the motion; see heading_rate.
    r.psi_dot = 0.0;
    return r;
}

ActuationRates control_rates(RobotClass cls, const TrackingSnapshot& snap,
                             const Vec3& desired_velocity, const Gains& gains, double radius) {
    switch (cls) {
        case RobotClass::ThreeR: return control_3r(snap, desired_velocity, gains, radius);
        case RobotClass::TwoR: return control_2r(snap, gains);
        case RobotClass::RT: return control_rt(snap, desired_velocity, gains, radius);
        case RobotClass::RS: return control_rs(snap, desired_velocity, gains, radius);
    }
    return {};
}

}  // namespace spherekin
