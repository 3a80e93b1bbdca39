#pragma once

#include <functional>
#include <string>

#include "spherekin/robots.hpp"
#include "spherekin/vec.hpp"

namespace spherekin {

/// Time-parametrized target curve lying on the scenario surface, with its
/// analytic velocity (the z component follows the surface by chain rule).
struct DesiredPath {
    std::function<Vec3(double)> position;
    std::function<Vec3(double)> velocity;
    std::string label;
};

/// Proportional gains for the pure-pursuit laws; each class uses its own
/// subset. k_e normalizes the error magnitude so the feedback term
/// saturates smoothly for distant targets. Defaults are tuned so all four
/// classes hold the benchmark path within 0.3 m; the RS pair (k_alpha,
/// k_phi) is the sensitive one, since its tilt-driven heading loop has no
/// damping term and rides the tilt limit.
struct Gains {
    double k_theta = 5.0;
    double k_theta1 = 5.0;
    double k_theta2 = 0.5;
    double k_phi1 = 5.0;
    double k_phi2 = 0.5;
    double k_psi = 4.0;
    double k_alpha = 1.75;
    double k_phi = 32.0;
    double k_e = 1.0;  // meters
};

/// Instantaneous tracking geometry: error vector, its norm, and the signed
/// deviation angle between the heading and the tangent-plane projection of
/// the error (positive = target to the robot's left).
struct TrackingSnapshot {
    Vec3 e;
    double zeta = 0.0;
    double e_norm = 0.0;
};

/// Below this projected-error magnitude the deviation angle is defined as 0.
inline constexpr double kZetaErrorEpsilon = 1e-9;  // meters

Vec3 tracking_error(const Vec3& target, const Vec3& p0);

/// Signed angle from heading to the tangent-plane projection of e, measured
/// about the contact normal. heading and normal must be unit length and
/// mutually perpendicular (both come from the contact transform).
double deviation_angle(const Vec3& e, const Vec3& heading, const Vec3& normal,
                       double e_epsilon = kZetaErrorEpsilon);

TrackingSnapshot make_snapshot(const Vec3& target, const Vec3& p0, const Vec3& heading,
                               const Vec3& normal, double e_epsilon = kZetaErrorEpsilon);

// Per-class rate laws. The desired-velocity norm divided by the radius is
// the feedforward angular speed needed just to keep up with the target.
ActuationRates control_3r(const TrackingSnapshot& snap, const Vec3& desired_velocity,
                          const Gains& gains, double radius);
ActuationRates control_2r(const TrackingSnapshot& snap, const Gains& gains);
ActuationRates control_rt(const TrackingSnapshot& snap, const Vec3& desired_velocity,
                          const Gains& gains, double radius);
ActuationRates control_rs(const TrackingSnapshot& snap, const Vec3& desired_velocity,
                          const Gains& gains, double radius);

/// Dispatch to the class-specific law.
ActuationRates control_rates(RobotClass cls, const TrackingSnapshot& snap,
                             const Vec3& desired_velocity, const Gains& gains, double radius);

}  // namespace spherekin
