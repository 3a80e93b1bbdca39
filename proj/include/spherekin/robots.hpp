#pragma once

#include <optional>
#include <string_view>

#include "spherekin/frames.hpp"
#include "spherekin/vec.hpp"

namespace spherekin {

/// Four kinematic classes of spherical robot, distinguished by which rates
/// the internal mechanism can actuate:
///   ThreeR - roll, tilt and turn rates all actuated
///   TwoR   - roll and tilt only; the turn angle stays at zero
///   RT     - roll and turn only; no tilting
///   RS     - forward roll about a tilting transverse axis plus tilt; the
///            turn rate is driven by the motion, not actuated
enum class RobotClass { ThreeR, TwoR, RT, RS };

const char* to_string(RobotClass cls);
std::optional<RobotClass> robot_class_from_string(std::string_view name);

struct RobotState {
    Vec3 p0;             // contact point, world frame (meters)
    double theta = 0.0;  // rolling angle about the lateral axis (rad)
    double phi = 0.0;    // tilting angle about the longitudinal axis (rad)
    double psi = 0.0;    // turning angle about the contact normal (rad)
    double alpha = 0.0;  // RS forward-roll angle about the tilting transverse axis (rad)
    double t = 0.0;      // seconds
};

/// Angular rates commanded by a controller. Rates a class cannot actuate
/// must be exactly zero (RS ignores psi_dot instead: its turn is driven).
struct ActuationRates {
    double theta_dot = 0.0;
    double phi_dot = 0.0;
    double psi_dot = 0.0;
    double alpha_dot = 0.0;
};

/// Contact-frame velocity from the no-slip rolling constraint.
/// Third component is always zero. Throws std::invalid_argument on
/// class-forbidden nonzero rates or radius <= 0.
Vec3 body_velocity(RobotClass cls, const RobotState& state, const ActuationRates& rates,
                   double radius);

/// World-frame contact-point velocity: body velocity pushed through the
/// local-to-world transform at the current contact point. TwoR pins the
/// turn angle to zero before building the transform.
Vec3 world_velocity(RobotClass cls, const RobotState& state, const ActuationRates& rates,
                    const Surface& surface, double radius);

/// Effective rate of the turn angle: the actuated rate for ThreeR/RT, zero
/// for TwoR, and -alpha_dot*sin(phi) for RS (the normal component of the
/// body angular velocity; the RS turn is a byproduct of tilted rolling).
double heading_rate(RobotClass cls, const RobotState& state, const ActuationRates& rates);

/// Sphere center: contact point plus radius along the contact normal.
/// Computed both directly and through the transform's normal column; the
/// two routes must agree to 1e-12 (internal consistency check).
Vec3 center_point(const RobotState& state, const SurfaceSample& sample, double radius);

}  // namespace spherekin
