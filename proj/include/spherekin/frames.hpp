#pragma once

#include <array>

#include "spherekin/terrain.hpp"
#include "spherekin/vec.hpp"

namespace spherekin {

/// Local surface geometry at a contact point.
///
/// sn is the reciprocal norm of the surface gradient vector [fx, fy, -1],
/// so 0 < sn <= 1. qc = sn^2/(1+sn) is the regularized tangential
/// coefficient used by the rotation entries; it extends smoothly to 1/2 at
/// flat points where the raw axis normalization blows up. normal is the
/// robot-side unit normal (positive z component).
struct SurfaceSample {
    double fx = 0.0;
    double fy = 0.0;
    double sn = 1.0;
    double qc = 0.5;
    Vec3 normal{0.0, 0.0, 1.0};
};

SurfaceSample sample_surface(const Surface& surface, double x, double y);

/// Builds a sample directly from slopes; useful when no Surface object is
/// at hand (randomized property checks, diagnostics).
SurfaceSample sample_from_gradient(double fx, double fy);

/// Axis/angle of the single rotation taking the world vertical to the
/// contact normal. The axis lies in the horizontal plane. Diagnostic only:
/// the transform entries never divide by the axis norm, so the degenerate
/// flat-point case is a valid state here, not an error.
struct EulerRotation {
    Vec3 axis{0.0, 0.0, 0.0};
    double angle = 0.0;
    bool degenerate = true;
};

EulerRotation euler_rotation(const SurfaceSample& sample);

/// Tilt rotation mapping [0,0,1] to the contact normal, via the
/// regularized axis-angle closed form.
Mat3 rotation_rodrigues(const SurfaceSample& sample);

/// Unit quaternion (w, x, y, z) of the same tilt rotation; z is always 0
/// because the rotation axis is horizontal.
struct UnitQuaternion {
    double w = 1.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

UnitQuaternion contact_quaternion(const SurfaceSample& sample);

/// Same rotation as rotation_rodrigues, built by expanding the contact
/// quaternion. The two routes agree elementwise to 1e-12 for all inputs.
Mat3 rotation_quaternion(const SurfaceSample& sample);

/// 4x4 homogeneous transform from the sphere's local contact frame to the
/// world frame: tilt rotation composed with the turn about the contact
/// normal, translated to the contact point. Row-major 16-element storage.
struct Transform {
    std::array<double, 16> a{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};

    double operator()(int row, int col) const { return a[4 * row + col]; }
    double& operator()(int row, int col) { return a[4 * row + col]; }

    Mat3 rotation() const {
        return Mat3{{a[0], a[1], a[2], a[4], a[5], a[6], a[8], a[9], a[10]}};
    }
    Vec3 translation() const { return {a[3], a[7], a[11]}; }
};

Transform local_to_world(const Vec3& contact_point, const SurfaceSample& sample, double psi);

/// Maps a local-frame velocity (zero third component: rolling keeps the
/// contact velocity in the tangent plane) to world coordinates. The
/// translation column does not apply to velocities.
/// Throws std::invalid_argument if v_local has a nonzero third component.
Vec3 velocity_to_world(const Transform& transform, const Vec3& v_local);

}  // namespace spherekin
