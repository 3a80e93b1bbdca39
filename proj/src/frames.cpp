#include "spherekin/frames.hpp"

#include <cmath>
#include <stdexcept>

namespace spherekin {

namespace {
// Below this value of fx^2 + fy^2 the rotation axis direction is not
// numerically meaningful; only the diagnostic axis/angle path branches.
constexpr double kDegenerateSlopeSq = 1e-12;
}  // namespace

SurfaceSample sample_from_gradient(double fx, double fy) {
    SurfaceSample s;
    s.fx = fx;
    s.fy = fy;
    s.sn = 1.0 / std::sqrt(1.0 + fx * fx + fy * fy);
    s.qc = s.sn * s.sn / (1.0 + s.sn);
    s.normal = Vec3{-fx, -fy, 1.0} * s.sn;
    return s;
}

SurfaceSample sample_surface(const Surface& surface, double x, double y) {
    const SurfaceGradient g = surface.grad(x, y);
    return sample_from_gradient(g.fx, g.fy);
}

EulerRotation euler_rotation(const SurfaceSample& sample) {
    EulerRotation r;
    const double slope_sq = sample.fx * sample.fx + sample.fy * sample.fy;
    if (slope_sq <= kDegenerateSlopeSq) {
        r.degenerate = true;
        r.angle = 0.0;
        r.axis = {0.0, 0.0, 0.0};
        return r;
    }
    const double slope = std::hypot(sample.fx, sample.fy);
    r.degenerate = false;
    r.axis = {sample.fy / slope, -sample.fx / slope, 0.0};
    r.angle = std::atan2(slope, 1.0);
    return r;
}

Mat3 rotation_rodrigues(const SurfaceSample& s) {
    Mat3 r;
    r(0, 0) = 1.0 - s.qc * s.fx * s.fx;
    r(0, 1) = -s.qc * s.fx * s.fy;
    r(0, 2) = -s.sn * s.fx;
    r(1, 0) = -s.qc * s.fx * s.fy;
    r(1, 1) = 1.0 - s.qc * s.fy * s.fy;
    r(1, 2) = -s.sn * s.fy;
    r(2, 0) = s.sn * s.fx;
    r(2, 1) = s.sn * s.fy;
    r(2, 2) = s.sn;
    return r;
}

UnitQuaternion contact_quaternion(const SurfaceSample& s) {
    // Half-angle identities in sn and qc: the rotation angle lies in
    // [0, pi/2), so both half-angle roots are nonnegative.
    const double half_scale = std::sqrt(0.5 * s.qc);
    UnitQuaternion q;
    q.w = std::sqrt(0.5 * (1.0 + s.sn));
    q.x = s.fy * half_scale;
    q.y = -s.fx * half_scale;
    q.z = 0.0;
    return q;
}

Mat3 rotation_quaternion(const SurfaceSample& sample) {
    const UnitQuaternion q = contact_quaternion(sample);
    Mat3 r;
    r(0, 0) = 1.0 - 2.0 * q.y * q.y;
    r(0, 1) = 2.0 * q.x * q.y;
    r(0, 2) = 2.0 * q.y * q.w;
    r(1, 0) = 2.0 * q.x * q.y;
    r(1, 1) = 1.0 - 2.0 * q.x * q.x;
    r(1, 2) = -2.0 * q.x * q.w;
    r(2, 0) = -2.0 * q.y * q.w;
    r(2, 1) = 2.0 * q.x * q.w;
    r(2, 2) = 1.0 - 2.0 * (q.x * q.x + q.y * q.y);
    return r;
}

Transform local_to_world(const Vec3& contact_point, const SurfaceSample& s, double psi) {
    const double cp = std::cos(psi);
    const double sp = std::sin(psi);
    const double txx = 1.0 - s.qc * s.fx * s.fx;  // tilt-rotation tangential entries
    const double tyy = 1.0 - s.qc * s.fy * s.fy;
    const double txy = s.qc * s.fx * s.fy;

    Transform t;
    t(0, 0) = txx * cp + txy * sp;
    t(0, 1) = txx * sp - txy * cp;
    t(0, 2) = -s.sn * s.fx;
    t(0, 3) = contact_point.x;
    t(1, 0) = -txy * cp - tyy * sp;
    t(1, 1) = -txy * sp + tyy * cp;
    t(1, 2) = -s.sn * s.fy;
    t(1, 3) = contact_point.y;
    t(2, 0) = s.sn * (s.fx * cp - s.fy * sp);
    t(2, 1) = s.sn * (s.fx * sp + s.fy * cp);
    t(2, 2) = s.sn;
    t(2, 3) = contact_point.z;
    t(3, 0) = 0.0;
    t(3, 1) = 0.0;
    t(3, 2) = 0.0;
    t(3, 3) = 1.0;
    return t;
}

Vec3 velocity_to_world(const Transform& t, const Vec3& v_local) {
    if (v_local.z != 0.0)
        throw std::invalid_argument(
            "velocity_to_world: local velocity must have zero third component (rolling contact)");
    return {t(0, 0) * v_local.x + t(0, 1) * v_local.y,
            t(1, 0) * v_local.x + t(1, 1) * v_local.y,
            t(2, 0) * v_local.x + t(2, 1) * v_local.y};
}

}  // namespace spherekin
