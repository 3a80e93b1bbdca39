#include "spherekin/robots.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spherekin {

const char* to_string(RobotClass cls) {
    switch (cls) {
        case RobotClass::ThreeR: return "3R";
        case RobotClass::TwoR: return "2R";
        case RobotClass::RT: return "RT";
        case RobotClass::RS: return "RS";
    }
    return "?";
}

std::optional<RobotClass> robot_class_from_string(std::string_view name) {
    if (name == "3R") return RobotClass::ThreeR;
    if (name == "2R") return RobotClass::TwoR;
    if (name == "RT") return RobotClass::RT;
    if (name == "RS") return RobotClass::RS;
    return std::nullopt;
}

namespace {

void require_zero(double rate, const char* rate_name, RobotClass cls) {
    if (rate != 0.0)
        throw std::invalid_argument(std::string("class ") + to_string(cls) +
                                    " cannot actuate " + rate_name);
}

void check_rates(RobotClass cls, const ActuationRates& r) {
    switch (cls) {
        case RobotClass::ThreeR:
            require_zero(r.alpha_dot, "alpha_dot", cls);
            break;
        case RobotClass::TwoR:
            require_zero(r.psi_dot, "psi_dot", cls);
            require_zero(r.alpha_dot, "alpha_dot", cls);
            break;
        case RobotClass::RT:
            require_zero(r.phi_dot, "phi_dot", cls);
            require_zero(r.alpha_dot, "alpha_dot", cls);
            break;
        case RobotClass::RS:
            // psi_dot is driven, not actuated; it is ignored as an input.
            require_zero(r.theta_dot, "theta_dot", cls);
            break;
    }
}

}  // namespace

Vec3 body_velocity(RobotClass cls, const RobotState& state, const ActuationRates& rates,
                   double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("body_velocity: radius must be > 0");
    check_rates(cls, rates);

    switch (cls) {
        case RobotClass::ThreeR:
        case RobotClass::TwoR:
            return {radius * rates.theta_dot, -radius * rates.phi_dot, 0.0};
        case RobotClass::RT:
            return {radius * rates.theta_dot, 0.0, 0.0};
        case RobotClass::RS:
            return {radius * rates.alpha_dot * std::cos(state.phi), -radius * rates.phi_dot, 0.0};
    }
    return {};
}

Vec3 world_velocity(RobotClass cls, const RobotState& state, const ActuationRates& rates,
                    const Surface& surface, double radius) {
    const Vec3 v_body = body_velocity(cls, state, rates, radius);
    const SurfaceSample sample = sample_surface(surface, state.p0.x, state.p0.y);
    const double psi = (cls == RobotClass::TwoR) ? 0.0 : state.psi;
    const Transform t = local_to_world(state.p0, sample, psi);
    return velocity_to_world(t, v_body);
}

double heading_rate(RobotClass cls, const RobotState& state, const ActuationRates& rates) {
    switch (cls) {
        case RobotClass::ThreeR:
        case RobotClass::RT:
            return rates.psi_dot;
        case RobotClass::TwoR:
            return 0.0;
        case RobotClass::RS:
            return -rates.alpha_dot * std::sin(state.phi);
    }
    return 0.0;
}

Vec3 center_point(const RobotState& state, const SurfaceSample& sample, double radius) {
    const Vec3 direct = state.p0 + radius * sample.normal;

    const Transform t = local_to_world(state.p0, sample, state.psi);
    const Vec3 via_transform{t(0, 2) * radius + t(0, 3),
                             t(1, 2) * radius + t(1, 3),
                             t(2, 2) * radius + t(2, 3)};

    if ((direct - via_transform).norm() > 1e-12)
        throw std::logic_error("center_point: direct and transform routes disagree");
    return direct;
}

}  // namespace spherekin
