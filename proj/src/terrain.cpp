#include "spherekin/terrain.hpp"

#include <cmath>
#include <stdexcept>

namespace spherekin {

Surface make_sinusoidal(const SinusoidalParams& params) {
    if (!(params.amplitude >= 0.0) || !std::isfinite(params.amplitude))
        throw std::invalid_argument("sinusoidal surface: amplitude must be finite and >= 0");
    if (!std::isfinite(params.omega))
        throw std::invalid_argument("sinusoidal surface: omega must be finite");

    const double a = params.amplitude;
    const double w = params.omega;
    Surface s;
    s.eval = [a, w](double x, double y) {
        return a * (std::cos(w * x) + std::cos(w * y) - 2.0);
    };
    s.grad = [a, w](double x, double y) {
        return SurfaceGradient{-a * w * std::sin(w * x), -a * w * std::sin(w * y)};
    };
    s.label = "sinusoidal";
    return s;
}

Surface make_plane(double slope_x, double slope_y) {
    if (!std::isfinite(slope_x) || !std::isfinite(slope_y))
        throw std::invalid_argument("plane surface: slopes must be finite");

    Surface s;
    s.eval = [slope_x, slope_y](double x, double y) { return slope_x * x + slope_y * y; };
    s.grad = [slope_x, slope_y](double, double) { return SurfaceGradient{slope_x, slope_y}; };
    s.label = "plane";
    return s;
}

double check_gradient(const Surface& surface, double x, double y, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("check_gradient: h must be > 0");

    const SurfaceGradient g = surface.grad(x, y);
    const double fx_num = (surface.eval(x + h, y) - surface.eval(x - h, y)) / (2.0 * h);
    const double fy_num = (surface.eval(x, y + h) - surface.eval(x, y - h)) / (2.0 * h);

    const double ex = std::abs(g.fx - fx_num) / std::max(1.0, std::abs(g.fx));
    const double ey = std::abs(g.fy - fy_num) / std::max(1.0, std::abs(g.fy));
    return std::max(ex, ey);
}

}  // namespace spherekin
