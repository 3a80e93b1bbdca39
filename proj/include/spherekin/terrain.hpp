#pragma once

#include <functional>
#include <string>

namespace spherekin {

struct SurfaceGradient {
    double fx = 0.0;  // dz/dx
    double fy = 0.0;  // dz/dy
};

/// Analytic terrain z = f(x, y). Immutable after construction; safe to
/// evaluate concurrently. The gradient is analytic, not numeric — the
/// numeric route exists only as a test oracle (see check_gradient).
struct Surface {
    std::function<double(double, double)> eval;
    std::function<SurfaceGradient(double, double)> grad;
    std::string label;
};

struct SinusoidalParams {
    double amplitude = 0.2;  // meters, >= 0
    double omega = 2.0;      // spatial frequency, 1/meters
};

/// z = a(cos(w·x) + cos(w·y) - 2). Touches z = 0 at the origin and is
/// nonpositive everywhere.
Surface make_sinusoidal(const SinusoidalParams& params);

/// z = slope_x·x + slope_y·y. Constant gradient; test fixture for the
/// flat/inclined reduction checks.
Surface make_plane(double slope_x, double slope_y);

/// Central-difference check of the analytic gradient at (x, y) with step h.
/// Returns max over {fx, fy} of |analytic - numeric| / max(1, |analytic|).
double check_gradient(const Surface& surface, double x, double y, double h);

}  // namespace spherekin
