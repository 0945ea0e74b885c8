#pragma once

#include <array>
#include <functional>
#include <vector>

namespace cascade::planar {

/// A scalar target-curve component with its analytic time derivative
/// (supplied by the scenario; no symbolic differentiation here).
struct Curve {
    std::function<double(double)> value;
    std::function<double(double)> rate;
};

/// A 2D plant dx1/dt = f1(x2) + u1, dx2/dt = f2(x1) + u2, a target curve
/// (chi1(t), chi2(t)) and two shaping maps g1, g2. The shaping maps must
/// vanish at zero and be strictly decreasing; validate_shaping() checks the
/// conditions by sampling.
struct PlanarSystem {
    std::function<double(double)> f1;
    std::function<double(double)> f2;
    Curve chi1;
    Curve chi2;
    std::function<double(double)> g1;
    std::function<double(double)> g2;
};

/// Checks g(0) = 0 and a negative difference quotient over a sampled grid
/// on [-span, span]. Throws std::invalid_argument naming the violation.
void validate_shaping(const PlanarSystem& sys, double span = 3.0,
                      int samples = 64);

/// The canonizing change of coordinates: y = x - chi(t). Sends the target
/// curve to the origin for every t.
std::array<double, 2> canonize(const std::array<double, 2>& x, double t,
                               const PlanarSystem& sys);

/// Inverse of canonize: x = y + chi(t).
std::array<double, 2> uncanonize(const std::array<double, 2>& y, double t,
                                 const PlanarSystem& sys);

/// The cancellation-plus-shaping feedback
///   u1 = g1(x1 - chi1(t)) + chi1'(t) - f1(x2)
///   u2 = g2(x2 - chi2(t)) + chi2'(t) - f2(x1).
/// In canonical coordinates the closed loop becomes dy_i/dt = g_i(y_i).
std::array<double, 2> control_2d(const std::array<double, 2>& x, double t,
                                 const PlanarSystem& sys);

struct PlanarRecord {
    double t = 0.0;
    std::array<double, 2> x{};
    std::array<double, 2> y{};
    std::array<double, 2> u{};
    double clf = 0.0;      // V = y1^2 + y2^2
    double clf_rate = 0.0; // dV/dt = 2 y1 g1(y1) + 2 y2 g2(y2)
};

struct PlanarLog {
    double dt = 0.0;
    std::vector<PlanarRecord> records;
};

/// RK4 closed loop under control_2d from x0, with the canonical coordinates
/// and the Lyapunov series logged per step.
PlanarLog simulate_2d(const PlanarSystem& sys, const std::array<double, 2>& x0,
                      double t_final, double dt);

} // namespace cascade::planar
