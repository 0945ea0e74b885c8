#include "cascade/canonical2d.hpp"

#include "cascade/closed_loop.hpp"

#include <cmath>
#include <stdexcept>

namespace cascade::planar {

void validate_shaping(const PlanarSystem& sys, double span, int samples) {
    auto check = [&](const std::function<double(double)>& g, const char* name) {
        if (g(0.0) != 0.0) {
            throw std::invalid_argument(std::string(name) +
                                        " must vanish at zero");
        }
        double prev_y = -span;
        double prev_g = g(prev_y);
        for (int i = 1; i <= samples; ++i) {
            const double y = -span + 2.0 * span * i / samples;
            const double gy = g(y);
            if (!(gy < prev_g)) {
                throw std::invalid_argument(
                    std::string(name) + " must be strictly decreasing");
            }
            prev_y = y;
            prev_g = gy;
        }
    };
    check(sys.g1, "g1");
    check(sys.g2, "g2");
}

std::array<double, 2> canonize(const std::array<double, 2>& x, double t,
                               const PlanarSystem& sys) {
    return {x[0] - sys.chi1.value(t), x[1] - sys.chi2.value(t)};
}

std::array<double, 2> uncanonize(const std::array<double, 2>& y, double t,
                                 const PlanarSystem& sys) {
    return {y[0] + sys.chi1.value(t), y[1] + sys.chi2.value(t)};
}

std::array<double, 2> control_2d(const std::array<double, 2>& x, double t,
                                 const PlanarSystem& sys) {
    return {sys.g1(x[0] - sys.chi1.value(t)) + sys.chi1.rate(t) - sys.f1(x[1]),
            sys.g2(x[1] - sys.chi2.value(t)) + sys.chi2.rate(t) - sys.f2(x[0])};
}

PlanarLog simulate_2d(const PlanarSystem& sys, const std::array<double, 2>& x0,
                      double t_final, double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("simulate_2d: dt must be positive");
    }
    PlanarLog log;
    log.dt = dt;
    const auto n_steps = static_cast<std::size_t>(std::llround(t_final / dt));
    log.records.reserve(n_steps + 1);

    auto rhs = [&](double t, const std::array<double, 2>& x) {
        const std::array<double, 2> u = control_2d(x, t, sys);
        return std::array<double, 2>{sys.f1(x[1]) + u[0],
                                     sys.f2(x[0]) + u[1]};
    };

    std::array<double, 2> x = x0;
    for (std::size_t n = 0; n <= n_steps; ++n) {
        const double t = static_cast<double>(n) * dt;
        PlanarRecord r;
        r.t = t;
        r.x = x;
        r.y = canonize(x, t, sys);
        r.u = control_2d(x, t, sys);
        r.clf = r.y[0] * r.y[0] + r.y[1] * r.y[1];
        r.clf_rate = 2.0 * r.y[0] * sys.g1(r.y[0]) +
                     2.0 * r.y[1] * sys.g2(r.y[1]);
        log.records.push_back(r);
        if (n == n_steps) {
            break;
        }
        x = rk4_step(rhs, x, t, dt);
    }
    return log;
}

} // namespace cascade::planar
