#include "cascade/canonical2d.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

using namespace cascade::planar;

namespace {

PlanarSystem demo_system(double a1 = -1.0, double a2 = -1.5) {
    PlanarSystem sys;
    sys.f1 = [](double x2) { return x2 * x2; };
    sys.f2 = [](double x1) { return std::sin(x1); };
    sys.chi1 = {[](double t) { return std::sin(t); },
                [](double t) { return std::cos(t); }};
    sys.chi2 = {[](double t) { return std::cos(t); },
                [](double t) { return -std::sin(t); }};
    sys.g1 = [a1](double y) { return a1 * y; };
    sys.g2 = [a2](double y) { return a2 * y; };
    return sys;
}

} // namespace

TEST_CASE("canonize sends the target curve to the origin and round-trips") {
    const PlanarSystem sys = demo_system();
    for (double t : {0.0, 0.7, 2.9}) {
        const std::array<double, 2> on_curve{sys.chi1.value(t), sys.chi2.value(t)};
        const auto y = canonize(on_curve, t, sys);
        CHECK(y[0] == 0.0);
        CHECK(y[1] == 0.0);
    }
    const std::array<double, 2> x{0.3, -1.2};
    const auto round = uncanonize(canonize(x, 1.3, sys), 1.3, sys);
    CHECK(round[0] == doctest::Approx(x[0]).epsilon(1e-15));
    CHECK(round[1] == doctest::Approx(x[1]).epsilon(1e-15));

    // chi = (sin t, cos t) at t = 0 maps (1, 1) to (1, 0).
    const auto y0 = canonize({1.0, 1.0}, 0.0, sys);
    CHECK(y0[0] == 1.0);
    CHECK(y0[1] == 0.0);
}

TEST_CASE("on the curve the feedback cancels the dynamics exactly") {
    const PlanarSystem sys = demo_system();
    for (double t : {0.0, 1.1, 4.2}) {
        const std::array<double, 2> x{sys.chi1.value(t), sys.chi2.value(t)};
        const auto u = control_2d(x, t, sys);
        const double rate1 = sys.f1(x[1]) + u[0];
        const double rate2 = sys.f2(x[0]) + u[1];
        CHECK(rate1 == doctest::Approx(sys.chi1.rate(t)).epsilon(1e-15));
        CHECK(rate2 == doctest::Approx(sys.chi2.rate(t)).epsilon(1e-15));
    }
}

TEST_CASE("without dynamics and with a frozen curve the control is pure shaping") {
    PlanarSystem sys = demo_system();
    sys.f1 = [](double) { return 0.0; };
    sys.f2 = [](double) { return 0.0; };
    sys.chi1 = {[](double) { return 0.4; }, [](double) { return 0.0; }};
    sys.chi2 = {[](double) { return -0.2; }, [](double) { return 0.0; }};
    const std::array<double, 2> x{1.4, 0.8};
    const auto u = control_2d(x, 3.0, sys);
    CHECK(u[0] == doctest::Approx(sys.g1(x[0] - 0.4)).epsilon(1e-15));
    CHECK(u[1] == doctest::Approx(sys.g2(x[1] + 0.2)).epsilon(1e-15));
}

TEST_CASE("linear shaping decays each canonical coordinate exponentially") {
    const double a1 = -1.0, a2 = -1.5;
    const PlanarSystem sys = demo_system(a1, a2);
    const std::array<double, 2> y0{1.0, 0.5};
    const std::array<double, 2> x0{y0[0] + sys.chi1.value(0.0),
                                   y0[1] + sys.chi2.value(0.0)};
    const PlanarLog log = simulate_2d(sys, x0, 10.0, 1e-3);
    double sup = 0.0;
    for (const PlanarRecord& r : log.records) {
        sup = std::max(sup, std::abs(r.y[0] - y0[0] * std::exp(a1 * r.t)));
        sup = std::max(sup, std::abs(r.y[1] - y0[1] * std::exp(a2 * r.t)));
    }
    CHECK(sup <= 1e-6);
}

TEST_CASE("the target curve is invariant") {
    const PlanarSystem sys = demo_system();
    const std::array<double, 2> x0{sys.chi1.value(0.0), sys.chi2.value(0.0)};
    const PlanarLog log = simulate_2d(sys, x0, 10.0, 1e-3);
    for (const PlanarRecord& r : log.records) {
        CHECK(std::abs(r.y[0]) <= 1e-9);
        CHECK(std::abs(r.y[1]) <= 1e-9);
    }
}

TEST_CASE("the canonical rates follow the shaping maps along the trajectory") {
    const PlanarSystem sys = demo_system();
    const PlanarLog log = simulate_2d(sys, {1.3, 0.2}, 4.0, 1e-3);
    for (std::size_t i = 1; i + 1 < log.records.size(); i += 37) {
        const PlanarRecord& lo = log.records[i - 1];
        const PlanarRecord& hi = log.records[i + 1];
        const PlanarRecord& mid = log.records[i];
        const double fd1 = (hi.y[0] - lo.y[0]) / (2.0 * log.dt);
        const double fd2 = (hi.y[1] - lo.y[1]) / (2.0 * log.dt);
        CHECK(fd1 == doctest::Approx(sys.g1(mid.y[0])).epsilon(5e-6).scale(1.0));
        CHECK(fd2 == doctest::Approx(sys.g2(mid.y[1])).epsilon(5e-6).scale(1.0));
    }
}

TEST_CASE("the Lyapunov series decreases away from the origin") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        PlanarSystem sys = demo_system(-0.5 - std::abs(u(rng)),
                                       -0.5 - std::abs(u(rng)));
        const PlanarLog log = simulate_2d(sys, {u(rng), u(rng)}, 5.0, 1e-3);
        for (std::size_t i = 0; i < log.records.size(); ++i) {
            const PlanarRecord& r = log.records[i];
            CHECK(r.clf_rate <= 0.0);
            if (i > 0 && log.records[i - 1].clf > 1e-12) {
                CHECK(r.clf < log.records[i - 1].clf);
            }
        }
    }
}

TEST_CASE("shaping maps are validated by sampling") {
    PlanarSystem sys = demo_system();
    CHECK_NOTHROW(validate_shaping(sys));

    PlanarSystem offset = demo_system();
    offset.g1 = [](double y) { return -y + 0.1; };
    CHECK_THROWS_AS(validate_shaping(offset), std::invalid_argument);

    PlanarSystem rising = demo_system();
    rising.g2 = [](double y) { return y * y * y; };
    CHECK_THROWS_AS(validate_shaping(rising), std::invalid_argument);

    PlanarSystem flat = demo_system();
    flat.g1 = [](double) { return 0.0; };
    CHECK_THROWS_AS(validate_shaping(flat), std::invalid_argument);
}

TEST_CASE("simulate_2d rejects a non-positive step") {
    const PlanarSystem sys = demo_system();
    CHECK_THROWS_AS(simulate_2d(sys, {0.0, 0.0}, 1.0, 0.0),
                    std::invalid_argument);
}
