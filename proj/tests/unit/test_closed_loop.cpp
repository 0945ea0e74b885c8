#include "cascade/closed_loop.hpp"

#include "cascade/analysis.hpp"
#include "cascade/scenario.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>

using namespace cascade;

TEST_CASE("thrust schedule lookup is right-continuous") {
    const ThrustSchedule s{{{0.0, 30000.0}, {5.0, 18000.0}, {9.0, 22000.0}}};
    CHECK(s.at(0.0) == 30000.0);
    CHECK(s.at(4.999) == 30000.0);
    CHECK(s.at(5.0) == 18000.0);
    CHECK(s.at(8.9) == 18000.0);
    CHECK(s.at(9.0) == 22000.0);
    CHECK(s.at(100.0) == 22000.0);
}

TEST_CASE("thrust schedule validation") {
    const AircraftParams p = AircraftParams::nominal_fighter();
    CHECK_NOTHROW(ThrustSchedule::constant(30000.0).validate(p));
    CHECK_THROWS_AS(ThrustSchedule{}.validate(p), std::invalid_argument);
    // Non-increasing breakpoints.
    CHECK_THROWS_AS((ThrustSchedule{{{0.0, 30000.0}, {0.0, 20000.0}}}.validate(p)),
                    std::invalid_argument);
    // Value outside the thrust bounds.
    CHECK_THROWS_AS((ThrustSchedule{{{0.0, p.P_max * 2.0}}}.validate(p)),
                    std::invalid_argument);
    // First breakpoint after t = 0 leaves the start undefined.
    CHECK_THROWS_AS((ThrustSchedule{{{1.0, 30000.0}}}.validate(p)),
                    std::invalid_argument);
}

TEST_CASE("rk4 step holds still under zero rates") {
    auto rhs = [](double, const std::array<double, 3>& x) {
        (void)x;
        return std::array<double, 3>{0.0, 0.0, 0.0};
    };
    const std::array<double, 3> x{1.0, -2.0, 3.0};
    CHECK(rk4_step(rhs, x, 0.0, 0.1) == x);
}

TEST_CASE("rk4 step reproduces the fourth-order Taylor polynomial") {
    auto rhs = [](double, const std::array<double, 1>& x) {
        return std::array<double, 1>{-x[0]};
    };
    // Frozen oracle: sum_{k=0..4} (-0.1)^k / k! = 0.9048375 exactly.
    const auto next = rk4_step(rhs, std::array<double, 1>{1.0}, 0.0, 0.1);
    CHECK(next[0] == doctest::Approx(0.9048375).epsilon(1e-14));
}

TEST_CASE("halving the step cuts the one-step error by about 2^5") {
    auto rhs = [](double, const std::array<double, 1>& x) {
        return std::array<double, 1>{-x[0]};
    };
    auto one_step_error = [&](double dt) {
        const auto next = rk4_step(rhs, std::array<double, 1>{1.0}, 0.0, dt);
        return std::abs(next[0] - std::exp(-dt));
    };
    const double ratio = one_step_error(0.1) / one_step_error(0.05);
    CHECK(ratio > 28.0);
    CHECK(ratio < 36.0);
}

TEST_CASE("an on-manifold start stays on the manifolds") {
    Scenario s = make_preset("baseline");
    s.t_final = 5.0;
    const TrajectoryLog log = simulate(s);
    REQUIRE(log.completed());
    REQUIRE(log.records.size() == 5001);
    for (const LogRecord& r : log.records) {
        const TrackingErrors e = tracking_errors(r.x, r.t, s.program);
        CHECK(std::abs(e.theta) <= 1e-6);
        CHECK(std::abs(e.attitude) <= 1e-6);
    }
}

TEST_CASE("a path-angle offset decays as the designed exponential") {
    Scenario s = make_preset("baseline");
    s.gains = Gains{-1.0, -3.5, -9.0, -1.0};
    const double offset = 0.01;
    const ManifoldStart start = make_decay_start(
        200.0, 3000.0, 0.0, s.thrust.at(0.0), s.program, s.aircraft, s.gains,
        offset, s.control.solver);
    s.initial = start.state;
    s.program.attitude_target = start.attitude_target;
    s.t_final = 10.0;

    const TrajectoryLog log = simulate(s);
    REQUIRE(log.completed());
    double sup_err = 0.0;
    for (const LogRecord& r : log.records) {
        const TrackingErrors e = tracking_errors(r.x, r.t, s.program);
        const double ideal = offset * std::exp(s.gains.a1 * r.t);
        sup_err = std::max(sup_err, std::abs(e.theta - ideal));
    }
    CHECK(sup_err <= 1e-3 * offset);
}

TEST_CASE("trajectories self-converge at fourth order in the step") {
    Scenario coarse = make_preset("baseline");
    coarse.gains = Gains{-1.0, -3.5, -9.0, -1.0};
    const ManifoldStart start = make_decay_start(
        200.0, 3000.0, 0.0, coarse.thrust.at(0.0), coarse.program,
        coarse.aircraft, coarse.gains, 0.01, coarse.control.solver);
    coarse.initial = start.state;
    coarse.program.attitude_target = start.attitude_target;
    coarse.t_final = 2.0;
    coarse.dt = 2e-3;

    Scenario fine = coarse;
    fine.dt = 1e-3;

    const TrajectoryLog a = simulate(coarse);
    const TrajectoryLog b = simulate(fine);
    REQUIRE(a.completed());
    REQUIRE(b.completed());
    const std::array<double, 6> xa = a.records.back().x.to_array();
    const std::array<double, 6> xb = b.records.back().x.to_array();
    // The backward-difference terms in the stabilizer law are O(dt), so the
    // scheme as a whole is not a pure fourth-order method; the difference
    // between the two grids still has to be far below any tracked scale.
    const std::array<double, 6> scale = {1e-4, 1e-8, 1e-8, 1e-7, 1e-4, 1e-6};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(std::abs(xa[i] - xb[i]) <= scale[i]);
    }
}

TEST_CASE("a mid-run authority loss aborts with a diagnosable failure") {
    Scenario s = make_preset("baseline");
    s.aircraft.P_min = 0.0;
    // Thrust collapses to zero at t = 1 s: the nozzle term of the command
    // manifold vanishes and the nozzle law becomes singular.
    s.thrust = ThrustSchedule{{{0.0, 20860.0}, {1.0, 0.0}}};
    const TrajectoryLog log = simulate(s);
    CHECK(!log.completed());
    REQUIRE(log.failure.has_value());
    // The failure surfaces during the step whose substeps first touch the
    // thrust cut at t = 1.
    CHECK(log.failure->t >= 1.0 - 2.0 * log.dt);
    CHECK(log.failure->t < 1.5);
    CHECK(!log.records.empty());
    CHECK(log.records.back().t <= log.failure->t);
}

TEST_CASE("simulation is deterministic") {
    Scenario s = make_preset("baseline");
    s.t_final = 1.0;
    const TrajectoryLog a = simulate(s);
    const TrajectoryLog b = simulate(s);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].x == b.records[i].x);
        CHECK(a.records[i].phi == b.records[i].phi);
        CHECK(a.records[i].clf == b.records[i].clf);
        CHECK(a.records[i].delta_m == b.records[i].delta_m);
    }
}

TEST_CASE("the logged command rate matches finite differences along the arc") {
    // The chain-rule dphi/dt (drift plus nozzle contribution) must agree
    // with a central difference of the solved command along the simulated
    // trajectory.
    Scenario s = make_preset("baseline");
    s.gains = Gains{-1.0, -3.5, -9.0, -1.0};
    const ManifoldStart start = make_decay_start(
        200.0, 3000.0, 0.0, s.thrust.at(0.0), s.program, s.aircraft, s.gains,
        0.02, s.control.solver);
    s.initial = start.state;
    s.program.attitude_target = start.attitude_target;
    s.t_final = 4.0;
    const TrajectoryLog log = simulate(s);
    REQUIRE(log.completed());
    for (std::size_t i = 1; i + 1 < log.records.size(); i += 11) {
        const double fd =
            (log.records[i + 1].phi - log.records[i - 1].phi) / (2.0 * log.dt);
        CHECK(std::abs(fd - log.records[i].dphi_dt) <=
              1e-5 + 1e-3 * std::abs(log.records[i].dphi_dt));
    }
}

TEST_CASE("the warm-started command stays continuous along a run") {
    Scenario s = make_preset("baseline");
    s.gains = Gains{-1.0, -3.5, -9.0, -1.0};
    const ManifoldStart start = make_decay_start(
        200.0, 3000.0, 0.0, s.thrust.at(0.0), s.program, s.aircraft, s.gains,
        0.05, s.control.solver);
    s.initial = start.state;
    s.program.attitude_target = start.attitude_target;
    s.t_final = 10.0;
    const TrajectoryLog log = simulate(s);
    REQUIRE(log.completed());
    // Regression bound on the per-step command motion: the largest step
    // observed on this trajectory is ~6e-5 rad (the decay transient);
    // anything of order the bracket width would mean a branch jump.
    double max_step = 0.0;
    for (std::size_t i = 1; i < log.records.size(); ++i) {
        max_step = std::max(max_step,
                            std::abs(log.records[i].phi - log.records[i - 1].phi));
    }
    CHECK(max_step < 5e-4);
    CHECK(max_step > 0.0);
}

TEST_CASE("manifold starts satisfy their defining equations") {
    const AircraftParams p = AircraftParams::nominal_fighter();
    const ManeuverProgram prog{0.03, 0.05, 0.0};
    const Gains gains{-0.9, -3.0, -8.0, -0.9};

    const ManifoldStart plain =
        make_manifold_start(180.0, 2500.0, 0.05, 30000.0, prog, p, gains.a1);
    const ManifoldPoint mp{0.0, 180.0, plain.state.state.theta, 2500.0, 0.05,
                           30000.0};
    CHECK(std::abs(manifold_residual(mp, plain.state.state.alpha, prog,
                                     gains.a1, p)) <= 1e-10);
    CHECK(plain.state.state.pitch_attitude() ==
          doctest::Approx(plain.attitude_target));
    CHECK(plain.state.state.q == 0.0);

    const ManifoldStart decay = make_decay_start(180.0, 2500.0, 0.05, 30000.0,
                                                 prog, p, gains, 0.02);
    CHECK(decay.state.state.theta ==
          doctest::Approx(prog.theta_ref(0.0) + 0.02));
    // q sits on the pitch-rate manifold: a4 times the initial attitude error.
    const double att_err =
        decay.state.state.pitch_attitude() - decay.attitude_target;
    CHECK(decay.state.state.q == doctest::Approx(gains.a4 * att_err));
}
