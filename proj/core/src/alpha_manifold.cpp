#include "cascade/alpha_manifold.hpp"

#include "cascade/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cascade {

double ManeuverProgram::theta_ref(double t) const {
    return theta_m * (1.0 + std::sin(omega * t));
}

double ManeuverProgram::theta_ref_rate(double t) const {
    return theta_m * omega * std::cos(omega * t);
}

void ManeuverProgram::validate() const {
    if (!(omega >= 0.0)) {
        throw std::invalid_argument("ManeuverProgram: omega must be >= 0");
    }
}

void Gains::validate() const {
    if (!(a1 < 0.0) || !(a2 < 0.0) || !(a3 < 0.0) || !(a4 < 0.0)) {
        throw std::invalid_argument("Gains: every coefficient must be negative");
    }
}

namespace {

/// Precomputed pieces of G that do not depend on alpha. One instance per
/// solve keeps the density power law out of the Newton loop.
struct ManifoldEval {
    double thrust_term;  // P/(m v)
    double lift_term;    // 0.5 rho v S CY_alpha / m
    double delta_p;
    double constant;     // -(g/v) cos(theta) - program drive - a1 error term

    ManifoldEval(const ManifoldPoint& mp, const ManeuverProgram& prog,
                 double a1, const AircraftParams& p) {
        if (mp.v <= 0.0) {
            throw std::domain_error("manifold_residual: airspeed must be positive");
        }
        const double rho = air_density(mp.h);
        thrust_term = mp.thrust / (p.m * mp.v);
        lift_term = 0.5 * rho * mp.v * p.S * p.CY_alpha / p.m;
        delta_p = mp.delta_p;
        constant = -(p.g / mp.v) * std::cos(mp.theta) -
                   prog.theta_ref_rate(mp.t) -
                   a1 * (mp.theta - prog.theta_ref(mp.t));
    }

    double value(double alpha) const {
        return thrust_term * std::sin(alpha + delta_p) +
               lift_term * std::sin(2.0 * alpha) + constant;
    }

    double slope(double alpha) const {
        return thrust_term * std::cos(alpha + delta_p) +
               2.0 * lift_term * std::cos(2.0 * alpha);
    }
};

/// Polishes a root inside a sign-change bracket [lo, hi]: Newton steps with
/// the analytic slope, falling back to bisection whenever the step leaves
/// the bracket. Runs to machine sharpness so that downstream finite
/// differences of the root are well conditioned.
double refine_root(const ManifoldEval& f, double lo, double hi, double g_lo,
                   int max_iterations) {
    double x = 0.5 * (lo + hi);
    double gx = f.value(x);
    for (int i = 0; i < max_iterations; ++i) {
        if (gx == 0.0) {
            return x;
        }
        if ((gx < 0.0) == (g_lo < 0.0)) {
            lo = x;
        } else {
            hi = x;
        }
        const double width = hi - lo;
        if (width <= 8.0 * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, std::abs(x))) {
            return x;
        }
        const double slope = f.slope(x);
        double next;
        if (slope != 0.0) {
            next = x - gx / slope;
            if (!(next > lo && next < hi)) {
                next = 0.5 * (lo + hi);
            }
        } else {
            next = 0.5 * (lo + hi);
        }
        if (next == x) {
            return x;
        }
        x = next;
        gx = f.value(x);
    }
    return x;
}

/// Plain Newton from a starting point, confined to the bracket. Used as a
/// last resort when the scan finds no sign change (tangent roots).
std::optional<double> newton_unbracketed(const ManifoldEval& f, double x,
                                         double bracket, double tolerance,
                                         int max_iterations) {
    for (int i = 0; i < max_iterations; ++i) {
        const double gx = f.value(x);
        if (std::abs(gx) <= tolerance) {
            return x;
        }
        const double slope = f.slope(x);
        if (slope == 0.0) {
            return std::nullopt;
        }
        x -= gx / slope;
        if (!(std::abs(x) <= bracket)) {
            return std::nullopt; // left the physical envelope: diverged
        }
    }
    return std::nullopt;
}

} // namespace

double manifold_residual(const ManifoldPoint& mp, double alpha,
                         const ManeuverProgram& prog, double a1,
                         const AircraftParams& p) {
    return ManifoldEval(mp, prog, a1, p).value(alpha);
}

double manifold_residual_slope(const ManifoldPoint& mp, double alpha,
                               const AircraftParams& p) {
    // The slope does not involve the program terms; reuse the evaluator
    // with a neutral program.
    ManeuverProgram none{0.0, 0.0, 0.0};
    return ManifoldEval(mp, none, 0.0, p).slope(alpha);
}

AlphaCommand solve_alpha_command(const ManifoldPoint& mp,
                                 const ManeuverProgram& prog, double a1,
                                 const AircraftParams& p,
                                 std::optional<double> warm_start,
                                 const AlphaSolverConfig& cfg) {
    const ManifoldEval f(mp, prog, a1, p);
    const double b = cfg.bracket;
    const double anchor = warm_start.value_or(0.0);

    // Coarse scan for sign changes; multiple roots are possible since G is
    // periodic in alpha, and the warm start decides between them.
    const int n = std::max(2, cfg.scan_cells);
    std::vector<double> roots;
    double x_prev = -b;
    double g_prev = f.value(x_prev);
    for (int i = 1; i <= n; ++i) {
        const double x = -b + (2.0 * b * i) / n;
        const double g = f.value(x);
        if (g_prev == 0.0) {
            roots.push_back(x_prev);
        } else if ((g_prev < 0.0) != (g < 0.0)) {
            roots.push_back(
                refine_root(f, x_prev, x, g_prev, cfg.max_iterations));
        }
        x_prev = x;
        g_prev = g;
    }
    if (g_prev == 0.0) {
        roots.push_back(x_prev);
    }

    if (roots.empty()) {
        // A tangent root would show no sign change; give Newton from the
        // warm start one chance before declaring the command infeasible.
        auto tangent = newton_unbracketed(f, std::clamp(anchor, -b, b), b,
                                          cfg.tolerance, cfg.max_iterations);
        if (tangent) {
            roots.push_back(*tangent);
        } else {
            throw NoRootInBracket(
                "solve_alpha_command: no angle-of-attack root in [-" +
                    std::to_string(b) + ", " + std::to_string(b) +
                    "] rad (commanded path-angle rate infeasible)",
                mp.t);
        }
    }

    // Nearest-to-warm-start selection keeps the commanded branch continuous
    // along a trajectory.
    std::sort(roots.begin(), roots.end());
    double best = roots.front();
    double best_dist = std::abs(best - anchor);
    for (std::size_t i = 1; i < roots.size(); ++i) {
        if (std::abs(roots[i] - best) < 1e-9) {
            continue; // same root found from adjacent cells
        }
        const double dist = std::abs(roots[i] - anchor);
        if (std::abs(dist - best_dist) <= cfg.tolerance) {
            throw AmbiguousRoot(
                "solve_alpha_command: two roots equidistant from warm start",
                mp.t);
        }
        if (dist < best_dist) {
            best = roots[i];
            best_dist = dist;
        }
    }

    AlphaCommand cmd;
    cmd.phi = best;
    cmd.residual = std::abs(f.value(best));
    if (cmd.residual > cfg.tolerance) {
        throw NoRootInBracket(
            "solve_alpha_command: root refinement stalled, |G| = " +
                std::to_string(cmd.residual),
            mp.t);
    }
    cmd.partials = phi_partials(mp, cmd.phi, prog, a1, p, cfg);
    return cmd;
}

PhiPartials phi_partials(const ManifoldPoint& mp, double phi,
                         const ManeuverProgram& prog, double a1,
                         const AircraftParams& p,
                         const AlphaSolverConfig& cfg) {
    if (mp.v <= 0.0) {
        throw std::domain_error("phi_partials: airspeed must be positive");
    }
    const double rho = air_density(mp.h);
    const double drho = air_density_gradient(mp.h);
    const double sin_ad = std::sin(phi + mp.delta_p);
    const double cos_ad = std::cos(phi + mp.delta_p);
    const double sin_2a = std::sin(2.0 * phi);
    const double cos_2a = std::cos(2.0 * phi);
    const double lift_group = 0.5 * p.S * p.CY_alpha / p.m;

    const double g_alpha = (mp.thrust / (p.m * mp.v)) * cos_ad +
                           2.0 * lift_group * rho * mp.v * cos_2a;
    if (std::abs(g_alpha) < cfg.singular_eps) {
        throw ManifoldSingular(
            "phi_partials: |dG/dalpha| below singularity floor", mp.t);
    }

    const double wt = prog.omega * mp.t;
    const double g_t = prog.theta_m * prog.omega * prog.omega * std::sin(wt) +
                       a1 * prog.theta_m * prog.omega * std::cos(wt);
    const double g_v = -(mp.thrust / (p.m * mp.v * mp.v)) * sin_ad +
                       lift_group * rho * sin_2a +
                       (p.g / (mp.v * mp.v)) * std::cos(mp.theta);
    const double g_h = lift_group * drho * mp.v * sin_2a;
    const double g_theta = (p.g / mp.v) * std::sin(mp.theta) - a1;
    const double g_delta_p = (mp.thrust / (p.m * mp.v)) * cos_ad;

    PhiPartials out;
    out.d_t = -g_t / g_alpha;
    out.d_v = -g_v / g_alpha;
    out.d_h = -g_h / g_alpha;
    out.d_theta = -g_theta / g_alpha;
    out.d_delta_p = -g_delta_p / g_alpha;
    return out;
}

} // namespace cascade
