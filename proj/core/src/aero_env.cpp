#include "cascade/aero_env.hpp"

#include <cmath>
#include <stdexcept>

namespace cascade {

namespace {
constexpr double kSeaLevelDensity = 1.2256;   // [kg/m^3]
constexpr double kAltitudeScale = 0.2257e-4;  // [1/m]
constexpr double kDensityExponent = 4.256;    // [-]
} // namespace

double air_density_ceiling() { return 1.0 / kAltitudeScale; }

double air_density(double altitude_m) {
    const double base = 1.0 - kAltitudeScale * altitude_m;
    if (altitude_m < 0.0 || base <= 0.0) {
        throw std::domain_error("air_density: altitude " +
                                std::to_string(altitude_m) +
                                " m outside [0, " +
                                std::to_string(air_density_ceiling()) + ") m");
    }
    return kSeaLevelDensity * std::pow(base, kDensityExponent);
}

double air_density_gradient(double altitude_m) {
    const double base = 1.0 - kAltitudeScale * altitude_m;
    if (altitude_m < 0.0 || base <= 0.0) {
        throw std::domain_error("air_density_gradient: altitude " +
                                std::to_string(altitude_m) +
                                " m outside [0, " +
                                std::to_string(air_density_ceiling()) + ") m");
    }
    return kSeaLevelDensity * kDensityExponent *
           std::pow(base, kDensityExponent - 1.0) * (-kAltitudeScale);
}

AeroCoefficients aero_coefficients(double alpha, double q, double v,
                                   double delta_m, const AircraftParams& p,
                                   AeroMode mode) {
    if (v <= 0.0) {
        throw std::domain_error("aero_coefficients: airspeed must be positive");
    }
    AeroCoefficients c;
    const double s2a = std::sin(2.0 * alpha);
    c.CY = p.CY_alpha * s2a;
    if (mode == AeroMode::Full) {
        c.CY += p.CY_delta_m * delta_m;
    }
    c.CX = p.CX0 + p.k_induced * c.CY * c.CY;
    c.Cm = p.Cm_alpha * s2a + p.Cm_delta_m * delta_m + p.Cm_q * (p.l / v) * q;
    return c;
}

namespace {
void require(bool ok, const char* field) {
    if (!ok) {
        throw std::invalid_argument(std::string("AircraftParams: invalid ") + field);
    }
}
} // namespace

void AircraftParams::validate() const {
    require(m > 0.0, "m (mass must be > 0)");
    require(S > 0.0, "S (wing area must be > 0)");
    require(l > 0.0, "l (chord must be > 0)");
    require(Izz > 0.0, "Izz (pitch inertia must be > 0)");
    require(g > 0.0, "g (gravity must be > 0)");
    require(Cm_delta_m != 0.0, "Cm_delta_m (must be nonzero, it divides the stabilizer law)");
    require(delta_m_max > 0.0, "delta_m_max (must be > 0)");
    require(delta_p_max > 0.0, "delta_p_max (must be > 0)");
    require(P_min >= 0.0, "P_min (must be >= 0)");
    require(P_max >= P_min, "P_max (must be >= P_min)");
}

} // namespace cascade
