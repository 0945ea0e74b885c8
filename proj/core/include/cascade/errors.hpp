#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace cascade {

/// Base class for failures of the control-synthesis chain. Carries the
/// simulation time at which the failure occurred when known (NaN otherwise).
class SynthesisError : public std::runtime_error {
public:
    explicit SynthesisError(const std::string& what, double t = nan_time())
        : std::runtime_error(what), time_(t) {}

    double time() const noexcept { return time_; }

    static double nan_time() { return std::numeric_limits<double>::quiet_NaN(); }

private:
    double time_;
};

/// The Stage-1 manifold equation has no root inside the configured
/// angle-of-attack bracket: the commanded path-angle rate is infeasible.
class NoRootInBracket : public SynthesisError {
    using SynthesisError::SynthesisError;
};

/// Two roots of the manifold equation are equidistant from the warm start;
/// the continuity policy cannot pick one.
class AmbiguousRoot : public SynthesisError {
    using SynthesisError::SynthesisError;
};

/// |dG/dalpha| fell below the singularity floor: the implicit function
/// theorem gives no well-defined manifold sensitivity at this state.
class ManifoldSingular : public SynthesisError {
    using SynthesisError::SynthesisError;
};

/// |dphi/ddelta_p| fell below the singularity floor: the nozzle-rate law
/// would divide by (almost) zero.
class NozzleLawSingular : public SynthesisError {
    using SynthesisError::SynthesisError;
};

/// Dynamic pressure times the moment reference dropped below the configured
/// floor; the stabilizer law cannot be evaluated.
class DegeneratePressure : public SynthesisError {
    using SynthesisError::SynthesisError;
};

/// Scenario text could not be parsed or violates a declared invariant.
class ScenarioError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cascade
