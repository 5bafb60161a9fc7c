// Cross-validation of the hand-coded equations of motion against the vector
// field produced by the bracket engine, on seeded random samples.
#pragma once

#include <cstdint>
#include <string>

#include "uvr/poisson.hpp"
#include "uvr/sampling.hpp"
#include "uvr/systems.hpp"

namespace uvr {

inline constexpr double kOracleTolAnalytic = 1e-12;
inline constexpr double kOracleTolFd = 1e-5;

struct OracleReport {
    Variant variant;
    long n = 0;
    std::uint64_t seed = 0;
    bool fd = false;
    double max_rel_deviation = 0.0;
    long worst_sample = -1;
    double tolerance = 0.0;

    bool passed() const { return max_rel_deviation <= tolerance; }
};

/// Random lift shaped for `v`.
inline ControlLift random_lift(Sampler& s, Variant v) {
    ControlLift lift = ControlLift::zero(v);
    lift.u_pi = s.vec3(-1.0, 1.0);
    lift.u_p = s.vec3(-1.0, 1.0);
    if (has_gamma(v)) lift.u_gamma = s.vec3(-1.0, 1.0);
    if (has_rotors(v)) {
        lift.u_theta = s.vec2(-1.0, 1.0);
        lift.u_l = s.vec2(-1.0, 1.0);
    }
    return lift;
}

/// For each sample draws params, a state and a lift, and compares eom() with
/// X_H + lift. With `fd` the bracket engine gets H without its analytic
/// gradient and differentiates it numerically.
inline OracleReport run_oracle(long n, std::uint64_t seed, Variant variant, bool fd = false,
                               double fd_step = kDefaultFdStep) {
    if (n < 1) throw ValidationError("n", "must be >= 1");
    OracleReport report{variant, n, seed, fd, 0.0, -1, fd ? kOracleTolFd : kOracleTolAnalytic};
    Sampler sampler(seed);
    for (long i = 0; i < n; ++i) {
        const VehicleParams prm = sampler.params(variant);
        const ReducedState x = sampler.state(variant);
        const ControlLift lift = random_lift(sampler, variant);

        const StateDerivative hand = eom(x, prm, lift);
        ScalarField h = hamiltonian_field(prm, variant);
        if (fd) h = h.without_gradient();
        const StateDerivative engine = ham_vector_field(h, x, fd_step) + lift.as_derivative();

        const double dev = relative_deviation(hand, engine);
        if (report.worst_sample < 0 || dev > report.max_rel_deviation) {
            report.max_rel_deviation = dev;
            report.worst_sample = i;
        }
    }
    return report;
}

}  // namespace uvr
