// Fixed-step integrators (classical RK4, implicit midpoint) and trajectory
// recording with energy and Casimir monitors.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uvr/control.hpp"
#include "uvr/errors.hpp"
#include "uvr/state.hpp"
#include "uvr/systems.hpp"

namespace uvr {

enum class Method { Rk4, ImplicitMidpoint };

constexpr std::string_view to_string(Method m) {
    return m == Method::Rk4 ? "rk4" : "implicit_midpoint";
}

inline std::optional<Method> parse_method(std::string_view s) {
    if (s == "rk4") return Method::Rk4;
    if (s == "implicit_midpoint" || s == "implicit-midpoint" || s == "midpoint") {
        return Method::ImplicitMidpoint;
    }
    return std::nullopt;
}

struct IntegratorSpec {
    Method method = Method::Rk4;
    double dt = 1e-3;
    double t_end = 1.0;
    double tolerance = 1e-12;  // midpoint fixed-point tolerance, max-norm
    int max_iterations = 50;   // midpoint fixed-point iteration cap
    int decimation = 1;        // record every n-th step (the final step is always recorded)

    void validate() const {
        if (!std::isfinite(dt) || dt <= 0.0) throw ValidationError("integrator.dt", "must be > 0");
        if (!std::isfinite(t_end) || t_end < 0.0) {
            throw ValidationError("integrator.t_end", "must be >= 0");
        }
        if (t_end > 0.0 && dt > t_end) throw ValidationError("integrator.dt", "must not exceed t_end");
        if (!(tolerance > 0.0)) throw ValidationError("integrator.tolerance", "must be > 0");
        if (max_iterations < 1) throw ValidationError("integrator.max_iterations", "must be >= 1");
        if (decimation < 1) throw ValidationError("output.decimation", "must be >= 1");
    }

    friend bool operator==(const IntegratorSpec&, const IntegratorSpec&) = default;
};

namespace detail {

inline StateDerivative checked_rhs(const ReducedState& x, double t, const VehicleParams& prm,
                                   const ControlLaw& law, const char* stage) {
    StateDerivative d = eom(x, prm, evaluate(law, t, x));
    if (!is_finite(d)) {
        throw IntegrationError(std::string("non-finite derivative at ") + stage, t);
    }
    return d;
}

inline ReducedState checked_advance(const ReducedState& x, double h, const StateDerivative& d,
                                    double t, const char* stage) {
    try {
        return x.advanced(h, d);
    } catch (const ValidationError&) {
        throw IntegrationError(std::string("state overflow after ") + stage, t);
    }
}

}  // namespace detail

/// One classical Runge-Kutta step. The law is sampled at t, t+dt/2, t+dt/2, t+dt.
inline ReducedState step_rk4(const ReducedState& x, double t, double dt, const VehicleParams& prm,
                             const ControlLaw& law) {
    const double half = 0.5 * dt;
    const StateDerivative k1 = detail::checked_rhs(x, t, prm, law, "rk4 stage 1");
    const StateDerivative k2 = detail::checked_rhs(
        detail::checked_advance(x, half, k1, t, "rk4 stage 1"), t + half, prm, law, "rk4 stage 2");
    const StateDerivative k3 = detail::checked_rhs(
        detail::checked_advance(x, half, k2, t, "rk4 stage 2"), t + half, prm, law, "rk4 stage 3");
    const StateDerivative k4 = detail::checked_rhs(
        detail::checked_advance(x, dt, k3, t, "rk4 stage 3"), t + dt, prm, law, "rk4 stage 4");
    return detail::checked_advance(x, dt / 6.0, k1 + 2.0 * k2 + 2.0 * k3 + k4, t, "rk4 update");
}

struct MidpointStep {
    ReducedState state;
    int iterations;
    double residual;  // max-norm change of the last fixed-point update
};

/// One implicit midpoint step y = x + dt f(t + dt/2, (x + y)/2), solved by
/// fixed-point iteration until successive iterates differ by < tolerance.
inline MidpointStep step_midpoint(const ReducedState& x, double t, double dt,
                                  const VehicleParams& prm, const ControlLaw& law,
                                  double tolerance = 1e-12, int max_iterations = 50) {
    const double tm = t + 0.5 * dt;
    ReducedState y = detail::checked_advance(
        x, dt, detail::checked_rhs(x, tm, prm, law, "midpoint predictor"), t, "midpoint predictor");
    double residual = 0.0;
    for (int it = 1; it <= max_iterations; ++it) {
        const ReducedState mid = detail::checked_advance(x, 0.5, y - x, t, "midpoint average");
        ReducedState next = detail::checked_advance(
            x, dt, detail::checked_rhs(mid, tm, prm, law, "midpoint iteration"), t,
            "midpoint iteration");
        residual = max_abs(next - y);
        y = next;
        if (residual < tolerance) return {y, it, residual};
    }
    throw IntegrationError("implicit midpoint did not converge in " + std::to_string(max_iterations) +
                               " iterations (residual " + std::to_string(residual) + ")",
                           t, residual);
}

struct Sample {
    double t;
    ReducedState state;
    double energy;
    std::vector<double> casimirs;  // in the order of casimirs(state)
};

struct Trajectory {
    std::vector<Sample> samples;
    VehicleParams params;
    ControlLaw law;
    IntegratorSpec spec;
    long step_count = 0;
    long midpoint_iterations_total = 0;
    int midpoint_iterations_max = 0;
    std::vector<double> max_step_casimir_defect;  // max over steps of |C(k+1) - C(k)|
};

namespace detail {

inline std::vector<double> casimir_values(const ReducedState& x) {
    std::vector<double> out;
    for (const Casimir& c : casimirs(x)) out.push_back(c.value);
    return out;
}

/// Number of steps and the length of the last one. A trailing partial step
/// is used when t_end is not a whole multiple of dt.
struct StepPlan {
    long full_steps;
    double last_dt;  // 0 when there is no partial step
};

inline StepPlan plan_steps(double dt, double t_end) {
    if (t_end == 0.0) return {0, 0.0};
    const double ratio = t_end / dt;
    const double nearest = std::round(ratio);
    if (std::fabs(ratio - nearest) <= 1e-9 * std::fmax(1.0, ratio)) {
        return {static_cast<long>(nearest), 0.0};
    }
    const long whole = static_cast<long>(std::floor(ratio));
    return {whole, t_end - static_cast<double>(whole) * dt};
}

}  // namespace detail

/// Integrates from t = 0 to spec.t_end, recording energy and Casimirs.
inline Trajectory integrate(const ReducedState& initial, const VehicleParams& prm,
                            const ControlLaw& law, const IntegratorSpec& spec) {
    spec.validate();
    Trajectory traj{{}, prm, law, spec, 0, 0, 0, {}};
    const auto record = [&](double t, const ReducedState& x) {
        traj.samples.push_back({t, x, hamiltonian(x, prm), detail::casimir_values(x)});
    };

    std::vector<double> prev_c = detail::casimir_values(initial);
    traj.max_step_casimir_defect.assign(prev_c.size(), 0.0);
    record(0.0, initial);

    const detail::StepPlan plan = detail::plan_steps(spec.dt, spec.t_end);
    const long total = plan.full_steps + (plan.last_dt > 0.0 ? 1 : 0);
    ReducedState x = initial;
    for (long k = 0; k < total; ++k) {
        const double t = static_cast<double>(k) * spec.dt;
        const bool last = k + 1 == total;
        const double h = (last && plan.last_dt > 0.0) ? plan.last_dt : spec.dt;
        try {
            if (spec.method == Method::Rk4) {
                x = step_rk4(x, t, h, prm, law);
            } else {
                MidpointStep s = step_midpoint(x, t, h, prm, law, spec.tolerance, spec.max_iterations);
                x = s.state;
                traj.midpoint_iterations_total += s.iterations;
                traj.midpoint_iterations_max = std::max(traj.midpoint_iterations_max, s.iterations);
            }
        } catch (const IntegrationError& e) {
            throw IntegrationError(std::string(e.what()) + " (step starting at t=" +
                                       std::to_string(t) + ")",
                                   t, e.residual());
        }
        ++traj.step_count;

        const std::vector<double> c = detail::casimir_values(x);
        for (std::size_t i = 0; i < c.size(); ++i) {
            traj.max_step_casimir_defect[i] =
                std::max(traj.max_step_casimir_defect[i], std::fabs(c[i] - prev_c[i]));
        }
        prev_c = c;

        if (last || (k + 1) % spec.decimation == 0) {
            record(last ? spec.t_end : static_cast<double>(k + 1) * spec.dt, x);
        }
    }
    return traj;
}

/// Conservation summary of a recorded trajectory.
struct DriftReport {
    double energy_initial = 0.0;
    double energy_final = 0.0;
    double energy_max_abs_drift = 0.0;
    double energy_max_rel_drift = 0.0;  // |H(t) - H(0)| / max(1, |H(0)|)
    std::vector<std::string_view> casimir_names;
    std::vector<double> casimir_max_drift;  // max |C(t) - C(0)|
};

inline DriftReport drift_report(const Trajectory& traj) {
    DriftReport r;
    if (traj.samples.empty()) return r;
    const Sample& first = traj.samples.front();
    r.energy_initial = first.energy;
    r.energy_final = traj.samples.back().energy;
    for (const Casimir& c : casimirs(first.state)) r.casimir_names.push_back(c.name);
    r.casimir_max_drift.assign(first.casimirs.size(), 0.0);
    const double scale = std::fmax(1.0, std::fabs(first.energy));
    for (const Sample& s : traj.samples) {
        const double de = std::fabs(s.energy - first.energy);
        r.energy_max_abs_drift = std::max(r.energy_max_abs_drift, de);
        r.energy_max_rel_drift = std::max(r.energy_max_rel_drift, de / scale);
        for (std::size_t i = 0; i < s.casimirs.size(); ++i) {
            r.casimir_max_drift[i] =
                std::max(r.casimir_max_drift[i], std::fabs(s.casimirs[i] - first.casimirs[i]));
        }
    }
    return r;
}

}  // namespace uvr
