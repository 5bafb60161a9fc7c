// Control lifts injected additively into the reduced equations of motion, and
// the laws that produce them.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "uvr/algebra.hpp"
#include "uvr/errors.hpp"
#include "uvr/state.hpp"

namespace uvr {

/// Fiber components (U_Pi, U_P, [U_Gamma], U_theta, U_l) of the vertical lift
/// of the control. `u_gamma` is present exactly for the non-coincident variants.
struct ControlLift {
    Vec3 u_pi;
    Vec3 u_p;
    std::optional<Vec3> u_gamma;
    Vec2 u_theta;
    Vec2 u_l;

    static ControlLift zero(Variant v) {
        ControlLift lift;
        if (has_gamma(v)) lift.u_gamma = Vec3{};
        return lift;
    }

    bool is_finite() const {
        return uvr::is_finite(u_pi) && uvr::is_finite(u_p) && uvr::is_finite(u_theta) &&
               uvr::is_finite(u_l) && (!u_gamma || uvr::is_finite(*u_gamma));
    }

    /// True when the lift touches any of Pi, P or Gamma, i.e. can move the
    /// state off its coadjoint orbit.
    bool acts_on_coalgebra() const {
        return u_pi != Vec3{} || u_p != Vec3{} || (u_gamma && *u_gamma != Vec3{});
    }

    /// The lift as a derivative-shaped vector (absent U_Gamma reads as zero).
    StateDerivative as_derivative() const {
        return {u_pi, u_p, u_gamma.value_or(Vec3{}), u_theta, u_l};
    }

    friend bool operator==(const ControlLift&, const ControlLift&) = default;
};

/// Throws VariantMismatch unless `lift` is shaped for `v`.
inline void require_compatible(const ControlLift& lift, Variant v) {
    if (lift.u_gamma.has_value() != has_gamma(v)) {
        throw VariantMismatch(has_gamma(v) ? "lift lacks U_Gamma for a non-coincident variant"
                                           : "lift carries U_Gamma for a coincident variant");
    }
    if (!has_rotors(v) && (lift.u_theta != Vec2{} || lift.u_l != Vec2{})) {
        throw VariantMismatch("rotor-free variant cannot take U_theta or U_l");
    }
    if (!lift.is_finite()) throw ValidationError("lift", "non-finite component");
}

struct ZeroLaw {};

struct ConstantLaw {
    ControlLift lift;
};

/// Proportional rotor-momentum feedback: U_l = -gain ⊙ (l - l_ref), all other
/// components zero.
struct RotorFeedback {
    Vec2 gain;
    Vec2 l_ref;
};

/// Piecewise-linear lift schedule over strictly increasing times, held
/// constant outside its range.
class TableLookup {
public:
    struct Sample {
        double t;
        ControlLift lift;
    };

    explicit TableLookup(std::vector<Sample> samples) : samples_(std::move(samples)) {
        if (samples_.empty()) throw ValidationError("control.samples", "table must not be empty");
        for (std::size_t i = 0; i < samples_.size(); ++i) {
            const std::string field = "control.samples[" + std::to_string(i) + "]";
            if (!std::isfinite(samples_[i].t)) throw ValidationError(field + ".t", "non-finite time");
            if (!samples_[i].lift.is_finite()) throw ValidationError(field, "non-finite lift");
            if (samples_[i].lift.u_gamma.has_value() != samples_[0].lift.u_gamma.has_value()) {
                throw ValidationError(field, "inconsistent presence of u_gamma across samples");
            }
            if (i > 0 && !(samples_[i].t > samples_[i - 1].t)) {
                throw ValidationError(field + ".t", "times must be strictly increasing");
            }
        }
    }

    const std::vector<Sample>& samples() const noexcept { return samples_; }

    ControlLift at(double t) const {
        if (samples_.empty()) throw ValidationError("control.samples", "table must not be empty");
        if (t <= samples_.front().t) return samples_.front().lift;
        if (t >= samples_.back().t) return samples_.back().lift;
        auto hi = std::upper_bound(samples_.begin(), samples_.end(), t,
                                   [](double v, const Sample& s) { return v < s.t; });
        auto lo = hi - 1;
        const double w = (t - lo->t) / (hi->t - lo->t);
        const auto lerp3 = [w](const Vec3& a, const Vec3& b) { return a + w * (b - a); };
        const auto lerp2 = [w](const Vec2& a, const Vec2& b) { return a + w * (b - a); };
        ControlLift out;
        out.u_pi = lerp3(lo->lift.u_pi, hi->lift.u_pi);
        out.u_p = lerp3(lo->lift.u_p, hi->lift.u_p);
        if (lo->lift.u_gamma) out.u_gamma = lerp3(*lo->lift.u_gamma, *hi->lift.u_gamma);
        out.u_theta = lerp2(lo->lift.u_theta, hi->lift.u_theta);
        out.u_l = lerp2(lo->lift.u_l, hi->lift.u_l);
        return out;
    }

private:
    std::vector<Sample> samples_;
};

using ControlLaw = std::variant<ZeroLaw, ConstantLaw, RotorFeedback, TableLookup>;

/// Lift produced by `law` at time t and state x.
inline ControlLift evaluate(const ControlLaw& law, double t, const ReducedState& x) {
    ControlLift lift = std::visit(
        [&](const auto& l) -> ControlLift {
            using L = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<L, ZeroLaw>) {
                return ControlLift::zero(x.variant());
            } else if constexpr (std::is_same_v<L, ConstantLaw>) {
                return l.lift;
            } else if constexpr (std::is_same_v<L, RotorFeedback>) {
                if (!x.has_rotors()) throw VariantMismatch("rotor feedback on a rotor-free state");
                ControlLift out = ControlLift::zero(x.variant());
                out.u_l = -hadamard(l.gain, x.l() - l.l_ref);
                return out;
            } else {
                return l.at(t);
            }
        },
        law);
    require_compatible(lift, x.variant());
    return lift;
}

/// True when every lift the law can produce leaves Pi, P and Gamma untouched.
inline bool preserves_casimirs(const ControlLaw& law) {
    return std::visit(
        [](const auto& l) {
            using L = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<L, ZeroLaw> || std::is_same_v<L, RotorFeedback>) {
                return true;
            } else if constexpr (std::is_same_v<L, ConstantLaw>) {
                return !l.lift.acts_on_coalgebra();
            } else {
                return std::none_of(l.samples().begin(), l.samples().end(),
                                    [](const auto& s) { return s.lift.acts_on_coalgebra(); });
            }
        },
        law);
}

/// True when the law cannot change the energy: no component other than
/// U_theta is ever nonzero (theta does not enter H).
inline bool preserves_energy(const ControlLaw& law) {
    return std::visit(
        [](const auto& l) {
            using L = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<L, ZeroLaw>) {
                return true;
            } else if constexpr (std::is_same_v<L, RotorFeedback>) {
                return false;
            } else if constexpr (std::is_same_v<L, ConstantLaw>) {
                return !l.lift.acts_on_coalgebra() && l.lift.u_l == Vec2{};
            } else {
                return std::none_of(l.samples().begin(), l.samples().end(), [](const auto& s) {
                    return s.lift.acts_on_coalgebra() || s.lift.u_l != Vec2{};
                });
            }
        },
        law);
}

}  // namespace uvr
