// Poisson bracket engines on se(3)* x T*R^2 and (se(3)* ⊛ R^3) x T*R^2, and the
// Hamiltonian vector field they generate.
//
// The bracket used throughout is the (-) Lie-Poisson bracket plus the canonical
// bracket on the rotor variables:
//
//   {F,K} = -Pi . (dF/dPi x dK/dPi)
//           - P . (dF/dPi x dK/dP - dK/dPi x dF/dP)
//           - Gamma . (dF/dPi x dK/dGamma - dK/dPi x dF/dGamma)     [Gamma variants]
//           + sum_i (dF/dtheta_i dK/dl_i - dK/dtheta_i dF/dl_i)     [rotor variants]
//
// The vector field of H is obtained by bracketing each coordinate function with
// H, independently of the hand-written equations of motion in systems.hpp.
#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "uvr/algebra.hpp"
#include "uvr/errors.hpp"
#include "uvr/state.hpp"

namespace uvr {

/// Default relative finite-difference step: h_i = 1e-6 * max(1, |x_i|).
inline constexpr double kDefaultFdStep = 1e-6;

/// A smooth function on the reduced space, optionally with an analytic gradient.
/// Fields without one are differentiated by central differences.
class ScalarField {
public:
    using ValueFn = std::function<double(const ReducedState&)>;
    using GradientFn = std::function<Gradient(const ReducedState&)>;

    explicit ScalarField(ValueFn value, GradientFn gradient = {},
                         std::optional<Variant> domain = std::nullopt)
        : value_(std::move(value)), gradient_(std::move(gradient)), domain_(domain) {}

    double operator()(const ReducedState& x) const { return value_(x); }

    bool has_gradient() const noexcept { return static_cast<bool>(gradient_); }

    /// The variant this field is defined on, if it is restricted to one.
    const std::optional<Variant>& domain() const noexcept { return domain_; }

    /// Same field with the analytic gradient dropped, forcing the FD route.
    ScalarField without_gradient() const { return ScalarField(value_, {}, domain_); }

    Gradient gradient(const ReducedState& x, double fd_step = kDefaultFdStep) const;

private:
    ValueFn value_;
    GradientFn gradient_;
    std::optional<Variant> domain_;
};

/// Central-difference gradient over the active coordinates of `x`; the step
/// for coordinate i is rel_step * max(1, |x_i|). Error is O(h^2).
inline Gradient fd_gradient(const ScalarField& f, const ReducedState& x,
                            double rel_step = kDefaultFdStep) {
    if (!(rel_step > 0.0)) throw GradientError("finite-difference step must be positive");
    Gradient g;
    for (int i = 0; i < kCoordCount; ++i) {
        const Coord c = static_cast<Coord>(i);
        if (!is_active(x.variant(), c)) continue;
        const double xi = x[c];
        const double h = rel_step * std::fmax(1.0, std::fabs(xi));
        const double up = xi + h;
        const double down = xi - h;
        const double f_up = f(x.with(c, up));
        const double f_down = f(x.with(c, down));
        if (!std::isfinite(f_up) || !std::isfinite(f_down)) {
            throw GradientError("non-finite field value at finite-difference probe of coordinate " +
                                std::to_string(i));
        }
        // divide by the representable step actually taken
        g[c] = (f_up - f_down) / (up - down);
    }
    return g;
}

inline Gradient ScalarField::gradient(const ReducedState& x, double fd_step) const {
    if (!gradient_) return fd_gradient(*this, x, fd_step);
    Gradient g = gradient_(x);
    if (!is_finite(g)) throw GradientError("analytic gradient is non-finite");
    return g;
}

namespace field {

/// The coordinate function x -> x[c].
inline ScalarField coordinate(Coord c) {
    return ScalarField([c](const ReducedState& x) { return x[c]; },
                       [c](const ReducedState&) { return Gradient::unit(c); });
}

inline ScalarField constant(double value) {
    return ScalarField([value](const ReducedState&) { return value; },
                       [](const ReducedState&) { return Gradient{}; });
}

/// Pointwise product F*G; analytic gradient by the product rule when both
/// factors have one.
inline ScalarField product(const ScalarField& f, const ScalarField& g) {
    ScalarField::ValueFn value = [f, g](const ReducedState& x) { return f(x) * g(x); };
    if (!f.has_gradient() || !g.has_gradient()) return ScalarField(std::move(value));
    return ScalarField(std::move(value), [f, g](const ReducedState& x) {
        return f(x) * g.gradient(x) + g(x) * f.gradient(x);
    });
}

inline ScalarField sum(const ScalarField& f, const ScalarField& g) {
    ScalarField::ValueFn value = [f, g](const ReducedState& x) { return f(x) + g(x); };
    if (!f.has_gradient() || !g.has_gradient()) return ScalarField(std::move(value));
    return ScalarField(std::move(value), [f, g](const ReducedState& x) {
        return f.gradient(x) + g.gradient(x);
    });
}

}  // namespace field

/// Combined bracket evaluated from gradients at `x`. Gamma and rotor terms
/// are included according to the variant of `x`.
inline double poisson_bracket(const Gradient& df, const Gradient& dk, const ReducedState& x) {
    double r = -dot(x.pi(), cross(df.pi, dk.pi)) - dot(x.p(), cross(df.pi, dk.p) - cross(dk.pi, df.p));
    if (x.has_gamma()) r -= dot(x.gamma(), cross(df.pi, dk.gamma) - cross(dk.pi, df.gamma));
    if (x.has_rotors()) {
        for (int i = 0; i < 2; ++i) r += df.theta[i] * dk.l[i] - dk.theta[i] * df.l[i];
    }
    return r;
}

namespace detail {

inline double checked_bracket(const ScalarField& f, const ScalarField& k, const ReducedState& x) {
    const Gradient df = f.gradient(x);
    const Gradient dk = k.gradient(x);
    if (!is_finite(df) || !is_finite(dk)) throw GradientError("non-finite gradient in bracket");
    return poisson_bracket(df, dk, x);
}

}  // namespace detail

/// {F,K} on se(3)* x T*R^2 (coincident centers); also accepts rotor-free states.
inline double bracket_se3(const ScalarField& f, const ScalarField& k, const ReducedState& x) {
    if (x.has_gamma()) throw VariantMismatch("bracket_se3 requires a coincident-center state");
    return detail::checked_bracket(f, k, x);
}

/// {F,K} on (se(3)* ⊛ R^3) x T*R^2 (non-coincident centers).
inline double bracket_se3r(const ScalarField& f, const ScalarField& k, const ReducedState& x) {
    if (!x.has_gamma()) throw VariantMismatch("bracket_se3r requires a non-coincident state");
    return detail::checked_bracket(f, k, x);
}

/// Bracket for whichever coalgebra `x` lives on.
inline double bracket(const ScalarField& f, const ScalarField& k, const ReducedState& x) {
    return detail::checked_bracket(f, k, x);
}

/// X_H(x) from a gradient of H: component c is {x_c, H}(x). Inactive
/// components are zero.
inline StateDerivative ham_vector_field(const Gradient& dh, const ReducedState& x) {
    StateDerivative out;
    for (int i = 0; i < kCoordCount; ++i) {
        const Coord c = static_cast<Coord>(i);
        if (!is_active(x.variant(), c)) continue;
        out[c] = poisson_bracket(Gradient::unit(c), dh, x);
    }
    return out;
}

inline StateDerivative ham_vector_field(const ScalarField& h, const ReducedState& x,
                                        double fd_step = kDefaultFdStep) {
    if (h.domain() && *h.domain() != x.variant()) {
        throw VariantMismatch("Hamiltonian defined on " + std::string(to_string(*h.domain())) +
                              " evaluated at a " + std::string(to_string(x.variant())) + " state");
    }
    const Gradient dh = h.gradient(x, fd_step);
    if (!is_finite(dh)) throw GradientError("non-finite Hamiltonian gradient");
    return ham_vector_field(dh, x);
}

/// An affine function c + <coeff, x>. Brackets of affine functions are affine,
/// so nested brackets of coordinate functions stay in closed form.
struct AffineFunction {
    Gradient coeff;
    double constant = 0.0;

    double operator()(const ReducedState& x) const {
        double v = constant;
        for (int i = 0; i < kCoordCount; ++i) v += coeff[Coord(i)] * x[Coord(i)];
        return v;
    }

    ScalarField to_field() const {
        return ScalarField([*this](const ReducedState& x) { return (*this)(x); },
                           [c = coeff](const ReducedState&) { return c; });
    }
};

/// {F,K} for affine F, K as an affine function on the given variant.
inline AffineFunction bracket_affine(const AffineFunction& f, const AffineFunction& k, Variant v) {
    const Gradient& a = f.coeff;
    const Gradient& b = k.coeff;
    AffineFunction out;
    out.coeff.pi = -cross(a.pi, b.pi);
    out.coeff.p = -(cross(a.pi, b.p) - cross(b.pi, a.p));
    if (has_gamma(v)) out.coeff.gamma = -(cross(a.pi, b.gamma) - cross(b.pi, a.gamma));
    if (has_rotors(v)) out.constant = dot(a.theta, b.l) - dot(b.theta, a.l);
    return out;
}

}  // namespace uvr
