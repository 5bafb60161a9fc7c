// The underwater vehicle with two internal rotors: effective inertias, the
// Legendre transform, Hamiltonians and their gradients, the reduced equations
// of motion for coincident and non-coincident centers of buoyancy and gravity,
// their rotor-free (heavy top / Kirchhoff) limits, and the Casimir functions.
#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "uvr/algebra.hpp"
#include "uvr/control.hpp"
#include "uvr/errors.hpp"
#include "uvr/poisson.hpp"
#include "uvr/state.hpp"

namespace uvr {

/// Effective inertias (I1 + J21, I2 + J12, I3 + J13 + J23): the rotor inertias
/// about the axes they do not spin around, folded into the body inertia.
inline Vec3 derive_effective_inertia(const RawInertias& raw) {
    for (int k = 0; k < 3; ++k) {
        if (!std::isfinite(raw.body[k]) || raw.body[k] <= 0.0) {
            throw ValidationError("raw_inertia.body[" + std::to_string(k) + "]", "must be > 0");
        }
        for (int i = 0; i < 2; ++i) {
            if (!std::isfinite(raw.rotor[i][k]) || raw.rotor[i][k] < 0.0) {
                throw ValidationError("raw_inertia.rotor" + std::to_string(i + 1) + "[" + std::to_string(k) + "]",
                                      "must be >= 0");
            }
        }
    }
    // Ibar_i = I_i + J_1i + J_2i - J_ii for i = 1, 2; the J_ii terms cancel.
    const Vec3 ibar{raw.body.x + raw.rotor[1].x, raw.body.y + raw.rotor[0].y,
                    raw.body.z + raw.rotor[0].z + raw.rotor[1].z};
    for (int k = 0; k < 3; ++k) {
        if (ibar[k] <= kMinPositive) {
            throw ValidationError("ibar[" + std::to_string(k) + "]", "effective inertia must be > 1e-12");
        }
    }
    return ibar;
}

/// Momenta -> velocities.
inline VelocityState legendre_inverse(const ReducedState& x, const VehicleParams& prm) {
    const Vec3& pi = x.pi();
    const Vec3& ib = prm.ibar();
    VelocityState vel;
    vel.v = {x.p().x / prm.mass().x, x.p().y / prm.mass().y, x.p().z / prm.mass().z};
    if (x.has_rotors()) {
        const Vec2& l = x.l();
        vel.omega = {(pi.x - l.a) / ib.x, (pi.y - l.b) / ib.y, pi.z / ib.z};
        vel.theta_dot = {l.a / prm.jrot().a - vel.omega.x, l.b / prm.jrot().b - vel.omega.y};
    } else {
        vel.omega = {pi.x / ib.x, pi.y / ib.y, pi.z / ib.z};
    }
    return vel;
}

struct Momenta {
    Vec3 pi;
    Vec3 p;
    Vec2 l;
};

/// Velocities -> momenta; the inverse of legendre_inverse. Without rotors
/// l is zero and theta_dot is ignored.
inline Momenta legendre_forward(const VelocityState& vel, const VehicleParams& prm,
                                bool with_rotors = true) {
    const Vec3& w = vel.omega;
    const Vec3& ib = prm.ibar();
    const Vec2& j = prm.jrot();
    Momenta m;
    if (with_rotors) m.l = {j.a * (w.x + vel.theta_dot.a), j.b * (w.y + vel.theta_dot.b)};
    m.pi = {ib.x * w.x + m.l.a, ib.y * w.y + m.l.b, ib.z * w.z};
    m.p = hadamard(prm.mass(), vel.v);
    return m;
}

/// max|forward(inverse(x)) - x| / max|x| over the momentum components.
inline double legendre_roundtrip_deviation(const ReducedState& x, const VehicleParams& prm) {
    const Momenta m = legendre_forward(legendre_inverse(x, prm), prm, x.has_rotors());
    const Vec2 l = x.has_rotors() ? x.l() : Vec2{};
    const double diff = std::fmax(std::fmax(max_abs(m.pi - x.pi()), max_abs(m.p - x.p())), max_abs(m.l - l));
    if (diff == 0.0) return 0.0;
    const double scale = std::fmax(std::fmax(max_abs(x.pi()), max_abs(x.p())), max_abs(l));
    return diff / std::fmax(scale, std::numeric_limits<double>::min());
}

/// Total energy: kinetic energy of body and rotors in momentum form, plus
/// mgh Gamma . chi for the non-coincident variants.
inline double hamiltonian(const ReducedState& x, const VehicleParams& prm) {
    const Vec3& pi = x.pi();
    const Vec3& p = x.p();
    const Vec3& ib = prm.ibar();
    const Vec3& m = prm.mass();
    double twice_kinetic = 0.0;
    if (x.has_rotors()) {
        const Vec2& l = x.l();
        const Vec2& j = prm.jrot();
        twice_kinetic = (pi.x - l.a) * (pi.x - l.a) / ib.x + (pi.y - l.b) * (pi.y - l.b) / ib.y +
                        pi.z * pi.z / ib.z + p.x * p.x / m.x + p.y * p.y / m.y + p.z * p.z / m.z +
                        l.a * l.a / j.a + l.b * l.b / j.b;
    } else {
        twice_kinetic = pi.x * pi.x / ib.x + pi.y * pi.y / ib.y + pi.z * pi.z / ib.z +
                        p.x * p.x / m.x + p.y * p.y / m.y + p.z * p.z / m.z;
    }
    double h = 0.5 * twice_kinetic;
    if (x.has_gamma()) h += prm.mgh() * dot(x.gamma(), prm.chi());
    return h;
}

/// Analytic gradient: dH/dPi = Omega, dH/dP = v, dH/dGamma = mgh chi,
/// dH/dtheta = 0, dH/dl_i = -(Pi_i - l_i)/Ibar_i + l_i/J_i.
inline Gradient grad_hamiltonian(const ReducedState& x, const VehicleParams& prm) {
    const VelocityState vel = legendre_inverse(x, prm);
    Gradient g;
    g.pi = vel.omega;
    g.p = vel.v;
    if (x.has_gamma()) g.gamma = prm.mgh() * prm.chi();
    if (x.has_rotors()) {
        const Vec2& l = x.l();
        const Vec3& pi = x.pi();
        g.l = {-(pi.x - l.a) / prm.ibar().x + l.a / prm.jrot().a,
               -(pi.y - l.b) / prm.ibar().y + l.b / prm.jrot().b};
    }
    return g;
}

/// The Hamiltonian of `variant` as a scalar field with its analytic gradient.
inline ScalarField hamiltonian_field(const VehicleParams& prm, Variant variant) {
    return ScalarField([prm](const ReducedState& x) { return hamiltonian(x, prm); },
                       [prm](const ReducedState& x) { return grad_hamiltonian(x, prm); }, variant);
}

namespace detail {

inline void require_variant(const ReducedState& x, Variant expected, const char* op) {
    if (x.variant() != expected) {
        throw VariantMismatch(std::string(op) + " expects a " + std::string(to_string(expected)) +
                              " state, got " + std::string(to_string(x.variant())));
    }
}

inline Vec2 rotor_rates(const ReducedState& x, const VehicleParams& prm) {
    const Vec3& pi = x.pi();
    const Vec2& l = x.l();
    return {-(pi.x - l.a) / prm.ibar().x + l.a / prm.jrot().a,
            -(pi.y - l.b) / prm.ibar().y + l.b / prm.jrot().b};
}

}  // namespace detail

/// Reduced controlled equations of motion, coincident centers:
///   Pi' = Pi x Omega + P x v + U_Pi
///   P'  = P x Omega + U_P
///   theta'_i = -(Pi_i - l_i)/Ibar_i + l_i/J_i + U_theta_i
///   l'  = U_l
inline StateDerivative eom_coincident(const ReducedState& x, const VehicleParams& prm,
                                      const ControlLift& lift) {
    detail::require_variant(x, Variant::Coincident, "eom_coincident");
    require_compatible(lift, x.variant());
    const VelocityState vel = legendre_inverse(x, prm);
    const CoadSE3 drift = coad_se3(vel.omega, vel.v, x.pi(), x.p());
    StateDerivative d;
    d.pi = drift.pi_dot + lift.u_pi;
    d.p = drift.p_dot + lift.u_p;
    d.theta = detail::rotor_rates(x, prm) + lift.u_theta;
    d.l = lift.u_l;
    return d;
}

/// Non-coincident centers: adds mgh Gamma x chi to Pi' and Gamma' = Gamma x Omega + U_Gamma.
inline StateDerivative eom_noncoincident(const ReducedState& x, const VehicleParams& prm,
                                         const ControlLift& lift) {
    detail::require_variant(x, Variant::NonCoincident, "eom_noncoincident");
    require_compatible(lift, x.variant());
    const VelocityState vel = legendre_inverse(x, prm);
    const CoadSE3R drift =
        coad_se3r(vel.omega, vel.v, prm.mgh() * prm.chi(), x.pi(), x.p(), x.gamma());
    StateDerivative d;
    d.pi = drift.pi_dot + lift.u_pi;
    d.p = drift.p_dot + lift.u_p;
    d.gamma = drift.gamma_dot + *lift.u_gamma;
    d.theta = detail::rotor_rates(x, prm) + lift.u_theta;
    d.l = lift.u_l;
    return d;
}

/// Rotor-free limit (heavy-top / Kirchhoff form), uncontrolled.
inline StateDerivative eom_kirchhoff(const ReducedState& x, const VehicleParams& prm) {
    if (x.has_rotors()) throw VariantMismatch("eom_kirchhoff expects a rotor-free state");
    const VelocityState vel = legendre_inverse(x, prm);
    StateDerivative d;
    if (x.has_gamma()) {
        const CoadSE3R drift =
            coad_se3r(vel.omega, vel.v, prm.mgh() * prm.chi(), x.pi(), x.p(), x.gamma());
        d.pi = drift.pi_dot;
        d.p = drift.p_dot;
        d.gamma = drift.gamma_dot;
    } else {
        const CoadSE3 drift = coad_se3(vel.omega, vel.v, x.pi(), x.p());
        d.pi = drift.pi_dot;
        d.p = drift.p_dot;
    }
    return d;
}

/// Equations of motion for whichever variant `x` belongs to.
inline StateDerivative eom(const ReducedState& x, const VehicleParams& prm, const ControlLift& lift) {
    switch (x.variant()) {
    case Variant::Coincident: return eom_coincident(x, prm, lift);
    case Variant::NonCoincident: return eom_noncoincident(x, prm, lift);
    case Variant::KirchhoffCoincident:
    case Variant::KirchhoffNonCoincident: {
        require_compatible(lift, x.variant());
        StateDerivative d = eom_kirchhoff(x, prm);
        d.pi = d.pi + lift.u_pi;
        d.p = d.p + lift.u_p;
        if (lift.u_gamma) d.gamma = d.gamma + *lift.u_gamma;
        return d;
    }
    }
    throw VariantMismatch("unknown variant");
}

struct Casimir {
    std::string_view name;
    std::string_view column;  // CSV column name
    double value;
};

/// Casimir functions of the coalgebra the state lives on:
/// se(3)*: |P|^2, Pi.P; se(3)* ⊛ R^3: |P|^2, |Gamma|^2, P.Gamma.
inline std::vector<Casimir> casimirs(const ReducedState& x) {
    if (x.has_gamma()) {
        return {{"|P|^2", "C_PP", dot(x.p(), x.p())},
                {"|Gamma|^2", "C_GG", dot(x.gamma(), x.gamma())},
                {"P.Gamma", "C_PG", dot(x.p(), x.gamma())}};
    }
    return {{"|P|^2", "C_PP", dot(x.p(), x.p())}, {"Pi.P", "C_PiP", dot(x.pi(), x.p())}};
}

struct NamedField {
    std::string_view name;
    ScalarField field;
};

/// The Casimirs as scalar fields with analytic gradients.
inline std::vector<NamedField> casimir_fields(Variant v) {
    ScalarField pp([](const ReducedState& x) { return dot(x.p(), x.p()); },
                   [](const ReducedState& x) {
                       Gradient g;
                       g.p = 2.0 * x.p();
                       return g;
                   });
    if (has_gamma(v)) {
        ScalarField gg([](const ReducedState& x) { return dot(x.gamma(), x.gamma()); },
                       [](const ReducedState& x) {
                           Gradient g;
                           g.gamma = 2.0 * x.gamma();
                           return g;
                       });
        ScalarField pg([](const ReducedState& x) { return dot(x.p(), x.gamma()); },
                       [](const ReducedState& x) {
                           Gradient g;
                           g.p = x.gamma();
                           g.gamma = x.p();
                           return g;
                       });
        return {{"|P|^2", pp}, {"|Gamma|^2", gg}, {"P.Gamma", pg}};
    }
    ScalarField pip([](const ReducedState& x) { return dot(x.pi(), x.p()); },
                    [](const ReducedState& x) {
                        Gradient g;
                        g.pi = x.p();
                        g.p = x.pi();
                        return g;
                    });
    return {{"|P|^2", pp}, {"Pi.P", pip}};
}

}  // namespace uvr
