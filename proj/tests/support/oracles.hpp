// Independent reference computations used by the tests. Nothing here calls
// the library's cross products, brackets or equations of motion; every
// formula is written out component by component.
#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "uvr/uvr.hpp"

namespace oracle {

using uvr::Vec2;
using uvr::Vec3;

/// Component form of the reduced equations of motion, coincident and
/// non-coincident (gravity/Gamma terms only when the state has Gamma).
inline uvr::StateDerivative hand_eom(const uvr::ReducedState& x, const uvr::VehicleParams& prm,
                                     const uvr::ControlLift& u) {
    const double P1 = x.pi().x, P2 = x.pi().y, P3 = x.pi().z;
    const double p1 = x.p().x, p2 = x.p().y, p3 = x.p().z;
    const double I1 = prm.ibar().x, I2 = prm.ibar().y, I3 = prm.ibar().z;
    const double m1 = prm.mass().x, m2 = prm.mass().y, m3 = prm.mass().z;
    const double l1 = x.has_rotors() ? x.l().a : 0.0;
    const double l2 = x.has_rotors() ? x.l().b : 0.0;
    const double w1 = (P1 - l1) / I1, w2 = (P2 - l2) / I2, w3 = P3 / I3;
    const double v1 = p1 / m1, v2 = p2 / m2, v3 = p3 / m3;

    uvr::StateDerivative d;
    d.pi = {P2 * w3 - P3 * w2 + p2 * v3 - p3 * v2 + u.u_pi.x,
            P3 * w1 - P1 * w3 + p3 * v1 - p1 * v3 + u.u_pi.y,
            P1 * w2 - P2 * w1 + p1 * v2 - p2 * v1 + u.u_pi.z};
    d.p = {p2 * w3 - p3 * w2 + u.u_p.x, p3 * w1 - p1 * w3 + u.u_p.y, p1 * w2 - p2 * w1 + u.u_p.z};
    if (x.has_gamma()) {
        const double g1 = x.gamma().x, g2 = x.gamma().y, g3 = x.gamma().z;
        const double c1 = prm.chi().x, c2 = prm.chi().y, c3 = prm.chi().z;
        const double mgh = prm.mgh();
        d.pi = d.pi + Vec3{mgh * (g2 * c3 - g3 * c2), mgh * (g3 * c1 - g1 * c3), mgh * (g1 * c2 - g2 * c1)};
        const Vec3 ug = u.u_gamma.value_or(Vec3{});
        d.gamma = {g2 * w3 - g3 * w2 + ug.x, g3 * w1 - g1 * w3 + ug.y, g1 * w2 - g2 * w1 + ug.z};
    }
    if (x.has_rotors()) {
        const double J1 = prm.jrot().a, J2 = prm.jrot().b;
        d.theta = {-(P1 - l1) / I1 + l1 / J1 + u.u_theta.a, -(P2 - l2) / I2 + l2 / J2 + u.u_theta.b};
        d.l = u.u_l;
    }
    return d;
}

/// Rows 1-6 (coincident) or 1-9 (non-coincident) of the HJ residual
/// assembled from the bracket engine: the vector field of H with momenta
/// replaced by the one-form values, evaluated at the sample state, plus U.
inline std::vector<double> hj_bracket_rows(const uvr::ReducedState& x, const uvr::OneForm& g,
                                           const std::vector<double>& u, const uvr::VehicleParams& prm) {
    const Vec3 pi_slot{g[0], g[1], g[2]};
    const Vec3 p_slot{g[3], g[4], g[5]};
    const Vec2 l_slot{g[8], g[9]};
    const uvr::ReducedState at_slots =
        x.has_gamma() ? uvr::ReducedState::noncoincident(pi_slot, p_slot, x.gamma(), {}, l_slot)
                      : uvr::ReducedState::coincident(pi_slot, p_slot, {}, l_slot);
    const uvr::Gradient dh = uvr::grad_hamiltonian(at_slots, prm);
    const uvr::StateDerivative vf = uvr::ham_vector_field(dh, x);
    std::vector<double> rows;
    for (int k = 0; k < 3; ++k) rows.push_back(vf.pi[k] + u[k]);
    for (int k = 0; k < 3; ++k) rows.push_back(vf.p[k] + u[3 + k]);
    if (x.has_gamma()) {
        for (int k = 0; k < 3; ++k) rows.push_back(vf.gamma[k] + u[6 + k]);
    }
    return rows;
}

/// A pool of monomials in the coordinates of a variant: coordinates,
/// pairwise products and a few cubic terms, all with analytic gradients.
inline std::vector<uvr::ScalarField> monomial_pool(uvr::Variant v) {
    std::vector<uvr::Coord> active;
    for (int i = 0; i < uvr::kCoordCount; ++i) {
        if (uvr::is_active(v, uvr::Coord(i))) active.push_back(uvr::Coord(i));
    }
    std::vector<uvr::ScalarField> pool;
    for (uvr::Coord c : active) pool.push_back(uvr::field::coordinate(c));
    for (std::size_t i = 0; i < active.size(); i += 2) {
        for (std::size_t j = i; j < active.size(); j += 3) {
            pool.push_back(uvr::field::product(uvr::field::coordinate(active[i]),
                                               uvr::field::coordinate(active[j])));
        }
    }
    for (std::size_t i = 0; i + 2 < active.size(); i += 4) {
        pool.push_back(uvr::field::product(
            uvr::field::coordinate(active[i]),
            uvr::field::product(uvr::field::coordinate(active[i + 1]), uvr::field::coordinate(active[i + 2]))));
    }
    return pool;
}

/// Active coordinates of a variant.
inline std::vector<uvr::Coord> active_coords(uvr::Variant v) {
    std::vector<uvr::Coord> out;
    for (int i = 0; i < uvr::kCoordCount; ++i) {
        if (uvr::is_active(v, uvr::Coord(i))) out.push_back(uvr::Coord(i));
    }
    return out;
}

inline uvr::AffineFunction coordinate_affine(uvr::Coord c) {
    return {uvr::Gradient::unit(c), 0.0};
}

/// Cyclic Jacobi sum {f,{g,h}} + {g,{h,f}} + {h,{f,g}} evaluated at x, with
/// inner brackets kept in closed affine form.
inline double jacobi_sum(const uvr::AffineFunction& f, const uvr::AffineFunction& g,
                         const uvr::AffineFunction& h, const uvr::ReducedState& x) {
    const uvr::Variant v = x.variant();
    const auto outer = [&](const uvr::AffineFunction& a, const uvr::AffineFunction& inner) {
        return uvr::bracket(a.to_field(), inner.to_field(), x);
    };
    return outer(f, uvr::bracket_affine(g, h, v)) + outer(g, uvr::bracket_affine(h, f, v)) +
           outer(h, uvr::bracket_affine(f, g, v));
}

/// Coincident state in extended precision: Pi, P, theta, l.
struct WideState {
    std::array<long double, 10> c{};
};

/// Classical RK4 in long double for the coincident model with U = 0,
/// written out componentwise. Used as a reference whose own roundoff stays
/// far below the double-precision truncation errors being measured.
inline WideState rk4_wide(const uvr::ReducedState& x0, const uvr::VehicleParams& prm, long double t_end, long steps) {
    const long double I[3] = {prm.ibar().x, prm.ibar().y, prm.ibar().z};
    const long double m[3] = {prm.mass().x, prm.mass().y, prm.mass().z};
    const long double J[2] = {prm.jrot().a, prm.jrot().b};
    const auto rhs = [&](const std::array<long double, 10>& s) {
        const long double w[3] = {(s[0] - s[8]) / I[0], (s[1] - s[9]) / I[1], s[2] / I[2]};
        const long double v[3] = {s[3] / m[0], s[4] / m[1], s[5] / m[2]};
        std::array<long double, 10> d{};
        for (int k = 0; k < 3; ++k) {
            const int a = (k + 1) % 3, b = (k + 2) % 3;
            d[k] = s[a] * w[b] - s[b] * w[a] + s[3 + a] * v[b] - s[3 + b] * v[a];
            d[3 + k] = s[3 + a] * w[b] - s[3 + b] * w[a];
        }
        d[6] = -(s[0] - s[8]) / I[0] + s[8] / J[0];
        d[7] = -(s[1] - s[9]) / I[1] + s[9] / J[1];
        return d;
    };
    const auto axpy = [](const std::array<long double, 10>& s, long double a, const std::array<long double, 10>& d) {
        std::array<long double, 10> r = s;
        for (int i = 0; i < 10; ++i) r[i] += a * d[i];
        return r;
    };
    WideState x;
    x.c = {x0.pi().x, x0.pi().y, x0.pi().z, x0.p().x, x0.p().y, x0.p().z,
           x0.theta().a, x0.theta().b, x0.l().a, x0.l().b};
    const long double h = t_end / steps;
    for (long n = 0; n < steps; ++n) {
        const auto k1 = rhs(x.c);
        const auto k2 = rhs(axpy(x.c, h / 2, k1));
        const auto k3 = rhs(axpy(x.c, h / 2, k2));
        const auto k4 = rhs(axpy(x.c, h, k3));
        for (int i = 0; i < 10; ++i) x.c[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    return x;
}

/// max |x - ref| over all ten coordinates, evaluated in long double.
inline double wide_error(const uvr::ReducedState& x, const WideState& ref) {
    const long double c[10] = {x.pi().x, x.pi().y, x.pi().z, x.p().x, x.p().y, x.p().z,
                               x.theta().a, x.theta().b, x.l().a, x.l().b};
    long double e = 0;
    for (int i = 0; i < 10; ++i) e = std::fmax(e, std::fabs(c[i] - ref.c[i]));
    return static_cast<double>(e);
}

/// The standard coincident scenario of the acceptance suite.
inline uvr::VehicleParams standard_params() { return uvr::VehicleParams({1, 2, 3}, {1, 2, 3}, {1, 1}); }

inline uvr::ReducedState standard_initial() {
    return uvr::ReducedState::coincident({1.0, 0.5, -0.2}, {0.3, 1.0, 0.0}, {}, {0.1, -0.1});
}

/// Non-coincident analogue: same momenta, Gamma tilted off chi.
inline uvr::VehicleParams standard_params_nc() {
    return uvr::VehicleParams({1, 2, 3}, {1, 2, 3}, {1, 1}, 0.5, {0, 0, 1});
}

inline uvr::ReducedState standard_initial_nc() {
    return uvr::ReducedState::noncoincident({1.0, 0.5, -0.2}, {0.3, 1.0, 0.0}, {0.1, 0.2, 0.9}, {}, {0.1, -0.1});
}

}  // namespace oracle
