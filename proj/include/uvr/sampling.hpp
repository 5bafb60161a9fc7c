// Seeded random states and parameters for cross-validation runs. The
// uniform mapping is written out by hand so that draws are identical across
// standard libraries.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "uvr/state.hpp"

namespace uvr {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    Vec3 vec3(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }
    Vec2 vec2(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi)}; }

    /// Uniform direction on the unit sphere.
    Vec3 direction() {
        const double z = uniform(-1.0, 1.0);
        const double phi = uniform(0.0, 2.0 * M_PI);
        const double r = std::sqrt(std::fmax(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }

    ReducedState state(Variant v, double scale = 2.0) {
        const Vec3 pi = vec3(-scale, scale);
        const Vec3 p = vec3(-scale, scale);
        const Vec3 gamma = has_gamma(v) ? vec3(-scale, scale) : Vec3{};
        const Vec2 theta = has_rotors(v) ? vec2(-M_PI, M_PI) : Vec2{};
        const Vec2 l = has_rotors(v) ? vec2(-scale, scale) : Vec2{};
        switch (v) {
        case Variant::Coincident: return ReducedState::coincident(pi, p, theta, l);
        case Variant::NonCoincident: return ReducedState::noncoincident(pi, p, gamma, theta, l);
        case Variant::KirchhoffCoincident: return ReducedState::kirchhoff_coincident(pi, p);
        case Variant::KirchhoffNonCoincident: return ReducedState::kirchhoff_noncoincident(pi, p, gamma);
        }
        return ReducedState::zero(v);
    }

    /// Inertias and masses in [0.5, 3]; gravity terms only for Gamma-carrying variants.
    VehicleParams params(Variant v) {
        const Vec3 ibar = vec3(0.5, 3.0);
        const Vec3 mass = vec3(0.5, 3.0);
        const Vec2 jrot = vec2(0.5, 3.0);
        if (!has_gamma(v)) return VehicleParams(ibar, mass, jrot);
        const double mgh = uniform(0.1, 2.0);
        return VehicleParams(ibar, mass, jrot, mgh, direction());
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace uvr
