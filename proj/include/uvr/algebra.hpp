// Elementary 3-vector algebra and the coadjoint building blocks of se(3)*.
#pragma once

#include <cmath>

namespace uvr {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

struct Vec2 {
    double a = 0.0;
    double b = 0.0;

    constexpr double operator[](int i) const { return i == 0 ? a : b; }
    constexpr double& operator[](int i) { return i == 0 ? a : b; }

    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr Vec3 operator+(const Vec3& u, const Vec3& v) { return {u.x + v.x, u.y + v.y, u.z + v.z}; }
constexpr Vec3 operator-(const Vec3& u, const Vec3& v) { return {u.x - v.x, u.y - v.y, u.z - v.z}; }
constexpr Vec3 operator-(const Vec3& u) { return {-u.x, -u.y, -u.z}; }
constexpr Vec3 operator*(double s, const Vec3& u) { return {s * u.x, s * u.y, s * u.z}; }
constexpr Vec3 operator*(const Vec3& u, double s) { return s * u; }

constexpr Vec2 operator+(const Vec2& u, const Vec2& v) { return {u.a + v.a, u.b + v.b}; }
constexpr Vec2 operator-(const Vec2& u, const Vec2& v) { return {u.a - v.a, u.b - v.b}; }
constexpr Vec2 operator-(const Vec2& u) { return {-u.a, -u.b}; }
constexpr Vec2 operator*(double s, const Vec2& u) { return {s * u.a, s * u.b}; }
constexpr Vec2 operator*(const Vec2& u, double s) { return s * u; }

/// Right-handed cross product u × v.
constexpr Vec3 cross(const Vec3& u, const Vec3& v) {
    return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

constexpr double dot(const Vec3& u, const Vec3& v) { return u.x * v.x + u.y * v.y + u.z * v.z; }
constexpr double dot(const Vec2& u, const Vec2& v) { return u.a * v.a + u.b * v.b; }

/// Componentwise (Hadamard) products.
constexpr Vec3 hadamard(const Vec3& u, const Vec3& v) { return {u.x * v.x, u.y * v.y, u.z * v.z}; }
constexpr Vec2 hadamard(const Vec2& u, const Vec2& v) { return {u.a * v.a, u.b * v.b}; }

inline double norm(const Vec3& u) { return std::sqrt(dot(u, u)); }

inline double max_abs(const Vec3& u) {
    return std::fmax(std::fabs(u.x), std::fmax(std::fabs(u.y), std::fabs(u.z)));
}
inline double max_abs(const Vec2& u) { return std::fmax(std::fabs(u.a), std::fabs(u.b)); }

inline bool is_finite(const Vec3& u) {
    return std::isfinite(u.x) && std::isfinite(u.y) && std::isfinite(u.z);
}
inline bool is_finite(const Vec2& u) { return std::isfinite(u.a) && std::isfinite(u.b); }

/// Drift part of the se(3)* Lie-Poisson field for the gradient (omega, v):
/// returns (Pi x omega + P x v, P x omega).
struct CoadSE3 {
    Vec3 pi_dot;
    Vec3 p_dot;
};

constexpr CoadSE3 coad_se3(const Vec3& omega, const Vec3& v, const Vec3& pi, const Vec3& p) {
    return {cross(pi, omega) + cross(p, v), cross(p, omega)};
}

/// Same for se(3)* ⊛ R^3, where gvec is the gradient of the Hamiltonian with
/// respect to the advected vector Gamma.
struct CoadSE3R {
    Vec3 pi_dot;
    Vec3 p_dot;
    Vec3 gamma_dot;
};

constexpr CoadSE3R coad_se3r(const Vec3& omega, const Vec3& v, const Vec3& gvec, const Vec3& pi,
                             const Vec3& p, const Vec3& gamma) {
    return {cross(pi, omega) + cross(p, v) + cross(gamma, gvec), cross(p, omega),
            cross(gamma, omega)};
}

}  // namespace uvr
