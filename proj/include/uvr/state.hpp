// Reduced phase points, their time derivatives, and validated vehicle parameters.
#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "uvr/algebra.hpp"
#include "uvr/errors.hpp"

namespace uvr {

/// Which reduced model a state belongs to. The non-coincident variants carry
/// the advected gravity direction Gamma; the Kirchhoff variants carry no rotors.
enum class Variant {
    Coincident,
    NonCoincident,
    KirchhoffCoincident,
    KirchhoffNonCoincident,
};

constexpr bool has_gamma(Variant v) {
    return v == Variant::NonCoincident || v == Variant::KirchhoffNonCoincident;
}
constexpr bool has_rotors(Variant v) {
    return v == Variant::Coincident || v == Variant::NonCoincident;
}

constexpr std::string_view to_string(Variant v) {
    switch (v) {
    case Variant::Coincident: return "coincident";
    case Variant::NonCoincident: return "noncoincident";
    case Variant::KirchhoffCoincident: return "kirchhoff_coincident";
    case Variant::KirchhoffNonCoincident: return "kirchhoff_noncoincident";
    }
    return "?";
}

inline std::optional<Variant> parse_variant(std::string_view s) {
    for (Variant v : {Variant::Coincident, Variant::NonCoincident, Variant::KirchhoffCoincident,
                      Variant::KirchhoffNonCoincident}) {
        if (s == to_string(v)) return v;
    }
    // hyphenated spellings are accepted as well
    if (s == "kirchhoff-coincident") return Variant::KirchhoffCoincident;
    if (s == "kirchhoff-noncoincident") return Variant::KirchhoffNonCoincident;
    return std::nullopt;
}

/// Flat index of every scalar coordinate function on the reduced space.
enum class Coord : int {
    Pi1, Pi2, Pi3,
    P1, P2, P3,
    Gamma1, Gamma2, Gamma3,
    Theta1, Theta2,
    L1, L2,
};

inline constexpr int kCoordCount = 13;

constexpr bool is_active(Variant v, Coord c) {
    const int i = static_cast<int>(c);
    if (i >= 6 && i <= 8) return has_gamma(v);
    if (i >= 9) return has_rotors(v);
    return true;
}

/// A vector over the 13 reduced coordinates, laid out like a state. `Tag`
/// separates time derivatives from gradients at the type level. Components
/// that do not exist in a variant are zero.
template <class Tag>
struct CoordVector {
    Vec3 pi;
    Vec3 p;
    Vec3 gamma;
    Vec2 theta;
    Vec2 l;

    double operator[](Coord c) const {
        const int i = static_cast<int>(c);
        if (i < 3) return pi[i];
        if (i < 6) return p[i - 3];
        if (i < 9) return gamma[i - 6];
        if (i < 11) return theta[i - 9];
        return l[i - 11];
    }
    double& operator[](Coord c) {
        const int i = static_cast<int>(c);
        if (i < 3) return pi[i];
        if (i < 6) return p[i - 3];
        if (i < 9) return gamma[i - 6];
        if (i < 11) return theta[i - 9];
        return l[i - 11];
    }

    /// Unit vector along one coordinate.
    static CoordVector unit(Coord c) {
        CoordVector e;
        e[c] = 1.0;
        return e;
    }

    friend CoordVector operator+(const CoordVector& a, const CoordVector& b) {
        return {a.pi + b.pi, a.p + b.p, a.gamma + b.gamma, a.theta + b.theta, a.l + b.l};
    }
    friend CoordVector operator-(const CoordVector& a, const CoordVector& b) {
        return {a.pi - b.pi, a.p - b.p, a.gamma - b.gamma, a.theta - b.theta, a.l - b.l};
    }
    friend CoordVector operator*(double s, const CoordVector& a) {
        return {s * a.pi, s * a.p, s * a.gamma, s * a.theta, s * a.l};
    }
    friend bool operator==(const CoordVector&, const CoordVector&) = default;
};

template <class Tag>
bool is_finite(const CoordVector<Tag>& d) {
    return is_finite(d.pi) && is_finite(d.p) && is_finite(d.gamma) && is_finite(d.theta) &&
           is_finite(d.l);
}

template <class Tag>
double max_abs(const CoordVector<Tag>& d) {
    double m = 0.0;
    for (int i = 0; i < kCoordCount; ++i) m = std::fmax(m, std::fabs(d[Coord(i)]));
    return m;
}

/// Norm-wise relative deviation of `a` from the reference `b`:
/// max|a - b| / max|b| (0 when both vanish).
template <class Tag>
double relative_deviation(const CoordVector<Tag>& a, const CoordVector<Tag>& b) {
    const double diff = max_abs(a - b);
    if (diff == 0.0) return 0.0;
    return diff / std::fmax(max_abs(b), std::numeric_limits<double>::min());
}

using StateDerivative = CoordVector<struct DerivativeTag>;
using Gradient = CoordVector<struct GradientTag>;

/// A point of the reduced phase space: (Pi, P[, Gamma][, theta, l]).
class ReducedState {
public:
    static ReducedState coincident(Vec3 pi, Vec3 p, Vec2 theta = {}, Vec2 l = {}) {
        return ReducedState(Variant::Coincident, pi, p, {}, theta, l);
    }
    static ReducedState noncoincident(Vec3 pi, Vec3 p, Vec3 gamma, Vec2 theta = {}, Vec2 l = {}) {
        return ReducedState(Variant::NonCoincident, pi, p, gamma, theta, l);
    }
    static ReducedState kirchhoff_coincident(Vec3 pi, Vec3 p) {
        return ReducedState(Variant::KirchhoffCoincident, pi, p, {}, {}, {});
    }
    static ReducedState kirchhoff_noncoincident(Vec3 pi, Vec3 p, Vec3 gamma) {
        return ReducedState(Variant::KirchhoffNonCoincident, pi, p, gamma, {}, {});
    }
    static ReducedState zero(Variant v) { return ReducedState(v, {}, {}, {}, {}, {}); }

    Variant variant() const noexcept { return variant_; }
    bool has_gamma() const noexcept { return uvr::has_gamma(variant_); }
    bool has_rotors() const noexcept { return uvr::has_rotors(variant_); }

    const Vec3& pi() const noexcept { return pi_; }
    const Vec3& p() const noexcept { return p_; }
    const Vec3& gamma() const {
        if (!has_gamma()) throw VariantMismatch("state variant has no Gamma component");
        return gamma_;
    }
    const Vec2& theta() const {
        if (!has_rotors()) throw VariantMismatch("state variant has no rotor angles");
        return theta_;
    }
    const Vec2& l() const {
        if (!has_rotors()) throw VariantMismatch("state variant has no rotor momenta");
        return l_;
    }

    /// Coordinate value; absent coordinates read as zero.
    double operator[](Coord c) const {
        const int i = static_cast<int>(c);
        if (i < 3) return pi_[i];
        if (i < 6) return p_[i - 3];
        if (i < 9) return gamma_[i - 6];
        if (i < 11) return theta_[i - 9];
        return l_[i - 11];
    }

    /// Copy with one active coordinate replaced.
    ReducedState with(Coord c, double value) const {
        if (!is_active(variant_, c)) throw VariantMismatch("coordinate not present in variant");
        ReducedState s = *this;
        const int i = static_cast<int>(c);
        if (i < 3) s.pi_[i] = value;
        else if (i < 6) s.p_[i - 3] = value;
        else if (i < 9) s.gamma_[i - 6] = value;
        else if (i < 11) s.theta_[i - 9] = value;
        else s.l_[i - 11] = value;
        s.validate();
        return s;
    }

    /// x + h * d over the active components. Inactive derivative components are ignored.
    ReducedState advanced(double h, const StateDerivative& d) const {
        ReducedState s = *this;
        s.pi_ = pi_ + h * d.pi;
        s.p_ = p_ + h * d.p;
        if (has_gamma()) s.gamma_ = gamma_ + h * d.gamma;
        if (has_rotors()) {
            s.theta_ = theta_ + h * d.theta;
            s.l_ = l_ + h * d.l;
        }
        s.validate();
        return s;
    }

    /// Difference of two states of the same variant, as a derivative-shaped vector.
    friend StateDerivative operator-(const ReducedState& a, const ReducedState& b) {
        if (a.variant_ != b.variant_) throw VariantMismatch("state difference across variants");
        return {a.pi_ - b.pi_, a.p_ - b.p_, a.gamma_ - b.gamma_, a.theta_ - b.theta_, a.l_ - b.l_};
    }

    friend bool operator==(const ReducedState&, const ReducedState&) = default;

private:
    ReducedState(Variant v, Vec3 pi, Vec3 p, Vec3 gamma, Vec2 theta, Vec2 l)
        : variant_(v), pi_(pi), p_(p), gamma_(gamma), theta_(theta), l_(l) {
        validate();
    }

    void validate() const {
        if (!is_finite(pi_)) throw ValidationError("pi", "non-finite component");
        if (!is_finite(p_)) throw ValidationError("p", "non-finite component");
        if (!is_finite(gamma_)) throw ValidationError("gamma", "non-finite component");
        if (!is_finite(theta_)) throw ValidationError("theta", "non-finite component");
        if (!is_finite(l_)) throw ValidationError("l", "non-finite component");
    }

    Variant variant_;
    Vec3 pi_;
    Vec3 p_;
    Vec3 gamma_;
    Vec2 theta_;
    Vec2 l_;
};

/// Body angular velocity, body linear velocity and rotor relative rates.
struct VelocityState {
    Vec3 omega;
    Vec3 v;
    Vec2 theta_dot;
};

/// Smallest admissible inertia, mass or rotor inertia.
inline constexpr double kMinPositive = 1e-12;

/// Validated physical parameters of the vehicle-rotor system.
///
/// `ibar` are the effective inertias (rotor contributions folded in), `mass`
/// the diagonal of the mass matrix including added masses, `jrot` the rotor
/// axial inertias. `mgh` and `chi` only enter the non-coincident models.
class VehicleParams {
public:
    VehicleParams(Vec3 ibar, Vec3 mass, Vec2 jrot, double mgh = 0.0, Vec3 chi = {0.0, 0.0, 1.0})
        : ibar_(ibar), mass_(mass), jrot_(jrot), mgh_(mgh), chi_(chi) {
        for (int i = 0; i < 3; ++i) {
            require_positive("ibar[" + std::to_string(i) + "]", ibar_[i]);
            require_positive("mass[" + std::to_string(i) + "]", mass_[i]);
        }
        for (int i = 0; i < 2; ++i) require_positive("jrot[" + std::to_string(i) + "]", jrot_[i]);
        if (!std::isfinite(mgh_)) throw ValidationError("mgh", "must be finite");
        if (!is_finite(chi_)) throw ValidationError("chi", "must be finite");
        if (mgh_ != 0.0 && std::fabs(norm(chi_) - 1.0) > 1e-12) {
            throw ValidationError("chi", "must be a unit vector when mgh is nonzero");
        }
    }

    const Vec3& ibar() const noexcept { return ibar_; }
    const Vec3& mass() const noexcept { return mass_; }
    const Vec2& jrot() const noexcept { return jrot_; }
    double mgh() const noexcept { return mgh_; }
    const Vec3& chi() const noexcept { return chi_; }

    friend bool operator==(const VehicleParams&, const VehicleParams&) = default;

private:
    static void require_positive(const std::string& field, double value) {
        if (!std::isfinite(value) || value <= kMinPositive) {
            throw ValidationError(field, "must be finite and > 1e-12 (got " + std::to_string(value) + ")");
        }
    }

    Vec3 ibar_;
    Vec3 mass_;
    Vec2 jrot_;
    double mgh_;
    Vec3 chi_;
};

/// Body-fluid inertias and the per-axis inertias J_ik of rotor i about principal axis k.
struct RawInertias {
    Vec3 body;
    std::array<Vec3, 2> rotor;
};

}  // namespace uvr
