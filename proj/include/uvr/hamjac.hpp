// Residuals of the reduced Hamilton-Jacobi equations of the controlled
// vehicle-rotor system, and a grid checker for candidate reduced one-forms.
//
// A candidate supplies, at each grid point, the one-form values gbar[0..9]
// (slots: Pi 0-2, P 3-5, theta 6-7, l 8-9) and the lift values u. Row k of the
// residual is the left-hand side of the k-th equation; a solution makes every
// row vanish. Rows are reported 1-based.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uvr/algebra.hpp"
#include "uvr/errors.hpp"
#include "uvr/state.hpp"

namespace uvr {

inline constexpr std::size_t kHJRowsCoincident = 10;
inline constexpr std::size_t kHJRowsNonCoincident = 13;

using OneForm = std::array<double, 10>;

struct HJSampleCoincident {
    Vec3 pi;
    Vec3 p;
    OneForm gbar{};
    std::array<double, kHJRowsCoincident> u{};
};

/// The Gamma slots of the one-form coincide with the state's Gamma, so they
/// are carried by `gamma` rather than by `gbar`.
struct HJSampleNonCoincident {
    Vec3 pi;
    Vec3 p;
    Vec3 gamma;
    OneForm gbar{};
    std::array<double, kHJRowsNonCoincident> u{};
};

namespace detail {

/// The three rows shared by the Pi, P and Gamma blocks:
/// a x (w1, w2, w3) with w = ((g1 - g9)/I1, (g2 - g10)/I2, g3/I3), written over
/// the common denominators.
inline Vec3 inertia_rows(const Vec3& a, const OneForm& g, const Vec3& ib) {
    const double g1 = g[0], g2 = g[1], g3 = g[2], g9 = g[8], g10 = g[9];
    return {(ib.y * a.y * g3 - ib.z * a.z * (g2 - g10)) / (ib.y * ib.z),
            (ib.z * a.z * (g1 - g9) - ib.x * a.x * g3) / (ib.z * ib.x),
            (ib.x * a.x * (g2 - g10) - ib.y * a.y * (g1 - g9)) / (ib.x * ib.y)};
}

/// P x (g4/m1, g5/m2, g6/m3) over common denominators.
inline Vec3 mass_rows(const Vec3& p, const OneForm& g, const Vec3& m) {
    const double g4 = g[3], g5 = g[4], g6 = g[5];
    return {(m.y * p.y * g6 - m.z * p.z * g5) / (m.y * m.z),
            (m.z * p.z * g4 - m.x * p.x * g6) / (m.z * m.x),
            (m.x * p.x * g5 - m.y * p.y * g4) / (m.x * m.y)};
}

/// Rotor rows with cleared denominators: -J_i (g_i - g_{i+8}) + I_i g_{i+8} + I_i J_i U.
inline double rotor_row(int i, const OneForm& g, const VehicleParams& prm, double u) {
    const double ib = prm.ibar()[i];
    const double j = prm.jrot()[i];
    return -j * (g[i] - g[i + 8]) + ib * g[i + 8] + ib * j * u;
}

}  // namespace detail

inline std::array<double, kHJRowsCoincident> hj_residual_coincident(const HJSampleCoincident& s,
                                                                     const VehicleParams& prm) {
    const Vec3 pi_rows = detail::inertia_rows(s.pi, s.gbar, prm.ibar());
    const Vec3 p_cross = detail::mass_rows(s.p, s.gbar, prm.mass());
    const Vec3 p_rows = detail::inertia_rows(s.p, s.gbar, prm.ibar());
    std::array<double, kHJRowsCoincident> r{};
    for (int k = 0; k < 3; ++k) {
        r[k] = pi_rows[k] + p_cross[k] + s.u[k];
        r[3 + k] = p_rows[k] + s.u[3 + k];
    }
    r[6] = detail::rotor_row(0, s.gbar, prm, s.u[6]);
    r[7] = detail::rotor_row(1, s.gbar, prm, s.u[7]);
    r[8] = s.u[8];
    r[9] = s.u[9];
    return r;
}

inline std::array<double, kHJRowsNonCoincident> hj_residual_noncoincident(
    const HJSampleNonCoincident& s, const VehicleParams& prm) {
    const Vec3 pi_rows = detail::inertia_rows(s.pi, s.gbar, prm.ibar());
    const Vec3 p_cross = detail::mass_rows(s.p, s.gbar, prm.mass());
    const Vec3 p_rows = detail::inertia_rows(s.p, s.gbar, prm.ibar());
    const Vec3 gamma_rows = detail::inertia_rows(s.gamma, s.gbar, prm.ibar());
    const Vec3& c = prm.chi();
    const Vec3& g = s.gamma;
    const double mgh = prm.mgh();
    const Vec3 gravity{mgh * (g.y * c.z - g.z * c.y), mgh * (g.z * c.x - g.x * c.z),
                       mgh * (g.x * c.y - g.y * c.x)};
    std::array<double, kHJRowsNonCoincident> r{};
    for (int k = 0; k < 3; ++k) {
        r[k] = pi_rows[k] + p_cross[k] + gravity[k] + s.u[k];
        r[3 + k] = p_rows[k] + s.u[3 + k];
        r[6 + k] = gamma_rows[k] + s.u[6 + k];
    }
    r[9] = detail::rotor_row(0, s.gbar, prm, s.u[9]);
    r[10] = detail::rotor_row(1, s.gbar, prm, s.u[10]);
    r[11] = s.u[11];
    r[12] = s.u[12];
    return r;
}

/// A grid point: its position in the grid and the state values there.
/// `gamma` is present for non-coincident grids.
struct GridPoint {
    std::size_t index = 0;
    Vec3 pi;
    Vec3 p;
    std::optional<Vec3> gamma;
};

/// One-form and lift values of a candidate at one grid point; `u` has 10
/// entries for coincident grids and 13 for non-coincident ones.
struct OneFormValue {
    OneForm gbar{};
    std::vector<double> u;
};

using CandidateOneForm = std::function<OneFormValue(const GridPoint&)>;

inline CandidateOneForm constant_candidate(OneFormValue value) {
    return [value = std::move(value)](const GridPoint&) { return value; };
}

/// Per-point table; entry i is used at grid index i.
inline CandidateOneForm table_candidate(std::vector<OneFormValue> table) {
    return [table = std::move(table)](const GridPoint& pt) {
        if (pt.index >= table.size()) {
            throw ValidationError("hj.candidate.values",
                                  "no entry for grid point " + std::to_string(pt.index));
        }
        return table[pt.index];
    };
}

struct HJReport {
    bool is_solution = false;
    double max_abs_residual = 0.0;
    std::size_t worst_sample = 0;
    int worst_row = 0;             // 1-based; 0 when every residual is zero
    std::vector<double> row_max;   // max |r_k| over the grid, per row
};

/// Evaluates the residual at every grid point, in grid order. The first
/// strictly larger residual wins ties.
inline HJReport check_solution(const CandidateOneForm& candidate, const std::vector<GridPoint>& grid,
                               const VehicleParams& prm, double tol) {
    if (grid.empty()) throw ValidationError("hj.grid", "grid must not be empty");
    if (!(tol > 0.0)) throw ValidationError("hj.tolerance", "must be > 0");
    const bool noncoincident = grid.front().gamma.has_value();
    const std::size_t rows = noncoincident ? kHJRowsNonCoincident : kHJRowsCoincident;

    HJReport report;
    report.row_max.assign(rows, 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const GridPoint& pt = grid[i];
        const std::string where = "hj.grid[" + std::to_string(i) + "]";
        if (pt.gamma.has_value() != noncoincident) {
            throw ValidationError(where, "mixed coincident and non-coincident grid points");
        }
        const OneFormValue v = candidate(pt);
        if (v.u.size() != rows) {
            throw ValidationError(where + ".u", "expected " + std::to_string(rows) + " lift values, got " +
                                                    std::to_string(v.u.size()));
        }
        std::vector<double> r(rows);
        if (noncoincident) {
            HJSampleNonCoincident s{pt.pi, pt.p, *pt.gamma, v.gbar, {}};
            std::copy(v.u.begin(), v.u.end(), s.u.begin());
            const auto res = hj_residual_noncoincident(s, prm);
            r.assign(res.begin(), res.end());
        } else {
            HJSampleCoincident s{pt.pi, pt.p, v.gbar, {}};
            std::copy(v.u.begin(), v.u.end(), s.u.begin());
            const auto res = hj_residual_coincident(s, prm);
            r.assign(res.begin(), res.end());
        }
        for (std::size_t k = 0; k < rows; ++k) {
            const double a = std::fabs(r[k]);
            if (!std::isfinite(a)) throw ValidationError(where, "non-finite residual");
            report.row_max[k] = std::fmax(report.row_max[k], a);
            if (a > report.max_abs_residual) {
                report.max_abs_residual = a;
                report.worst_sample = i;
                report.worst_row = static_cast<int>(k) + 1;
            }
        }
    }
    report.is_solution = report.max_abs_residual <= tol;
    return report;
}

}  // namespace uvr
