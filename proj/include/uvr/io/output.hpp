// Trajectory CSV and JSON run summary.
#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "uvr/errors.hpp"
#include "uvr/integrate.hpp"

namespace uvr::io {

/// 17 significant digits: parsing the text back gives the same double.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Column names for a variant. Gamma columns follow P3 and the Gamma
/// Casimirs follow C_PiP, which is kept as a diagnostic for every variant.
inline std::vector<std::string> csv_columns(Variant v) {
    std::vector<std::string> cols{"t", "Pi1", "Pi2", "Pi3", "P1", "P2", "P3"};
    if (has_gamma(v)) cols.insert(cols.end(), {"Gamma1", "Gamma2", "Gamma3"});
    cols.insert(cols.end(), {"theta1", "theta2", "l1", "l2", "energy", "C_PP", "C_PiP"});
    if (has_gamma(v)) cols.insert(cols.end(), {"C_GG", "C_PG"});
    return cols;
}

inline std::vector<double> csv_row(const Sample& s) {
    const ReducedState& x = s.state;
    std::vector<double> r{s.t, x.pi().x, x.pi().y, x.pi().z, x.p().x, x.p().y, x.p().z};
    if (x.has_gamma()) r.insert(r.end(), {x.gamma().x, x.gamma().y, x.gamma().z});
    // rotor-free variants carry no rotor coordinates; their columns read 0
    const Vec2 theta = x.has_rotors() ? x.theta() : Vec2{};
    const Vec2 l = x.has_rotors() ? x.l() : Vec2{};
    r.insert(r.end(), {theta.a, theta.b, l.a, l.b, s.energy, dot(x.p(), x.p()), dot(x.pi(), x.p())});
    if (x.has_gamma()) r.insert(r.end(), {dot(x.gamma(), x.gamma()), dot(x.p(), x.gamma())});
    return r;
}

inline void write_csv(std::ostream& out, const Trajectory& traj) {
    if (traj.samples.empty()) return;
    const std::vector<std::string> cols = csv_columns(traj.samples.front().state.variant());
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const Sample& s : traj.samples) {
        const std::vector<double> r = csv_row(s);
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_double(r[i]);
        out << '\n';
    }
}

inline void write_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    write_csv(out, traj);
    if (!out) throw Error("failed writing " + path);
}

/// Diagnostics for a finished run. Wall time is the only field that varies
/// between identical runs.
inline nlohmann::json summary_json(const Trajectory& traj, double wall_seconds) {
    const DriftReport d = drift_report(traj);
    nlohmann::json casimir_drift = nlohmann::json::object();
    nlohmann::json step_defect = nlohmann::json::object();
    for (std::size_t i = 0; i < d.casimir_names.size(); ++i) {
        casimir_drift[std::string(d.casimir_names[i])] = d.casimir_max_drift[i];
        step_defect[std::string(d.casimir_names[i])] = traj.max_step_casimir_defect[i];
    }
    nlohmann::json j;
    j["variant"] = std::string(to_string(traj.samples.front().state.variant()));
    j["method"] = std::string(to_string(traj.spec.method));
    j["dt"] = traj.spec.dt;
    j["t_end"] = traj.spec.t_end;
    j["step_count"] = traj.step_count;
    j["sample_count"] = traj.samples.size();
    j["energy_initial"] = d.energy_initial;
    j["energy_final"] = d.energy_final;
    j["energy_max_abs_drift"] = d.energy_max_abs_drift;
    j["energy_max_rel_drift"] = d.energy_max_rel_drift;
    j["casimir_max_drift"] = casimir_drift;
    j["casimir_max_step_defect"] = step_defect;
    if (traj.spec.method == Method::ImplicitMidpoint) {
        j["midpoint_iterations_total"] = traj.midpoint_iterations_total;
        j["midpoint_iterations_max"] = traj.midpoint_iterations_max;
    }
    j["wall_time_s"] = wall_seconds;
    return j;
}

/// Default summary path: the CSV path with ".summary.json" in place of ".csv".
inline std::string default_summary_path(const std::string& csv_path) {
    const std::string ext = ".csv";
    if (csv_path.size() > ext.size() && csv_path.compare(csv_path.size() - ext.size(), ext.size(), ext) == 0) {
        return csv_path.substr(0, csv_path.size() - ext.size()) + ".summary.json";
    }
    return csv_path + ".summary.json";
}

}  // namespace uvr::io
