// Scenario configuration: a JSON document describing the model, the initial
// state, the control law, the integrator, outputs, audit tolerances and an
// optional Hamilton-Jacobi check. Errors carry the line of the offending key.
#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "uvr/audit.hpp"
#include "uvr/control.hpp"
#include "uvr/errors.hpp"
#include "uvr/hamjac.hpp"
#include "uvr/integrate.hpp"
#include "uvr/state.hpp"
#include "uvr/systems.hpp"

namespace uvr::io {

using nlohmann::json;

/// A configuration problem, anchored to a line of the source text when one
/// could be located (line 0 otherwise).
class ConfigError : public Error {
public:
    ConfigError(std::string source, int line, std::string path, const std::string& message)
        : Error(format(source, line, path, message)), line_(line), path_(std::move(path)) {}

    int line() const noexcept { return line_; }
    const std::string& path() const noexcept { return path_; }

private:
    static std::string format(const std::string& source, int line, const std::string& path,
                              const std::string& message) {
        std::string out = source.empty() ? "<config>" : source;
        if (line > 0) out += ":" + std::to_string(line);
        out += ": ";
        if (!path.empty()) out += path + ": ";
        return out + message;
    }

    int line_;
    std::string path_;
};

using CheckTolerances = AuditTolerances;

struct OutputSpec {
    std::string csv;
    std::string summary;
};

struct HJConfig {
    double tolerance = 1e-12;
    std::vector<GridPoint> grid;
    // constant candidate, or one entry per grid point
    std::variant<OneFormValue, std::vector<OneFormValue>> candidate;

    CandidateOneForm make_candidate() const {
        if (const auto* c = std::get_if<OneFormValue>(&candidate)) return constant_candidate(*c);
        return table_candidate(std::get<std::vector<OneFormValue>>(candidate));
    }
};

struct ScenarioConfig {
    Variant variant;
    VehicleParams params;
    std::optional<ReducedState> initial;
    ControlLaw law = ZeroLaw{};
    std::optional<IntegratorSpec> integrator;
    OutputSpec output;
    CheckTolerances check;
    std::optional<HJConfig> hj;
};

namespace detail {

/// 1-based line of the last key of a JSON pointer path, found by scanning for
/// the quoted keys in order. Array indices are skipped. 0 when not found.
inline int locate_line(const std::string& text, const std::string& pointer) {
    std::size_t pos = 0;
    std::size_t found = std::string::npos;
    std::size_t start = 1;
    while (start <= pointer.size()) {
        std::size_t end = pointer.find('/', start);
        if (end == std::string::npos) end = pointer.size();
        const std::string token = pointer.substr(start, end - start);
        start = end + 1;
        if (token.empty() || std::all_of(token.begin(), token.end(), ::isdigit)) continue;
        const std::size_t at = text.find("\"" + token + "\"", pos);
        if (at == std::string::npos) break;
        found = at;
        pos = at + token.size() + 2;
    }
    if (found == std::string::npos) return 0;
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(found), '\n'));
}

/// Dotted display form of a JSON pointer: /params/ibar/0 -> params.ibar[0].
inline std::string display_path(const std::string& pointer) {
    std::string out;
    std::size_t start = 1;
    while (start <= pointer.size()) {
        std::size_t end = pointer.find('/', start);
        if (end == std::string::npos) end = pointer.size();
        const std::string token = pointer.substr(start, end - start);
        start = end + 1;
        if (token.empty()) continue;
        if (std::all_of(token.begin(), token.end(), ::isdigit)) {
            out += "[" + token + "]";
        } else {
            out += (out.empty() ? "" : ".") + token;
        }
    }
    return out;
}

class Reader {
public:
    Reader(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
        throw ConfigError(source_, locate_line(text_, pointer), display_path(pointer), message);
    }

    const json& object(const json& j, const std::string& pointer) const {
        if (!j.is_object()) fail(pointer, "expected an object");
        return j;
    }

    void allow_keys(const json& j, const std::string& pointer,
                    std::initializer_list<const char*> keys) const {
        for (const auto& item : j.items()) {
            if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return item.key() == k; })) {
                fail(pointer + "/" + item.key(), "unknown key");
            }
        }
    }

    const json& required(const json& j, const std::string& pointer, const char* key) const {
        if (!j.contains(key)) fail(pointer, std::string("missing required key \"") + key + "\"");
        return j.at(key);
    }

    double number(const json& j, const std::string& pointer) const {
        if (!j.is_number()) fail(pointer, "expected a number");
        const double v = j.get<double>();
        if (!std::isfinite(v)) fail(pointer, "must be finite");
        return v;
    }

    long integer(const json& j, const std::string& pointer) const {
        if (!j.is_number_integer()) fail(pointer, "expected an integer");
        return j.get<long>();
    }

    std::string string(const json& j, const std::string& pointer) const {
        if (!j.is_string()) fail(pointer, "expected a string");
        return j.get<std::string>();
    }

    std::vector<double> numbers(const json& j, const std::string& pointer, std::size_t n) const {
        if (!j.is_array() || j.size() != n) {
            fail(pointer, "expected an array of " + std::to_string(n) + " numbers");
        }
        std::vector<double> out;
        for (std::size_t i = 0; i < n; ++i) out.push_back(number(j[i], pointer + "/" + std::to_string(i)));
        return out;
    }

    Vec3 vec3(const json& j, const std::string& pointer) const {
        const auto v = numbers(j, pointer, 3);
        return {v[0], v[1], v[2]};
    }
    Vec2 vec2(const json& j, const std::string& pointer) const {
        const auto v = numbers(j, pointer, 2);
        return {v[0], v[1]};
    }

    Vec3 vec3_or(const json& parent, const std::string& pointer, const char* key, Vec3 fallback) const {
        return parent.contains(key) ? vec3(parent.at(key), pointer + "/" + key) : fallback;
    }
    Vec2 vec2_or(const json& parent, const std::string& pointer, const char* key, Vec2 fallback) const {
        return parent.contains(key) ? vec2(parent.at(key), pointer + "/" + key) : fallback;
    }
    double number_or(const json& parent, const std::string& pointer, const char* key,
                     double fallback) const {
        return parent.contains(key) ? number(parent.at(key), pointer + "/" + key) : fallback;
    }

private:
    const std::string& text_;
    std::string source_;
};

/// The message of a ValidationError without its "field: " prefix.
inline std::string reason(const ValidationError& e) {
    const std::string what = e.what();
    const std::string prefix = e.field() + ": ";
    return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
}

/// Maps a library field name such as "ibar[0]" onto a JSON pointer under `base`.
inline std::string field_pointer(const std::string& base, const std::string& field) {
    std::string out = base;
    std::string token;
    for (char c : field) {
        if (c == '.' || c == '[' || c == ']') {
            if (!token.empty()) out += "/" + token;
            token.clear();
        } else {
            token += c;
        }
    }
    if (!token.empty()) out += "/" + token;
    return out;
}

inline VehicleParams read_params(const Reader& rd, const json& root, Variant variant) {
    const std::string ptr = "/params";
    const json& j = rd.object(rd.required(root, "", "params"), ptr);
    rd.allow_keys(j, ptr, {"ibar", "raw_inertia", "mass", "jrot", "mgh", "chi"});

    Vec3 ibar;
    if (j.contains("ibar") && j.contains("raw_inertia")) {
        rd.fail(ptr + "/raw_inertia", "give either ibar or raw_inertia, not both");
    }
    if (j.contains("raw_inertia")) {
        const std::string rp = ptr + "/raw_inertia";
        const json& raw = rd.object(j.at("raw_inertia"), rp);
        rd.allow_keys(raw, rp, {"body", "rotor1", "rotor2"});
        RawInertias ri{rd.vec3(rd.required(raw, rp, "body"), rp + "/body"),
                       {rd.vec3(rd.required(raw, rp, "rotor1"), rp + "/rotor1"),
                        rd.vec3(rd.required(raw, rp, "rotor2"), rp + "/rotor2")}};
        try {
            ibar = derive_effective_inertia(ri);
        } catch (const ValidationError& e) {
            const std::string f = e.field();
            rd.fail(f.rfind("raw_inertia", 0) == 0 ? field_pointer(ptr, f) : rp, reason(e));
        }
    } else {
        ibar = rd.vec3(rd.required(j, ptr, "ibar"), ptr + "/ibar");
    }
    const Vec3 mass = rd.vec3(rd.required(j, ptr, "mass"), ptr + "/mass");
    // rotor inertias are irrelevant to the rotor-free models
    const Vec2 jrot = has_rotors(variant) ? rd.vec2(rd.required(j, ptr, "jrot"), ptr + "/jrot")
                                          : rd.vec2_or(j, ptr, "jrot", {1.0, 1.0});
    double mgh = 0.0;
    Vec3 chi{0.0, 0.0, 1.0};
    if (has_gamma(variant)) {
        mgh = rd.number(rd.required(j, ptr, "mgh"), ptr + "/mgh");
        chi = rd.vec3_or(j, ptr, "chi", chi);
    } else {
        if (j.contains("mgh") && rd.number(j.at("mgh"), ptr + "/mgh") != 0.0) {
            rd.fail(ptr + "/mgh", "must be 0 for coincident-center variants");
        }
        chi = rd.vec3_or(j, ptr, "chi", chi);
    }
    try {
        return VehicleParams(ibar, mass, jrot, mgh, chi);
    } catch (const ValidationError& e) {
        std::string field = e.field();
        if (j.contains("raw_inertia") && field.rfind("ibar", 0) == 0) field = "raw_inertia";
        rd.fail(field_pointer(ptr, field), reason(e));
    }
}

inline ReducedState read_initial(const Reader& rd, const json& root, Variant variant) {
    const std::string ptr = "/initial";
    const json& j = rd.object(root.at("initial"), ptr);
    if (has_rotors(variant)) {
        rd.allow_keys(j, ptr, {"pi", "p", "gamma", "theta", "l"});
    } else {
        rd.allow_keys(j, ptr, {"pi", "p", "gamma"});
    }
    const Vec3 pi = rd.vec3(rd.required(j, ptr, "pi"), ptr + "/pi");
    const Vec3 p = rd.vec3(rd.required(j, ptr, "p"), ptr + "/p");
    if (!has_gamma(variant) && j.contains("gamma")) {
        rd.fail(ptr + "/gamma", "gamma is only valid for non-coincident variants");
    }
    switch (variant) {
    case Variant::Coincident:
        return ReducedState::coincident(pi, p, rd.vec2_or(j, ptr, "theta", {}),
                                        rd.vec2(rd.required(j, ptr, "l"), ptr + "/l"));
    case Variant::NonCoincident:
        return ReducedState::noncoincident(pi, p, rd.vec3(rd.required(j, ptr, "gamma"), ptr + "/gamma"),
                                           rd.vec2_or(j, ptr, "theta", {}),
                                           rd.vec2(rd.required(j, ptr, "l"), ptr + "/l"));
    case Variant::KirchhoffCoincident: return ReducedState::kirchhoff_coincident(pi, p);
    case Variant::KirchhoffNonCoincident:
        return ReducedState::kirchhoff_noncoincident(
            pi, p, rd.vec3(rd.required(j, ptr, "gamma"), ptr + "/gamma"));
    }
    rd.fail(ptr, "unknown variant");
}

inline ControlLift read_lift(const Reader& rd, const json& j, const std::string& ptr, Variant variant,
                             std::initializer_list<const char*> extra_keys) {
    std::vector<const char*> keys{"u_pi", "u_p", "u_gamma", "u_theta", "u_l"};
    keys.insert(keys.end(), extra_keys.begin(), extra_keys.end());
    for (const auto& item : j.items()) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return item.key() == k; })) {
            rd.fail(ptr + "/" + item.key(), "unknown key");
        }
    }
    ControlLift lift = ControlLift::zero(variant);
    lift.u_pi = rd.vec3_or(j, ptr, "u_pi", {});
    lift.u_p = rd.vec3_or(j, ptr, "u_p", {});
    if (j.contains("u_gamma")) {
        if (!has_gamma(variant)) rd.fail(ptr + "/u_gamma", "u_gamma is only valid for non-coincident variants");
        lift.u_gamma = rd.vec3(j.at("u_gamma"), ptr + "/u_gamma");
    }
    if (!has_rotors(variant) && (j.contains("u_theta") || j.contains("u_l"))) {
        rd.fail(ptr + "/" + (j.contains("u_theta") ? "u_theta" : "u_l"),
                "rotor lifts are not valid for rotor-free variants");
    }
    lift.u_theta = rd.vec2_or(j, ptr, "u_theta", {});
    lift.u_l = rd.vec2_or(j, ptr, "u_l", {});
    return lift;
}

inline ControlLaw read_control(const Reader& rd, const json& root, Variant variant) {
    if (!root.contains("control")) return ZeroLaw{};
    const std::string ptr = "/control";
    const json& j = rd.object(root.at("control"), ptr);
    const std::string type = rd.string(rd.required(j, ptr, "type"), ptr + "/type");
    if (type == "zero") {
        rd.allow_keys(j, ptr, {"type"});
        return ZeroLaw{};
    }
    if (type == "constant") {
        return ConstantLaw{read_lift(rd, j, ptr, variant, {"type"})};
    }
    if (type == "rotor_feedback") {
        rd.allow_keys(j, ptr, {"type", "gain", "l_ref"});
        if (!has_rotors(variant)) rd.fail(ptr + "/type", "rotor feedback needs a variant with rotors");
        return RotorFeedback{rd.vec2(rd.required(j, ptr, "gain"), ptr + "/gain"),
                             rd.vec2_or(j, ptr, "l_ref", {})};
    }
    if (type == "table") {
        rd.allow_keys(j, ptr, {"type", "samples"});
        const json& s = rd.required(j, ptr, "samples");
        if (!s.is_array() || s.empty()) rd.fail(ptr + "/samples", "expected a non-empty array");
        std::vector<TableLookup::Sample> samples;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const std::string sp = ptr + "/samples/" + std::to_string(i);
            const json& e = rd.object(s[i], sp);
            samples.push_back({rd.number(rd.required(e, sp, "t"), sp + "/t"),
                               read_lift(rd, e, sp, variant, {"t"})});
        }
        try {
            return TableLookup(std::move(samples));
        } catch (const ValidationError& e) {
            rd.fail(field_pointer("", e.field()), reason(e));
        }
    }
    rd.fail(ptr + "/type", "unknown control type \"" + type + "\" (zero|constant|rotor_feedback|table)");
}

inline IntegratorSpec read_integrator(const Reader& rd, const json& root) {
    const std::string ptr = "/integrator";
    const json& j = rd.object(root.at("integrator"), ptr);
    rd.allow_keys(j, ptr, {"method", "dt", "t_end", "tolerance", "max_iterations"});
    IntegratorSpec spec;
    if (j.contains("method")) {
        const std::string m = rd.string(j.at("method"), ptr + "/method");
        const auto method = parse_method(m);
        if (!method) rd.fail(ptr + "/method", "unknown method \"" + m + "\" (rk4|implicit_midpoint)");
        spec.method = *method;
    }
    spec.dt = rd.number(rd.required(j, ptr, "dt"), ptr + "/dt");
    spec.t_end = rd.number(rd.required(j, ptr, "t_end"), ptr + "/t_end");
    spec.tolerance = rd.number_or(j, ptr, "tolerance", spec.tolerance);
    if (j.contains("max_iterations")) {
        spec.max_iterations = static_cast<int>(rd.integer(j.at("max_iterations"), ptr + "/max_iterations"));
    }
    if (root.contains("output") && root.at("output").is_object() && root.at("output").contains("decimation")) {
        spec.decimation = static_cast<int>(rd.integer(root.at("output").at("decimation"), "/output/decimation"));
    }
    try {
        spec.validate();
    } catch (const ValidationError& e) {
        rd.fail(field_pointer("", e.field()), reason(e));
    }
    return spec;
}

inline OneFormValue read_one_form_value(const Reader& rd, const json& j, const std::string& ptr,
                                        std::size_t rows) {
    rd.object(j, ptr);
    rd.allow_keys(j, ptr, {"gbar", "u", "type"});
    OneFormValue v;
    if (j.contains("gbar")) {
        const auto g = rd.numbers(j.at("gbar"), ptr + "/gbar", 10);
        std::copy(g.begin(), g.end(), v.gbar.begin());
    }
    v.u = j.contains("u") ? rd.numbers(j.at("u"), ptr + "/u", rows) : std::vector<double>(rows, 0.0);
    return v;
}

inline HJConfig read_hj(const Reader& rd, const json& root, Variant variant) {
    const std::string ptr = "/hj";
    const json& j = rd.object(root.at("hj"), ptr);
    rd.allow_keys(j, ptr, {"tolerance", "grid", "candidate"});
    if (has_rotors(variant) == false) rd.fail("/variant", "the HJ check needs a variant with rotors");
    const bool noncoincident = has_gamma(variant);
    const std::size_t rows = noncoincident ? kHJRowsNonCoincident : kHJRowsCoincident;

    HJConfig hj;
    hj.tolerance = rd.number_or(j, ptr, "tolerance", hj.tolerance);
    if (!(hj.tolerance > 0.0)) rd.fail(ptr + "/tolerance", "must be > 0");

    const json& grid = rd.required(j, ptr, "grid");
    if (!grid.is_array() || grid.empty()) rd.fail(ptr + "/grid", "expected a non-empty array of points");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::string gp = ptr + "/grid/" + std::to_string(i);
        const json& e = rd.object(grid[i], gp);
        rd.allow_keys(e, gp, {"pi", "p", "gamma"});
        GridPoint pt;
        pt.index = i;
        pt.pi = rd.vec3(rd.required(e, gp, "pi"), gp + "/pi");
        pt.p = rd.vec3(rd.required(e, gp, "p"), gp + "/p");
        if (noncoincident) {
            pt.gamma = rd.vec3(rd.required(e, gp, "gamma"), gp + "/gamma");
        } else if (e.contains("gamma")) {
            rd.fail(gp + "/gamma", "gamma is only valid for non-coincident variants");
        }
        hj.grid.push_back(pt);
    }

    const std::string cp = ptr + "/candidate";
    const json& c = rd.object(rd.required(j, ptr, "candidate"), cp);
    const std::string type = c.contains("type") ? rd.string(c.at("type"), cp + "/type") : "constant";
    if (type == "constant") {
        hj.candidate = read_one_form_value(rd, c, cp, rows);
    } else if (type == "table") {
        rd.allow_keys(c, cp, {"type", "values"});
        const json& values = rd.required(c, cp, "values");
        if (!values.is_array() || values.size() != hj.grid.size()) {
            rd.fail(cp + "/values", "expected one entry per grid point (" + std::to_string(hj.grid.size()) + ")");
        }
        std::vector<OneFormValue> table;
        for (std::size_t i = 0; i < values.size(); ++i) {
            table.push_back(read_one_form_value(rd, values[i], cp + "/values/" + std::to_string(i), rows));
        }
        hj.candidate = std::move(table);
    } else {
        rd.fail(cp + "/type", "unknown candidate type \"" + type + "\" (constant|table)");
    }
    return hj;
}

inline CheckTolerances read_check(const Reader& rd, const json& root) {
    CheckTolerances t;
    if (!root.contains("check")) return t;
    const std::string ptr = "/check";
    const json& j = rd.object(root.at("check"), ptr);
    rd.allow_keys(j, ptr, {"energy_rel_drift", "casimir_drift", "legendre_rel", "gradient_rel", "fd_step"});
    t.energy_rel_drift = rd.number_or(j, ptr, "energy_rel_drift", t.energy_rel_drift);
    t.casimir_drift = rd.number_or(j, ptr, "casimir_drift", t.casimir_drift);
    t.legendre_rel = rd.number_or(j, ptr, "legendre_rel", t.legendre_rel);
    t.gradient_rel = rd.number_or(j, ptr, "gradient_rel", t.gradient_rel);
    t.fd_step = rd.number_or(j, ptr, "fd_step", t.fd_step);
    for (const char* key : {"energy_rel_drift", "casimir_drift", "legendre_rel", "gradient_rel", "fd_step"}) {
        if (j.contains(key) && !(j.at(key).get<double>() > 0.0)) rd.fail(ptr + "/" + key, "must be > 0");
    }
    return t;
}

}  // namespace detail

/// Parses a scenario from JSON text. `source` names the text in error messages.
inline ScenarioConfig parse_config(const std::string& text, const std::string& source = "") {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports "line L, column C" inside the message
        int line = 0;
        const std::string what = e.what();
        const auto at = what.find("line ");
        if (at != std::string::npos) line = std::atoi(what.c_str() + at + 5);
        throw ConfigError(source, line, "", std::string("malformed JSON: ") + what);
    }
    const detail::Reader rd(text, source);
    rd.object(root, "");
    rd.allow_keys(root, "", {"variant", "params", "initial", "control", "integrator", "output", "check", "hj"});

    const std::string vname = rd.string(rd.required(root, "", "variant"), "/variant");
    const auto variant = parse_variant(vname);
    if (!variant) {
        rd.fail("/variant", "unknown variant \"" + vname +
                                "\" (coincident|noncoincident|kirchhoff_coincident|kirchhoff_noncoincident)");
    }

    ScenarioConfig cfg{*variant, detail::read_params(rd, root, *variant), {}, ZeroLaw{}, {}, {}, {}, {}};
    if (root.contains("initial")) cfg.initial = detail::read_initial(rd, root, *variant);
    cfg.law = detail::read_control(rd, root, *variant);
    if (root.contains("integrator")) cfg.integrator = detail::read_integrator(rd, root);
    if (root.contains("output")) {
        const json& o = rd.object(root.at("output"), "/output");
        rd.allow_keys(o, "/output", {"csv", "summary", "decimation"});
        if (o.contains("csv")) cfg.output.csv = rd.string(o.at("csv"), "/output/csv");
        if (o.contains("summary")) cfg.output.summary = rd.string(o.at("summary"), "/output/summary");
        if (o.contains("decimation") && !cfg.integrator) {
            rd.fail("/output/decimation", "decimation needs an integrator section");
        }
    }
    cfg.check = detail::read_check(rd, root);
    if (root.contains("hj")) cfg.hj = detail::read_hj(rd, root, *variant);
    return cfg;
}

inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, 0, "", "cannot open config file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

namespace detail {

inline json to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }
inline json to_json(const Vec2& v) { return json::array({v.a, v.b}); }

inline json lift_to_json(const ControlLift& lift) {
    json j;
    j["u_pi"] = to_json(lift.u_pi);
    j["u_p"] = to_json(lift.u_p);
    if (lift.u_gamma) j["u_gamma"] = to_json(*lift.u_gamma);
    j["u_theta"] = to_json(lift.u_theta);
    j["u_l"] = to_json(lift.u_l);
    return j;
}

inline json one_form_to_json(const OneFormValue& v) {
    return json{{"gbar", v.gbar}, {"u", v.u}};
}

}  // namespace detail

/// Normalized JSON form: effective inertias instead of raw ones, defaults
/// spelled out. Serializing a re-parsed normalized config is idempotent.
inline json to_json(const ScenarioConfig& cfg) {
    using detail::to_json;
    json j;
    j["variant"] = std::string(to_string(cfg.variant));
    json& prm = j["params"];
    prm["ibar"] = to_json(cfg.params.ibar());
    prm["mass"] = to_json(cfg.params.mass());
    prm["jrot"] = to_json(cfg.params.jrot());
    prm["mgh"] = cfg.params.mgh();
    prm["chi"] = to_json(cfg.params.chi());

    if (cfg.initial) {
        const ReducedState& x = *cfg.initial;
        json& ini = j["initial"];
        ini["pi"] = to_json(x.pi());
        ini["p"] = to_json(x.p());
        if (x.has_gamma()) ini["gamma"] = to_json(x.gamma());
        if (x.has_rotors()) {
            ini["theta"] = to_json(x.theta());
            ini["l"] = to_json(x.l());
        }
    }

    j["control"] = std::visit(
        [](const auto& law) -> json {
            using L = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<L, ZeroLaw>) {
                return json{{"type", "zero"}};
            } else if constexpr (std::is_same_v<L, ConstantLaw>) {
                json c = detail::lift_to_json(law.lift);
                c["type"] = "constant";
                return c;
            } else if constexpr (std::is_same_v<L, RotorFeedback>) {
                return json{{"type", "rotor_feedback"}, {"gain", to_json(law.gain)}, {"l_ref", to_json(law.l_ref)}};
            } else {
                json samples = json::array();
                for (const auto& s : law.samples()) {
                    json e = detail::lift_to_json(s.lift);
                    e["t"] = s.t;
                    samples.push_back(e);
                }
                return json{{"type", "table"}, {"samples", samples}};
            }
        },
        cfg.law);

    if (cfg.integrator) {
        const IntegratorSpec& s = *cfg.integrator;
        j["integrator"] = json{{"method", std::string(to_string(s.method))},
                               {"dt", s.dt},
                               {"t_end", s.t_end},
                               {"tolerance", s.tolerance},
                               {"max_iterations", s.max_iterations}};
    }
    json out = json::object();
    if (!cfg.output.csv.empty()) out["csv"] = cfg.output.csv;
    if (!cfg.output.summary.empty()) out["summary"] = cfg.output.summary;
    if (cfg.integrator) out["decimation"] = cfg.integrator->decimation;
    if (!out.empty()) j["output"] = out;

    j["check"] = json{{"energy_rel_drift", cfg.check.energy_rel_drift},
                      {"casimir_drift", cfg.check.casimir_drift},
                      {"legendre_rel", cfg.check.legendre_rel},
                      {"gradient_rel", cfg.check.gradient_rel},
                      {"fd_step", cfg.check.fd_step}};

    if (cfg.hj) {
        json& hj = j["hj"];
        hj["tolerance"] = cfg.hj->tolerance;
        json grid = json::array();
        for (const GridPoint& pt : cfg.hj->grid) {
            json g{{"pi", to_json(pt.pi)}, {"p", to_json(pt.p)}};
            if (pt.gamma) g["gamma"] = to_json(*pt.gamma);
            grid.push_back(g);
        }
        hj["grid"] = grid;
        if (const auto* c = std::get_if<OneFormValue>(&cfg.hj->candidate)) {
            json cj = detail::one_form_to_json(*c);
            cj["type"] = "constant";
            hj["candidate"] = cj;
        } else {
            json values = json::array();
            for (const auto& v : std::get<std::vector<OneFormValue>>(cfg.hj->candidate)) {
                values.push_back(detail::one_form_to_json(v));
            }
            hj["candidate"] = json{{"type", "table"}, {"values", values}};
        }
    }
    return j;
}

}  // namespace uvr::io
