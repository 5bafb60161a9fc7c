// uvr: simulate, audit, HJ-check and cross-validate the underwater vehicle
// with internal rotors from JSON scenario files.
//
// exit codes: 0 ok, 1 HJ candidate is not a solution / oracle out of
// tolerance, 2 config or usage error, 3 runtime error.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "uvr/uvr.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

uvr::io::ScenarioConfig load(const std::string& path, bool need_run) {
    uvr::io::ScenarioConfig cfg = uvr::io::load_config(path);
    if (need_run && !cfg.initial) throw uvr::io::ConfigError(path, 0, "initial", "section is required");
    if (need_run && !cfg.integrator) throw uvr::io::ConfigError(path, 0, "integrator", "section is required");
    return cfg;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path) {
    const uvr::io::ScenarioConfig cfg = load(config_path, true);
    const auto start = std::chrono::steady_clock::now();
    const uvr::Trajectory traj = uvr::integrate(*cfg.initial, cfg.params, cfg.law, *cfg.integrator);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    uvr::io::write_csv(out_path, traj);
    const std::string summary_path =
        cfg.output.summary.empty() ? uvr::io::default_summary_path(out_path) : cfg.output.summary;
    std::ofstream summary(summary_path);
    if (!summary) throw uvr::Error("cannot open " + summary_path + " for writing");
    summary << uvr::io::summary_json(traj, wall).dump(2) << '\n';

    std::cout << "wrote " << traj.samples.size() << " samples (" << traj.step_count << " steps) to "
              << out_path << "\nsummary: " << summary_path << '\n';
    return kExitOk;
}

int cmd_check(const std::string& config_path) {
    const uvr::io::ScenarioConfig cfg = load(config_path, true);
    const uvr::AuditReport report =
        uvr::run_audit(*cfg.initial, cfg.params, cfg.law, *cfg.integrator, cfg.check);
    uvr::print_audit(std::cout, report);
    return report.ok() ? kExitOk : kExitSemantic;
}

int cmd_hj(const std::string& config_path) {
    const uvr::io::ScenarioConfig cfg = load(config_path, false);
    if (!cfg.hj) throw uvr::io::ConfigError(config_path, 0, "hj", "section is required");
    const uvr::HJReport r = uvr::check_solution(cfg.hj->make_candidate(), cfg.hj->grid, cfg.params, cfg.hj->tolerance);
    nlohmann::json j;
    j["is_solution"] = r.is_solution;
    j["tolerance"] = cfg.hj->tolerance;
    j["max_abs_residual"] = r.max_abs_residual;
    j["worst_sample"] = r.worst_sample;
    j["worst_row"] = r.worst_row;
    j["row_max"] = r.row_max;
    std::cout << j.dump(2) << '\n';
    return r.is_solution ? kExitOk : kExitSemantic;
}

int cmd_oracle(long n, std::uint64_t seed, const std::string& variant_name, bool fd) {
    const auto variant = uvr::parse_variant(variant_name);
    if (!variant) {
        std::cerr << "error: unknown variant \"" << variant_name << "\"\n";
        return kExitConfig;
    }
    if (n < 1) {
        std::cerr << "error: --n must be >= 1\n";
        return kExitConfig;
    }
    const uvr::OracleReport r = uvr::run_oracle(n, seed, *variant, fd);
    std::printf("variant=%s n=%ld seed=%llu mode=%s\n", std::string(uvr::to_string(r.variant)).c_str(), r.n,
                static_cast<unsigned long long>(r.seed), r.fd ? "fd" : "analytic");
    std::printf("max_rel_deviation=%.17g worst_sample=%ld tolerance=%.3g %s\n", r.max_rel_deviation,
                r.worst_sample, r.tolerance, r.passed() ? "PASS" : "FAIL");
    return r.passed() ? kExitOk : kExitSemantic;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Underwater vehicle with internal rotors: reduced dynamics toolkit"};
    app.require_subcommand(1);

    std::string config;
    std::string out;
    auto* simulate = app.add_subcommand("simulate", "integrate a scenario, write CSV and a JSON summary");
    simulate->add_option("--config", config, "scenario JSON")->required();
    simulate->add_option("--out", out, "trajectory CSV path")->required();

    auto* check = app.add_subcommand("check", "run the invariant audit on a scenario");
    check->add_option("--config", config, "scenario JSON")->required();

    auto* hj = app.add_subcommand("hj", "check a candidate one-form against the HJ equations");
    hj->add_option("--config", config, "scenario JSON with an hj section")->required();

    long n = 0;
    std::uint64_t seed = 0;
    std::string variant;
    bool fd = false;
    auto* oracle = app.add_subcommand("oracle", "compare hand-coded EOM with the bracket engine");
    oracle->add_option("--n", n, "number of random samples")->required();
    oracle->add_option("--seed", seed, "PRNG seed")->required();
    oracle->add_option("--variant", variant, "coincident|noncoincident|kirchhoff_coincident|kirchhoff_noncoincident")
        ->required();
    oracle->add_flag("--fd", fd, "use finite-difference gradients");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(config, out);
        if (check->parsed()) return cmd_check(config);
        if (hj->parsed()) return cmd_hj(config);
        if (oracle->parsed()) return cmd_oracle(n, seed, variant, fd);
    } catch (const uvr::io::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const uvr::ValidationError& e) {
        std::cerr << "config error: " << config << ": " << e.what() << '\n';
        return kExitConfig;
    } catch (const uvr::IntegrationError& e) {
        std::cerr << "integration failed: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitConfig;
}
