#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = UVR_CLI_PATH;
const std::string kScenarioDir = UVR_SCENARIO_DIR;
const std::string kDataDir = UVR_TEST_DATA_DIR;

struct Run {
    int exit_code;
    std::string out;
    std::string err;
};

fs::path scratch() {
    const fs::path dir = fs::path(UVR_TEST_TMP_DIR) / "cli";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Run run(const std::string& args) {
    const fs::path out = scratch() / "stdout.txt";
    const fs::path err = scratch() / "stderr.txt";
    const std::string cmd = "'" + kCli + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return {WEXITSTATUS(status), slurp(out), slurp(err)};
}

std::string scenario(const std::string& name) { return "--config '" + kScenarioDir + "/" + name + "'"; }
std::string data(const std::string& name) { return "--config '" + kDataDir + "/" + name + "'"; }

}  // namespace

TEST_CASE("simulate writes CSV and summary", "[cli]") {
    const fs::path csv = scratch() / "spin.csv";
    const Run r = run("simulate " + scenario("coincident_spin.json") + " --out '" + csv.string() + "'");
    REQUIRE(r.exit_code == 0);
    const std::string text = slurp(csv);
    CHECK(text.substr(0, text.find('\n')) == "t,Pi1,Pi2,Pi3,P1,P2,P3,theta1,theta2,l1,l2,energy,C_PP,C_PiP");
    CHECK(std::count(text.begin(), text.end(), '\n') == 1002);  // header + t=0 + 1000 decimated samples

    const auto summary = nlohmann::json::parse(slurp(scratch() / "spin.summary.json"));
    CHECK(summary["step_count"] == 10000);
    CHECK(summary.contains("wall_time_s"));
    CHECK(summary["energy_max_rel_drift"].get<double>() <= 1e-8);
    CHECK(summary["casimir_max_drift"]["|P|^2"].get<double>() <= 1e-9);

    const fs::path again = scratch() / "spin_again.csv";
    REQUIRE(run("simulate " + scenario("coincident_spin.json") + " --out '" + again.string() + "'").exit_code == 0);
    CHECK(slurp(again) == text);
}

TEST_CASE("simulate non-coincident header", "[cli]") {
    const fs::path csv = scratch() / "nc.csv";
    REQUIRE(run("simulate " + scenario("noncoincident_tilted.json") + " --out '" + csv.string() + "'").exit_code == 0);
    const std::string text = slurp(csv);
    CHECK(text.substr(0, text.find('\n')) ==
          "t,Pi1,Pi2,Pi3,P1,P2,P3,Gamma1,Gamma2,Gamma3,theta1,theta2,l1,l2,energy,C_PP,C_PiP,C_GG,C_PG");
}

TEST_CASE("simulate error exits", "[cli]") {
    const fs::path csv = scratch() / "bad.csv";
    const Run bad = run("simulate " + data("negative_ibar.json") + " --out '" + csv.string() + "'");
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("params.ibar[0]") != std::string::npos);
    CHECK(bad.err.find("negative_ibar.json:4:") != std::string::npos);

    CHECK(run("simulate " + data("malformed.json") + " --out '" + csv.string() + "'").exit_code == 2);
    CHECK(run("simulate " + scenario("hj_zero.json") + " --out '" + csv.string() + "'").exit_code == 2);
    CHECK(run("simulate " + scenario("coincident_spin.json")).exit_code == 2);
    CHECK(run("simulate --config /nonexistent.json --out '" + csv.string() + "'").exit_code == 2);

    const Run diverge = run("simulate " + data("diverging_midpoint.json") + " --out '" + csv.string() + "'");
    CHECK(diverge.exit_code == 3);
    CHECK(diverge.err.find("did not converge") != std::string::npos);
}

TEST_CASE("check audits scenarios", "[cli]") {
    for (const char* name : {"coincident_spin.json", "noncoincident_tilted.json", "midpoint_spin.json",
                             "kirchhoff_coincident.json"}) {
        INFO(name);
        const Run r = run("check " + scenario(name));
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("FAIL") == std::string::npos);
        CHECK(r.out.find("SKIP") == std::string::npos);
    }

    const Run forced = run("check " + scenario("forced_translation.json"));
    CHECK(forced.exit_code == 0);
    CHECK(forced.out.find("FAIL-EXPECTED") != std::string::npos);
    CHECK(forced.out.find("audit: PASS") != std::string::npos);

    const Run feedback = run("check " + scenario("rotor_feedback.json"));
    CHECK(feedback.exit_code == 0);
    CHECK(feedback.out.find("SKIP") != std::string::npos);

    const Run bad = run("check " + data("negative_ibar.json"));
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("params.ibar[0]") != std::string::npos);
}

TEST_CASE("hj command", "[cli]") {
    const Run zero = run("hj " + scenario("hj_zero.json"));
    CHECK(zero.exit_code == 0);
    const auto zj = nlohmann::json::parse(zero.out);
    CHECK(zj["is_solution"] == true);
    CHECK(zj["max_abs_residual"] == 0.0);

    const Run upright = run("hj " + scenario("hj_noncoincident_upright.json"));
    CHECK(upright.exit_code == 0);

    const Run perturbed = run("hj " + scenario("hj_perturbed.json"));
    CHECK(perturbed.exit_code == 1);
    const auto pj = nlohmann::json::parse(perturbed.out);
    CHECK(pj["is_solution"] == false);
    CHECK(pj["worst_row"] == 2);
    CHECK(pj["worst_sample"] == 0);
    CHECK(std::fabs(pj["max_abs_residual"].get<double>() - 1.0 / 3.0) <= 1e-15);

    CHECK(run("hj " + data("hj_missing_grid.json")).exit_code == 2);
    CHECK(run("hj " + scenario("coincident_spin.json")).exit_code == 2);
}

TEST_CASE("oracle command", "[cli]") {
    const Run a = run("oracle --n 1000 --seed 42 --variant coincident");
    CHECK(a.exit_code == 0);
    CHECK(a.out.find("PASS") != std::string::npos);
    const Run b = run("oracle --n 1000 --seed 42 --variant coincident");
    CHECK(a.out == b.out);

    CHECK(run("oracle --n 1000 --seed 42 --variant noncoincident").exit_code == 0);
    CHECK(run("oracle --n 200 --seed 7 --variant kirchhoff_noncoincident").exit_code == 0);
    CHECK(run("oracle --n 200 --seed 7 --variant coincident --fd").exit_code == 0);
    CHECK(run("oracle --n 200 --seed 7 --variant noncoincident --fd").exit_code == 0);

    CHECK(run("oracle --n 0 --seed 1 --variant coincident").exit_code == 2);
    CHECK(run("oracle --n 10 --seed 1 --variant heavy_top").exit_code == 2);
    CHECK(run("oracle --seed 1 --variant coincident").exit_code == 2);
    CHECK(run("").exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("--help").exit_code == 0);
}
