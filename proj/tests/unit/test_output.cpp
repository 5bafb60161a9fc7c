#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "support/oracles.hpp"

namespace {

std::string header_of(const std::string& csv) { return csv.substr(0, csv.find('\n')); }

std::string csv_text(const uvr::Trajectory& traj) {
    std::ostringstream out;
    uvr::io::write_csv(out, traj);
    return out.str();
}

uvr::IntegratorSpec short_run() {
    uvr::IntegratorSpec s;
    s.dt = 0.01;
    s.t_end = 0.1;
    return s;
}

}  // namespace

TEST_CASE("CSV headers per variant", "[output]") {
    const auto coin = uvr::integrate(oracle::standard_initial(), oracle::standard_params(), uvr::ZeroLaw{}, short_run());
    CHECK(header_of(csv_text(coin)) == "t,Pi1,Pi2,Pi3,P1,P2,P3,theta1,theta2,l1,l2,energy,C_PP,C_PiP");

    const auto nc = uvr::integrate(oracle::standard_initial_nc(), oracle::standard_params_nc(), uvr::ZeroLaw{}, short_run());
    CHECK(header_of(csv_text(nc)) ==
          "t,Pi1,Pi2,Pi3,P1,P2,P3,Gamma1,Gamma2,Gamma3,theta1,theta2,l1,l2,energy,C_PP,C_PiP,C_GG,C_PG");

    const auto k = uvr::integrate(uvr::ReducedState::kirchhoff_coincident({1, 0.5, -0.2}, {0.3, 1, 0}),
                                  oracle::standard_params(), uvr::ZeroLaw{}, short_run());
    const std::string text = csv_text(k);
    CHECK(header_of(text) == "t,Pi1,Pi2,Pi3,P1,P2,P3,theta1,theta2,l1,l2,energy,C_PP,C_PiP");
    const std::string row = text.substr(text.find('\n') + 1);
    CHECK(row.rfind("0,1,0.5,-0.20000000000000001,0.29999999999999999,1,0,0,0,0,0,", 0) == 0);
}

TEST_CASE("CSV numbers parse back bit-identically", "[output][property]") {
    uvr::Sampler s(301);
    for (int i = 0; i < 10000; ++i) {
        const double v = (s.unit() - 0.5) * std::pow(10.0, s.uniform(-300, 300));
        CHECK(std::strtod(uvr::io::format_double(v).c_str(), nullptr) == v);
    }
    CHECK(uvr::io::format_double(0.1) == "0.10000000000000001");
    CHECK(uvr::io::format_double(2.0) == "2");
}

TEST_CASE("CSV rows match the recorded samples", "[output]") {
    const auto traj = uvr::integrate(oracle::standard_initial(), oracle::standard_params(), uvr::ZeroLaw{}, short_run());
    std::istringstream in(csv_text(traj));
    std::string line;
    std::getline(in, line);
    std::size_t n = 0;
    while (std::getline(in, line)) {
        const auto& sample = traj.samples.at(n++);
        std::vector<double> values;
        std::stringstream fields(line);
        std::string cell;
        while (std::getline(fields, cell, ',')) values.push_back(std::strtod(cell.c_str(), nullptr));
        REQUIRE(values.size() == 14);
        CHECK(values[0] == sample.t);
        CHECK(values[1] == sample.state.pi().x);
        CHECK(values[11] == sample.energy);
        CHECK(values[12] == sample.casimirs[0]);
        CHECK(values[13] == sample.casimirs[1]);
    }
    CHECK(n == traj.samples.size());
}

TEST_CASE("summary JSON", "[output]") {
    uvr::IntegratorSpec s = short_run();
    s.method = uvr::Method::ImplicitMidpoint;
    const auto traj = uvr::integrate(oracle::standard_initial_nc(), oracle::standard_params_nc(), uvr::ZeroLaw{}, s);
    const auto j = uvr::io::summary_json(traj, 0.25);
    CHECK(j["step_count"] == 10);
    CHECK(j["variant"] == "noncoincident");
    CHECK(j["casimir_max_drift"].size() == 3);
    CHECK(j["casimir_max_drift"].contains("P.Gamma"));
    CHECK(j["midpoint_iterations_max"].get<int>() >= 1);
    CHECK(j["wall_time_s"] == 0.25);
    CHECK(j["energy_initial"] == traj.samples.front().energy);

    CHECK(uvr::io::default_summary_path("out/run.csv") == "out/run.summary.json");
    CHECK(uvr::io::default_summary_path("run") == "run.summary.json");
}
