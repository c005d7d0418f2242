#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qgame/cli.hpp"

using nlohmann::json;
using Catch::Approx;

namespace {
struct CliResult {
    int code;
    std::string out, err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = qgame::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}
}  // namespace

TEST_CASE("classify names the dilemma") {
    const auto r = run_cli({"classify", "--payoff", "3,0,5,1"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["name"] == "prisoners-dilemma");
    CHECK(j["class_id"] == 3);
    CHECK(j["boundary"] == false);
    CHECK(j["nash_equilibria"] == json::array({{1, 1}}));
    CHECK(j["pareto_optima"] == json::array({{0, 0}}));
}

TEST_CASE("classify reports the chicken family on its payoff-order boundary") {
    const auto r = run_cli({"classify", "--payoff", "6,2,8,0"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["name"] == "chicken");
    CHECK(j["boundary"] == true);
    CHECK(j["adjacent"] == json::array({10, 11}));
}

TEST_CASE("classify rejects the degenerate game with exit 1") {
    const auto r = run_cli({"classify", "--payoff", "1,1,1,1"});
    CHECK(r.code == 1);
    CHECK(r.err.find("degenerate") != std::string::npos);
}

TEST_CASE("malformed input exits 2") {
    CHECK(run_cli({"classify", "--payoff", "1,2,3"}).code == 2);
    CHECK(run_cli({"classify"}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"extend", "--payoff", "3,0,5,1", "--gamma", "0.2", "--e", "0.5"}).code == 2);
    CHECK(run_cli({"extend", "--payoff", "3,0,5,1"}).code == 2);
    CHECK(run_cli({"respond", "--payoff", "3,0,5,1", "--gamma", "0.5", "--rb",
                   "1,0,0,0,1,0,0,0,2", "--branch", "+,+"})
              .code == 2);
}

TEST_CASE("transitions of the dilemma through the cli") {
    const auto r = run_cli({"transitions", "--payoff", "3,0,5,1"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["thresholds"].size() == 1);
    CHECK(std::fabs(j["thresholds"][0].get<double>() - 1.0 / 3.0) < 1e-9);
    CHECK(j["intervals"].size() == 2);
    CHECK(j["intervals"][0]["ne"].size() == 2);

    const auto rc = run_cli({"transitions", "--payoff", "6,2,8,0"});
    CHECK(json::parse(rc.out)["thresholds"].empty());
}

TEST_CASE("gparams round trip through the inverse flag") {
    const auto fwd = run_cli({"gparams", "--payoff", "3,0,5,1"});
    REQUIRE(fwd.code == 0);
    const json j = json::parse(fwd.out);
    CHECK(j["g0"] == Approx(4.5));
    CHECK(j["gA"] == Approx(-1.5));
    std::ostringstream arg;
    arg << j["g0"].get<double>() << "," << j["gA"].get<double>() << "," << j["gB"].get<double>()
        << "," << j["gAB"].get<double>();
    const auto inv = run_cli({"gparams", "--from-g", arg.str()});
    REQUIRE(inv.code == 0);
    const json pj = json::parse(inv.out);
    CHECK(pj["payoff"][0][0].get<double>() == Approx(3.0).margin(1e-12));
    CHECK(pj["payoff"][0][1].get<double>() == Approx(0.0).margin(1e-12));
    CHECK(pj["payoff"][1][0].get<double>() == Approx(5.0).margin(1e-12));
    CHECK(pj["payoff"][1][1].get<double>() == Approx(1.0).margin(1e-12));
}

TEST_CASE("robinson emits dot") {
    const auto r = run_cli({"robinson", "--payoff", "3,0,5,1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("digraph", 0) == 0);
    CHECK(r.out.find("->") != std::string::npos);
}

TEST_CASE("extend emits the table as csv") {
    const auto r = run_cli({"extend", "--payoff", "3,0,5,1", "--e", "1"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "strategy,I,Z,Y,X");
    std::getline(is, line);
    CHECK(line == "I,3,1,5,0");
}

TEST_CASE("respond reports a critical rotation") {
    const auto r = run_cli({"respond", "--payoff", "3,0,5,1", "--gamma", "0.6", "--rb",
                            "1,0,0,0,1,0,0,0,1", "--branch", "+,+"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["gradient_norm"].get<double>() < 1e-7);
    CHECK(j["hessian_signature"] == 3);
    CHECK(j["rotation"].size() == 9);
}

TEST_CASE("cloud writes csv with the pinned header") {
    const std::string path = "cloud_test_out.csv";
    const auto r = run_cli({"cloud", "--payoff", "3,0,5,1", "--gamma", "0.5", "--samples", "10",
                            "--seed", "4", "--branch", "+,+", "--out", path});
    REQUIRE(r.code == 0);
    std::ifstream f(path);
    REQUIRE(f.good());
    std::string header;
    std::getline(f, header);
    CHECK(header == "payA,payB,theta1,theta2,theta3,branch");
    int lines = 0;
    for (std::string line; std::getline(f, line);) ++lines;
    CHECK(lines == 10);
    f.close();
    std::remove(path.c_str());
}

TEST_CASE("atlas csv fractions sum to one") {
    const auto r = run_cli({"atlas", "--samples", "2000", "--seed", "1"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "class_id,samples,fraction");
    double total = 0;
    long count = 0;
    while (std::getline(is, line)) {
        const auto c1 = line.find(','), c2 = line.rfind(',');
        count += std::stol(line.substr(c1 + 1, c2 - c1 - 1));
        total += std::stod(line.substr(c2 + 1));
    }
    CHECK(count == 2000);
    CHECK(total == Approx(1.0).margin(1e-9));
}

TEST_CASE("equilibria for the classical dilemma") {
    const auto r = run_cli({"equilibria", "--payoff", "3,0,5,1", "--gamma", "0", "--starts", "8",
                            "--seed", "2"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE_FALSE(j["points"].empty());
    CHECK(j["points"][0]["payA"].get<double>() == Approx(1.0).margin(1e-6));
}

TEST_CASE("verify passes") {
    const auto r = run_cli({"verify", "--samples", "60"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("classify cube csv row") {
    const auto r = run_cli({"classify", "--payoff", "3,0,5,1", "--cube"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string header, row;
    std::getline(is, header);
    std::getline(is, row);
    CHECK(header == "face,u,v,class_id");
    CHECK(row.rfind("+gB,", 0) == 0);
    CHECK(row.substr(row.rfind(',') + 1) == "3");
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli({"--help"}).code == 0);
}
