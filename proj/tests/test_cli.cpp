#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "coldplasma/cli.hpp"

using namespace coldplasma::cli;

namespace {

std::string binary() {
    const char* p = std::getenv("COLDPLASMA_CLI");
    return p ? p : "./coldplasma";
}

int run_cli(const std::string& args) {
    const int status = std::system((binary() + " " + args + " 2>/dev/null").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string first_line(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    return line;
}

std::size_t line_count(const std::string& path) {
    std::ifstream in(path);
    std::size_t n = 0;
    for (std::string l; std::getline(in, l);) ++n;
    return n;
}

const std::string tmp = "/tmp/coldplasma_cli_";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config keys and validation") {
    RunConfig c;
    set_field(c, "samples", "11");
    set_field(c, "rel_tol", "1e-9");
    set_field(c, "P0", "0.25");
    set_field(c, "a_star", "1.5");
    CHECK(c.samples == 11);
    CHECK(c.rel_tol == 1e-9);
    CHECK(*c.P0 == 0.25);
    CHECK(c.profile_params.at("a_star") == "1.5");
    CHECK_THROWS(set_field(c, "nonsense", "1"));
    CHECK_THROWS(set_field(c, "samples", "2.5"));
    CHECK_THROWS(set_field(c, "cfl", "fast"));

    RunConfig v;
    v.command = "classify";
    CHECK_NOTHROW(validate(v));
    v.grid = 8;
    CHECK_THROWS(validate(v));
    v.grid = 4000;
    v.rel_tol = 0.0;
    CHECK_THROWS(validate(v));
    v.rel_tol = 1e-10;
    v.rho0 = 1.0;
    v.P0 = 0.0;
    CHECK_THROWS(validate(v));
    RunConfig none;
    CHECK_THROWS(validate(none));
}

TEST_CASE("number formatting round-trips") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(format_number(x)) == x);
    CHECK(format_number(2.0) == "2");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("classify example is smooth") {
    const std::string csv = tmp + "classify.csv", js = tmp + "classify.json";
    REQUIRE(run_cli("classify --model nonrel --profile sine amplitude=0.3 wavenumber=1 --out " + csv +
                    " --summary " + js) == 0);
    CHECK(first_line(csv) == "rho,verdict,delta,c2,theta_star");
    const auto j = nlohmann::json::parse(slurp(js));
    CHECK(j["global_verdict"] == "smooth");
    CHECK(j["aggregation"] == "sampled");
    CHECK(j["criterion"] == "theorem1");
    CHECK(j["verdicts"][0].contains("evidence"));
    CHECK(j["verdicts"][0].contains("inputs"));
}

TEST_CASE("breaking is reported with exit status 2") {
    CHECK(run_cli("classify --model nonrel --profile sine amplitude=0.8 wavenumber=1 --out /dev/null") == 2);
    CHECK(run_cli("char --model nonrel --P0 0 --E0 0 --p0 0 --e0 0.7 --out /dev/null") == 2);
    CHECK(run_cli("char --model nonrel --P0 0 --E0 0 --p0 0 --e0 0.2 --out /dev/null") == 0);
    CHECK(run_cli("hill --model rel --rho0 0.7 --out /dev/null") == 2);
}

TEST_CASE("wave example") {
    const std::string csv = tmp + "wave.csv", js = tmp + "wave.json";
    REQUIRE(run_cli("wave --model rel --w 3 --E0 1 --P0 0 --periods 2 --out " + csv + " --summary " + js) == 0);
    CHECK(first_line(csv) == "xi,P,E");
    CHECK(line_count(csv) == 2 * 256 + 2);
    const auto j = nlohmann::json::parse(slurp(js));
    CHECK(j["I2"].get<double>() == doctest::Approx(1.0));
    CHECK(run_cli("wave --model rel --w 0.5 --E0 1 --out /dev/null") == 1);
    CHECK(run_cli("wave --model rel --w 3 --I2 1 --E0 1 --out /dev/null") == 1);
}

TEST_CASE("identical configuration gives identical output") {
    const std::string args = "classify --model rel --profile gaussian a_star=2.07 rho_star=3 --samples 21 --rho-min 0 --rho-max 5";
    REQUIRE(run_cli(args + " --out " + tmp + "d1.csv --summary " + tmp + "d1.json") == 2);
    REQUIRE(run_cli(args + " --out " + tmp + "d2.csv --summary " + tmp + "d2.json") == 2);
    CHECK(slurp(tmp + "d1.csv") == slurp(tmp + "d2.csv"));
    CHECK(slurp(tmp + "d1.json") == slurp(tmp + "d2.json"));
    REQUIRE(run_cli("--serial " + args + " --out " + tmp + "d3.csv") == 2);
    CHECK(slurp(tmp + "d1.csv") == slurp(tmp + "d3.csv"));
}

TEST_CASE("flags override the config file") {
    const std::string cfg = tmp + "config.json";
    std::ofstream(cfg) << R"({"model": "nonrel", "profile": "sine", "profile_params": {"amplitude": 0.3}, "samples": 11})";
    REQUIRE(run_cli("--config " + cfg + " classify --out " + tmp + "cfg1.csv") == 0);
    CHECK(line_count(tmp + "cfg1.csv") == 12);
    REQUIRE(run_cli("--config " + cfg + " classify --samples 21 --out " + tmp + "cfg2.csv") == 0);
    CHECK(line_count(tmp + "cfg2.csv") == 22);
    std::ofstream(tmp + "bad.json") << R"({"samplez": 3})";
    CHECK(run_cli("--config " + tmp + "bad.json classify --out /dev/null") == 1);
}

TEST_CASE("errors exit with status 1") {
    CHECK(run_cli("classify --profile square --out /dev/null") == 1);
    CHECK(run_cli("classify --profile table path=/nonexistent.csv --out /dev/null") == 1);
    CHECK(run_cli("char --rho0 1 --P0 0.2 --out /dev/null") == 1);
    CHECK(run_cli("simulate --profile sine --a-star 2 --out /dev/null") == 1);
    CHECK(run_cli("simulate --grid 8 --out /dev/null") == 1);
    CHECK(run_cli("") == 1);
}

TEST_CASE("simulate writes diagnostics and snapshots") {
    const std::string d = tmp + "diag.csv", s = tmp + "snap.csv", js = tmp + "sim.json";
    REQUIRE(run_cli("simulate --model rel --a-star 2.07 --rho-star 3.0 --grid 200 --theta-max 1 --snapshots " + s +
                    " --snapshot-interval 0.5 --out " + d + " --summary " + js) == 0);
    CHECK(first_line(d) == "theta,N_max,N_origin,rho_of_max");
    CHECK(first_line(s) == "theta,rho,P,E,N");
    CHECK(line_count(s) == 1 + 3 * 200);
    const auto j = nlohmann::json::parse(slurp(js));
    CHECK(j["breaking"].is_null());
    CHECK(j["profile"]["parameters"]["a_star"].get<double>() == doctest::Approx(2.07));
}

}
