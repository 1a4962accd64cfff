#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "levyheat/report.hpp"

using namespace levyheat;

namespace {

const std::string kCli = LEVYHEAT_CLI_PATH;

// all scratch files live under ./scratch so manual runs from the source tree
// leave it clean
std::string scratch(const std::string& name) {
    std::filesystem::create_directories("scratch");
    return "scratch/" + name;
}

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string out_path = scratch("cli_test_stdout.txt");
    const int rc = std::system((kCli + " " + args + " > " + out_path + " 2>&1").c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

std::string write_symbol(const std::string& name, const std::string& json) {
    const std::string path = scratch(name);
    std::ofstream out(path);
    out << json;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("grid parsing", "[cli]") {
    auto g = parse_grid("0.1:10:3log");
    REQUIRE(g.size() == 3);
    CHECK(g[0] == 0.1);
    CHECK(std::abs(g[1] - 1.0) < 1e-12);
    CHECK(g[2] == 10.0);
    auto l = parse_grid("0:2:5lin");
    CHECK(l.front() == 0.0);
    CHECK(l.back() == 2.0);
    CHECK_THROWS_AS(parse_grid("1:2:0log"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("0:1:4log"), std::invalid_argument);
    CHECK(parse_list("1,2.5,3").size() == 3);
    // 17-significant-digit round trip
    const double v = 0.12345678901234567;
    CHECK(std::stod(format_float(v)) == v);
}

TEST_CASE("eval command matches the closed form", "[cli]") {
    const auto sym = write_symbol("cauchy1.json",
                                  R"({"family":"stable","d":1,"params":{"alpha":1.0}})");
    auto r = run("eval --symbol " + sym + " --t 1 --x-grid 0.1:10:20log");
    REQUIRE(r.code == 0);
    std::stringstream ss(r.out);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "t,x,p,abs_err,flag");
    int rows = 0;
    while (std::getline(ss, line)) {
        std::stringstream ls(line);
        std::string tf, xf, pf;
        std::getline(ls, tf, ',');
        std::getline(ls, xf, ',');
        std::getline(ls, pf, ',');
        const double x = std::stod(xf), p = std::stod(pf);
        const double want = 1.0 / (3.14159265358979324 * (1.0 + x * x));
        CHECK(std::abs(p - want) < 1e-8 * want);
        ++rows;
    }
    CHECK(rows == 20);
}

TEST_CASE("eval error paths and flags", "[cli]") {
    CHECK(run("eval --symbol no_such.json --t 1 --x-grid 1:2:2log").code == 2);
    const auto geo = write_symbol(
        "geo1.json", R"({"family":"geometric_stable","d":1,"params":{"alpha":1.0}})");
    CHECK(run("eval --symbol " + geo + " --t 1 --x-grid 1:2:0log").code == 2);
    // x = 0 row carries the P0_INFINITE flag in the singular regime
    auto r = run("eval --symbol " + geo + " --t 0.5 --x-grid 0:1:3lin");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("P0_INFINITE") != std::string::npos);
    const auto bad = write_symbol("bad.json", R"({"family":"nope","d":1})");
    CHECK(run("eval --symbol " + bad + " --t 1 --x-grid 1:2:2log").code == 2);
}

TEST_CASE("eval determinism across jobs", "[cli]") {
    const auto sym = write_symbol(
        "geo15.json", R"({"family":"geometric_stable","d":2,"params":{"alpha":1.5}})");
    const auto out1 = scratch("eval_j1.csv"), out4 = scratch("eval_j4.csv");
    auto r1 = run("eval --symbol " + sym + " --t 0.5,1 --x-grid 0.01:5:12log --jobs 1 "
                  "--out " + out1);
    auto r4 = run("eval --symbol " + sym + " --t 0.5,1 --x-grid 0.01:5:12log --jobs 4 "
                  "--out " + out4);
    REQUIRE(r1.code == 0);
    REQUIRE(r4.code == 0);
    const auto a = slurp(out1), b = slurp(out4);
    CHECK(a == b);
    CHECK(!a.empty());
}

TEST_CASE("sweep command", "[cli]") {
    const auto sym = write_symbol("cauchy1.json",
                                  R"({"family":"stable","d":1,"params":{"alpha":1.0}})");
    const auto base = scratch("sweep_rv");
    auto r = run("sweep --claim RV --symbol " + sym + " --x-grid 1e-3:1e-1:3log --out " +
                 base + " --svg");
    REQUIRE(r.code == 0);
    std::ifstream json(base + ".json");
    nlohmann::json j;
    json >> j;
    CHECK(j["claim"] == "RV");
    CHECK(j["deviation_final"].get<double>() < 0.01);
    const auto svg = slurp(base + ".svg");
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("polyline") != std::string::npos);

    CHECK(run("sweep --claim WHAT --symbol " + sym).code == 2);
    // recurrent symbol cannot reach the Green regime
    auto rg = run("sweep --claim GREEN --symbol " + sym + " --x-grid 0.1:0.1:1log");
    CHECK(rg.code == 4);
}

TEST_CASE("check command", "[cli]") {
    const auto sym = write_symbol("cauchy1.json",
                                  R"({"family":"stable","d":1,"params":{"alpha":1.0}})");
    const auto base = scratch("check_gub3");
    auto r = run("check --claim GUB3 --symbol " + sym + " --x-grid 0.05:2:4log --out " +
                 base);
    REQUIRE(r.code == 0);
    std::ifstream json(base + ".json");
    nlohmann::json j;
    json >> j;
    CHECK(j["verdict"] == "CONSISTENT");
    CHECK(j["c_max"].get<double>() <= 10.0);
    CHECK(run("check --claim NOPE --symbol " + sym).code == 2);

    // comparability claims never exit 5
    const auto iter = write_symbol(
        "iter.json",
        R"({"family":"iterated_geometric","d":1,"params":{"alpha":2.0,"beta":0.5}})");
    auto rc = run("check --claim THM4 --symbol " + iter + " --x-grid 0.01:0.2:3log");
    CHECK(rc.code == 0);
}

TEST_CASE("green and conc commands", "[cli]") {
    const auto geo3 = write_symbol(
        "geo3.json", R"({"family":"geometric_stable","d":3,"params":{"alpha":1.0}})");
    auto r = run("green --symbol " + geo3 + " --lambda 0 --x-grid 0.1:1:3log");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("x,G,abs_err,flag") == 0);

    const auto cauchy = write_symbol("cauchy1.json",
                                     R"({"family":"stable","d":1,"params":{"alpha":1.0}})");
    CHECK(run("green --symbol " + cauchy + " --lambda 0 --x-grid 0.1:1:2log").code == 4);

    const auto vg = write_symbol(
        "vg1.json", R"({"family":"subordinate_bm","d":1,"params":{"bernstein":"gamma"}})");
    auto rc = run("conc --symbol " + vg + " --x-grid 0.1:2:4log");
    REQUIRE(rc.code == 0);
    CHECK(rc.out.find("r,h,K") == 0);
    // no Levy density for the iterated family
    const auto iter = write_symbol(
        "iter.json",
        R"({"family":"iterated_geometric","d":1,"params":{"alpha":2.0,"beta":0.5}})");
    CHECK(run("conc --symbol " + iter + " --x-grid 0.1:2:2log").code == 2);
}

TEST_CASE("verify command", "[cli]") {
    CHECK(run("verify symbols").code == 0);
    CHECK(run("verify nonsense").code == 2);
}
