#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gamblekit/cli.hpp"
#include "gamblekit/serialize.hpp"

using namespace gamblekit;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("gamblekit_test_" + name);
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::vector<std::string>& header) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    header.clear();
    std::stringstream hs(line);
    for (std::string cell; std::getline(hs, cell, ',');) header.push_back(cell);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("analyze the bar-room game") {
    const Result r = run({"analyze", "--n", "100", "--u", "1.5", "--d", "0.6", "--p", "0.5", "--stake", "100",
                          "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(j.at("expected_profit").get<double>() == doctest::Approx(-68.328).epsilon(1e-4));
    CHECK(j.at("profit").at("win_prob").get<double>() == doctest::Approx(0.136).epsilon(1e-3));
    CHECK(j.at("asymptotics").at("regime") == "loss");
    GameParams g;
    g.stake = 100;
    CHECK(j.at("profit").get<ProfitAnalysis>() == expected_net_profit(g));
    CHECK(j.at("variance_report").get<VarianceReport>() == variance_report(g));
    CHECK(j.at("params").get<GameParams>() == g);
}

TEST_CASE("analyze one round as text") {
    const Result r = run({"analyze", "--n", "1", "--u", "1.5", "--d", "0.6"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("\ng: 0.29999999999999999\n") != std::string::npos);
    CHECK(r.out.find("regime: loss\n") != std::string::npos);
}

TEST_CASE("validation failures exit with 2") {
    const Result r = run({"analyze", "--u", "1.0", "--d", "1.0"});
    CHECK(r.code == kExitValidation);
    CHECK(r.err.find("u != d") != std::string::npos);
    CHECK(run({"analyze", "--d", "1.5"}).code == kExitValidation);
    CHECK(run({"analyze", "--n", "abc"}).code == kExitValidation);
    CHECK(run({"analyze", "--variant", "half"}).code == kExitValidation);
    CHECK(run({"simulate", "--runs", "5"}).code == kExitValidation);
    CHECK(run({"simulate", "--seed", "1", "--runs", "0"}).code == kExitValidation);
    CHECK(run({"bogus"}).code == kExitValidation);
    CHECK(run({}).code == kExitValidation);
    CHECK(run({"sweep", "--var", "u", "--u", "1.5", "--lo", "1.1", "--hi", "2", "--steps", "3"}).code ==
          kExitValidation);
    CHECK(run({"sweep", "--var", "n", "--lo", "1", "--hi", "2", "--steps", "3"}).code == kExitValidation);
    CHECK(run({"sweep", "--var", "p", "--lo", "1", "--hi", "0", "--steps", "3"}).code == kExitValidation);
    CHECK(run({"sweep", "--var", "p", "--lo", "0", "--hi", "1", "--steps", "0"}).code == kExitValidation);
    CHECK(run({"sweep", "--var", "p", "--values", "0.5", "--outputs", "g,zeta"}).code == kExitValidation);
    CHECK(run({"sweep", "--var", "p", "--values", "0.5", "--outputs", "v1", "--variant", "total-loss"}).code ==
          kExitValidation);
    CHECK(run({"collision", "--m", "0"}).code == kExitValidation);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("I/O failures exit with 3") {
    CHECK(run({"analyze", "--out", "/nonexistent-dir/x.txt"}).code == kExitIo);
    CHECK(run({"collision", "--weights", "/nonexistent-dir/w.txt"}).code == kExitIo);
}

TEST_CASE("sweep writes one row per point") {
    const auto path = temp_path("sweep_p.csv");
    const Result r = run({"sweep", "--var", "p", "--lo", "0", "--hi", "1", "--steps", "50", "--n", "100",
                          "--outputs", "g,A,B,var,v1,v2,v3,v4,v5,win_prob", "--out", path.string()});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.empty());
    std::vector<std::string> header;
    const auto rows = parse_csv(read_file(path), header);
    CHECK(header == std::vector<std::string>{"p", "g", "A", "B", "var", "v1", "v2", "v3", "v4", "v5", "win_prob"});
    REQUIRE(rows.size() == 51);
    CHECK(rows.front()[0] == 0.0);
    CHECK(rows.back()[0] == 1.0);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][1] >= rows[i - 1][1] - 1e-15);
    }
    const std::string text = read_file(path);
    CHECK(text.find('\r') == std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("sweep over n shows a decreasing trend with jumps") {
    const Result r = run({"sweep", "--var", "n", "--lo", "1", "--hi", "200", "--steps", "199"});
    REQUIRE(r.code == kExitOk);
    std::vector<std::string> header;
    const auto rows = parse_csv(r.out, header);
    REQUIRE(rows.size() == 200);
    CHECK(rows[6][0] == 7.0);
    double head = 0, tail = 0;
    int ups = 0;
    for (int i = 0; i < 20; ++i) {
        head += rows[i][1];
        tail += rows[199 - i][1];
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ups += rows[i][1] > rows[i - 1][1] ? 1 : 0;
    }
    CHECK(tail < head);
    CHECK(ups > 0);
}

TEST_CASE("empty output set gives a header-only file") {
    const Result r = run({"sweep", "--var", "u", "--values", "1.2,1.5", "--outputs", ""});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out == "u\n");
}

TEST_CASE("explicit sweep values") {
    const Result r = run({"sweep", "--var", "d", "--values", "0.5, 0.6", "--outputs", "g"});
    REQUIRE(r.code == kExitOk);
    GameParams g;
    g.d = 0.6;
    const std::string expected = "d,g\n0.5," + format_double(expected_net_profit([] {
                                     GameParams h;
                                     h.d = 0.5;
                                     return h;
                                 }()).g) +
                                 "\n0.59999999999999998," + format_double(expected_net_profit(g).g) + "\n";
    CHECK(r.out == expected);
}

TEST_CASE("fair commands") {
    const Result u = run({"fair", "--n", "100", "--d", "0.6", "--p", "0.5", "--format", "json"});
    REQUIRE(u.code == kExitOk);
    const FairSolution s = Json::parse(u.out).at("solution").get<FairSolution>();
    CHECK(s == fair_u_for_d(100, 0.6, 0.5, 1e-12));
    const Result p = run({"fair", "--solve", "p", "--n", "50"});
    REQUIRE(p.code == kExitOk);
    CHECK(p.out.find("status: crossing") != std::string::npos);
    const Result c = run({"fair", "--solve", "curve", "--n", "100", "--d-grid", "0.5,0.7"});
    REQUIRE(c.code == kExitOk);
    CHECK(c.out.rfind("d,bracket_lo,bracket_hi,u_fair,u_fair_times_d,g_lo,g_hi,status\n", 0) == 0);
    CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 3);
}

TEST_CASE("simulate output matches the library") {
    const Result r = run({"simulate", "--runs", "100", "--seed", "42", "--retain-samples"});
    REQUIRE(r.code == kExitOk);
    const BatchStats parsed = Json::parse(r.out).get<BatchStats>();
    CHECK(parsed == simulate_batch(GameParams{}, 100, 42, {true, 1}));
    const Result t = run({"simulate", "--seed", "42", "--trajectory", "--n", "10"});
    REQUIRE(t.code == kExitOk);
    GameParams g;
    g.n = 10;
    CHECK(Json::parse(t.out).get<Trajectory>() == simulate_trajectory(g, 42));
}

TEST_CASE("collision from flags and from a weights file") {
    const Result r = run({"collision", "--n", "100", "--p", "0.5", "--m", "8", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(j.at("collision_probability").get<double>() == doctest::Approx(0.83).epsilon(0.01));
    CHECK(j.at("collision_lower_bound").get<double>() >= 0.24);

    const auto path = temp_path("weights.txt");
    {
        std::ofstream f(path);
        f << "0.25 0.25\n0.25,0.25\n";
    }
    const Result w = run({"collision", "--weights", path.string(), "--m", "2", "--format", "json"});
    REQUIRE(w.code == kExitOk);
    CHECK(Json::parse(w.out).at("all_distinct_probability").get<double>() == doctest::Approx(0.75));
    {
        std::ofstream f(path);
        f << "0.5 0.6\n";
    }
    CHECK(run({"collision", "--weights", path.string(), "--m", "2"}).code == kExitValidation);
    std::filesystem::remove(path);
}

TEST_CASE("repeated invocations are byte identical") {
    const std::vector<std::vector<std::string>> commands{
        {"analyze", "--format", "json"},
        {"sweep", "--var", "n", "--lo", "1", "--hi", "120", "--steps", "119", "--outputs", "g,var,win_prob"},
        {"fair", "--solve", "curve", "--n", "200"},
        {"simulate", "--runs", "5000", "--seed", "7", "--retain-samples"},
        {"collision", "--format", "json"},
    };
    for (const auto& cmd : commands) {
        const Result a = run(cmd);
        const Result b = run(cmd);
        REQUIRE(a.code == kExitOk);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("output does not depend on GAMBLEKIT_THREADS") {
    const std::vector<std::string> sweep{"sweep", "--var", "u", "--lo", "1.01", "--hi", "3", "--steps", "40",
                                         "--outputs", "g,var"};
    const std::vector<std::string> sim{"simulate", "--runs", "20000", "--seed", "9"};
    ::setenv("GAMBLEKIT_THREADS", "1", 1);
    const Result s1 = run(sweep), m1 = run(sim);
    ::setenv("GAMBLEKIT_THREADS", "4", 1);
    const Result s4 = run(sweep), m4 = run(sim);
    ::unsetenv("GAMBLEKIT_THREADS");
    CHECK(s1.out == s4.out);
    CHECK(m1.out == m4.out);
}

}  // TEST_SUITE
