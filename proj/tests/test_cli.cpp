#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "epscert/format.hpp"
#include "reference_series.hpp"

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string base = "cli_capture_" + std::to_string(counter++);
    std::string out_path = base + ".out", err_path = base + ".err";
    std::string cmd = std::string(EPSCERT_CLI_PATH) + " " + args + " > " + out_path + " 2> " + err_path;
    int status = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = slurp(out_path);
    res.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return res;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) rows.push_back(epscert::split_csv(line));
    return rows;
}

void check_rel(double actual, double expected, double rel = 1e-12) {
    double scale = std::max(1e-30, std::abs(expected));
    CHECK(std::abs(actual - expected) <= rel * scale);
}

}  // namespace

TEST_CASE("cli: table csv reproduces the reference values") {
    RunResult res = run_cli("table --n-max 24 --format csv");
    REQUIRE(res.exit_code == 0);
    auto rows = parse_csv(res.out);
    REQUIRE(rows.size() == 25);
    CHECK(rows[0] == std::vector<std::string>{"N", "S", "s", "t", "E", "e"});
    for (std::size_t i = 0; i < 24; ++i) {
        const ReferenceSeriesRow& ref = reference_series[i];
        const auto& row = rows[i + 1];
        REQUIRE(row.size() == 6);
        CHECK(std::stoul(row[0]) == ref.n);
        check_rel(epscert::parse_double(row[1]), epscert::parse_double(ref.S));
        check_rel(epscert::parse_double(row[2]), epscert::parse_double(ref.s));
        if (ref.n > 1) check_rel(epscert::parse_double(row[3]), epscert::parse_double(ref.t));
        check_rel(epscert::parse_double(row[4]), epscert::parse_double(ref.E));
        check_rel(epscert::parse_double(row[5]), epscert::parse_double(ref.e));
    }
}

TEST_CASE("cli: output is byte-identical across runs") {
    for (const char* cmd : {"table --n-max 50 --format csv", "table --n-max 10 --format json",
                            "quad --disc -420", "constant --p 2 --d-kappa 1 --rho 0 --e 2 "
                            "--epsilon 0.8 --r 2"}) {
        RunResult a = run_cli(cmd);
        RunResult b = run_cli(cmd);
        REQUIRE(a.exit_code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out.size() > 0);
    }
}

TEST_CASE("cli: csv and json encode the same table") {
    RunResult csv = run_cli("table --n-max 40 --format csv");
    RunResult js = run_cli("table --n-max 40 --format json");
    REQUIRE(csv.exit_code == 0);
    REQUIRE(js.exit_code == 0);
    auto rows = parse_csv(csv.out);
    json parsed = json::parse(js.out);
    REQUIRE(parsed.size() == 40);
    for (std::size_t i = 0; i < 40; ++i) {
        const auto& crow = rows[i + 1];
        const json& jrow = parsed[i];
        CHECK(jrow["N"].get<std::size_t>() == std::stoul(crow[0]));
        // identical doubles, not merely close: same value serialized two ways
        CHECK(jrow["S"].get<double>() == epscert::parse_double(crow[1]));
        CHECK(jrow["s"].get<double>() == epscert::parse_double(crow[2]));
        CHECK(jrow["t"].get<double>() == epscert::parse_double(crow[3]));
        CHECK(jrow["E"].get<double>() == epscert::parse_double(crow[4]));
        CHECK(jrow["e"].get<double>() == epscert::parse_double(crow[5]));
    }
}

TEST_CASE("cli: sign report") {
    RunResult res = run_cli("table --n-max 30 --sign-report");
    REQUIRE(res.exit_code == 0);
    json rep = json::parse(res.out);
    CHECK(rep["E_nonpositive"].empty());
    std::vector<std::size_t> expected;
    for (std::size_t n = 2; n <= 14; ++n) expected.push_back(n);
    CHECK(rep["e_negative"].get<std::vector<std::size_t>>() == expected);
}

TEST_CASE("cli: constant certificate") {
    RunResult res = run_cli("constant --p 2 --d-kappa 1 --rho 0 --e 1 --epsilon 1 --r 1");
    REQUIRE(res.exit_code == 0);
    json cert = json::parse(res.out);
    check_rel(cert["log_C_total"].get<double>(), 2.5698561681856990467);
    REQUIRE(cert["levels"].size() == 1);
    CHECK(cert["levels"][0]["argmax"].get<std::vector<int>>() == std::vector<int>{3, 4});
    CHECK(cert["levels"][0]["log_c_closed"].get<double>() == 2.0);
    CHECK(cert["base"]["logC0"].get<double>() == 0.0);
}

TEST_CASE("cli: disc queries") {
    RunResult res = run_cli("disc --p 2 --n 10 --exact");
    REQUIRE(res.exit_code == 0);
    json out = json::parse(res.out);
    CHECK(out["exact_value"].get<std::string>() == "6469693230");
    check_rel(out["log_value"].get<double>(), 22.590394530115656220);

    RunResult tame = run_cli("disc --p 2 --n 3 --tame --exact");
    CHECK(json::parse(tame.out)["exact_value"].get<std::string>() == "105");

    RunResult rel = run_cli("disc --p 2 --ramified 3:1,2 --exact");
    REQUIRE(rel.exit_code == 0);
    CHECK(json::parse(rel.out)["exact_value"].get<std::string>() == "27");
    CHECK(json::parse(rel.out)["N"].get<int>() == 1);
}

TEST_CASE("cli: check margin") {
    RunResult res = run_cli("check --log-order 0 --log-disc 10 --log-c 0 --epsilon 0.5");
    REQUIRE(res.exit_code == 0);
    json out = json::parse(res.out);
    CHECK(out["holds"].get<bool>());
    check_rel(out["margin"].get<double>(), 2.5);
}

TEST_CASE("cli: quad scan json and csv") {
    RunResult js = run_cli("quad scan --max 2000 --epsilon 0.5 --log-c 3.0");
    REQUIRE(js.exit_code == 0);
    json out = json::parse(js.out);
    CHECK(out["violations"].empty());
    CHECK(out["fundamental_count"].get<unsigned long>() > 500);

    RunResult csv = run_cli("quad scan --max 200 --format csv");
    REQUIRE(csv.exit_code == 0);
    auto rows = parse_csv(csv.out);
    CHECK(rows[0] == std::vector<std::string>{"D", "h", "two_rank", "t", "pass"});
    bool saw84 = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][4] == "1");  // genus check passes everywhere
        if (rows[i][0] == "-84") {
            saw84 = true;
            CHECK(rows[i][1] == "4");
            CHECK(rows[i][2] == "2");
            CHECK(rows[i][3] == "3");
        }
    }
    CHECK(saw84);
}

TEST_CASE("cli: modlab") {
    RunResult res = run_cli("modlab --p 3 --lengths 1,2 --mode both --r 2");
    REQUIRE(res.exit_code == 0);
    json out = json::parse(res.out);
    CHECK(out["modes_agree"].get<bool>());
    CHECK(out["levels"].size() == 3);
    CHECK(out["levels"][1]["order"].get<int>() == 9);
    CHECK(out["pr_torsion"]["ok"].get<bool>());

    RunResult ex = run_cli("modlab exhaustive --p 2 --max-len 3 --max-s 2 --r-max 2");
    REQUIRE(ex.exit_code == 0);
    json sum = json::parse(ex.out);
    CHECK(sum["modules"].get<int>() == 9);
    CHECK(sum["violations"].empty());
}

TEST_CASE("cli: validation failures exit 2 with one-line errors") {
    RunResult bad_disc = run_cli("quad --disc -9");
    CHECK(bad_disc.exit_code == 2);
    CHECK(bad_disc.err.find("non-fundamental discriminant") != std::string::npos);
    CHECK(bad_disc.err.find('\n') == bad_disc.err.size() - 1);  // single line
    CHECK(bad_disc.out.empty());

    CHECK(run_cli("table --n-max 0").exit_code == 2);
    CHECK(run_cli("table --n-max 10 --format yaml").exit_code == 2);
    CHECK(run_cli("table --n-max 10 --bogus-flag").exit_code == 2);
    CHECK(run_cli("table").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("disc --p 6 --n 3").exit_code == 2);
    CHECK(run_cli("quad --disc -23 --cap 10").exit_code == 2);       // cap exceeded
    CHECK(run_cli("table --n-max 100 --prime-cap 50").exit_code == 2);
    CHECK(run_cli("modlab --p 2 --lengths 40").exit_code == 2);      // enumeration cap
    CHECK(run_cli("quad scan --max 2").exit_code == 2);
}

TEST_CASE("cli: threads flag does not change scan output") {
    RunResult a = run_cli("quad scan --max 30000 --epsilon 0.4 --log-c 1.0");
    RunResult b = run_cli("--threads 4 quad scan --max 30000 --epsilon 0.4 --log-c 1.0");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(a.out == b.out);
}
