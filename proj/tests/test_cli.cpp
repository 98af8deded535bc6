#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "symrank/render.hpp"

#ifndef SYMRANK_CLI
#error "SYMRANK_CLI must point at the built symrank binary"
#endif

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" SYMRANK_CLI "' " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("symrank_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("prob") {
    Run r = run("prob --n 2 --m 4");
    CHECK(r.code == 0);
    CHECK(has(r.out, "P = 11/16"));
    r = run("prob --n 2 --m 12");
    CHECK(r.code == 0);
    CHECK(has(r.out, "Q = 5/48"));
    r = run("prob --n 0 --m 7");
    CHECK(has(r.out, "P = 1/1"));
    for (const char* route : {"r5", "r3", "explicit", "genfun"}) {
        r = run(std::string("prob --n 5 --m 27 --route ") + route);
        CHECK(r.code == 0);
        CHECK(has(r.out, "P = "));
    }
    r = run("prob --n 6 --m 8 --json");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["P_num"] == "105679");
    CHECK(j["m"] == "8");
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("").code == 2);
    CHECK(run("prob --n 2").code == 2);
    CHECK(run("prob --n 2 --m 1").code == 2);
    CHECK(run("prob --n -1 --m 5").code == 2);
    CHECK(run("prob --n 2 --m 4 --route fast").code == 2);
    CHECK(run("prob --n x --m 4").code == 2);
    CHECK(run("table --p 4").code == 2);
    CHECK(run("table --p 2 --format xml").code == 2);
    CHECK(run("verify --suite nope").code == 2);
    CHECK(run("verify --suite monotone --p-list 2,9").code == 2);
    CHECK(run("limit --p 2 --eps abc").code == 2);
    CHECK(run("limit --p 2 --eps 0").code == 2);
    CHECK(run("detdist --n 2 --p 6").code == 2);
    CHECK(run("sample --n 2 --m 4 --trials 0").code == 2);
    CHECK(run("nosuchcommand").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("table CSV round trip") {
    const auto path = temp_path("table.csv");
    Run r = run("table --p 2 --n-max 6 --mu-max 4 --out '" + path.string() + "'");
    REQUIRE(r.code == 0);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == symrank::kCsvHeader);
    int rows = 0;
    bool saw_11_16 = false;
    while (std::getline(in, line)) {
        const symrank::OutputRecord rec = symrank::parse_csv_row(line);
        const symrank::OutputRecord fresh = symrank::make_record(rec.n, rec.m);
        CHECK(rec.P == fresh.P);
        CHECK(rec.Q == fresh.Q);
        CHECK(rec.P + rec.Q == 1);
        if (rec.n == 1 && rec.mu == 1) CHECK(rec.P == symrank::make_rational(1, 2));
        if (rec.n == 2 && rec.mu == 1) CHECK(rec.P == symrank::make_rational(1, 2));
        if (rec.n == 2 && rec.mu == 2) saw_11_16 = rec.P == symrank::make_rational(11, 16);
        ++rows;
    }
    CHECK(rows == 7 * 4);
    CHECK(saw_11_16);
    std::filesystem::remove(path);

    r = run("table --p 3 --n-max 2 --mu-max 2 --format json");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).size() == 6);

    CHECK(run("table --p 2 --out /nonexistent-dir/x.csv").code == 2);
}

TEST_CASE("verify") {
    Run r = run("verify --suite crossroute --n-max 20 --mu-max 6 --p-list 2,3,5");
    CHECK(r.code == 0);
    CHECK(has(r.out, "PASS"));
    CHECK_FALSE(has(r.out, "FAIL"));
    r = run("verify --suite oracle");
    CHECK(r.code == 0);
    CHECK(has(r.out, "(n=2, m=12)"));
    CHECK(has(r.out, "(n=4, m=2)"));
    r = run("verify --suite bounds");
    CHECK(r.code == 0);
    CHECK(has(r.out, "R^2 < q^(3mu)"));
    r = run("verify");
    CHECK(r.code == 0);
    for (const char* suite : {"crossroute", "oracle", "bounds", "monotone", "genfun", "detdist"})
        CHECK(has(r.out, std::string("== ") + suite));
}

TEST_CASE("sample, limit, detdist") {
    Run r = run("sample --n 6 --m 8 --trials 20000 --seed 42 --workers 2");
    CHECK(r.code == 0);
    CHECK(has(r.out, "exact P = 105679/131072"));
    const Run again = run("sample --n 6 --m 8 --trials 20000 --seed 42 --workers 2");
    CHECK(again.out == r.out);

    r = run("limit --p 2 --mu 1 --eps 1e-9");
    CHECK(r.code == 0);
    CHECK(has(r.out, "lim Q in [0.5805775"));
    CHECK(has(r.out, "[1/2, 1/1]"));

    r = run("detdist --n 2 --p 3 --exhaustive");
    CHECK(r.code == 0);
    CHECK(has(r.out, "1\t2/9"));
    CHECK(has(r.out, "2\t4/9"));
    CHECK_FALSE(has(r.out, "\tno"));
    r = run("detdist --n 2 --p 3 --exhaustive", "SYMRANK_BUDGET=10");
    CHECK(r.code == 2);
    CHECK(has(r.out, "budget"));
}

TEST_CASE("rank") {
    const auto path = temp_path("matrix.txt");
    {
        std::ofstream out(path);
        out << "2 4\n2 0\n0 2\n";
    }
    Run r = run("rank --input '" + path.string() + "'");
    CHECK(r.code == 0);
    CHECK(has(r.out, "m-rank = 1"));
    CHECK(has(r.out, "1 1"));
    {
        std::ofstream out(path);
        out << "2 4\n1 2\n3 1\n";
    }
    CHECK(run("rank --input '" + path.string() + "'").code == 2);
    std::filesystem::remove(path);
    CHECK(run("rank --input /nonexistent/file").code == 2);
    r = run("rank --input - < /dev/null");
    CHECK(r.code == 2);
}
