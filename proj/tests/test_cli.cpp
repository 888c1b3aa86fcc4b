#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + LEEDIVIDE_BIN + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<nlohmann::json> lines(const std::string& s) {
    std::vector<nlohmann::json> out;
    std::istringstream in(s);
    std::string l;
    while (std::getline(in, l))
        if (!l.empty()) out.push_back(nlohmann::json::parse(l));
    return out;
}

std::string table() { return std::string(LEEDIVIDE_DATA_DIR) + "/knots-up-to-9.jsonl"; }

}  // namespace

TEST_CASE("invariant") {
    auto r = run("invariant --ring Z2 'PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]'");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["k_c"] == 1);
    CHECK(j["s_bar"] == -2);

    j = nlohmann::json::parse(run("invariant --ring Z2 U").out);
    CHECK(j["k_c"] == 0);
    CHECK(j["s_bar"] == 0);

    // positive T(2,5)
    r = run("invariant --ring Qh 'PD[X(2,8,3,7),X(4,10,5,9),X(6,2,7,1),X(8,4,9,3),X(10,6,1,5)]'");
    REQUIRE(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["k_c"] == 0);
    CHECK(j["s_bar"] == 4);

    r = run("invariant --format csv --name kink 'PD[X(2,1,1,2)]'");
    CHECK(r.code == 0);
    CHECK(r.out.find("kink,Z2,1,") != std::string::npos);
}

TEST_CASE("invariant errors are structured") {
    const std::string cmd = std::string(LEEDIVIDE_BIN) + " invariant 'PD[X(1,2' 2>&1 >/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    char buf[1024] = {};
    const std::size_t n = fread(buf, 1, sizeof buf - 1, p);
    const int status = pclose(p);
    CHECK(WEXITSTATUS(status) == 1);
    const auto j = nlohmann::json::parse(std::string(buf, n));
    CHECK(j["error"]["code"] == "PARSE_ERROR");
    CHECK(run("invariant --ring F7 U").code == 1);
}

TEST_CASE("verify suites exit 0 on a correct build") {
    for (const char* s : {"rm --moves 20 --scripts 5 --max-crossings 5", "mirror --max-crossings 5", "zeta --max-crossings 5",
                          "torsion --max-crossings 6", "rank --max-crossings 3", "morse --scripts 10"}) {
        INFO(s);
        const Run r = run(std::string("verify ") + s + " --seed 7");
        CHECK(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j["ok"] == true);
        CHECK(!j["properties"].empty());
    }
    CHECK(run("verify nosuch").code != 0);
    CHECK(run("verify rm --ring F7 --moves 1 --scripts 0").code == 1);
}

TEST_CASE("verify is deterministic under a seed") {
    const std::string a = run("verify rm --moves 15 --scripts 4 --max-crossings 5 --seed 3 --jobs 3").out;
    const std::string b = run("verify rm --moves 15 --scripts 4 --max-crossings 5 --seed 3 --jobs 1").out;
    CHECK(a == b);
}

TEST_CASE("batch over the bundled table") {
    const Run z = run("batch " + table(), "LEEDIVIDE_JOBS=4");
    REQUIRE(z.code == 0);
    const auto rz = lines(z.out);
    REQUIRE(rz.size() == 85);
    CHECK(rz.back()["summary"] == true);
    CHECK(rz.back()["rows"] == 84);
    CHECK(rz.back()["errors"] == 0);
    const auto rq = lines(run("batch --ring Qh --jobs 2 " + table()).out);
    REQUIRE(rq.size() == 85);
    for (std::size_t i = 0; i + 1 < rz.size(); ++i) {
        CHECK(rz[i]["s_bar"].get<long>() % 2 == 0);
        CHECK(rz[i]["s_bar"] == rq[i]["s_bar"]);
        CHECK(rz[i]["name"] == rq[i]["name"]);
    }
}

TEST_CASE("batch edge cases") {
    const std::string empty = "leedivide_test_empty.jsonl";
    std::ofstream(empty).close();
    auto r = run("batch " + empty);
    CHECK(r.code == 0);
    auto rows = lines(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0]["rows"] == 0);

    const std::string csv = "leedivide_test_rows.csv";
    std::ofstream(csv) << "name,pd\ntref,\"PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]\"\nbad,PD[X(1\nunknot,U\n";
    r = run("batch --format csv " + csv);
    CHECK(r.code == 0);
    CHECK(r.out.find("tref,Z2,3,3,2,1,0,2,") != std::string::npos);
    CHECK(r.out.find("PARSE_ERROR") != std::string::npos);
    CHECK(r.out.find("\"errors\":1") != std::string::npos);

    const std::string jl = "leedivide_test_rows.jsonl";
    std::ofstream(jl) << "{\"name\":\"a\",\"pd\":[[1,5,2,4],[3,1,4,6],[5,3,6,2]]}\nnot json\n{\"name\":\"u\",\"pd\":\"U\"}\n";
    rows = lines(run("batch " + jl).out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0]["s_bar"] == 2);
    CHECK(rows[1]["error"]["code"] == "PARSE_ERROR");
    CHECK(rows[2]["name"] == "u");

    CHECK(run("batch does-not-exist.jsonl").code == 1);
    std::remove(empty.c_str());
    std::remove(csv.c_str());
    std::remove(jl.c_str());
}

TEST_CASE("script") {
    const std::string path = "leedivide_test_script.json";
    std::ofstream(path) << R"([{"move":"RM1_R","arcs":[1]},{"move":"BIRTH","color":"a"},{"move":"SADDLE","arcs":[1],"loop":0}])";
    const Run r = run("script 'PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]' " + path);
    std::remove(path.c_str());
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["ok"] == true);
    CHECK(j["l"] == -1);
}
