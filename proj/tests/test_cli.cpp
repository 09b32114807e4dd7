#include "pae/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "pae");
    std::ostringstream out, err;
    int code = pae::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
    auto p = std::filesystem::temp_directory_path() / ("pae_test_" + name);
    std::ofstream(p) << body;
    return p.string();
}

} // namespace

TEST_CASE("eval") {
    auto r = run({"eval", "-e", "tr(S;S)"});
    CHECK(r.code == 0);
    CHECK(r.out == "30\n");
    CHECK(run({"eval", "-e", "tr(over)"}).out == "2 i\n");
    CHECK(run({"eval", "-e", "1/2 - 1/2i"}).out == "1/2 - 1/2 i\n");

    auto nc = run({"eval", "-e", "S"});
    CHECK(nc.code == 1);
    CHECK(nc.err.find("not closed") != std::string::npos);

    CHECK(run({"eval", "-e", "cup ; S"}).code == 1);
    CHECK(run({"eval"}).code == 2);

    std::string f = temp_file("prog.pa", "# closed\nlet a = S ; S\ntr(a)\n");
    CHECK(run({"eval", f}).out == "30\n");
    CHECK(run({"eval", "/nonexistent/file.pa"}).code == 1);
}

TEST_CASE("eval json") {
    auto r = run({"--format", "json", "eval", "-e", "tr(S;S)"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["value"]["re"] == "30");
    CHECK(j["value"]["im"] == "0");
    CHECK(j["s2_applications"].get<int>() >= 1);
    CHECK(j.contains("terms_peak"));
    CHECK(j.contains("crossings_resolved"));
    CHECK(j.contains("wall_ms"));
}

TEST_CASE("trace steps go to stderr") {
    auto r = run({"--trace-steps", "eval", "-e", "tr(S;S)"});
    CHECK(r.out == "30\n");
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("jw, theta, chen") {
    CHECK(run({"jw", "2"}).out == "id(2) - 1/2 e(1,2)\n");
    CHECK(run({"jw", "0"}).out == "id(0)\n");
    CHECK(run({"jw", "-1"}).code != 0);
    CHECK(run({"theta", "5", "5", "8"}).out == "18/5\n");
    CHECK(run({"theta", "3", "3", "3"}).code == 1);
    auto ch = run({"chen", "6", "6"});
    CHECK(ch.code == 0);
    CHECK(ch.out.rfind("1/7, ", 0) == 0);
    auto js = nlohmann::json::parse(run({"--format", "json", "chen", "1", "1"}).out);
    REQUIRE(js.size() == 2);
    CHECK(js[0]["k"] == 0);
    CHECK(js[1]["k"] == 2);
}

TEST_CASE("verify") {
    auto r = run({"verify", "traces"});
    CHECK(r.code == 0);
    CHECK(r.out.find("traces: 8/8 passed") != std::string::npos);
    // Text output is deterministic and independent of the thread count.
    CHECK(run({"--threads", "3", "verify", "traces"}).out == r.out);

    auto bad = run({"verify", "bogus"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("traces") != std::string::npos);

    auto j = nlohmann::json::parse(run({"--format", "json", "verify", "closed_values"}).out);
    REQUIRE(j.is_array());
    CHECK(j.size() == 6);
    for (const auto& c : j) {
        CHECK(c["pass"] == true);
        CHECK(c.contains("anchor"));
        CHECK(c.contains("ms"));
    }
    CHECK(run({"verify", "traces", "--timings"}).out.find(" ms\n") != std::string::npos);
}

TEST_CASE("gram") {
    auto r = run({"gram", temp_file("g1.txt", "f(4)\n\n# comment\nS\n")});
    CHECK(r.code == 0);
    CHECK(r.out == "[5, 0]\n[0, 30]\nrank 2\n");
    CHECK(run({"gram", temp_file("g2.txt", "id(1)\n")}).out == "[2]\nrank 1\n");
    CHECK(run({"gram", temp_file("g3.txt", "")}).out == "rank 0\n");
    auto mixed = run({"gram", temp_file("g4.txt", "S\nid(3)\n")});
    CHECK(mixed.code == 1);
    CHECK(mixed.err.find("arity") != std::string::npos);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--max-jw", "3", "jw", "2"}).code == 2);
    CHECK(run({"--format", "xml", "jw", "2"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}
