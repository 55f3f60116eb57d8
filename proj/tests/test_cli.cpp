#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = srrham::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / ("srrham_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

std::string write(const fs::path& path, const std::string& text) {
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST_CASE("gen emits the systematic [7,4,3] code") {
    const Result r = run({"gen", "-r", "3", "-q", "2", "--systematic"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["n"] == 7);
    CHECK(j["k"] == 4);
    CHECK(j["systematic_positions"] == json({1, 2, 3, 4}));
    CHECK(j["generator"][0] == json({1, 0, 0, 0, 0, 1, 1}));

    const json natural = json::parse(run({"gen", "-r", "3", "-q", "2", "--layout", "natural"}).out);
    CHECK(natural["generator"][0] == json({1, 1, 1, 0, 0, 0, 0}));
    CHECK(natural["systematic_positions"] == json({3, 5, 6, 7}));
}

TEST_CASE("round trip through a code file") {
    const fs::path dir = temp_dir();
    const std::string code = write(dir / "code.json", run({"gen", "-r", "3", "-q", "2", "--layout", "natural"}).out);

    const Result check = run({"check", code, "--demand", "1,1,1,2", "--capacity", "1"});
    REQUIRE(check.code == 0);
    const json c = json::parse(check.out);
    CHECK(c["member"] == true);
    CHECK(c["demand"] == json({"1/1", "1/1", "1/1", "2/1"}));
    CHECK(c["allocation"].is_array());

    const json rec = json::parse(run({"recovery", code}).out);
    CHECK(rec["symbols"][0]["sets"] == json({{3}, {1, 4, 6}, {1, 5, 7}, {2, 4, 5}, {2, 6, 7}}));

    // the regenerated file re-reads to the same bytes
    const std::string again = write(dir / "again.json", run({"import", code}).out);
    CHECK(run({"gen", "-r", "3", "-q", "2", "--layout", "natural"}).out == run({"import", again}).out);

    const json out_of_region = json::parse(run({"check", code, "--demand", "3,1,0,0"}).out);
    CHECK(out_of_region["member"] == false);
    CHECK(out_of_region["allocation"].is_null());
    fs::remove_all(dir);
}

TEST_CASE("query subcommands") {
    CHECK(json::parse(run({"max", "-r", "4", "-q", "2"}).out)["value"] == "11/1");
    CHECK(json::parse(run({"lambda-star", "-r", "3", "-q", "3", "--symbol", "2"}).out)["lambda_star"] == "5/2");
    const json delta = json::parse(run({"delta", "-r", "3", "-q", "2"}).out);
    CHECK(delta["delta"] == "3/1");
    CHECK(delta["ceil"] == "3");
    const json sb = json::parse(run({"subset", "-r", "3", "-q", "2", "--layout", "natural", "--subset", "a,b,d"}).out);
    CHECK(sb["predicted"] == "4/1");
    CHECK(sb["computed"] == "4/1");
    CHECK(json::parse(run({"subset", "-r", "3", "-q", "2", "--rows"}).out)["all_tight"] == true);
    const json stats = json::parse(run({"stats", "-r", "3", "-q", "2"}).out);
    CHECK(stats["nu"] == 5);
    CHECK(stats["tau"] == 5);
    CHECK(stats["mu_f"] == "5/1");
    const json wf = json::parse(run({"waterfill", "-r", "3", "-q", "2", "--demand", "4,0,0,0"}).out);
    CHECK(wf["served"] == json({"3/1", "0/1", "0/1", "0/1"}));
    CHECK(wf["residual"] == json({"1/1", "0/1", "0/1", "0/1"}));
    const json m3 = json::parse(run({"m3", "-r", "5"}).out);
    CHECK(m3["closed_form"] == 90);
    CHECK(m3["brute_force"] == 90);
    const json ver = json::parse(run({"verify", "-r", "3", "-q", "2"}).out);
    CHECK(ver["all_pass"] == true);
    CHECK(ver["claims"][0].contains("paper_anchor"));
}

TEST_CASE("import of a bare generator") {
    const fs::path dir = temp_dir();
    const std::string g = write(dir / "g.json", "[[1,1,0,0,1,1,0],[0,0,1,0,1,1,0],[1,0,1,0,1,0,1],[0,1,1,1,1,0,0]]");
    const Result r = run({"import", g, "-q", "2"});
    REQUIRE(r.code == 0);
    const std::string code = write(dir / "ns.json", r.out);
    CHECK(json::parse(r.out)["systematic_positions"].is_null());
    CHECK(json::parse(run({"lambda-star", code}).out)["lambda_star"] == json({"3/1", "7/3", "3/1", "3/1"}));
    CHECK(run({"waterfill", code, "--demand", "1,1,1,1"}).code == 2);
    fs::remove_all(dir);
}

TEST_CASE("slice emits a CSV grid") {
    const Result r = run({"slice", "-r", "3", "-q", "2", "--layout", "natural", "--fix", "d=0", "--axes", "a,b,c", "--max", "3",
                          "--step", "1"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "lambda_1,lambda_2,lambda_3,member");
    std::size_t rows = 0, members = 0;
    while (std::getline(in, line)) {
        ++rows;
        members += line.ends_with(",true");
    }
    CHECK(rows == 64);
    // lattice points with a+b+c <= 3 and every pair <= 3
    CHECK(members == 20);
}

TEST_CASE("input errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"gen", "-r", "3"}).code == 2);
    CHECK(run({"gen", "-r", "1", "-q", "2"}).code == 2);
    CHECK(run({"gen", "-r", "3", "-q", "4"}).code == 2);
    CHECK(run({"check", "-r", "3", "-q", "2", "--demand", "1,x,1,1"}).code == 2);
    CHECK(run({"check", "-r", "3", "-q", "2", "--demand", "1,1"}).code == 2);
    CHECK(run({"check", "/nonexistent/code.json", "--demand", "1,1,1,1"}).code == 2);
    CHECK(run({"check", "-r", "3", "-q", "2", "--demand", "1,1,1,1", "--bogus"}).code == 2);
    CHECK(run({"check", "-r", "3", "-q", "2", "--demand", "1,1,1,1", "--capacity", "0"}).code == 2);
    const Result r = run({"check", "-r", "3", "-q", "2", "--demand", "1/0,1,1,1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") == 0);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

    const fs::path dir = temp_dir();
    CHECK(run({"recovery", write(dir / "bad.json", "{\"q\": 2")}).code == 2);
    CHECK(run({"recovery", write(dir / "partial.json", "{\"q\": 2, \"r\": 3}")}).code == 2);
    fs::remove_all(dir);
}

TEST_CASE("pivot ceiling exits with 3") {
    ::setenv("SRRHAM_PIVOT_LIMIT", "1", 1);
    CHECK(run({"max", "-r", "3", "-q", "2"}).code == 3);
    ::setenv("SRRHAM_PIVOT_LIMIT", "abc", 1);
    CHECK(run({"max", "-r", "3", "-q", "2"}).code == 2);
    ::unsetenv("SRRHAM_PIVOT_LIMIT");
    CHECK(run({"max", "-r", "3", "-q", "2"}).code == 0);
    CHECK(run({"waterfill", "-r", "3", "-q", "2", "--demand", "3,0,0,0", "--event-limit", "0"}).code == 3);
}

TEST_CASE("output file and determinism") {
    const fs::path dir = temp_dir();
    const fs::path target = dir / "out.json";
    const Result r = run({"--out", target.string(), "verify", "-r", "4", "-q", "2"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(target);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == run({"verify", "-r", "4", "-q", "2"}).out);

    const fs::path code_file = dir / "code.json";
    REQUIRE(run({"gen", "-r", "3", "-q", "2", "--out", code_file.string()}).code == 0);
    CHECK(json::parse(run({"lambda-star", code_file.string()}).out)["lambda_star"].size() == 4);
    fs::remove_all(dir);
}

TEST_CASE("help") {
    const Result r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("waterfill") != std::string::npos);
}
