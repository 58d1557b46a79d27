#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "covlab/io.hpp"
#include "testutil.hpp"

using namespace covlab;
using namespace covlab::testutil;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args)
{
    const char* bin = std::getenv("COVLAB_BIN");
    REQUIRE(bin != nullptr);
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe))
        out.append(buf, got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::filesystem::path fixture_dir()
{
    auto dir = std::filesystem::temp_directory_path() / "covlab_cli_fixtures";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_fixture(const std::string& name, const Json& j)
{
    auto path = fixture_dir() / name;
    std::ofstream(path) << j.dump();
    return path.string();
}

} // namespace

TEST_CASE("cov eval and grid")
{
    std::string cube = write_fixture("cube.json", polytope_to_json(unit_cube()));
    auto r = run("cov eval --k " + cube + " --x \"1/4,1/4,1/4\"");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out == "27/64\n");

    r = run("cov eval --k " + cube + " --l " + cube + " --x \"1/2,0,0\"");
    REQUIRE(r.out == "1/2\n");

    r = run("--float cov eval --k " + cube + " --x \"1/4,1/4,1/4\"");
    REQUIRE(r.out == "0.421875\n");

    auto csv_path = (fixture_dir() / "g.csv").string();
    r = run("cov grid --k " + cube + " --res 9 --out " + csv_path);
    REQUIRE(r.exit_code == 0);
    std::ifstream csv(csv_path);
    int lines = 0;
    std::string line;
    while (std::getline(csv, line))
        ++lines;
    REQUIRE(lines == 729 + 1);
    REQUIRE(std::filesystem::exists(csv_path + ".json"));
}

TEST_CASE("faces classify and lattice")
{
    std::string cube = write_fixture("cube2.json", polytope_to_json(unit_cube()));
    auto r = run("faces classify --polytope " + cube + " --w \"0,0,-1\"");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    REQUIRE(j.at("case") == 1);
    REQUIRE(j.at("exponent") == 1);
    REQUIRE(j.at("dim_DPw") == 2);
    REQUIRE(j.at("sum_vanishes") == false);

    r = run("faces lattice --polytope " + cube);
    REQUIRE(Json::parse(r.out).at("faces").size() == 26);

    r = run("faces recover --polytope " + cube + " --w \"0,0,1\"");
    Json rec = Json::parse(r.out);
    REQUIRE(rec.at("f_dim") == 2);
    REQUIRE(rec.at("g_dim") == 2);
    REQUIRE(rec.at("width") == 1);
    REQUIRE(rec.at("f0_chart").size() == 4);
}

TEST_CASE("xray and chord verbs")
{
    Json oct = Json::parse(R"({"dim":3,"rays":[[1,0,0],[0,1,0],[0,0,1]]})");
    std::string cone = write_fixture("oct.json", oct);
    auto r = run("xray --cone " + cone + " --d \"0,0,1\" --y \"1,1\"");
    REQUIRE(r.out == "InfiniteChord\n");
    r = run("xray --cone " + cone + " --d \"0,0,1\" --y \"-1,-1\"");
    REQUIRE(r.out == "0\n");

    std::string sq = write_fixture("sq.json", polytope_to_json(unit_square()));
    r = run("chord --polygon " + sq + " --p \"2,1/2\" --d \"-1,0\"");
    REQUIRE(r.out == "1/2\n");
}

TEST_CASE("syniso check verb")
{
    Rng rng(701);
    Polytope p = random_polytope(rng, 2, 6);
    std::string a = write_fixture("p.json", polytope_to_json(p));
    std::string b = write_fixture("q.json", polytope_to_json(translate(p, Vec{Rat(1), Rat(2)})));
    auto r = run("syniso check --p " + a + " --q " + b);
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    REQUIRE(j.at("synisothetic") == true);
    REQUIRE(!j.at("witness").empty());
}

TEST_CASE("gallery build feeds verify --manifest")
{
    auto dir = (fixture_dir() / "fam").string();
    auto r = run("gallery build parall --out " + dir + " --params alpha=1 beta=1 gamma=1 delta=1");
    REQUIRE(r.exit_code == 0);
    r = run("verify --manifest " + dir + "/expectations.json --seed 11");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.find("RESULT PASS") != std::string::npos);
}

TEST_CASE("verify usage and reproducibility")
{
    auto r = run("verify --suite bogus");
    REQUIRE(r.exit_code == 2);

    auto r1 = run("verify --suite conetomo --seed 7");
    auto r2 = run("verify --suite conetomo --seed 7");
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r1.out == r2.out);
}
