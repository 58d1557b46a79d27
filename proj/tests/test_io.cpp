#include <catch2/catch_amalgamated.hpp>

#include "covlab/io.hpp"
#include "testutil.hpp"

using namespace covlab;
using namespace covlab::testutil;

TEST_CASE("polytope JSON round trip")
{
    Rng rng(601);
    for (int i = 0; i < 5; ++i) {
        Polytope p = random_polytope(rng, 2 + static_cast<int>(rng.below(2)), 6);
        REQUIRE(polytope_from_json(polytope_to_json(p)) == p);
        REQUIRE(polytope_from_json(polytope_to_hrep_json(p)) == p);
    }
}

TEST_CASE("polytope JSON accepts integers and p/q strings")
{
    Json j = Json::parse(R"({"dim": 2, "vertices": [[0,0],["1",0],[0,"1/1"],["2/2","1"]]})");
    Polytope p = polytope_from_json(j);
    REQUIRE(p == unit_square());

    REQUIRE(thrown_kind([&] {
        polytope_from_json(Json::parse(R"({"dim": 2, "vertices": [[0,0,0],[1,0,0]]})"));
    }) == ErrorKind::Io);
    REQUIRE(thrown_kind([&] { polytope_from_json(Json::parse(R"({"dim": 2})")); })
            == ErrorKind::Io);
}

TEST_CASE("cone JSON forms")
{
    Json rays = Json::parse(R"({"dim": 3, "rays": [[1,0,0],[0,1,0],[0,0,1]]})");
    ConvexCone c = cone_from_json(rays);
    REQUIRE(c.halfspaces.size() == 3);
    REQUIRE(cone_from_json(cone_to_json(c)).halfspaces == c.halfspaces);

    Json section = Json::parse(
        R"({"section": {"dim": 2, "vertices": [["-1/2","-1/2"],["1/2","-1/2"],["-1/2","1/2"],["1/2","1/2"]]}, "height": "1"})");
    ConvexCone pyr = cone_from_json(section);
    REQUIRE(pyr.halfspaces.size() == 4);
    REQUIRE(pyr.rays.size() == 4);
}

TEST_CASE("scalar field CSV round trip")
{
    Rng rng(607);
    Polytope p = random_polytope(rng, 2, 5);
    ScalarField f = cov_grid(p, 5);
    std::string csv = scalar_field_to_csv(f);
    Json side = scalar_field_sidecar(f);
    ScalarField back = scalar_field_from_csv(csv, side);
    REQUIRE(back.values == f.values);
    REQUIRE(back.lo == f.lo);
    REQUIRE(back.hi == f.hi);
    REQUIRE(back.res == f.res);

    SECTION("header and row count")
    {
        REQUIRE(csv.rfind("x1,x2,value\n", 0) == 0);
        REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 26); // header + 25 rows
    }
    SECTION("truncated input is rejected")
    {
        REQUIRE(thrown_kind([&] {
            scalar_field_from_csv("x1,x2,value\n0,0,1\n", side);
        }) == ErrorKind::Io);
    }
}

TEST_CASE("face lattice dump")
{
    Json j = face_lattice_to_json(unit_cube());
    REQUIRE(j.at("faces").size() == 26);
    int facets = 0;
    for (const auto& f : j.at("faces")) {
        if (f.at("dim") == 2) {
            ++facets;
            REQUIRE(f.at("normal_cone_rays").size() == 1);
        }
        for (const auto& id : f.at("vertex_ids"))
            REQUIRE(id.get<int>() < 8);
    }
    REQUIRE(facets == 6);
}
