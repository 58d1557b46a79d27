#include <catch2/catch_amalgamated.hpp>

#include "covlab/polytope.hpp"
#include "covlab/rng.hpp"
#include "testutil.hpp"

using namespace covlab;
using namespace covlab::testutil;

TEST_CASE("rational scalar basics")
{
    REQUIRE(parse_rat("3/6") == Rat(1, 2));
    REQUIRE(parse_rat("-4") == Rat(-4));
    REQUIRE(rat_to_string(Rat(22, 8)) == "11/4");
    REQUIRE(rat_to_string(Rat(-6, 3)) == "-2");
    REQUIRE(rat_sqrt_exact(Rat(9, 4)) == Rat(3, 2));
    REQUIRE(!rat_sqrt_exact(Rat(2)));
    REQUIRE_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
}

TEST_CASE("small linear algebra")
{
    Mat a(3, 3);
    a(0, 0) = 2; a(0, 1) = 1; a(0, 2) = 0;
    a(1, 0) = 0; a(1, 1) = 1; a(1, 2) = 3;
    a(2, 0) = 1; a(2, 1) = 0; a(2, 2) = 1;
    REQUIRE(det(a) == Rat(5));
    auto x = solve(a, Vec{Rat(3), Rat(4), Rat(2)});
    REQUIRE(x);
    REQUIRE(a.apply(*x) == Vec{Rat(3), Rat(4), Rat(2)});
    auto inv = inverse(a);
    REQUIRE(inv);
    REQUIRE(inv->apply(a.apply(Vec{Rat(1), Rat(-2), Rat(7)})) == Vec{Rat(1), Rat(-2), Rat(7)});

    Mat sing = Mat::from_rows({Vec{Rat(1), Rat(2)}, Vec{Rat(2), Rat(4)}});
    REQUIRE(rank(sing) == 1);
    auto ns = nullspace(sing);
    REQUIRE(ns.size() == 1);
    REQUIRE(dot(ns[0], Vec{Rat(1), Rat(2)}) == 0);
}

TEST_CASE("convex hull of the cube corners")
{
    Polytope cube = unit_cube();
    REQUIRE(cube.vertices().size() == 8);
    REQUIRE(cube.halfspaces().size() == 6);

    SECTION("interior point is dropped")
    {
        std::vector<Vec> pts(cube.vertices());
        pts.push_back(Vec{Rat(1, 2), Rat(1, 2), Rat(1, 2)});
        REQUIRE(convex_hull(pts) == cube);
    }
    SECTION("boundary non-extreme point is dropped")
    {
        std::vector<Vec> pts(cube.vertices());
        pts.push_back(Vec{Rat(1, 2), Rat(1, 2), Rat(0)});
        pts.push_back(Vec{Rat(1, 2), Rat(0), Rat(0)});
        REQUIRE(convex_hull(pts) == cube);
    }
}

TEST_CASE("hull of a simplex and degenerate input")
{
    REQUIRE(unit_tetra().halfspaces().size() == 4);
    REQUIRE(unit_tetra().vertices().size() == 4);

    std::vector<Vec> flat = {Vec{Rat(0), Rat(0), Rat(0)}, Vec{Rat(1), Rat(0), Rat(0)},
                             Vec{Rat(0), Rat(1), Rat(0)}, Vec{Rat(1), Rat(1), Rat(0)}};
    REQUIRE_THROWS_AS(convex_hull(flat), Error);
}

TEST_CASE("hull agrees with the brute-force facet oracle")
{
    Rng rng(2024);
    for (int dim : {2, 3, 4}) {
        for (int trial = 0; trial < (dim == 4 ? 4 : 10); ++trial) {
            Polytope p = random_polytope(rng, dim, dim + 4);
            auto oracle = brute_force_hull_facets(p.vertices());
            std::vector<Halfspace> got = p.halfspaces();
            REQUIRE(got == oracle);
        }
    }
}

TEST_CASE("halfspace intersection enumerates the cube")
{
    Polytope cube = unit_cube();
    Polytope back = halfspace_intersection(cube.halfspaces(), 3);
    REQUIRE(back == cube);
}

TEST_CASE("halfspace intersection of a 2D triangle")
{
    std::vector<Halfspace> hs = {{Vec{Rat(-1), Rat(0)}, Rat(0)},
                                 {Vec{Rat(0), Rat(-1)}, Rat(0)},
                                 {Vec{Rat(1), Rat(1)}, Rat(1)}};
    Polytope t = halfspace_intersection(hs, 2);
    REQUIRE(t.vertices() == std::vector<Vec>{Vec{Rat(0), Rat(0)}, Vec{Rat(0), Rat(1)},
                                             Vec{Rat(1), Rat(0)}});
}

TEST_CASE("truncated cube has ten vertices")
{
    std::vector<Halfspace> hs = unit_cube().halfspaces();
    hs.push_back({Vec{Rat(1), Rat(1), Rat(1)}, Rat(3, 2)});
    Polytope trunc = halfspace_intersection(hs, 3);
    REQUIRE(trunc.vertices().size() == 10);
    REQUIRE(convex_hull(trunc.vertices()) == trunc);
}

TEST_CASE("halfspace intersection error taxonomy")
{
    std::vector<Halfspace> slab = {{Vec{Rat(1), Rat(0), Rat(0)}, Rat(1)},
                                   {Vec{Rat(-1), Rat(0), Rat(0)}, Rat(0)}};
    REQUIRE(thrown_kind([&] { halfspace_intersection(slab, 3); }) == ErrorKind::Unbounded);

    std::vector<Halfspace> empty = unit_cube().halfspaces();
    empty.push_back({Vec{Rat(1), Rat(0), Rat(0)}, Rat(-1)}); // x <= -1 inside [0,1]^3
    REQUIRE(thrown_kind([&] { halfspace_intersection(empty, 3); }) == ErrorKind::Empty);
}

TEST_CASE("volumes of reference bodies")
{
    REQUIRE(volume(unit_cube()) == Rat(1));
    REQUIRE(volume(unit_tetra()) == Rat(1, 6));
    REQUIRE(volume(unit_square()) == Rat(1));
    REQUIRE(volume(octahedron()) == Rat(4, 3));
}

TEST_CASE("volume matches Monte Carlo on random bodies")
{
    Rng rng(7);
    for (int trial = 0; trial < 3; ++trial) {
        Polytope p = random_polytope(rng, 3, 8);
        auto mc = monte_carlo_volume(p, rng, 200000);
        double v = to_double(volume(p));
        REQUIRE(std::fabs(v - mc.estimate) <= 3 * mc.sigma + 1e-9);
    }
}

TEST_CASE("intersection of shifted cubes")
{
    Polytope cube = unit_cube();
    SECTION("overlapping")
    {
        auto r = intersect(cube, translate(cube, Vec{Rat(1, 2), Rat(0), Rat(0)}));
        REQUIRE(r.full());
        REQUIRE(volume(*r.poly) == Rat(1, 2));
    }
    SECTION("shared facet is flagged lower-dimensional")
    {
        auto r = intersect(cube, translate(cube, Vec{Rat(1), Rat(0), Rat(0)}));
        REQUIRE(r.lower_dim());
        REQUIRE(r.flat.size() == 4);
    }
    SECTION("disjoint")
    {
        auto r = intersect(cube, translate(cube, Vec{Rat(2), Rat(0), Rat(0)}));
        REQUIRE(r.empty());
    }
}

TEST_CASE("intersect agrees with brute-force vertex enumeration")
{
    Rng rng(99);
    for (int trial = 0; trial < 6; ++trial) {
        Polytope p = random_polytope(rng, 3, 7);
        Polytope q = translate(random_polytope(rng, 3, 7), rng.vec(3, 1, 2, 4));
        auto fast = intersect(p, q);
        std::vector<Halfspace> hs = p.halfspaces();
        hs.insert(hs.end(), q.halfspaces().begin(), q.halfspaces().end());
        try {
            Polytope slow = halfspace_intersection(hs, 3);
            REQUIRE(fast.full());
            REQUIRE(*fast.poly == slow);
        } catch (const Error& e) {
            REQUIRE(!fast.full());
        }
    }
}

TEST_CASE("intersection is commutative and idempotent")
{
    Rng rng(5);
    Polytope p = random_polytope(rng, 3, 8);
    Polytope q = translate(random_polytope(rng, 3, 8), Vec{Rat(1, 3), Rat(-1, 5), Rat(0)});
    auto pq = intersect(p, q);
    auto qp = intersect(q, p);
    REQUIRE(pq.full() == qp.full());
    if (pq.full()) {
        REQUIRE(*pq.poly == *qp.poly);
        auto again = intersect(*pq.poly, *pq.poly);
        REQUIRE(again.full());
        REQUIRE(*again.poly == *pq.poly);
    }
}

TEST_CASE("Minkowski sums")
{
    Polytope cube = unit_cube();
    SECTION("cube plus cube doubles")
    {
        Polytope two = minkowski_sum(cube, cube);
        auto [lo, hi] = two.bounding_box();
        REQUIRE(volume(two) == Rat(8));
        REQUIRE(hi[0] == Rat(2));
        REQUIRE(two.vertices().size() == 8);
    }
    SECTION("triangle plus reflection is the hexagon")
    {
        Polytope t = unit_triangle();
        Polytope hex = minkowski_sum(t, reflect(t));
        REQUIRE(hex.vertices().size() == 6);
        std::vector<Vec> want = {Vec{Rat(1), Rat(0)},  Vec{Rat(-1), Rat(0)},
                                 Vec{Rat(0), Rat(1)},  Vec{Rat(0), Rat(-1)},
                                 Vec{Rat(1), Rat(-1)}, Vec{Rat(-1), Rat(1)}};
        REQUIRE(hex == convex_hull(want));
    }
    SECTION("adding a point translates")
    {
        Vec x{Rat(2), Rat(3), Rat(-1)};
        Polytope moved = translate(cube, x);
        REQUIRE(volume(moved) == volume(cube));
        for (size_t i = 0; i < cube.vertices().size(); ++i)
            REQUIRE(moved.vertices()[i] == cube.vertices()[i] + x);
    }
    SECTION("support functions add at random directions")
    {
        Rng rng(11);
        Polytope p = random_polytope(rng, 3, 9);
        Polytope q = random_polytope(rng, 3, 9);
        Polytope s = minkowski_sum(p, q);
        for (int i = 0; i < 60; ++i) {
            Vec u = rng.nonzero_vec(3);
            REQUIRE(s.support(u) == p.support(u) + q.support(u));
        }
        // every vertex of the sum is a pairwise sum and extreme
        REQUIRE(convex_hull([&] {
            std::vector<Vec> sums;
            for (const Vec& a : p.vertices())
                for (const Vec& b : q.vertices())
                    sums.push_back(a + b);
            return sums;
        }()) == s);
    }
}

TEST_CASE("Minkowski sum with reflection is origin-symmetric")
{
    Rng rng(21);
    Polytope p = random_polytope(rng, 3, 8);
    Polytope d = minkowski_sum(p, reflect(p));
    std::vector<Vec> negated;
    for (const Vec& v : d.vertices())
        negated.push_back(-v);
    std::sort(negated.begin(), negated.end());
    REQUIRE(negated == d.vertices());
}

TEST_CASE("affine maps")
{
    Polytope cube = unit_cube();
    SECTION("reflection lands in the negative octant")
    {
        auto [lo, hi] = reflect(cube).bounding_box();
        REQUIRE(lo[0] == Rat(-1));
        REQUIRE(hi[2] == Rat(0));
    }
    SECTION("projection to a coordinate plane")
    {
        REQUIRE(project(cube, {0, 1}) == unit_square());
    }
    SECTION("scaling doubles each axis")
    {
        Mat a = Mat::identity(3);
        a(0, 0) = a(1, 1) = a(2, 2) = 2;
        REQUIRE(volume(affine_image(cube, a, Vec(3))) == Rat(8));
    }
    SECTION("volume scales by |det| for a random map")
    {
        Rng rng(31);
        Polytope p = random_polytope(rng, 3, 7);
        Mat a(3, 3);
        do {
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    a(i, j) = rng.rat(2, 1, 4);
        } while (det(a) == 0);
        Vec b = rng.vec(3, 3, 1, 4);
        REQUIRE(volume(affine_image(p, a, b)) == rat_abs(det(a)) * volume(p));
    }
    SECTION("singular matrix is rejected")
    {
        Mat a(3, 3); // zero matrix
        REQUIRE_THROWS_AS(affine_image(cube, a, Vec(3)), Error);
    }
}

TEST_CASE("hull then H-rep roundtrip reproduces extreme points")
{
    Rng rng(43);
    for (int trial = 0; trial < 5; ++trial) {
        Polytope p = random_polytope(rng, 3, 9);
        Polytope back = halfspace_intersection(p.halfspaces(), 3);
        REQUIRE(back == p);
    }
}

TEST_CASE("4D hull handles products")
{
    Polytope t = unit_triangle();
    std::vector<Vec> pts;
    for (const Vec& a : t.vertices())
        for (const Vec& b : t.vertices())
            pts.push_back(Vec{a[0], a[1], b[0], b[1]});
    Polytope prod = convex_hull(pts);
    REQUIRE(prod.vertices().size() == 9);
    REQUIRE(prod.halfspaces().size() == 6);
    REQUIRE(volume(prod) == Rat(1, 4));
}
