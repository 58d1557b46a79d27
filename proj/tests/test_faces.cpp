#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "covlab/faces.hpp"
#include "covlab/rng.hpp"
#include "testutil.hpp"

using namespace covlab;
using namespace covlab::testutil;

namespace {

int count_dim(const std::vector<Face>& fs, int d)
{
    int c = 0;
    for (const auto& f : fs)
        c += f.dim == d;
    return c;
}

} // namespace

TEST_CASE("face lattice counts")
{
    auto cube_faces = face_lattice(unit_cube());
    REQUIRE(cube_faces.size() == 26);
    REQUIRE(count_dim(cube_faces, 0) == 8);
    REQUIRE(count_dim(cube_faces, 1) == 12);
    REQUIRE(count_dim(cube_faces, 2) == 6);

    REQUIRE(face_lattice(unit_tetra()).size() == 14);

    auto prism_faces = face_lattice(triangular_prism());
    REQUIRE(prism_faces.size() == 20);
    REQUIRE(count_dim(prism_faces, 0) == 6);
    REQUIRE(count_dim(prism_faces, 1) == 9);
    REQUIRE(count_dim(prism_faces, 2) == 5);
}

TEST_CASE("exposed faces of the cube")
{
    Polytope cube = unit_cube();
    Face bottom = exposed_face(cube, Vec{Rat(0), Rat(0), Rat(-1)});
    REQUIRE(bottom.dim == 2);
    REQUIRE(bottom.relint_point == Vec{Rat(1, 2), Rat(1, 2), Rat(0)});

    Face corner = exposed_face(cube, Vec{Rat(1), Rat(1), Rat(1)});
    REQUIRE(corner.dim == 0);
    REQUIRE(face_vertices(cube, corner)[0] == Vec{Rat(1), Rat(1), Rat(1)});

    Face edge = exposed_face(cube, Vec{Rat(1), Rat(1), Rat(0)});
    REQUIRE(edge.dim == 1);
    auto ev = face_vertices(cube, edge);
    REQUIRE(ev[0] == Vec{Rat(1), Rat(1), Rat(0)});
    REQUIRE(ev[1] == Vec{Rat(1), Rat(1), Rat(1)});
}

TEST_CASE("support and normal cones")
{
    Polytope cube = unit_cube();
    SECTION("bottom facet")
    {
        Face f = exposed_face(cube, Vec{Rat(0), Rat(0), Rat(-1)});
        FaceCone sc = support_cone(cube, f);
        REQUIRE(sc.halfspaces.size() == 1);
        REQUIRE(sc.halfspaces[0].normal == Vec{Rat(0), Rat(0), Rat(-1)});
        FaceCone nc = normal_cone(cube, f);
        REQUIRE(nc.rays == std::vector<Vec>{Vec{Rat(0), Rat(0), Rat(-1)}});
    }
    SECTION("origin vertex sees the positive octant")
    {
        Face f = exposed_face(cube, Vec{Rat(-1), Rat(-1), Rat(-1)});
        FaceCone sc = support_cone(cube, f);
        REQUIRE(sc.halfspaces.size() == 3);
        for (const auto& h : sc.halfspaces) {
            int neg = 0;
            for (int i = 0; i < 3; ++i)
                neg += h.normal[i] == Rat(-1);
            REQUIRE(neg == 1);
        }
    }
    SECTION("tetrahedron edge has a dihedral support cone")
    {
        Polytope tet = unit_tetra();
        Face f = exposed_face(tet, Vec{Rat(0), Rat(-1), Rat(-1)});
        REQUIRE(f.dim == 1);
        FaceCone sc = support_cone(tet, f);
        std::vector<Vec> normals;
        for (const auto& h : sc.halfspaces)
            normals.push_back(h.normal);
        std::sort(normals.begin(), normals.end());
        REQUIRE(normals == std::vector<Vec>{Vec{Rat(0), Rat(-1), Rat(0)},
                                            Vec{Rat(0), Rat(0), Rat(-1)}});
    }
    SECTION("polarity between support and normal cones")
    {
        Rng rng(17);
        Polytope p = random_polytope(rng, 3, 8);
        for (const Face& f : face_lattice(p)) {
            FaceCone sc = support_cone(p, f);
            FaceCone nc = normal_cone(p, f);
            for (const Vec& r : nc.rays)
                for (const Vec& g : sc.rays)
                    REQUIRE(dot(r, g) <= 0);
        }
    }
}

TEST_CASE("relint normal directions recover their faces")
{
    Rng rng(23);
    for (const Polytope& p : {unit_cube(), random_polytope(rng, 3, 8)}) {
        for (const Face& f : face_lattice(p)) {
            Vec w = normal_cone_relint_direction(p, f);
            REQUIRE(exposed_face(p, w) == f);
        }
    }
}

TEST_CASE("difference bodies")
{
    SECTION("cube")
    {
        Polytope d = difference_body(unit_cube());
        auto [lo, hi] = d.bounding_box();
        REQUIRE(lo[0] == Rat(-1));
        REQUIRE(hi[0] == Rat(1));
        REQUIRE(volume(d) == Rat(8));
    }
    SECTION("triangle gives the hexagon")
    {
        Polytope d = difference_body(unit_triangle());
        REQUIRE(d.vertices().size() == 6);
        REQUIRE(volume(d) == Rat(3));
    }
    SECTION("origin-symmetric body doubles")
    {
        Polytope oct = octahedron();
        Mat two = Mat::identity(3);
        two(0, 0) = two(1, 1) = two(2, 2) = 2;
        REQUIRE(difference_body(oct) == affine_image(oct, two, Vec(3)));
    }
    SECTION("translation invariance")
    {
        Rng rng(3);
        Polytope p = random_polytope(rng, 3, 7);
        Vec x = rng.vec(3, 5, 1, 9);
        REQUIRE(difference_body(p) == difference_body(translate(p, x)));
    }
}

TEST_CASE("face additivity of Minkowski sums")
{
    Polytope cube = unit_cube();
    Polytope rcube = reflect(cube);
    SECTION("cube against all face normals of DP")
    {
        Polytope d = difference_body(cube);
        for (const Face& f : face_lattice(d)) {
            Vec w = normal_cone_relint_direction(d, f);
            REQUIRE(check_face_additivity(cube, rcube, w));
        }
    }
    SECTION("tetrahedron at random directions")
    {
        Rng rng(29);
        Polytope tet = unit_tetra();
        Polytope rtet = reflect(tet);
        for (int i = 0; i < 100; ++i)
            REQUIRE(check_face_additivity(tet, rtet, rng.nonzero_vec(3)));
    }
    SECTION("two random bodies")
    {
        Rng rng(31);
        Polytope p = random_polytope(rng, 3, 7);
        Polytope q = random_polytope(rng, 3, 7);
        for (int i = 0; i < 30; ++i)
            REQUIRE(check_face_additivity(p, q, rng.nonzero_vec(3)));
    }
}

TEST_CASE("centroids")
{
    REQUIRE(centroid(unit_cube()) == Vec{Rat(1, 2), Rat(1, 2), Rat(1, 2)});
    REQUIRE(centroid(unit_tetra()) == Vec{Rat(1, 4), Rat(1, 4), Rat(1, 4)});
    REQUIRE(centroid(unit_square()) == Vec{Rat(1, 2), Rat(1, 2)});

    SECTION("translation equivariance and reflection antisymmetry")
    {
        Rng rng(37);
        Polytope p = random_polytope(rng, 3, 9);
        Vec x = rng.vec(3, 2, 1, 5);
        REQUIRE(centroid(translate(p, x)) == centroid(p) + x);
        REQUIRE(centroid(reflect(p)) == -centroid(p));
    }
}

namespace {

// quadrature oracle for the Steiner point: s(K) = c_n int h_K(u) u dH(u)
std::vector<double> steiner_quadrature_3d(const Polytope& p, int nth, int nph)
{
    double sx = 0, sy = 0, sz = 0;
    for (int i = 0; i < nth; ++i) {
        double th = (i + 0.5) * std::numbers::pi / nth;
        for (int j = 0; j < nph; ++j) {
            double ph = (j + 0.5) * 2 * std::numbers::pi / nph;
            double u[3] = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                           std::cos(th)};
            double h = -1e300;
            for (const Vec& v : p.vertices())
                h = std::max(h, u[0] * to_double(v[0]) + u[1] * to_double(v[1])
                                    + u[2] * to_double(v[2]));
            double w = std::sin(th);
            sx += h * u[0] * w;
            sy += h * u[1] * w;
            sz += h * u[2] * w;
        }
    }
    double cell = (std::numbers::pi / nth) * (2 * std::numbers::pi / nph);
    double c = 3.0 / (4 * std::numbers::pi);
    return {sx * cell * c, sy * cell * c, sz * cell * c};
}

double dist3(const std::vector<double>& a, const std::vector<double>& b)
{
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

} // namespace

TEST_CASE("Steiner points")
{
    SECTION("origin-symmetric body maps to the origin")
    {
        auto s = steiner_point(octahedron());
        REQUIRE(std::fabs(s[0]) < 1e-9);
        REQUIRE(std::fabs(s[1]) < 1e-9);
        REQUIRE(std::fabs(s[2]) < 1e-9);
    }
    SECTION("matches direct spherical quadrature on a tetrahedron")
    {
        Polytope tet = unit_tetra();
        auto s = steiner_point(tet);
        auto q = steiner_quadrature_3d(tet, 400, 800);
        REQUIRE(dist3(s, q) < 2e-3);
    }
    SECTION("2D closed form matches the defining integral")
    {
        Polytope t = unit_triangle();
        auto s = steiner_point(t);
        double sx = 0, sy = 0;
        int n = 200000;
        for (int i = 0; i < n; ++i) {
            double a = (i + 0.5) * 2 * std::numbers::pi / n;
            double u0 = std::cos(a), u1 = std::sin(a);
            double h = -1e300;
            for (const Vec& v : t.vertices())
                h = std::max(h, u0 * to_double(v[0]) + u1 * to_double(v[1]));
            sx += h * u0;
            sy += h * u1;
        }
        sx *= 2.0 / n;
        sy *= 2.0 / n;
        REQUIRE(std::fabs(s[0] - sx) < 1e-6);
        REQUIRE(std::fabs(s[1] - sy) < 1e-6);
    }
    SECTION("Minkowski additivity within 1e-8")
    {
        Rng rng(41);
        Polytope p = random_polytope(rng, 3, 7);
        Polytope q = random_polytope(rng, 3, 7);
        auto sp = steiner_point(p);
        auto sq = steiner_point(q);
        auto ss = steiner_point(minkowski_sum(p, q));
        for (int i = 0; i < 3; ++i)
            REQUIRE(std::fabs(ss[i] - sp[i] - sq[i]) < 1e-8);
    }
}

TEST_CASE("direct sums")
{
    SECTION("square plus segment is the cube")
    {
        Polytope seg = Polytope::from_rep(1, {Vec{Rat(0)}, Vec{Rat(1)}},
                                          {Halfspace{Vec{Rat(-1)}, Rat(0)},
                                           Halfspace{Vec{Rat(1)}, Rat(1)}});
        Polytope sum = direct_sum({{unit_square(), {0, 1}}, {seg, {2}}});
        REQUIRE(sum == unit_cube());
    }
    SECTION("triangle plus triangle in R^4 has product volume")
    {
        Polytope t = unit_triangle();
        Polytope sum = direct_sum({{t, {0, 1}}, {t, {2, 3}}});
        REQUIRE(sum.dim() == 4);
        REQUIRE(volume(sum) == Rat(1, 4));
        REQUIRE(sum.vertices().size() == 9);
    }
    SECTION("difference body splits over direct sums")
    {
        Polytope t = unit_triangle();
        Polytope k = direct_sum({{t, {0, 1}}, {t, {2, 3}}});
        Polytope dk = difference_body(k);
        Polytope split = direct_sum({{difference_body(t), {0, 1}},
                                     {difference_body(t), {2, 3}}});
        REQUIRE(dk == split);
    }
    SECTION("bad axis partitions are rejected")
    {
        Polytope t = unit_triangle();
        REQUIRE(thrown_kind([&] { direct_sum({{t, {0, 1}}, {t, {1, 2}}}); })
                == ErrorKind::SubspacesNotComplementary);
    }
}
