#include <catch2/catch_amalgamated.hpp>

#include "covlab/gallery.hpp"
#include "covlab/syniso.hpp"
#include "testutil.hpp"

using namespace covlab;
using namespace covlab::testutil;

TEST_CASE("isothesis certificates")
{
    Polytope cube = unit_cube();
    SECTION("a face and its translate in a translated body")
    {
        Vec x{Rat(2), Rat(-1), Rat(3)};
        Polytope moved = translate(cube, x);
        for (const Face& f : face_lattice(cube)) {
            Face g = exposed_face(moved, normal_cone_relint_direction(cube, f));
            auto cert = isothetic(cube, f, moved, g);
            REQUIRE(cert);
            REQUIRE(cert->translation == x);
            REQUIRE(cert->cone_match);
        }
    }
    SECTION("bottom and top facets differ by their support cones")
    {
        Face bottom = exposed_face(cube, Vec{Rat(0), Rat(0), Rat(-1)});
        Face top = exposed_face(cube, Vec{Rat(0), Rat(0), Rat(1)});
        REQUIRE(!isothetic(cube, bottom, cube, top));
    }
    SECTION("congruent but rotated facets fail the translate test")
    {
        Polytope prism = triangular_prism();
        Face fy = exposed_face(prism, Vec{Rat(0), Rat(-1), Rat(0)});
        Face fx = exposed_face(prism, Vec{Rat(-1), Rat(0), Rat(0)});
        REQUIRE(fy.dim == 2);
        REQUIRE(fx.dim == 2);
        REQUIRE(!isothetic(prism, fy, prism, fx));
    }
    SECTION("isothesis is an equivalence relation")
    {
        Rng rng(401);
        Polytope p = random_polytope(rng, 3, 7);
        Polytope q = translate(p, rng.vec(3, 2, 1, 5));
        Polytope r = translate(p, rng.vec(3, 2, 1, 5));
        auto pf = face_lattice(p);
        for (const Face& f : pf) {
            REQUIRE(isothetic(p, f, p, f)); // reflexive
            Face fq = exposed_face(q, normal_cone_relint_direction(p, f));
            auto ab = isothetic(p, f, q, fq);
            auto ba = isothetic(q, fq, p, f);
            REQUIRE(ab.has_value() == ba.has_value()); // symmetric
            if (ab) {
                Face fr = exposed_face(r, normal_cone_relint_direction(p, f));
                auto bc = isothetic(q, fq, r, fr);
                auto ac = isothetic(p, f, r, fr);
                REQUIRE((bc.has_value() ? ac.has_value() : true)); // transitive
            }
        }
    }
}

TEST_CASE("synisothesis of polytope pairs")
{
    Rng rng(409);
    Polytope p = random_polytope(rng, 2, 6);
    Polytope rp = reflect(p);
    SECTION("translates of the pair")
    {
        Polytope q1 = translate(p, Vec{Rat(1), Rat(-2)});
        Polytope q2 = translate(rp, Vec{Rat(0), Rat(5)});
        auto r = synisothetic(p, rp, q1, q2);
        REQUIRE(r.value);
        REQUIRE(!r.witness.empty());
    }
    SECTION("swapped roles")
    {
        REQUIRE(synisothetic(p, rp, rp, p).value);
    }
    SECTION("symmetric in the pair arguments")
    {
        Polytope q1 = translate(p, Vec{Rat(1), Rat(0)});
        Polytope q2 = translate(rp, Vec{Rat(0), Rat(1)});
        REQUIRE(synisothetic(p, rp, q1, q2).value == synisothetic(rp, p, q2, q1).value);
        Polytope z = random_polytope(rng, 2, 7);
        REQUIRE(synisothetic(p, rp, z, reflect(z)).value
                == synisothetic(rp, p, reflect(z), z).value);
    }
    SECTION("unrelated bodies are not synisothetic")
    {
        Polytope q = random_polytope(rng, 2, 7);
        REQUIRE(!synisothetic(p, rp, q, reflect(q)).value);
    }
    SECTION("the stretched-parallelogram family is synisothetic")
    {
        auto fam = parall_due_family(Rat(1), Rat(1), Rat(2), Rat(1), Rat(1), Vec(2));
        REQUIRE(synisothetic(fam.k3, reflect(fam.l3), fam.k4, reflect(fam.l4)).value);
    }
    SECTION("the crossed-parallelogram family is not synisothetic")
    {
        auto fam = parall_family(Rat(1), Rat(1), Rat(1), Rat(1), Vec(2));
        REQUIRE(!synisothetic(fam.k1, reflect(fam.l1), fam.k2, reflect(fam.l2)).value);
    }
}

TEST_CASE("face signs")
{
    Rng rng(419);
    Polytope p = random_polytope(rng, 3, 7);
    SECTION("translates make every face positive")
    {
        Vec t{Rat(3), Rat(-1), Rat(2)};
        Polytope pp = translate(p, t);
        for (const Face& f : face_lattice(p)) {
            Vec w = normal_cone_relint_direction(p, f);
            FaceSign s = face_sign(p, pp, w);
            REQUIRE(s.sign == Sign::positive);
            REQUIRE(s.x_plus);
            REQUIRE(*s.x_plus == -t); // P_w = (P + t)_w - t
            REQUIRE(!s.x_minus);
        }
    }
    SECTION("reflection makes every face negative")
    {
        Polytope pp = reflect(p);
        for (const Face& f : face_lattice(p)) {
            Vec w = normal_cone_relint_direction(p, f);
            FaceSign s = face_sign(p, pp, w);
            REQUIRE(s.sign == Sign::negative);
            REQUIRE(s.x_minus);
            REQUIRE(!s.x_plus);
        }
    }
    SECTION("centrally symmetric bodies are neutral against themselves")
    {
        Polytope oct = translate(octahedron(), Vec{Rat(1), Rat(2), Rat(3)});
        for (const Face& f : face_lattice(oct)) {
            Vec w = normal_cone_relint_direction(oct, f);
            FaceSign s = face_sign(oct, oct, w);
            REQUIRE(s.sign == Sign::neutral);
            REQUIRE(s.x_plus);
            REQUIRE(s.x_minus);
        }
    }
    SECTION("sign does not depend on the witness direction")
    {
        Vec t{Rat(1), Rat(1), Rat(-1)};
        Polytope pp = translate(reflect(p), t);
        for (const Face& f : face_lattice(p)) {
            auto act = active_halfspaces(p, f);
            for (int trial = 0; trial < 3; ++trial) {
                Vec w(3);
                for (const auto& h : act)
                    w = w + Rat(rng.range(1, 9)) * h.normal;
                FaceSign s = face_sign(p, pp, w);
                REQUIRE(s.sign == Sign::negative);
            }
        }
    }
    SECTION("the translation works for the antipodal direction too")
    {
        Vec t{Rat(2), Rat(0), Rat(-5)};
        Polytope pp = translate(p, t);
        for (int i = 0; i < 20; ++i) {
            Vec w = rng.nonzero_vec(3);
            FaceSign s1 = face_sign(p, pp, w);
            FaceSign s2 = face_sign(p, pp, -w);
            REQUIRE(s1.sign == Sign::positive);
            REQUIRE(*s1.x_plus == *s2.x_plus);
        }
    }
    SECTION("non-synisothetic inputs are rejected")
    {
        Polytope q = random_polytope(rng, 3, 8);
        REQUIRE(thrown_kind([&] { face_sign(p, q, Vec{Rat(0), Rat(0), Rat(1)}); })
                == ErrorKind::NotSynisothetic);
    }
}

TEST_CASE("synisothesis forces equal difference bodies")
{
    Rng rng(431);
    SECTION("translates and reflections")
    {
        for (int i = 0; i < 5; ++i) {
            Polytope p = random_polytope(rng, 3, 7);
            REQUIRE(corpodiff_check(p, translate(p, rng.vec(3, 3, 1, 7))));
            REQUIRE(corpodiff_check(p, translate(reflect(p), rng.vec(3, 3, 1, 7))));
        }
    }
    SECTION("vacuous when the hypothesis fails")
    {
        Polytope p = random_polytope(rng, 3, 6);
        Polytope q = random_polytope(rng, 3, 8);
        REQUIRE(corpodiff_check(p, q));
    }
    SECTION("equal supports for the stretched-parallelogram family")
    {
        auto fam = parall_due_family(Rat(1), Rat(1), Rat(2), Rat(1), Rat(1), Vec(2));
        REQUIRE(minkowski_sum(fam.k3, reflect(fam.l3)) == minkowski_sum(fam.k4, reflect(fam.l4)));
    }
}
