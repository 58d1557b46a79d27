#pragma once

#include <optional>
#include <vector>

#include "covlab/conetomo.hpp"
#include "covlab/covariogram.hpp"
#include "covlab/faces.hpp"
#include "covlab/syniso.hpp"

namespace covlab {

/// Parallelogram u + v scaled over [-1,1]^2: conv{ +-u +- v }.
inline Polytope parallelogram(const Vec& u, const Vec& v, const Vec& shift)
{
    std::vector<Vec> pts = {u + v + shift, u - v + shift, -u + v + shift, -u - v + shift};
    return convex_hull(pts);
}

inline Polytope segment_1d(const Rat& lo, const Rat& hi)
{
    return Polytope::from_rep(1, {Vec{lo}, Vec{hi}},
                              {Halfspace{Vec{Rat(-1)}, -lo}, Halfspace{Vec{Rat(1)}, hi}});
}

/// The non-synisothetic counterexample family: two pairs of parallelograms
/// with equal cross covariogram built from the segment directions
/// (1,0), (1,1), (0,1), (-1,1). Integer-direction segments replace the
/// unit-normalized ones; the family is closed under that rescaling of its
/// parameters.
struct ParallFamily {
    Polytope k1, l1, k2, l2;
};

inline ParallFamily parall_family(const Rat& alpha, const Rat& beta, const Rat& gamma,
                                  const Rat& delta, const Vec& y)
{
    if (alpha <= 0 || beta <= 0 || gamma <= 0 || delta <= 0)
        throw Error(ErrorKind::ParameterConstraintViolated, "parameters must be positive");
    Vec i1{Rat(1), Rat(0)}, i2{Rat(1), Rat(1)}, i3{Rat(0), Rat(1)}, i4{Rat(-1), Rat(1)};
    Vec o(2);
    ParallFamily fam;
    fam.k1 = parallelogram(alpha * i1, beta * i2, o);
    fam.l1 = parallelogram(gamma * i3, delta * i4, y);
    fam.k2 = parallelogram(alpha * i1, delta * i4, o);
    fam.l2 = parallelogram(beta * i2, gamma * i3, y);
    return fam;
}

/// The synisothetic-but-nontrivial family: K3 = alpha I1 + beta I3,
/// L3 = gamma I1 + delta I^(m) + y, K4 and L4 with alpha and gamma
/// exchanged. Requires m = 0, alpha != gamma, beta != delta, or else
/// m != 0 and alpha != gamma.
struct ParallDueFamily {
    Polytope k3, l3, k4, l4;
};

inline ParallDueFamily parall_due_family(const Rat& alpha, const Rat& beta, const Rat& gamma,
                                         const Rat& delta, const Rat& m, const Vec& y)
{
    if (alpha <= 0 || beta <= 0 || gamma <= 0 || delta <= 0)
        throw Error(ErrorKind::ParameterConstraintViolated, "parameters must be positive");
    bool ok = (m == 0 && alpha != gamma && beta != delta) || (m != 0 && alpha != gamma);
    if (!ok)
        throw Error(ErrorKind::ParameterConstraintViolated,
                    "need m=0, alpha!=gamma, beta!=delta, or m!=0, alpha!=gamma");
    Vec i1{Rat(1), Rat(0)}, i3{Rat(0), Rat(1)}, im{m, Rat(1)};
    Vec o(2);
    ParallDueFamily fam;
    fam.k3 = parallelogram(alpha * i1, beta * i3, o);
    fam.l3 = parallelogram(gamma * i1, delta * im, y);
    fam.k4 = parallelogram(gamma * i1, beta * i3, o);
    fam.l4 = parallelogram(alpha * i1, delta * im, y);
    return fam;
}

/// The planar cone quadruple with equal cross covariograms: sectors at
/// multiples of pi/4, so every generator is rational.
struct ConeQuadruple {
    ConvexCone a1, b1, a2, b2;
};

inline ConeQuadruple cone_quadruple()
{
    ConeQuadruple q;
    q.a1 = sector(Vec{Rat(1), Rat(0)}, Vec{Rat(-1), Rat(1)});
    q.b1 = sector(Vec{Rat(-1), Rat(-1)}, Vec{Rat(0), Rat(-1)});
    q.a2 = sector(Vec{Rat(1), Rat(0)}, Vec{Rat(1), Rat(1)});
    q.b2 = sector(Vec{Rat(0), Rat(-1)}, Vec{Rat(1), Rat(-1)});
    return q;
}

/// 3D prisms over the quadruple cones, clipped to [-clip, clip]^2 in the
/// plane and extruded to height h. Cross covariograms of the prisms agree
/// wherever probes stay well inside the clip radius.
struct PrismQuadruple {
    Polytope a1, b1, a2, b2;
};

inline PrismQuadruple lifted_prisms(const Rat& h, const Rat& clip)
{
    auto lift = [&](const ConvexCone& c) {
        std::vector<Halfspace> hs = c.halfspaces;
        for (int i = 0; i < 2; ++i) {
            Vec e = unit_axis(2, i);
            hs.push_back({e, clip});
            hs.push_back({-e, clip});
        }
        Polytope base = halfspace_intersection(hs, 2);
        return direct_sum({{base, {0, 1}}, {segment_1d(Rat(0), h), {2}}});
    };
    ConeQuadruple q = cone_quadruple();
    return {lift(q.a1), lift(q.b1), lift(q.a2), lift(q.b2)};
}

inline bool centrally_symmetric(const Polytope& p)
{
    Vec c = centroid(p);
    return translate(reflect(p), c + c) == p;
}

/// The product counterexample: K x L and K x (-L) have equal covariograms
/// but are not congruent when neither factor is centrally symmetric.
struct ProductCounterexample {
    Polytope p, pprime; // in R^{dim K + dim L}
};

inline ProductCounterexample product_counterexample(const Polytope& k, const Polytope& l)
{
    if (centrally_symmetric(k) || centrally_symmetric(l))
        throw Error(ErrorKind::SymmetricFactor, "factors must not be centrally symmetric");
    int nk = k.dim(), nl = l.dim();
    std::vector<int> ax_k(nk), ax_l(nl);
    for (int i = 0; i < nk; ++i)
        ax_k[i] = i;
    for (int i = 0; i < nl; ++i)
        ax_l[i] = nk + i;
    ProductCounterexample out;
    out.p = direct_sum({{k, ax_k}, {l, ax_l}});
    out.pprime = direct_sum({{k, ax_k}, {reflect(l), ax_l}});
    return out;
}

/// Exact congruence decider (translation or point reflection), using the
/// centroid to force the only candidate translation.
inline bool congruent(const Polytope& p, const Polytope& q)
{
    if (p.dim() != q.dim())
        return false;
    Vec cp = centroid(p), cq = centroid(q);
    if (translate(q, cp - cq) == p)
        return true;
    Polytope qr = reflect(q);
    return translate(qr, cp + cq) == p;
}

/// Trivial associates: (K,L) = (K'+x, L'+x) or (K,L) = (-L'+x, -K'+x).
inline bool trivial_associates(const Polytope& k, const Polytope& l, const Polytope& kp,
                               const Polytope& lp)
{
    {
        Vec x = centroid(k) - centroid(kp);
        if (translate(kp, x) == k && translate(lp, x) == l)
            return true;
    }
    {
        Vec x = centroid(k) + centroid(lp);
        if (translate(reflect(lp), x) == k && translate(reflect(kp), x) == l)
            return true;
    }
    return false;
}

/// D(L (+) M) = DL (+) DM, the direct-sum difference-body factorization,
/// plus the support additivity h_{K1 (+) K2}(x) + h_{K1 (+) K2}(-x) =
/// h_K(x) + h_K(-x) at random probes.
inline bool dk_decomposition_check(const Polytope& l, const std::vector<int>& axes_l,
                                   const Polytope& m, const std::vector<int>& axes_m, int probes,
                                   Rng& rng)
{
    Polytope k = direct_sum({{l, axes_l}, {m, axes_m}});
    Polytope dk = difference_body(k); // generic Minkowski route
    Polytope split = direct_sum({{difference_body(l), axes_l}, {difference_body(m), axes_m}});
    if (dk != split)
        return false;

    Polytope k1 = project(k, axes_l), k2 = project(k, axes_m);
    Polytope resum = direct_sum({{k1, axes_l}, {k2, axes_m}});
    for (int t = 0; t < probes; ++t) {
        Vec x = rng.vec(k.dim(), 4, 8, 32);
        if (resum.support(x) + resum.support(-x) != k.support(x) + k.support(-x))
            return false;
    }
    return true;
}

/// The 4D ambiguity example: P = K x L and P' = K x (-L) with
/// K = conv{(0,-2),(0,2),(1,1),(1,-1)} and L a triangle. P'_w = -P_w for
/// w = (-1,0,0,0), yet no translation or reflection of P' recovers P_w.
struct FourDimAmbiguity {
    Polytope p, pprime;
    Vec w;
    bool face_is_reflection = false;
    bool translation_exists = false;
    bool reflection_exists = false;
};

inline FourDimAmbiguity remark_face_ambiguity_example()
{
    Polytope k = convex_hull({Vec{Rat(0), Rat(-2)}, Vec{Rat(0), Rat(2)}, Vec{Rat(1), Rat(1)},
                              Vec{Rat(1), Rat(-1)}});
    Polytope l = convex_hull({Vec{Rat(0), Rat(0)}, Vec{Rat(1), Rat(0)}, Vec{Rat(0), Rat(1)}});
    FourDimAmbiguity out;
    auto prod = product_counterexample(k, l);
    out.p = prod.p;
    out.pprime = prod.pprime;
    out.w = Vec{Rat(-1), Rat(0), Rat(0), Rat(0)};

    auto pw = face_vertices(out.p, exposed_face(out.p, out.w));
    auto ppw = face_vertices(out.pprime, exposed_face(out.pprime, out.w));
    std::vector<Vec> neg_pw;
    for (const Vec& v : pw)
        neg_pw.push_back(-v);
    out.face_is_reflection = same_hull(ppw, neg_pw);
    out.translation_exists = translation_between(pw, ppw).has_value();
    auto ppmw = face_vertices(out.pprime, exposed_face(out.pprime, -out.w));
    std::vector<Vec> neg_ppmw;
    for (const Vec& v : ppmw)
        neg_ppmw.push_back(-v);
    out.reflection_exists = translation_between(pw, neg_ppmw).has_value();
    return out;
}

} // namespace covlab
