#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "covlab/covariogram.hpp"
#include "covlab/polytope.hpp"
#include "covlab/rng.hpp"

namespace covlab {

/// Polyhedral cone with apex at the origin: generating rays plus the dual
/// H-rep (every halfspace passes through O). The zero cone {O} is allowed
/// and carries no rays.
struct ConvexCone {
    int dim = 0;
    std::vector<Vec> rays;            // primitive generators, sorted
    std::vector<Halfspace> halfspaces;
    bool pointed = true;

    bool is_origin_only() const { return rays.empty() && pointed; }

    bool contains(const Vec& x) const
    {
        if (is_origin_only())
            return x.is_zero();
        for (const auto& h : halfspaces)
            if (dot(h.normal, x) > 0)
                return false;
        return true;
    }
};

namespace conedetail {

// Facets of pos(rays): hyperplanes through dim-1 independent rays with all
// rays on one side.
inline std::vector<Halfspace> dual_halfspaces(const std::vector<Vec>& rays, int dim)
{
    std::vector<Halfspace> out;
    int m = static_cast<int>(rays.size());
    std::vector<int> idx(dim - 1);
    std::function<void(int, int)> go = [&](int start, int k) {
        if (k == dim - 1) {
            std::vector<Vec> sel;
            for (int i : idx)
                sel.push_back(rays[i]);
            Mat mm = Mat::from_rows(sel);
            if (rank(mm) != dim - 1)
                return;
            auto ns = nullspace(mm);
            for (Vec cand : {ns[0], -ns[0]}) {
                bool ok = true;
                for (const Vec& r : rays)
                    if (dot(cand, r) > 0) {
                        ok = false;
                        break;
                    }
                if (ok)
                    out.push_back({primitive(cand), Rat(0)});
            }
            return;
        }
        for (int i = start; i < m; ++i) {
            idx[k] = i;
            go(i + 1, k + 1);
        }
    };
    go(0, 0);
    return detail::dedupe_canonical(out);
}

// Extreme rays of an H-rep cone: directions on dim-1 independent tight
// constraints satisfying the rest.
inline std::vector<Vec> enumerate_rays(const std::vector<Halfspace>& hs, int dim)
{
    std::vector<Vec> out;
    int m = static_cast<int>(hs.size());
    std::vector<int> idx(dim - 1);
    std::function<void(int, int)> go = [&](int start, int k) {
        if (k == dim - 1) {
            std::vector<Vec> sel;
            for (int i : idx)
                sel.push_back(hs[i].normal);
            Mat mm = Mat::from_rows(sel);
            if (rank(mm) != dim - 1)
                return;
            auto ns = nullspace(mm);
            for (Vec cand : {ns[0], -ns[0]}) {
                bool ok = true;
                for (const auto& h : hs)
                    if (dot(h.normal, cand) > 0) {
                        ok = false;
                        break;
                    }
                if (ok)
                    out.push_back(primitive(cand));
            }
            return;
        }
        for (int i = start; i < m; ++i) {
            idx[k] = i;
            go(i + 1, k + 1);
        }
    };
    go(0, 0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace conedetail

inline ConvexCone cone_origin(int dim)
{
    ConvexCone c;
    c.dim = dim;
    c.pointed = true;
    for (int i = 0; i < dim; ++i) {
        Vec e = unit_axis(dim, i);
        c.halfspaces.push_back({e, Rat(0)});
        c.halfspaces.push_back({-e, Rat(0)});
    }
    return c;
}

inline ConvexCone cone_from_rays(const std::vector<Vec>& rays_in, bool allow_lines = false)
{
    if (rays_in.empty())
        throw Error(ErrorKind::DegenerateInput, "cone_from_rays: no rays");
    ConvexCone c;
    c.dim = rays_in[0].dim();
    for (const Vec& r : rays_in)
        c.rays.push_back(primitive(r));
    std::sort(c.rays.begin(), c.rays.end());
    c.rays.erase(std::unique(c.rays.begin(), c.rays.end()), c.rays.end());
    if (rank(Mat::from_rows(c.rays)) < c.dim)
        throw Error(ErrorKind::DegenerateInput, "cone_from_rays: rays do not span");
    c.halfspaces = conedetail::dual_halfspaces(c.rays, c.dim);
    std::vector<Vec> normals;
    for (const auto& h : c.halfspaces)
        normals.push_back(h.normal);
    c.pointed = !normals.empty() && rank(Mat::from_rows(normals)) == c.dim;
    if (!c.pointed && !allow_lines)
        throw Error(ErrorKind::NotPointed, "cone contains a line");
    return c;
}

inline ConvexCone cone_from_halfspaces(const std::vector<Halfspace>& hs, bool allow_lines = false)
{
    ConvexCone c;
    c.dim = hs.at(0).normal.dim();
    for (const auto& h : hs)
        if (h.offset != 0)
            throw Error(ErrorKind::DegenerateInput, "cone halfspace must pass through O");
    c.halfspaces = detail::dedupe_canonical(hs);
    std::vector<Vec> normals;
    for (const auto& h : c.halfspaces)
        normals.push_back(h.normal);
    c.pointed = rank(Mat::from_rows(normals)) == c.dim;
    if (!c.pointed && !allow_lines)
        throw Error(ErrorKind::NotPointed, "cone contains a line");
    if (c.pointed)
        c.rays = conedetail::enumerate_rays(c.halfspaces, c.dim);
    return c;
}

/// 2D cone spanning the angular sector from ray a to ray b (at most a
/// halfplane apart).
inline ConvexCone sector(const Vec& a, const Vec& b)
{
    return cone_from_rays({a, b});
}

/// The cone over a polygon placed at height x3 = 1.
inline ConvexCone cone_from_section(const Polytope& polygon)
{
    if (polygon.dim() != 2)
        throw Error(ErrorKind::DegenerateInput, "cone_from_section wants a 2-polytope");
    ConvexCone c;
    c.dim = 3;
    for (const Vec& v : polygon.vertices())
        c.rays.push_back(primitive(Vec{v[0], v[1], Rat(1)}));
    std::sort(c.rays.begin(), c.rays.end());
    for (const auto& h : polygon.halfspaces())
        c.halfspaces.push_back(canonical({Vec{h.normal[0], h.normal[1], -h.offset}, Rat(0)}));
    std::sort(c.halfspaces.begin(), c.halfspaces.end());
    c.pointed = true;
    return c;
}

/// Slice {x3 = height} of an upward cone, as a 2-polytope in (x1, x2).
inline Polytope cone_section(const ConvexCone& c, const Rat& height)
{
    std::vector<Halfspace> hs;
    for (const auto& h : c.halfspaces) {
        Vec nu{h.normal[0], h.normal[1]};
        Rat rhs = -h.normal[2] * height;
        if (nu.is_zero()) {
            if (rhs < 0)
                throw Error(ErrorKind::Empty, "section misses the cone");
            continue;
        }
        hs.push_back({nu, rhs});
    }
    return halfspace_intersection(hs, 2);
}

namespace conedetail {

inline std::vector<Halfspace> shifted(const std::vector<Halfspace>& hs, const Vec& x)
{
    std::vector<Halfspace> out;
    for (const auto& h : hs)
        out.push_back({h.normal, h.offset + dot(h.normal, x)});
    return out;
}

/// Volume of a bounded H-rep intersection; 0 when empty or lower-dim.
inline Rat hrep_volume(const std::vector<Halfspace>& hs, int dim, bool* lower_dim = nullptr)
{
    if (lower_dim)
        *lower_dim = false;
    try {
        return volume(halfspace_intersection(hs, dim));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Empty)
            return Rat(0);
        if (e.kind() == ErrorKind::DegenerateInput) {
            if (lower_dim)
                *lower_dim = true;
            return Rat(0);
        }
        throw;
    }
}

} // namespace conedetail

/// Sandwich condition of the cone setup: A and -B in the upper halfspace,
/// each touching {x_n = 0} only at O.
inline bool eq15_sandwich(const ConvexCone& a, const ConvexCone& b)
{
    int n = a.dim;
    for (const Vec& r : a.rays)
        if (r[n - 1] <= 0)
            return false;
    for (const Vec& r : b.rays)
        if (r[n - 1] >= 0)
            return false;
    return true;
}

/// g_{A,B}(x) for cones: exact volume of A cap (B + x). Positively
/// homogeneous of degree n.
inline Rat cross_cov_cones(const ConvexCone& a, const ConvexCone& b, const Vec& x)
{
    if (a.is_origin_only() || b.is_origin_only())
        return Rat(0);
    std::vector<Halfspace> combined = a.halfspaces;
    auto sh = conedetail::shifted(b.halfspaces, x);
    combined.insert(combined.end(), sh.begin(), sh.end());
    {
        std::vector<Halfspace> rec = a.halfspaces;
        rec.insert(rec.end(), b.halfspaces.begin(), b.halfspaces.end());
        rec = detail::dedupe_canonical(rec);
        if (auto d = detail::recession_direction(rec, a.dim))
            throw Error(ErrorKind::UnboundedIntersection, "common recession direction " + d->str());
    }
    return conedetail::hrep_volume(combined, a.dim);
}

/// Exact chord length of a cone along the line y + R d. Throws
/// InfiniteChord when the chord is a ray or a line.
inline Rat xray_cone(const ConvexCone& a, const Vec& d, const Vec& y)
{
    if (d.is_zero())
        throw Error(ErrorKind::DegenerateInput, "xray_cone: d = 0");
    auto seg = detail::clip_line(a.halfspaces, y, d);
    if (!seg)
        return Rat(0);
    return detail::euclidean_length(seg->second - seg->first, d);
}

struct MixedDerivativeResult {
    double mixed_difference = 0; // Richardson-extrapolated d^2/ds dt
    double alpha = 0;            // |det[v1 v2 r0]| / |r0|
    double alpha_fitted = 0;     // mixed_difference / chord length
    double chord = 0;            // lambda_1 of the edge-line section
    double residual = 0;         // relative
};

/// Lemma-style check: the mixed second derivative of
/// (t,s) -> vol(A cap (L + t v1 + s v2)) equals alpha times the chord
/// length of A along the shifted edge of the dihedral cone L.
inline MixedDerivativeResult mixed_derivative_check(const ConvexCone& atil, const ConvexCone& l,
                                                    const Vec& v1, const Vec& v2, const Rat& t,
                                                    const Rat& s, const Rat& h)
{
    if (l.halfspaces.size() != 2)
        throw Error(ErrorKind::DegenerateInput, "L must be dihedral (two halfspaces)");
    const Vec& n1 = l.halfspaces[0].normal;
    const Vec& n2 = l.halfspaces[1].normal;
    Mat edge_mat = Mat::from_rows({n1, n2});
    auto ns = nullspace(edge_mat);
    if (ns.size() != 1)
        throw Error(ErrorKind::DegenerateInput, "dihedral cone edge is not a line");
    Vec r0 = primitive(ns[0]);

    auto in_relint = [&](const Vec& v, const Vec& on, const Vec& off) {
        return dot(on, v) == 0 && dot(off, v) < 0;
    };
    bool v1_first = in_relint(v1, n1, n2);
    if (!(v1_first ? in_relint(v2, n2, n1) : (in_relint(v1, n2, n1) && in_relint(v2, n1, n2))))
        throw Error(ErrorKind::DegenerateInput, "v1, v2 must lie in the facet interiors of L");

    {
        std::vector<Halfspace> rec = atil.halfspaces;
        rec.insert(rec.end(), l.halfspaces.begin(), l.halfspaces.end());
        rec = detail::dedupe_canonical(rec);
        if (auto dd = detail::recession_direction(rec, atil.dim))
            throw Error(ErrorKind::DegenerateInput, "A and L must meet only at O");
    }

    auto g = [&](const Rat& tt, const Rat& ss) {
        Vec off = tt * v1 + ss * v2;
        std::vector<Halfspace> combined = atil.halfspaces;
        auto sh = conedetail::shifted(l.halfspaces, off);
        combined.insert(combined.end(), sh.begin(), sh.end());
        bool lower = false;
        Rat v = conedetail::hrep_volume(combined, atil.dim, &lower);
        if (lower)
            throw Error(ErrorKind::NonSmoothPoint, "intersection has empty interior");
        return v;
    };

    auto mixed = [&](const Rat& hh) {
        Rat m = g(t + hh, s + hh) - g(t + hh, s - hh) - g(t - hh, s + hh) + g(t - hh, s - hh);
        return m / (4 * hh * hh);
    };
    Rat m1 = mixed(h), m2 = mixed(h / 2);
    MixedDerivativeResult out;
    out.mixed_difference = to_double((4 * m2 - m1) / 3);

    Mat b = Mat::from_cols({v1, v2, r0});
    double r0n = std::sqrt(to_double(norm_sq(r0)));
    out.alpha = std::fabs(to_double(det(b))) / r0n;

    Vec base = t * v1 + s * v2;
    auto seg = detail::clip_line(atil.halfspaces, base, r0);
    out.chord = seg ? to_double(seg->second - seg->first) * r0n : 0.0;

    double rhs = out.alpha * out.chord;
    out.alpha_fitted = out.chord > 0 ? out.mixed_difference / out.chord : 0.0;
    double denom = std::max({std::fabs(rhs), std::fabs(out.mixed_difference), 1e-30});
    out.residual = std::fabs(out.mixed_difference - rhs) / denom;
    return out;
}

/// Integral of |x - p|^-2 along K cap (line through p in direction d):
/// 1/r1 - 1/r2 for the endpoint distances r1 <= r2. Exact when the
/// distances are rational; otherwise accurate to 1e-12.
struct MinusOneChord {
    std::optional<Rat> exact;
    double value = 0;
};

inline MinusOneChord minus_one_chord(const Polytope& k, const Vec& p, const Vec& d)
{
    if (k.contains(p))
        throw Error(ErrorKind::PInsideBody, "p must lie outside the body");
    if (d.is_zero())
        throw Error(ErrorKind::DegenerateInput, "minus_one_chord: d = 0");
    auto seg = detail::clip_line(k.halfspaces(), p, d);
    MinusOneChord out;
    if (!seg) {
        out.exact = Rat(0);
        out.value = 0;
        return out;
    }
    Rat t1 = seg->first, t2 = seg->second;
    if (t1 < 0 && t2 > 0)
        throw Error(ErrorKind::PInsideBody, "chord straddles p");
    Rat a1 = rat_abs(t1), a2 = rat_abs(t2);
    if (a1 > a2)
        std::swap(a1, a2);
    // distances r_i = a_i |d|; the integral is 1/r1 - 1/r2
    if (a1 == 0)
        throw Error(ErrorKind::PInsideBody, "p lies on the boundary chord");
    Rat diff_over_norm = Rat(1) / a1 - Rat(1) / a2;
    auto nrm = rat_sqrt_exact(dot(d, d));
    if (nrm)
        out.exact = diff_over_norm / *nrm;
    out.value = to_double(diff_over_norm) / std::sqrt(to_double(dot(d, d)));
    return out;
}

/// Sign of the jump of d^3/dt^3 of t -> vol(C cap (D + t e3) cap [-1,1]^3)
/// at t = 0, from exact one-sided cubic stencils at two dyadic scales.
inline int third_derivative_jump(const ConvexCone& c, const ConvexCone& d, const Rat& t_probe,
                                 const std::vector<Halfspace>* clip_override = nullptr)
{
    auto check_dihedral = [](const ConvexCone& cone, int edge_axis, const char* name) {
        if (cone.halfspaces.size() != 2)
            throw Error(ErrorKind::DegenerateInput, std::string(name) + " must be dihedral");
        for (const auto& h : cone.halfspaces) {
            if (h.normal[edge_axis] != 0)
                throw Error(ErrorKind::DegenerateInput,
                            std::string(name) + " edge must be the required axis");
            if (h.normal[0] == 0 && h.normal[1] == 0)
                throw Error(ErrorKind::DegenerateInput,
                            std::string(name) + " has a facet in {x3 = 0}");
        }
    };
    check_dihedral(c, 0, "C");
    check_dihedral(d, 1, "D");

    std::vector<Halfspace> clip;
    if (clip_override) {
        clip = *clip_override;
    } else {
        for (int i = 0; i < 3; ++i) {
            Vec e = unit_axis(3, i);
            clip.push_back({e, Rat(1)});
            clip.push_back({-e, Rat(1)});
        }
    }

    auto g = [&](const Rat& t) {
        std::vector<Halfspace> hs = c.halfspaces;
        auto sh = conedetail::shifted(d.halfspaces, Vec{Rat(0), Rat(0), t});
        hs.insert(hs.end(), sh.begin(), sh.end());
        hs.insert(hs.end(), clip.begin(), clip.end());
        return conedetail::hrep_volume(hs, 3);
    };

    auto jump_sign = [&](const Rat& h) {
        Rat right = (-g(h) + 3 * g(2 * h) - 3 * g(3 * h) + g(4 * h)) / (h * h * h);
        Rat left = (g(-h) - 3 * g(-2 * h) + 3 * g(-3 * h) - g(-4 * h)) / (h * h * h);
        return sign(right - left);
    };
    int s1 = jump_sign(t_probe);
    int s2 = jump_sign(t_probe / 2);
    if (s1 != s2)
        throw Error(ErrorKind::StencilUnstable, "dyadic scales disagree");
    return s1;
}

/// Exchange identity refuter: g_{A,C} + g_{B,D} = g_{A,D} + g_{B,C}
/// evaluated exactly at probes. Holds termwise when A = B or C = D; for
/// generic quadruples it must fail at some probe.
struct ExchangeProbeResult {
    bool holds = true;
    std::optional<Vec> witness;
};

inline ExchangeProbeResult exchange_identity_probe(const ConvexCone& a, const ConvexCone& b,
                                                   const ConvexCone& c, const ConvexCone& d,
                                                   int probes, Rng& rng)
{
    int n = a.dim;
    auto upper_touch_origin = [&](const ConvexCone& k) {
        if (k.is_origin_only())
            return true;
        for (const Vec& r : k.rays)
            if (r[n - 1] <= 0)
                return false;
        return true;
    };
    if (!upper_touch_origin(a) || !upper_touch_origin(b))
        throw Error(ErrorKind::DegenerateInput, "A, B must be above {x_n = 0} touching only at O");
    for (const ConvexCone* k : {&c, &d})
        for (const Vec& r : k->rays)
            if (r[n - 1] > 0)
                throw Error(ErrorKind::DegenerateInput, "C, D must lie in {x_n <= 0}");
    {
        std::vector<Vec> all = c.rays;
        all.insert(all.end(), d.rays.begin(), d.rays.end());
        if (!all.empty()) {
            ConvexCone hullcone = cone_from_rays(all, true);
            if (!hullcone.pointed)
                throw Error(ErrorKind::DegenerateInput, "conv(C u D) must be pointed");
        }
    }

    ExchangeProbeResult out;
    for (int i = 0; i < probes; ++i) {
        Vec x = rng.vec(n, 2, 8, 32);
        Rat lhs = cross_cov_cones(a, c, x) + cross_cov_cones(b, d, x);
        Rat rhs = cross_cov_cones(a, d, x) + cross_cov_cones(b, c, x);
        if (lhs != rhs) {
            out.holds = false;
            out.witness = x;
            return out;
        }
    }
    return out;
}

} // namespace covlab
