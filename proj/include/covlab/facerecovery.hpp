#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "covlab/covariogram.hpp"
#include "covlab/embed.hpp"
#include "covlab/faces.hpp"
#include "covlab/parallel.hpp"

namespace covlab {

namespace frdetail {

/// Area of conv(a) cap conv(b) for chart point sets; 0 when either set is
/// not full-dimensional in the plane.
inline Rat intersection_area_2d(const std::vector<Vec>& a, const std::vector<Vec>& b)
{
    if (affine_rank(a) < 2 || affine_rank(b) < 2)
        return Rat(0);
    auto r = intersect(convex_hull(a), convex_hull(b));
    return r.full() ? volume(*r.poly) : Rat(0);
}

inline std::vector<Vec> translated(std::vector<Vec> pts, const Vec& x)
{
    for (Vec& p : pts)
        p = p + x;
    return pts;
}

} // namespace frdetail

/// The singular (parallel-pair) part of the second distributional
/// derivative of g_P along w:
///   sum over parallel facet pairs (i,j) of
///   (w.nu_i)(w.nu_j) H^{n-1}(F_i cap (F_j + x)),
/// with unit-vector coefficients carried as exact rationals and areas in
/// the dominant-coordinate chart of each plane family. Identities against
/// the projected facet covariograms compare like against like, so they are
/// exact; values mixing distinct plane families at one x carry per-family
/// chart factors (such x form a measure-zero set).
inline Rat singular_part(const Polytope& p, const Vec& w, const Vec& x)
{
    if (w.is_zero())
        throw Error(ErrorKind::DegenerateInput, "singular_part: w = 0");
    struct FacetData {
        Vec normal;
        Rat offset;
        std::vector<Vec> pts;
    };
    std::vector<FacetData> facets;
    for (const auto& h : p.halfspaces()) {
        FacetData f{h.normal, h.offset, {}};
        for (int id : p.on_set(h))
            f.pts.push_back(p.vertices()[id]);
        facets.push_back(std::move(f));
    }
    Rat total(0);
    Rat ww = norm_sq(w);
    int m = static_cast<int>(facets.size());
    for (int i = 0; i < m; ++i) {
        Rat wni = dot(w, facets[i].normal);
        if (wni == 0)
            continue;
        for (int j = 0; j < m; ++j) {
            int s;
            if (facets[j].normal == facets[i].normal)
                s = 1;
            else if (facets[j].normal == -facets[i].normal)
                s = -1;
            else
                continue;
            Rat wnj = dot(w, facets[j].normal);
            // common-plane test: F_j + x must land on the plane of F_i
            if (facets[i].offset != s * facets[j].offset + dot(facets[i].normal, x))
                continue;
            int k = dominant_axis(facets[i].normal);
            std::vector<Vec> ca, cb;
            for (const Vec& q : facets[i].pts)
                ca.push_back(drop_coord(q, k));
            for (const Vec& q : facets[j].pts)
                cb.push_back(drop_coord(q + x, k));
            Rat area = frdetail::intersection_area_2d(ca, cb);
            if (area == 0)
                continue;
            total += wni * wnj * area / (ww * norm_sq(facets[i].normal));
        }
    }
    return total;
}

/// The pair of functions the singular part carries for a direction w:
/// g_{F0} + g_{G0} on w-perp and g_{F0,G0} on the antipodal facet planes
/// of DP. F0, G0 are the projections of P_w and P_{-w} onto w-perp, held
/// in the dominant-coordinate chart of w.
struct ParallelFacetData {
    Vec w;
    int chart_axis = 0;
    Rat width;                    // h_P(w) + h_P(-w)
    std::vector<Vec> f0_chart;    // chart points of F0
    std::vector<Vec> g0_chart;    // chart points of G0
    int f_dim = 0, g_dim = 0;

    bool f_is_facet() const { return f_dim == w.dim() - 1; }
    bool g_is_facet() const { return g_dim == w.dim() - 1; }

    Vec chart_of(const Vec& x) const
    {
        Vec proj = x - (dot(x, w) / norm_sq(w)) * w;
        return drop_coord(proj, chart_axis);
    }

    /// g_{F0}(x) + g_{G0}(x) for x in w-perp (0 off the plane).
    Rat sum_field(const Vec& x) const
    {
        if (dot(w, x) != 0)
            return Rat(0);
        Vec xc = drop_coord(x, chart_axis);
        return frdetail::intersection_area_2d(f0_chart, frdetail::translated(f0_chart, xc))
             + frdetail::intersection_area_2d(g0_chart, frdetail::translated(g0_chart, xc));
    }

    /// g_{F0,G0} on the plane {w.x = width} (and its reflection g_{G0,F0}
    /// on {w.x = -width}); 0 elsewhere.
    Rat cross_field(const Vec& x) const
    {
        Rat h = dot(w, x);
        Vec xc = chart_of(x);
        if (h == width)
            return frdetail::intersection_area_2d(f0_chart, frdetail::translated(g0_chart, xc));
        if (h == -width)
            return frdetail::intersection_area_2d(g0_chart, frdetail::translated(f0_chart, xc));
        return Rat(0);
    }
};

inline ParallelFacetData parallel_facet_data(const Polytope& p, const Vec& w)
{
    if (w.is_zero())
        throw Error(ErrorKind::DegenerateInput, "parallel_facet_data: w = 0");
    ParallelFacetData d;
    d.w = w;
    d.chart_axis = dominant_axis(w);
    d.width = p.support(w) + p.support(-w);
    Face f = exposed_face(p, w), g = exposed_face(p, -w);
    d.f_dim = f.dim;
    d.g_dim = g.dim;
    for (const Vec& v : face_vertices(p, f))
        d.f0_chart.push_back(d.chart_of(v));
    for (const Vec& v : face_vertices(p, g))
        d.g0_chart.push_back(d.chart_of(v));
    return d;
}

/// Polynomial bump ((1 - |(x-c)/r|^2)^4)_+ : C^3, compactly supported.
struct BumpTestFn {
    Vec center;
    Rat radius;

    double operator()(const std::vector<double>& x) const
    {
        double s = s_of(x);
        if (s >= 1)
            return 0;
        double t = 1 - s;
        return t * t * t * t;
    }

    /// Second directional derivative along the unit vector w.
    double second_deriv(const std::vector<double>& x, const std::vector<double>& w) const
    {
        double s = s_of(x);
        if (s >= 1)
            return 0;
        double r2 = to_double(radius) * to_double(radius);
        double t = 1 - s;
        double wd = 0;
        for (size_t i = 0; i < x.size(); ++i)
            wd += w[i] * (x[i] - to_double(center[i]));
        return -8 * t * t * t / r2 + 48 * t * t * wd * wd / (r2 * r2);
    }

private:
    double s_of(const std::vector<double>& x) const
    {
        double s = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            double d = x[i] - to_double(center[i]);
            s += d * d;
        }
        return s / (to_double(radius) * to_double(radius));
    }
};

struct WeakDerivativeResult {
    double lhs = 0;      // -int g_P d2phi/dw2
    double rhs = 0;      // transversal line integrals + parallel surface integrals
    double residual = 0; // |lhs - rhs| / |lhs|
};

/// Weak verification of the second distributional derivative of g_P along
/// w against a smooth test function, by midpoint quadrature at the given
/// resolution per axis.
inline WeakDerivativeResult verify_second_derivative(const Polytope& p, const Vec& w,
                                                     const BumpTestFn& phi, int res)
{
    if (p.dim() != 3)
        throw Error(ErrorKind::DegenerateInput, "verify_second_derivative: 3D only");
    double wn = std::sqrt(to_double(norm_sq(w)));
    std::vector<double> wu = {to_double(w[0]) / wn, to_double(w[1]) / wn, to_double(w[2]) / wn};

    // integration box: bbox(DP) meet supp(phi)
    auto [slo, shi] = cov_support_box(p);
    Vec blo(3), bhi(3);
    for (int i = 0; i < 3; ++i) {
        blo[i] = std::max(slo[i], phi.center[i] - phi.radius);
        bhi[i] = std::min(shi[i], phi.center[i] + phi.radius);
        if (blo[i] >= bhi[i])
            return {0, 0, 0};
    }

    std::vector<Rat> step(3);
    Rat cellvol(1);
    for (int i = 0; i < 3; ++i) {
        step[i] = (bhi[i] - blo[i]) / res;
        cellvol *= step[i];
    }
    auto node = [&](std::size_t flat) {
        Vec x(3);
        for (int a = 2; a >= 0; --a) {
            int i = static_cast<int>(flat % res);
            flat /= res;
            x[a] = blo[a] + step[a] * Rat(2 * i + 1, 2);
        }
        return x;
    };

    struct ChartPlane {
        double n0, n1, off;
    };
    struct FacetData {
        Vec normal;
        Rat offset;
        std::vector<Vec> pts;
        std::array<double, 3> nd;
        double offd;
        double wdotn; // against unit normal
        int k;
        std::vector<Vec> chart_pts;
        std::vector<ChartPlane> chart;
    };
    std::vector<FacetData> facets;
    for (const auto& h : p.halfspaces()) {
        FacetData f;
        f.normal = h.normal;
        f.offset = h.offset;
        for (int id : p.on_set(h))
            f.pts.push_back(p.vertices()[id]);
        f.nd = {to_double(h.normal[0]), to_double(h.normal[1]), to_double(h.normal[2])};
        f.offd = to_double(h.offset);
        double nn = std::sqrt(f.nd[0] * f.nd[0] + f.nd[1] * f.nd[1] + f.nd[2] * f.nd[2]);
        f.wdotn = (wu[0] * f.nd[0] + wu[1] * f.nd[1] + wu[2] * f.nd[2]) / nn;
        f.k = dominant_axis(h.normal);
        for (const Vec& q : f.pts)
            f.chart_pts.push_back(drop_coord(q, f.k));
        Polytope chart_poly = convex_hull(f.chart_pts);
        for (const auto& ch : chart_poly.halfspaces())
            f.chart.push_back({to_double(ch.normal[0]), to_double(ch.normal[1]),
                               to_double(ch.offset)});
        facets.push_back(std::move(f));
    }
    int m = static_cast<int>(facets.size());

    // LHS plus the transversal part of the RHS share the 3D grid
    std::size_t nodes = static_cast<std::size_t>(res) * res * res;
    std::vector<double> lhs_terms(nodes), np_terms(nodes);
    struct Pair {
        int i, j;
        double coeff;
    };
    std::vector<Pair> np_pairs;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            bool parallel = facets[j].normal == facets[i].normal
                         || facets[j].normal == -facets[i].normal;
            if (parallel || facets[i].wdotn == 0 || facets[j].wdotn == 0)
                continue;
            auto& a = facets[i].nd;
            auto& b = facets[j].nd;
            double an = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
            double bn = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
            double cosab = (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) / (an * bn);
            np_pairs.push_back(
                {i, j, facets[i].wdotn * facets[j].wdotn / std::sqrt(1 - cosab * cosab)});
        }

    // float length of the segment F_i cap (F_j + z), both planes transversal
    auto segment_length = [&](const FacetData& fi, const FacetData& fj,
                              const std::array<double, 3>& z) {
        std::array<double, 3> dir = {fi.nd[1] * fj.nd[2] - fi.nd[2] * fj.nd[1],
                                     fi.nd[2] * fj.nd[0] - fi.nd[0] * fj.nd[2],
                                     fi.nd[0] * fj.nd[1] - fi.nd[1] * fj.nd[0]};
        double cj = fj.offd + fj.nd[0] * z[0] + fj.nd[1] * z[1] + fj.nd[2] * z[2];
        int freeze = 0;
        for (int c = 1; c < 3; ++c)
            if (std::fabs(dir[c]) > std::fabs(dir[freeze]))
                freeze = c;
        int a = (freeze + 1) % 3, b = (freeze + 2) % 3;
        double d2 = fi.nd[a] * fj.nd[b] - fi.nd[b] * fj.nd[a];
        if (d2 == 0)
            return 0.0;
        std::array<double, 3> p0 = {0, 0, 0};
        p0[a] = (fi.offd * fj.nd[b] - fi.nd[b] * cj) / d2;
        p0[b] = (fi.nd[a] * cj - fi.offd * fj.nd[a]) / d2;
        double lo = -1e300, hi = 1e300;
        auto clip_chart = [&](const FacetData& f, const std::array<double, 3>& shift) {
            double q0[2], qd[2];
            for (int c = 0, cc = 0; c < 3; ++c) {
                if (c == f.k)
                    continue;
                q0[cc] = p0[c] - shift[c];
                qd[cc] = dir[c];
                ++cc;
            }
            for (const auto& h : f.chart) {
                double aa = h.n0 * qd[0] + h.n1 * qd[1];
                double bb = h.off - (h.n0 * q0[0] + h.n1 * q0[1]);
                if (std::fabs(aa) < 1e-13) {
                    if (bb < 0)
                        return false;
                    continue;
                }
                double t = bb / aa;
                if (aa > 0)
                    hi = std::min(hi, t);
                else
                    lo = std::max(lo, t);
            }
            return true;
        };
        if (!clip_chart(fi, {0, 0, 0}) || !clip_chart(fj, z) || hi <= lo)
            return 0.0;
        return (hi - lo) * std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
    };

    parallel_for(nodes, [&](std::size_t t) {
        Vec z = node(t);
        std::vector<double> zd = {to_double(z[0]), to_double(z[1]), to_double(z[2])};
        double phidd = phi.second_deriv(zd, wu);
        lhs_terms[t] = phidd == 0 ? 0.0 : -to_double(cov(p, z)) * phidd;
        double phiv = phi(zd);
        double acc = 0;
        if (phiv != 0) {
            std::array<double, 3> za = {zd[0], zd[1], zd[2]};
            for (const auto& pr : np_pairs) {
                double len = segment_length(facets[pr.i], facets[pr.j], za);
                if (len > 0)
                    acc += pr.coeff * len * phiv;
            }
        }
        np_terms[t] = acc;
    });
    double cv = to_double(cellvol);
    WeakDerivativeResult out;
    out.lhs = pairwise_sum(lhs_terms) * cv;
    double rhs = pairwise_sum(np_terms) * cv;

    // parallel pairs: 2D surface integrals over F_i - F_j
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            bool parallel = facets[j].normal == facets[i].normal
                         || facets[j].normal == -facets[i].normal;
            if (!parallel || facets[i].wdotn == 0)
                continue;
            double coeff = facets[i].wdotn * facets[j].wdotn;
            // difference polygon in the chart of nu_i
            int k = facets[i].k;
            std::vector<Vec> diff_chart;
            for (const Vec& a : facets[i].pts)
                for (const Vec& b : facets[j].pts)
                    diff_chart.push_back(drop_coord(a - b, k));
            auto ring = hull_chain_2d(diff_chart);
            if (ring.size() < 3)
                continue;
            Vec lo2 = ring[0], hi2 = ring[0];
            for (const Vec& q : ring)
                for (int c = 0; c < 2; ++c) {
                    lo2[c] = std::min(lo2[c], q[c]);
                    hi2[c] = std::max(hi2[c], q[c]);
                }
            Rat sx = (hi2[0] - lo2[0]) / res, sy = (hi2[1] - lo2[1]) / res;
            if (sx == 0 || sy == 0)
                continue;
            double gauge = std::sqrt(to_double(norm_sq(facets[i].normal)))
                         / std::fabs(to_double(facets[i].normal[k]));
            // the plane of F_i - F_j in ambient space: nu_i . z = c_i - s c_j
            int s = facets[j].normal == facets[i].normal ? 1 : -1;
            Rat plane_off = facets[i].offset - s * facets[j].offset;
            std::vector<double> terms(static_cast<std::size_t>(res) * res, 0.0);
            parallel_for(terms.size(), [&](std::size_t t) {
                int ix = static_cast<int>(t) / res, iy = static_cast<int>(t) % res;
                Vec zc{lo2[0] + sx * Rat(2 * ix + 1, 2), lo2[1] + sy * Rat(2 * iy + 1, 2)};
                // lift chart point to the ambient plane
                Vec z(3);
                for (int c = 0, cc = 0; c < 3; ++c)
                    if (c != k)
                        z[c] = zc[cc++];
                Rat acc = plane_off;
                for (int c = 0; c < 3; ++c)
                    if (c != k)
                        acc -= facets[i].normal[c] * z[c];
                z[k] = acc / facets[i].normal[k];
                std::vector<double> zd = {to_double(z[0]), to_double(z[1]), to_double(z[2])};
                double phiv = phi(zd);
                if (phiv == 0)
                    return;
                std::vector<Vec> shifted;
                for (const Vec& q : facets[j].pts)
                    shifted.push_back(drop_coord(q + z, k));
                Rat ar = frdetail::intersection_area_2d(facets[i].chart_pts, shifted);
                terms[t] = to_double(ar) * gauge * phiv;
            });
            double cell2 = to_double(sx) * to_double(sy) * gauge;
            rhs += coeff * pairwise_sum(terms) * cell2;
        }

    out.rhs = rhs;
    double denom = std::max(std::fabs(out.lhs), 1e-30);
    out.residual = std::fabs(out.lhs - out.rhs) / denom;
    return out;
}

/// Antipodal-face classification along w for 3-polytopes, from the leading
/// dyadic exponent of g_P near the far boundary of DP plus the dimension
/// of (DP)_w and the vanishing of the projected-facet sum.
struct AntipodalCase {
    int case_id = 0;
    int leading_exponent = 0;
    int dim_dpw = 0;
    bool sum_vanishes = false;
    double fitted_constant = 0;
    int dim_f = 0, dim_g = 0; // cross-validation against the direct dims
};

inline AntipodalCase classify_antipodal(const Polytope& p, const Vec& w)
{
    if (p.dim() != 3)
        throw Error(ErrorKind::DegenerateInput, "classify_antipodal: 3D only");
    if (w.is_zero())
        throw Error(ErrorKind::DegenerateInput, "classify_antipodal: w = 0");

    AntipodalCase out;
    Face f = exposed_face(p, w), g = exposed_face(p, -w);
    out.dim_f = f.dim;
    out.dim_g = g.dim;

    // dim (DP)_w through the face identity (DP)_w = P_w + (-P)_w
    {
        std::vector<Vec> sums;
        for (const Vec& a : face_vertices(p, f))
            for (const Vec& b : face_vertices(p, g))
                sums.push_back(a - b);
        out.dim_dpw = affine_rank(sums);
    }
    out.sum_vanishes = !(f.dim == 2 || g.dim == 2);

    // rational normalization: map w to -e3, slab to 0 <= x3 <= 1
    int c = dominant_axis(w);
    int a = (c + 1) % 3, b = (c + 2) % 3;
    Mat rows(3, 3);
    rows(0, a) = 1;
    rows(1, b) = 1;
    for (int i = 0; i < 3; ++i)
        rows(2, i) = -w[i];
    Polytope q = affine_image(p, rows, Vec(3));
    auto [lo, hi] = q.bounding_box();
    Rat width = hi[2] - lo[2];
    Mat scale = Mat::identity(3);
    scale(2, 2) = Rat(1) / width;
    Vec shift(3);
    shift[2] = -lo[2] / width;
    q = affine_image(q, scale, shift);

    // probe target: a relative-interior point of (DP)_w, reached by the
    // difference of face relint points (the role the Steiner-point
    // normalization plays in the proof)
    Vec anchor = exposed_face(q, Vec{Rat(0), Rat(0), Rat(-1)}).relint_point
               - exposed_face(q, Vec{Rat(0), Rat(0), Rat(1)}).relint_point;

    // exact g values at dyadic eps, slopes of log2 g
    std::vector<double> logs;
    for (int e = 4; e <= 10; ++e) {
        Rat eps(1, 1 << e);
        Rat gv = cov(q, anchor + Vec{Rat(0), Rat(0), eps});
        if (gv <= 0)
            throw Error(ErrorKind::ExponentFitAmbiguous, "vanishing probe value");
        logs.push_back(std::log2(to_double(gv)));
    }
    double s_last = logs[logs.size() - 2] - logs[logs.size() - 1];
    double s_prev = logs[logs.size() - 3] - logs[logs.size() - 2];
    int expo = static_cast<int>(std::lround(s_last));
    if (std::fabs(s_last - expo) > 0.1 || std::fabs(s_prev - expo) > 0.1)
        throw Error(ErrorKind::ExponentFitAmbiguous, "slope not near an integer");
    out.leading_exponent = expo;
    out.fitted_constant = std::exp2(logs.back() + expo * 10.0);

    switch (out.dim_dpw) {
    case 2:
        if (expo == 1)
            out.case_id = 1;
        else if (expo == 2)
            out.case_id = 2;
        else
            out.case_id = out.sum_vanishes ? 5 : 3;
        break;
    case 1:
        out.case_id = expo == 2 ? 4 : 6;
        break;
    default:
        out.case_id = 7;
        break;
    }
    return out;
}

/// Exact probe test of the decoupling system
///   g_F + g_G = g_{F'} + g_{G'},  g_{F,G} = g_{F',G'}
/// for four 2-polytopes.
inline bool system_cov_check(const Polytope& f, const Polytope& g, const Polytope& f2,
                             const Polytope& g2, int probes, Rng& rng)
{
    auto box_union = [](std::initializer_list<std::pair<Vec, Vec>> boxes) {
        auto it = boxes.begin();
        Vec lo = it->first, hi = it->second;
        for (const auto& [l, h] : boxes)
            for (int i = 0; i < lo.dim(); ++i) {
                lo[i] = std::min(lo[i], l[i]);
                hi[i] = std::max(hi[i], h[i]);
            }
        return std::make_pair(lo, hi);
    };
    auto [lo, hi] = box_union({cov_support_box(f), cov_support_box(g), cov_support_box(f2),
                               cov_support_box(g2), cross_cov_support_box(f, g),
                               cross_cov_support_box(f2, g2)});
    for (int t = 0; t < probes; ++t) {
        Vec x(2);
        for (int i = 0; i < 2; ++i) {
            Rat u = rng.rat(1, 64, 127);
            x[i] = lo[i] + (hi[i] - lo[i]) * (u + 1) / 2;
        }
        if (cov(f, x) + cov(g, x) != cov(f2, x) + cov(g2, x))
            return false;
        if (cross_cov(f, g, x) != cross_cov(f2, g2, x))
            return false;
    }
    return true;
}

} // namespace covlab
