#pragma once

#include <optional>
#include <vector>

#include "covlab/embed.hpp"
#include "covlab/faces.hpp"
#include "covlab/parallel.hpp"
#include "covlab/polytope.hpp"
#include "covlab/rng.hpp"

namespace covlab {

namespace detail {

/// Volume of K cap (L + x) without building the intersection polytope:
/// candidate points (contained vertices plus edge-facet crossings, brute
/// force in 4D), then a facet-pyramid sum over the combined H-rep. Shares
/// the cached edge graphs of K and L across calls.
inline Rat intersection_volume(const Polytope& k, const Polytope& l, const Vec& x)
{
    int n = k.dim();
    auto [klo, khi] = k.bounding_box();
    auto [llo, lhi] = l.bounding_box();
    for (int i = 0; i < n; ++i)
        if (llo[i] + x[i] >= khi[i] || lhi[i] + x[i] <= klo[i])
            return Rat(0);
    if (n == 1)
        return std::min(khi[0], lhi[0] + x[0]) - std::max(klo[0], llo[0] + x[0]);

    // combined H-rep; L's halfspaces shifted by x stay canonical
    std::vector<Halfspace> hs = k.halfspaces();
    for (const auto& h : l.halfspaces())
        hs.push_back({h.normal, h.offset + dot(h.normal, x)});
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());

    auto inside = [&](const Vec& v) {
        for (const auto& h : hs)
            if (dot(h.normal, v) > h.offset)
                return false;
        return true;
    };

    std::vector<Vec> cands;
    for (const Vec& v : k.vertices())
        if (inside(v))
            cands.push_back(v);
    for (const Vec& v : l.vertices()) {
        Vec w = v + x;
        if (inside(w))
            cands.push_back(w);
    }
    if (n <= 3) {
        auto cross_edges = [&](const Polytope& a, const Polytope& b, const Vec& ashift,
                               const Vec& bshift) {
            for (auto [i, j] : a.edges()) {
                Vec u = a.vertices()[i] + ashift;
                Vec dir = a.vertices()[j] - a.vertices()[i];
                for (const auto& h : b.halfspaces()) {
                    Rat den = dot(h.normal, dir);
                    if (den == 0)
                        continue;
                    Rat t = (h.offset + dot(h.normal, bshift) - dot(h.normal, u)) / den;
                    if (t <= 0 || t >= 1)
                        continue;
                    Vec pt = u + t * dir;
                    if (inside(pt))
                        cands.push_back(pt);
                }
            }
        };
        Vec zero(n);
        cross_edges(k, l, zero, x);
        cross_edges(l, k, x, zero);
    } else {
        int m = static_cast<int>(hs.size());
        std::vector<int> idx(n);
        std::function<void(int, int)> go = [&](int start, int kk) {
            if (kk == n) {
                Mat a(n, n);
                Vec b(n);
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j)
                        a(i, j) = hs[idx[i]].normal[j];
                    b[i] = hs[idx[i]].offset;
                }
                auto sol = solve(a, b);
                if (sol && inside(*sol))
                    cands.push_back(*sol);
                return;
            }
            for (int i = start; i < m; ++i) {
                idx[kk] = i;
                go(i + 1, kk + 1);
            }
        };
        go(0, 0);
    }
    if (cands.size() <= static_cast<std::size_t>(n))
        return Rat(0);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    // pyramid sum from the first candidate; degenerate intersections
    // contribute zero chart areas throughout
    const Vec& apex = cands[0];
    Rat vol(0);
    for (const auto& h : hs) {
        Rat height = h.offset - dot(h.normal, apex);
        if (height == 0)
            continue;
        std::vector<Vec> proj;
        int kk = dominant_axis(h.normal);
        for (const Vec& v : cands)
            if (dot(h.normal, v) == h.offset)
                proj.push_back(drop_coord(v, kk));
        if (proj.size() < static_cast<std::size_t>(n))
            continue;
        vol += rat_abs(height) * volume_of_points(proj) / rat_abs(h.normal[kk]);
    }
    return vol / n;
}

} // namespace detail

/// g_K(x): the volume of K intersected with K + x. Exact.
inline Rat cov(const Polytope& k, const Vec& x)
{
    return detail::intersection_volume(k, k, x);
}

/// g_{K,L}(x): the volume of K intersected with L + x. Exact.
inline Rat cross_cov(const Polytope& k, const Polytope& l, const Vec& x)
{
    return detail::intersection_volume(k, l, x);
}

/// Dense exact samples of a scalar function over a rational box grid.
/// Nodes include both box endpoints; the last axis varies fastest.
struct ScalarField {
    int dim = 0;
    Vec lo, hi;
    std::vector<int> res;
    std::vector<Rat> values;

    std::size_t size() const
    {
        std::size_t n = 1;
        for (int r : res)
            n *= r;
        return n;
    }

    Vec node(std::size_t flat) const
    {
        Vec x(dim);
        for (int a = dim - 1; a >= 0; --a) {
            int i = static_cast<int>(flat % res[a]);
            flat /= res[a];
            x[a] = lo[a] + (hi[a] - lo[a]) * Rat(i, res[a] - 1);
        }
        return x;
    }

    const Rat& at(const std::vector<int>& idx) const
    {
        std::size_t flat = 0;
        for (int a = 0; a < dim; ++a)
            flat = flat * res[a] + idx[a];
        return values[flat];
    }
};

namespace detail {

inline ScalarField sample_grid(int dim, const Vec& lo, const Vec& hi, std::vector<int> res,
                               const std::function<Rat(const Vec&)>& f)
{
    for (int r : res)
        if (r < 2)
            throw Error(ErrorKind::DegenerateInput, "grid resolution must be >= 2");
    ScalarField g;
    g.dim = dim;
    g.lo = lo;
    g.hi = hi;
    g.res = std::move(res);
    g.values.resize(g.size());
    parallel_for(g.size(), [&](std::size_t i) { g.values[i] = f(g.node(i)); });
    return g;
}

} // namespace detail

/// Support box of g_K, i.e. the bounding box of DK, without building DK.
inline std::pair<Vec, Vec> cov_support_box(const Polytope& k)
{
    auto [lo, hi] = k.bounding_box();
    return {lo - hi, hi - lo};
}

inline std::pair<Vec, Vec> cross_cov_support_box(const Polytope& k, const Polytope& l)
{
    auto [klo, khi] = k.bounding_box();
    auto [llo, lhi] = l.bounding_box();
    return {klo - lhi, khi - llo};
}

inline ScalarField cov_grid(const Polytope& k, const std::vector<int>& res)
{
    auto [lo, hi] = cov_support_box(k);
    return detail::sample_grid(k.dim(), lo, hi, res, [&](const Vec& x) { return cov(k, x); });
}

inline ScalarField cov_grid(const Polytope& k, int res_per_axis)
{
    return cov_grid(k, std::vector<int>(k.dim(), res_per_axis));
}

inline ScalarField cross_cov_grid(const Polytope& k, const Polytope& l,
                                  const std::vector<int>& res)
{
    auto [lo, hi] = cross_cov_support_box(k, l);
    return detail::sample_grid(k.dim(), lo, hi, res,
                               [&](const Vec& x) { return cross_cov(k, l, x); });
}

inline ScalarField cross_cov_grid(const Polytope& k, const Polytope& l, int res_per_axis)
{
    return cross_cov_grid(k, l, std::vector<int>(k.dim(), res_per_axis));
}

/// supp g_K = DK: positivity inside, zero on the boundary and outside,
/// probed at `trials` random points plus the vertices of DK. The cross
/// variant checks supp g_{K,L} = K + (-L).
inline bool support_identity_check(const Polytope& k, const std::optional<Polytope>& l,
                                   int trials, Rng& rng)
{
    Polytope supp = l ? minkowski_sum(k, reflect(*l)) : difference_body(k);
    auto eval = [&](const Vec& x) { return l ? cross_cov(k, *l, x) : cov(k, x); };

    for (const Vec& v : supp.vertices())
        if (eval(v) != 0)
            return false;

    auto [lo, hi] = supp.bounding_box();
    int n = k.dim();
    for (int t = 0; t < trials; ++t) {
        Vec x(n);
        for (int i = 0; i < n; ++i) {
            Rat u = rng.rat(1, 64, 127); // in [-1, 1]
            x[i] = lo[i] + (hi[i] - lo[i]) * (u + 1) / 2;
        }
        Rat g = eval(x);
        bool inside = supp.strictly_contains(x);
        bool on_boundary = !inside && supp.contains(x);
        if (inside && g <= 0)
            return false;
        if ((on_boundary || !supp.contains(x)) && g != 0)
            return false;
    }
    return true;
}

/// max |g_{KxL} - g_K g_L| over the grid; the product body is evaluated by
/// honest full-dimensional intersection, the right side by the factor
/// covariograms. Exactly zero for complementary coordinate subspaces.
inline Rat product_factorization_check(const Polytope& k, const Polytope& l, int res_per_axis)
{
    int nk = k.dim(), nl = l.dim(), n = nk + nl;
    std::vector<int> ax_k(nk), ax_l(nl);
    for (int i = 0; i < nk; ++i)
        ax_k[i] = i;
    for (int i = 0; i < nl; ++i)
        ax_l[i] = nk + i;
    Polytope prod = direct_sum({{k, ax_k}, {l, ax_l}});

    auto [lo, hi] = cov_support_box(prod);
    ScalarField grid = detail::sample_grid(n, lo, hi, std::vector<int>(n, res_per_axis),
                                           [&](const Vec& x) { return cov(prod, x); });
    Rat worst(0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Vec x = grid.node(i);
        Vec xk(nk), xl(nl);
        for (int a = 0; a < nk; ++a)
            xk[a] = x[a];
        for (int a = 0; a < nl; ++a)
            xl[a] = x[nk + a];
        Rat diff = rat_abs(grid.values[i] - cov(k, xk) * cov(l, xl));
        worst = std::max(worst, diff);
    }
    return worst;
}

namespace detail {

/// Parameter interval of {t : base + t*dir in P}, or nullopt when empty.
inline std::optional<std::pair<Rat, Rat>> clip_line(const std::vector<Halfspace>& hs,
                                                    const Vec& base, const Vec& dir)
{
    bool lo_open = true, hi_open = true;
    Rat lo(0), hi(0);
    for (const auto& h : hs) {
        Rat a = dot(h.normal, dir);
        Rat b = h.offset - dot(h.normal, base);
        if (a == 0) {
            if (b < 0)
                return std::nullopt;
            continue;
        }
        Rat t = b / a;
        if (a > 0) {
            if (hi_open || t < hi) {
                hi = t;
                hi_open = false;
            }
        } else {
            if (lo_open || t > lo) {
                lo = t;
                lo_open = false;
            }
        }
    }
    if (lo_open || hi_open)
        throw Error(ErrorKind::InfiniteChord, "line not bounded by the body");
    if (lo > hi)
        return std::nullopt;
    return std::make_pair(lo, hi);
}

inline Rat euclidean_length(const Rat& param_len, const Vec& dir)
{
    auto s = rat_sqrt_exact(param_len * param_len * dot(dir, dir));
    if (!s)
        throw Error(ErrorKind::DegenerateInput,
                    "irrational chord length; use a direction of rational norm");
    return *s;
}

} // namespace detail

/// Exact length of K intersected with the line through y (chart coordinates
/// of u-perp) in direction u.
inline Rat xray_body(const Polytope& k, const Vec& u, const Vec& y_local)
{
    if (u.is_zero())
        throw Error(ErrorKind::DegenerateInput, "xray: u = 0");
    AffineChart ch = plane_chart(u, Rat(0));
    Vec base = ch.to_ambient(y_local);
    auto seg = detail::clip_line(k.halfspaces(), base, u);
    if (!seg)
        return Rat(0);
    return detail::euclidean_length(seg->second - seg->first, u);
}

/// X-ray samples on a grid over the shadow of K in u-perp.
struct ChordDistribution {
    Vec direction;
    AffineChart chart; // of u-perp
    std::vector<std::pair<Vec, Rat>> samples; // (chart offset, chord length)
};

inline ChordDistribution chord_distribution(const Polytope& k, const Vec& u, int res_per_axis)
{
    ChordDistribution cd;
    cd.direction = u;
    cd.chart = plane_chart(u, Rat(0));
    int m = k.dim() - 1;

    // shadow bounding box in chart coordinates
    std::vector<Vec> shadow;
    for (const Vec& v : k.vertices()) {
        Vec proj = v - (dot(v, u) / dot(u, u)) * u;
        shadow.push_back(cd.chart.to_local(proj));
    }
    Vec lo = shadow[0], hi = shadow[0];
    for (const Vec& s : shadow)
        for (int i = 0; i < m; ++i) {
            lo[i] = std::min(lo[i], s[i]);
            hi[i] = std::max(hi[i], s[i]);
        }

    std::vector<int> idx(m, 0);
    for (;;) {
        Vec y(m);
        for (int i = 0; i < m; ++i)
            y[i] = lo[i] + (hi[i] - lo[i]) * Rat(idx[i], res_per_axis - 1);
        cd.samples.push_back({y, xray_body(k, u, y)});
        int a = m - 1;
        while (a >= 0 && ++idx[a] == res_per_axis)
            idx[a--] = 0;
        if (a < 0)
            break;
    }
    return cd;
}

/// Matheron's observation: -(d/dr) g_K(r u) equals the (n-1)-measure of
/// {y in u-perp : chord length through y exceeds r}, with r in parameter
/// units of u. The left side is a Richardson-extrapolated central
/// difference of exact covariogram values; the right side is exact.
struct MatheronCheck {
    double derivative = 0;  // -dg/dr estimate
    Rat superlevel;         // exact H^{n-1} superlevel measure, gauge-corrected
    double residual = 0;    // relative
};

inline MatheronCheck matheron_chord_check(const Polytope& k, const Vec& u, const Rat& r)
{
    if (u.is_zero())
        throw Error(ErrorKind::DegenerateInput, "matheron: u = 0");
    // width of the support along u, in parameter units
    Rat width = (k.support(u) + k.support(-u)) / dot(u, u);
    if (r <= 0)
        throw Error(ErrorKind::DegenerateInput, "matheron: r must be positive");

    MatheronCheck out;
    if (r >= width) {
        out.superlevel = Rat(0);
        out.derivative = 0;
        out.residual = 0;
        return out;
    }

    // exact superlevel measure: the shadow of K cap (K + r u) along u,
    // measured in u-perp (chart area times (u.u)/|u_k|)
    auto inter = intersect(k, translate(k, r * u));
    Rat area(0);
    int kk = dominant_axis(u);
    if (inter.full() || inter.lower_dim()) {
        const std::vector<Vec>& verts = inter.full() ? inter.poly->vertices() : inter.flat;
        std::vector<Vec> chart_pts;
        for (const Vec& v : verts) {
            Vec proj = v - (dot(v, u) / dot(u, u)) * u;
            chart_pts.push_back(drop_coord(proj, kk));
        }
        area = polygon_area(chart_pts);
    }
    out.superlevel = area * dot(u, u) / rat_abs(u[kk]);

    // t -> g(t u) is piecewise cubic with breakpoints on a finite set; the
    // whole stencil must sit on one piece, or the difference quotients see
    // a kink. Fit the cubic through four stencil nodes exactly and demand
    // it reproduce g at the interleaved nodes.
    Rat h = width / 100;
    auto g_at = [&](const Rat& t) { return cov(k, t * u); };
    {
        Mat vand(4, 4);
        Vec rhs(4);
        Rat offs[4] = {-h, -h / 2, h / 2, h};
        for (int i = 0; i < 4; ++i) {
            Rat s = offs[i] / h;
            vand(i, 0) = 1;
            vand(i, 1) = s;
            vand(i, 2) = s * s;
            vand(i, 3) = s * s * s;
            rhs[i] = g_at(r + offs[i]);
        }
        auto coef = solve(vand, rhs);
        auto predicts = [&](const Rat& off) {
            Rat s = off / h;
            Rat v = (*coef)[0] + (*coef)[1] * s + (*coef)[2] * s * s + (*coef)[3] * s * s * s;
            return v == g_at(r + off);
        };
        if (!coef || !predicts(Rat(0)) || !predicts(h / 4) || !predicts(-h / 4))
            throw Error(ErrorKind::RAtKink, "stencil spans a breakpoint; perturb r");
    }

    // central differences at h, h/2, h/4, Richardson twice; exact for a
    // single cubic piece up to float rounding
    double d[3];
    for (int i = 0; i < 3; ++i) {
        Rat hp = h / (1 << i);
        d[i] = -to_double((g_at(r + hp) - g_at(r - hp)) / (2 * hp));
    }
    double r1 = (4 * d[1] - d[0]) / 3;
    double r2 = (4 * d[2] - d[1]) / 3;
    out.derivative = (16 * r2 - r1) / 15;

    double s = to_double(out.superlevel);
    double denom = std::max(std::fabs(s), 1e-30);
    out.residual = std::fabs(out.derivative - s) / denom;
    return out;
}

} // namespace covlab
