#pragma once

#include <optional>
#include <vector>

#include "covlab/polytope.hpp"

namespace covlab {

/// Exact affine chart between a k-flat in ambient space and R^k.
struct AffineChart {
    Vec origin;             // ambient point on the flat
    std::vector<Vec> basis; // k independent ambient directions

    int local_dim() const { return static_cast<int>(basis.size()); }
    int ambient_dim() const { return origin.dim(); }

    Vec to_ambient(const Vec& local) const
    {
        Vec p = origin;
        for (int i = 0; i < local_dim(); ++i)
            p = p + local[i] * basis[i];
        return p;
    }

    /// Inverse for points on the flat (solves the consistent system).
    Vec to_local(const Vec& ambient) const
    {
        int n = ambient_dim(), k = local_dim();
        Mat aug(n, k + 1);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < k; ++j)
                aug(i, j) = basis[j][i];
            aug(i, k) = ambient[i] - origin[i];
        }
        auto pivots = detail::rref(aug);
        Vec x(k);
        for (int r = 0; r < static_cast<int>(pivots.size()); ++r) {
            if (pivots[r] == k)
                throw Error(ErrorKind::DegenerateInput, "point off the chart flat");
            x[pivots[r]] = aug(r, k);
        }
        return x;
    }
};

/// Chart of the hyperplane {normal . x = offset} that drops the dominant
/// coordinate of the normal. Chart Lebesgue measure relates to surface
/// measure by the factor |normal| / |normal_k|; identities compared within
/// one plane family share the factor, so they hold exactly in chart values.
inline AffineChart plane_chart(const Vec& normal, const Rat& offset)
{
    int n = normal.dim();
    int k = dominant_axis(normal);
    Vec origin(n);
    origin[k] = offset / normal[k];
    AffineChart ch;
    ch.origin = origin;
    for (int i = 0; i < n; ++i) {
        if (i == k)
            continue;
        Vec b = unit_axis(n, i);
        b[k] = -normal[i] / normal[k];
        ch.basis.push_back(b);
    }
    return ch;
}

/// A lower-dimensional polytope stored as a full-dimensional one in chart
/// coordinates plus the embedding back into ambient space.
struct EmbeddedPolytope {
    AffineChart chart;
    Polytope local;

    std::vector<Vec> ambient_vertices() const
    {
        std::vector<Vec> out;
        for (const Vec& v : local.vertices())
            out.push_back(chart.to_ambient(v));
        return out;
    }
};

/// Chart for the affine hull of a point set (pivot-column basis, so charts
/// are deterministic for a given vertex order).
inline AffineChart flat_chart(const std::vector<Vec>& pts)
{
    AffineChart ch;
    ch.origin = pts[0];
    std::vector<Vec> diffs;
    for (size_t i = 1; i < pts.size(); ++i)
        diffs.push_back(pts[i] - pts[0]);
    if (diffs.empty())
        return ch;
    Mat mt = Mat::from_rows(diffs).transposed();
    auto cols = detail::rref(mt); // pivot columns of m^T = independent rows of m
    for (int r : cols)
        ch.basis.push_back(diffs[r]);
    return ch;
}

/// Extreme points of conv(pts), exact, any affine dimension.
inline std::vector<Vec> extreme_points(const std::vector<Vec>& pts_in)
{
    std::vector<Vec> pts = pts_in;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 1)
        return pts;
    AffineChart ch = flat_chart(pts);
    int k = ch.local_dim();
    if (k == 0)
        return {pts[0]};
    std::vector<Vec> local;
    for (const Vec& p : pts)
        local.push_back(ch.to_local(p));
    std::vector<Vec> ext_local;
    if (k == 1) {
        Vec lo = local[0], hi = local[0];
        for (const Vec& l : local) {
            if (l[0] < lo[0]) lo = l;
            if (l[0] > hi[0]) hi = l;
        }
        ext_local = {lo, hi};
    } else if (k == 2) {
        ext_local = hull_chain_2d(local);
    } else {
        auto h = hull::compute(local);
        for (int id : h.extreme)
            ext_local.push_back(h.points[id]);
    }
    std::vector<Vec> out;
    for (const Vec& l : ext_local)
        out.push_back(ch.to_ambient(l));
    std::sort(out.begin(), out.end());
    return out;
}

/// Exact set equality of conv(a) and conv(b).
inline bool same_hull(const std::vector<Vec>& a, const std::vector<Vec>& b)
{
    return extreme_points(a) == extreme_points(b);
}

/// conv(b) == conv(a) + t for some translation t; returns t.
inline std::optional<Vec> translation_between(const std::vector<Vec>& a, const std::vector<Vec>& b)
{
    auto ea = extreme_points(a), eb = extreme_points(b);
    if (ea.empty() || ea.size() != eb.size())
        return std::nullopt;
    Vec t = eb[0] - ea[0]; // lexicographic minima must correspond
    for (size_t i = 0; i < ea.size(); ++i)
        if (ea[i] + t != eb[i])
            return std::nullopt;
    return t;
}

} // namespace covlab
