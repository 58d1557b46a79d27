#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "covlab/linalg.hpp"

namespace covlab {

/// The closed halfspace {x : normal . x <= offset}.
struct Halfspace {
    Vec normal;
    Rat offset;

    bool operator==(const Halfspace& o) const
    {
        return normal == o.normal && offset == o.offset;
    }
    bool operator<(const Halfspace& o) const
    {
        if (normal != o.normal)
            return normal < o.normal;
        return offset < o.offset;
    }
};

/// Scales so the normal is a primitive integer vector (direction kept).
inline Halfspace canonical(const Halfspace& h)
{
    Vec p = primitive(h.normal);
    int k = 0;
    while (p[k] == 0)
        ++k;
    Rat scale = p[k] / h.normal[k];
    return Halfspace{p, h.offset * scale};
}

inline int dominant_axis(const Vec& v)
{
    int k = 0;
    for (int i = 1; i < v.dim(); ++i)
        if (rat_abs(v[i]) > rat_abs(v[k]))
            k = i;
    return k;
}

/// Drops coordinate k; the chart used for facet measures and embeddings.
inline Vec drop_coord(const Vec& v, int k)
{
    Vec r(v.dim() - 1);
    for (int i = 0, j = 0; i < v.dim(); ++i)
        if (i != k)
            r[j++] = v[i];
    return r;
}

namespace hull {

struct Facet {
    Vec normal;   // canonical primitive integer normal, outward
    Rat offset;
    std::vector<int> on; // indices of points on the hyperplane, sorted
};

struct Result {
    std::vector<Vec> points;  // deduplicated input
    std::vector<Facet> facets;
    std::vector<int> extreme; // indices of extreme points, sorted
};

inline std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b)
{
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Hyperplane through the affinely independent points pts[ids], oriented so
// that ref is strictly inside. Empty normal when the flat is degenerate.
inline std::optional<std::pair<Vec, Rat>> plane_through(const std::vector<Vec>& pts,
                                                        const std::vector<int>& ids,
                                                        const Vec& ref)
{
    int d = pts[ids[0]].dim();
    std::vector<Vec> diffs;
    for (size_t i = 1; i < ids.size(); ++i)
        diffs.push_back(pts[ids[i]] - pts[ids[0]]);
    Mat m = Mat::from_rows(diffs);
    auto ns = nullspace(m);
    if (static_cast<int>(ns.size()) != 1)
        return std::nullopt;
    Vec n = primitive(ns[0]);
    Rat c = dot(n, pts[ids[0]]);
    Rat side = dot(n, ref) - c;
    if (side == 0)
        return std::nullopt;
    if (side > 0) {
        n = -n;
        c = -c;
    }
    (void)d;
    return std::make_pair(n, c);
}

/// Beneath-beyond convex hull with exact arithmetic, dimensions 1-4.
/// Handles degenerate (non-simplicial) facets by keeping per-facet point
/// sets instead of a triangulation.
inline Result compute(const std::vector<Vec>& input)
{
    Result res;
    // dedupe
    std::set<Vec> seen;
    for (const Vec& p : input)
        if (seen.insert(p).second)
            res.points.push_back(p);
    const auto& pts = res.points;
    if (pts.empty())
        throw Error(ErrorKind::DegenerateInput, "hull of empty set");
    int d = pts[0].dim();

    if (d == 1) {
        int lo = 0, hi = 0;
        for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
            if (pts[i][0] < pts[lo][0]) lo = i;
            if (pts[i][0] > pts[hi][0]) hi = i;
        }
        if (lo == hi)
            throw Error(ErrorKind::DegenerateInput, "hull is a point");
        res.facets.push_back({Vec{Rat(-1)}, -pts[lo][0], {lo}});
        res.facets.push_back({Vec{Rat(1)}, pts[hi][0], {hi}});
        res.extreme = {std::min(lo, hi), std::max(lo, hi)};
        return res;
    }

    // greedy affinely independent seed simplex
    std::vector<int> simplex = {0};
    for (int i = 1; i < static_cast<int>(pts.size()) && static_cast<int>(simplex.size()) < d + 1; ++i) {
        simplex.push_back(i);
        std::vector<Vec> sel;
        for (int id : simplex)
            sel.push_back(pts[id]);
        if (affine_rank(sel) != static_cast<int>(simplex.size()) - 1)
            simplex.pop_back();
    }
    if (static_cast<int>(simplex.size()) != d + 1)
        throw Error(ErrorKind::DegenerateInput, "hull is lower-dimensional");

    Vec ref(d);
    for (int id : simplex)
        ref = ref + pts[id];
    ref = Rat(1, d + 1) * ref;

    std::vector<Facet> facets;
    for (int omit = 0; omit <= d; ++omit) {
        std::vector<int> ids;
        for (int i = 0; i <= d; ++i)
            if (i != omit)
                ids.push_back(simplex[i]);
        auto pl = plane_through(pts, ids, ref);
        facets.push_back({pl->first, pl->second, ids});
        std::sort(facets.back().on.begin(), facets.back().on.end());
    }

    std::vector<int> processed(simplex.begin(), simplex.end());
    std::set<int> in_simplex(simplex.begin(), simplex.end());

    for (int p = 0; p < static_cast<int>(pts.size()); ++p) {
        if (in_simplex.count(p))
            continue;
        std::vector<int> visible, kept;
        for (int f = 0; f < static_cast<int>(facets.size()); ++f) {
            Rat s = dot(facets[f].normal, pts[p]) - facets[f].offset;
            if (s > 0)
                visible.push_back(f);
            else {
                kept.push_back(f);
                if (s == 0) {
                    facets[f].on.push_back(p);
                    std::sort(facets[f].on.begin(), facets[f].on.end());
                }
            }
        }
        if (!visible.empty()) {
            std::vector<Facet> next;
            std::set<std::pair<Vec, Rat>> have;
            for (int f : kept) {
                next.push_back(facets[f]);
                have.insert({facets[f].normal, facets[f].offset});
            }
            for (int fa : visible) {
                for (int fb : kept) {
                    auto ridge = sorted_intersection(facets[fa].on, facets[fb].on);
                    if (ridge.empty())
                        continue;
                    std::vector<Vec> rp;
                    for (int id : ridge)
                        rp.push_back(pts[id]);
                    if (affine_rank(rp) != d - 2)
                        continue;
                    std::vector<int> ids = ridge;
                    ids.push_back(p);
                    auto pl = plane_through(pts, ids, ref);
                    if (!pl)
                        continue;
                    if (!have.insert({pl->first, pl->second}).second)
                        continue;
                    Facet nf{pl->first, pl->second, {}};
                    for (int q : processed)
                        if (dot(nf.normal, pts[q]) == nf.offset)
                            nf.on.push_back(q);
                    nf.on.push_back(p);
                    std::sort(nf.on.begin(), nf.on.end());
                    next.push_back(std::move(nf));
                }
            }
            facets = std::move(next);
        }
        processed.push_back(p);
    }

    // extreme points: active facet normals have full rank
    std::vector<std::vector<int>> active(pts.size());
    for (int f = 0; f < static_cast<int>(facets.size()); ++f)
        for (int id : facets[f].on)
            active[id].push_back(f);
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        if (static_cast<int>(active[i].size()) < d)
            continue;
        std::vector<Vec> ns;
        for (int f : active[i])
            ns.push_back(facets[f].normal);
        if (rank(Mat::from_rows(ns)) == d)
            res.extreme.push_back(i);
    }
    res.facets = std::move(facets);
    return res;
}

} // namespace hull

/// Counterclockwise extreme points of a planar point set (monotone chain).
/// Collinear points are dropped.
inline std::vector<Vec> hull_chain_2d(std::vector<Vec> pts)
{
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2)
        return pts;
    auto cross = [](const Vec& o, const Vec& a, const Vec& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Vec> h(2 * pts.size());
    size_t k = 0;
    for (const Vec& p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0)
            --k;
        h[k++] = p;
    }
    for (size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
        while (k >= lo && cross(h[k - 2], h[k - 1], pts[i]) <= 0)
            --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

/// Exact area of the convex hull of a planar point set.
inline Rat polygon_area(const std::vector<Vec>& pts)
{
    auto v = hull_chain_2d(pts);
    if (v.size() < 3)
        return Rat(0);
    Rat area(0);
    for (size_t i = 1; i + 1 < v.size(); ++i) {
        Rat cr = (v[i][0] - v[0][0]) * (v[i + 1][1] - v[0][1])
               - (v[i][1] - v[0][1]) * (v[i + 1][0] - v[0][0]);
        area += cr;
    }
    return rat_abs(area) / 2;
}

/// Exact d-volume of conv(pts) where pts spans dimension d = pts[0].dim().
/// Recurses through facet charts; every intermediate value is rational.
inline Rat volume_of_points(const std::vector<Vec>& pts)
{
    if (pts.empty())
        return Rat(0);
    int d = pts[0].dim();
    if (affine_rank(pts) < d)
        return Rat(0);
    if (d == 1) {
        Rat lo = pts[0][0], hi = pts[0][0];
        for (const Vec& p : pts) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        return hi - lo;
    }
    if (d == 2)
        return polygon_area(pts);
    auto h = hull::compute(pts);
    const Vec apex = h.points[h.extreme[0]];
    Rat vol(0);
    for (const auto& f : h.facets) {
        Rat height = f.offset - dot(f.normal, apex);
        if (height == 0)
            continue;
        int k = dominant_axis(f.normal);
        std::vector<Vec> proj;
        proj.reserve(f.on.size());
        for (int id : f.on)
            proj.push_back(drop_coord(h.points[id], k));
        // chart area relates to surface measure by |nu|/|nu_k|; the norms
        // cancel against the Euclidean height, leaving a rational pyramid
        // volume  (offset - nu.apex) * chart_area / (d * |nu_k|).
        vol += rat_abs(height) * volume_of_points(proj) / rat_abs(f.normal[k]);
    }
    return vol / d;
}

class Polytope;
Rat volume(const Polytope& p);

struct FaceSet {
    int dim = 0;
    std::vector<int> verts; // sorted indices into the owner's vertex list
    bool operator<(const FaceSet& o) const
    {
        if (dim != o.dim)
            return dim < o.dim;
        return verts < o.verts;
    }
};

/// Immutable convex polytope with both representations. Vertices are the
/// extreme points in lexicographic order; halfspaces are canonical and
/// irredundant. Cheap to copy (shared immutable payload).
class Polytope {
public:
    Polytope() = default;

    int dim() const { return d_->dim; }
    const std::vector<Vec>& vertices() const { return d_->verts; }
    const std::vector<Halfspace>& halfspaces() const { return d_->hs; }

    bool operator==(const Polytope& o) const
    {
        return d_->dim == o.d_->dim && d_->verts == o.d_->verts;
    }
    bool operator!=(const Polytope& o) const { return !(*this == o); }

    bool contains(const Vec& x) const
    {
        for (const auto& h : d_->hs)
            if (dot(h.normal, x) > h.offset)
                return false;
        return true;
    }

    bool strictly_contains(const Vec& x) const
    {
        for (const auto& h : d_->hs)
            if (dot(h.normal, x) >= h.offset)
                return false;
        return true;
    }

    Rat support(const Vec& u) const
    {
        Rat best = dot(u, d_->verts[0]);
        for (const Vec& v : d_->verts)
            best = std::max(best, dot(u, v));
        return best;
    }

    std::vector<int> argmax_vertices(const Vec& u) const
    {
        Rat best = support(u);
        std::vector<int> ids;
        for (int i = 0; i < static_cast<int>(d_->verts.size()); ++i)
            if (dot(u, d_->verts[i]) == best)
                ids.push_back(i);
        return ids;
    }

    std::pair<Vec, Vec> bounding_box() const
    {
        Vec lo = d_->verts[0], hi = d_->verts[0];
        for (const Vec& v : d_->verts)
            for (int i = 0; i < dim(); ++i) {
                lo[i] = std::min(lo[i], v[i]);
                hi[i] = std::max(hi[i], v[i]);
            }
        return {lo, hi};
    }

    /// Vertex index pairs of the edge graph (dims 2 and 3).
    const std::vector<std::pair<int, int>>& edges() const
    {
        std::lock_guard<std::mutex> lk(d_->mtx);
        if (!d_->edges) {
            auto e = std::make_shared<std::vector<std::pair<int, int>>>();
            if (dim() == 2) {
                for (const auto& h : d_->hs) {
                    auto on = on_set(h);
                    if (on.size() == 2)
                        e->push_back({on[0], on[1]});
                }
            } else {
                std::set<std::pair<int, int>> uniq;
                std::vector<std::vector<int>> ons;
                for (const auto& h : d_->hs)
                    ons.push_back(on_set(h));
                for (size_t a = 0; a < ons.size(); ++a)
                    for (size_t b = a + 1; b < ons.size(); ++b) {
                        auto common = hull::sorted_intersection(ons[a], ons[b]);
                        if (common.size() == 2)
                            uniq.insert({common[0], common[1]});
                    }
                e->assign(uniq.begin(), uniq.end());
            }
            d_->edges = std::move(e);
        }
        return *d_->edges;
    }

    /// All proper faces as vertex index sets (cached; see faces.hpp for the
    /// enriched view).
    const std::vector<FaceSet>& face_sets() const
    {
        std::lock_guard<std::mutex> lk(d_->mtx);
        if (!d_->lattice)
            d_->lattice = std::make_shared<std::vector<FaceSet>>(build_lattice());
        return *d_->lattice;
    }

    std::vector<int> on_set(const Halfspace& h) const
    {
        std::vector<int> on;
        for (int i = 0; i < static_cast<int>(d_->verts.size()); ++i)
            if (dot(h.normal, d_->verts[i]) == h.offset)
                on.push_back(i);
        return on;
    }

    /// Trusted constructor: verts must be the extreme points and hs an
    /// irredundant H-rep of the same set.
    static Polytope from_rep(int dim, std::vector<Vec> verts, std::vector<Halfspace> hs)
    {
        auto d = std::make_shared<Data>();
        d->dim = dim;
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        d->verts = std::move(verts);
        for (auto& h : hs)
            h = canonical(h);
        std::sort(hs.begin(), hs.end());
        hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
        d->hs = std::move(hs);
        Polytope p;
        p.d_ = std::move(d);
        return p;
    }

private:
    struct Data {
        int dim = 0;
        std::vector<Vec> verts;
        std::vector<Halfspace> hs;
        mutable std::mutex mtx;
        mutable std::shared_ptr<std::vector<std::pair<int, int>>> edges;
        mutable std::shared_ptr<std::vector<FaceSet>> lattice;
    };

    std::vector<FaceSet> build_lattice() const
    {
        // closure of facet vertex sets under intersection; every member is
        // a face and every proper face arises this way
        std::vector<std::vector<int>> facets;
        for (const auto& h : d_->hs)
            facets.push_back(on_set(h));
        std::set<std::vector<int>> closed(facets.begin(), facets.end());
        std::vector<std::vector<int>> frontier(facets.begin(), facets.end());
        while (!frontier.empty()) {
            std::vector<std::vector<int>> next;
            for (const auto& s : frontier)
                for (const auto& f : facets) {
                    auto t = hull::sorted_intersection(s, f);
                    if (!t.empty() && closed.insert(t).second)
                        next.push_back(t);
                }
            frontier = std::move(next);
        }
        std::vector<FaceSet> out;
        for (const auto& s : closed) {
            std::vector<Vec> pts;
            for (int id : s)
                pts.push_back(d_->verts[id]);
            out.push_back({affine_rank(pts), s});
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::shared_ptr<Data> d_;
};

/// Convex hull of at least dim+1 affinely independent points.
inline Polytope convex_hull(const std::vector<Vec>& points)
{
    if (points.empty())
        throw Error(ErrorKind::DegenerateInput, "convex_hull: no points");
    auto h = hull::compute(points);
    std::vector<Vec> verts;
    for (int id : h.extreme)
        verts.push_back(h.points[id]);
    std::vector<Halfspace> hs;
    for (const auto& f : h.facets)
        hs.push_back({f.normal, f.offset});
    return Polytope::from_rep(points[0].dim(), std::move(verts), std::move(hs));
}

namespace detail {

inline std::vector<Halfspace> dedupe_canonical(const std::vector<Halfspace>& hs)
{
    std::vector<Halfspace> out;
    out.reserve(hs.size());
    for (const auto& h : hs) {
        if (h.normal.is_zero())
            throw Error(ErrorKind::DegenerateInput, "halfspace with zero normal");
        out.push_back(canonical(h));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// A direction d != 0 with nu.d <= 0 for every normal, if one exists.
inline std::optional<Vec> recession_direction(const std::vector<Halfspace>& hs, int dim)
{
    std::vector<Vec> normals;
    for (const auto& h : hs)
        normals.push_back(h.normal);
    Mat m = Mat::from_rows(normals);
    if (rank(m) < dim) {
        auto ns = nullspace(m);
        return ns[0]; // a full line in the recession cone
    }
    // pointed recession cone: extreme rays lie on dim-1 independent
    // active constraints
    int n = static_cast<int>(hs.size());
    std::vector<int> idx(dim - 1);
    std::function<std::optional<Vec>(int, int)> rec = [&](int start, int k) -> std::optional<Vec> {
        if (k == dim - 1) {
            std::vector<Vec> rows;
            for (int i : idx)
                rows.push_back(hs[i].normal);
            Mat sub = Mat::from_rows(rows);
            if (rank(sub) != dim - 1)
                return std::nullopt;
            auto ns = nullspace(sub);
            for (const Vec& cand : {ns[0], -ns[0]}) {
                bool ok = true;
                for (const auto& h : hs)
                    if (dot(h.normal, cand) > 0) {
                        ok = false;
                        break;
                    }
                if (ok)
                    return cand;
            }
            return std::nullopt;
        }
        for (int i = start; i < n; ++i) {
            idx[k] = i;
            if (auto r = rec(i + 1, k + 1))
                return r;
        }
        return std::nullopt;
    };
    return rec(0, 0);
}

// Builds a polytope from a known (possibly redundant) valid H-rep and the
// full candidate vertex list: prunes non-facets, filters non-extreme points.
inline Polytope assemble(int dim, const std::vector<Vec>& candidates,
                         const std::vector<Halfspace>& hs_in)
{
    std::vector<Vec> pts = candidates;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<Halfspace> facets;
    std::vector<std::vector<int>> ons;
    for (const auto& h : hs_in) {
        std::vector<int> on;
        std::vector<Vec> onpts;
        for (int i = 0; i < static_cast<int>(pts.size()); ++i)
            if (dot(h.normal, pts[i]) == h.offset) {
                on.push_back(i);
                onpts.push_back(pts[i]);
            }
        if (affine_rank(onpts) == dim - 1) {
            facets.push_back(h);
            ons.push_back(std::move(on));
        }
    }
    std::vector<std::vector<int>> active(pts.size());
    for (int f = 0; f < static_cast<int>(facets.size()); ++f)
        for (int id : ons[f])
            active[id].push_back(f);
    std::vector<Vec> verts;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        if (static_cast<int>(active[i].size()) < dim)
            continue;
        std::vector<Vec> ns;
        for (int f : active[i])
            ns.push_back(facets[f].normal);
        if (rank(Mat::from_rows(ns)) == dim)
            verts.push_back(pts[i]);
    }
    return Polytope::from_rep(dim, std::move(verts), std::move(facets));
}

} // namespace detail

/// Exact vertex enumeration of a bounded full-dimensional intersection of
/// halfspaces, by brute force over all dim-subsets.
inline Polytope halfspace_intersection(const std::vector<Halfspace>& hs_in, int dim)
{
    auto hs = detail::dedupe_canonical(hs_in);
    if (auto d = detail::recession_direction(hs, dim))
        throw Error(ErrorKind::Unbounded, "recession direction " + d->str());

    int n = static_cast<int>(hs.size());
    std::vector<Vec> feasible;
    std::vector<int> idx(dim);
    std::function<void(int, int)> go = [&](int start, int k) {
        if (k == dim) {
            Mat a(dim, dim);
            Vec b(dim);
            for (int i = 0; i < dim; ++i) {
                for (int j = 0; j < dim; ++j)
                    a(i, j) = hs[idx[i]].normal[j];
                b[i] = hs[idx[i]].offset;
            }
            auto x = solve(a, b);
            if (!x)
                return;
            for (const auto& h : hs)
                if (dot(h.normal, *x) > h.offset)
                    return;
            feasible.push_back(*x);
            return;
        }
        for (int i = start; i < n; ++i) {
            idx[k] = i;
            go(i + 1, k + 1);
        }
    };
    go(0, 0);

    if (feasible.empty())
        throw Error(ErrorKind::Empty, "no feasible vertex");
    std::sort(feasible.begin(), feasible.end());
    feasible.erase(std::unique(feasible.begin(), feasible.end()), feasible.end());
    if (affine_rank(feasible) < dim)
        throw Error(ErrorKind::DegenerateInput, "intersection is lower-dimensional");
    return detail::assemble(dim, feasible, hs);
}

inline Rat volume(const Polytope& p)
{
    if (p.dim() == 2)
        return polygon_area(p.vertices());
    if (p.dim() == 1) {
        auto [lo, hi] = p.bounding_box();
        return hi[0] - lo[0];
    }
    const Vec& apex = p.vertices()[0];
    Rat vol(0);
    for (const auto& h : p.halfspaces()) {
        Rat height = h.offset - dot(h.normal, apex);
        if (height == 0)
            continue;
        int k = dominant_axis(h.normal);
        std::vector<Vec> proj;
        for (int id : p.on_set(h))
            proj.push_back(drop_coord(p.vertices()[id], k));
        vol += rat_abs(height) * volume_of_points(proj) / rat_abs(h.normal[k]);
    }
    return vol / p.dim();
}

struct IntersectResult {
    enum class Kind { Full, Empty, LowerDim } kind = Kind::Empty;
    std::optional<Polytope> poly;   // set when Full
    std::vector<Vec> flat;          // vertex set when LowerDim

    bool full() const { return kind == Kind::Full; }
    bool empty() const { return kind == Kind::Empty; }
    bool lower_dim() const { return kind == Kind::LowerDim; }
};

/// Exact intersection of two polytopes of equal dimension, flagging empty
/// and measure-zero results distinctly.
inline IntersectResult intersect(const Polytope& p, const Polytope& q)
{
    int n = p.dim();
    std::vector<Halfspace> combined = p.halfspaces();
    combined.insert(combined.end(), q.halfspaces().begin(), q.halfspaces().end());
    combined = detail::dedupe_canonical(combined);

    std::vector<Vec> cands;
    auto add_contained = [&](const Polytope& a, const Polytope& b) {
        for (const Vec& v : a.vertices())
            if (b.contains(v))
                cands.push_back(v);
    };
    add_contained(p, q);
    add_contained(q, p);

    if (n <= 3) {
        auto cross_edges = [&](const Polytope& a, const Polytope& b) {
            for (auto [i, j] : a.edges()) {
                const Vec& u = a.vertices()[i];
                const Vec& w = a.vertices()[j];
                Vec dir = w - u;
                for (const auto& h : b.halfspaces()) {
                    Rat den = dot(h.normal, dir);
                    if (den == 0)
                        continue;
                    Rat t = (h.offset - dot(h.normal, u)) / den;
                    if (t <= 0 || t >= 1)
                        continue;
                    Vec x = u + t * dir;
                    bool ok = true;
                    for (const auto& g : combined)
                        if (dot(g.normal, x) > g.offset) {
                            ok = false;
                            break;
                        }
                    if (ok)
                        cands.push_back(x);
                }
            }
        };
        cross_edges(p, q);
        cross_edges(q, p);
    } else {
        // small-body brute force over all n-subsets of the combined H-rep
        int m = static_cast<int>(combined.size());
        std::vector<int> idx(n);
        std::function<void(int, int)> go = [&](int start, int k) {
            if (k == n) {
                Mat a(n, n);
                Vec b(n);
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j)
                        a(i, j) = combined[idx[i]].normal[j];
                    b[i] = combined[idx[i]].offset;
                }
                auto x = solve(a, b);
                if (!x)
                    return;
                for (const auto& h : combined)
                    if (dot(h.normal, *x) > h.offset)
                        return;
                cands.push_back(*x);
                return;
            }
            for (int i = start; i < m; ++i) {
                idx[k] = i;
                go(i + 1, k + 1);
            }
        };
        go(0, 0);
    }

    IntersectResult r;
    if (cands.empty()) {
        r.kind = IntersectResult::Kind::Empty;
        return r;
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    if (affine_rank(cands) < n) {
        r.kind = IntersectResult::Kind::LowerDim;
        r.flat = std::move(cands);
        return r;
    }
    r.kind = IntersectResult::Kind::Full;
    r.poly = detail::assemble(n, cands, combined);
    return r;
}

inline Polytope translate(const Polytope& p, const Vec& x)
{
    std::vector<Vec> verts;
    for (const Vec& v : p.vertices())
        verts.push_back(v + x);
    std::vector<Halfspace> hs;
    for (const auto& h : p.halfspaces())
        hs.push_back({h.normal, h.offset + dot(h.normal, x)});
    return Polytope::from_rep(p.dim(), std::move(verts), std::move(hs));
}

/// Image {Ax + b : x in P} for invertible A; combinatorics carry over, so
/// no hull is recomputed.
inline Polytope affine_image(const Polytope& p, const Mat& a, const Vec& b)
{
    auto ainv = inverse(a);
    if (!ainv)
        throw Error(ErrorKind::SingularMatrix, "affine_image");
    Mat ait = ainv->transposed();
    std::vector<Vec> verts;
    for (const Vec& v : p.vertices())
        verts.push_back(a.apply(v) + b);
    std::vector<Halfspace> hs;
    for (const auto& h : p.halfspaces()) {
        Vec nn = ait.apply(h.normal);
        hs.push_back({nn, h.offset + dot(nn, b)});
    }
    return Polytope::from_rep(p.dim(), std::move(verts), std::move(hs));
}

inline Polytope reflect(const Polytope& p)
{
    std::vector<Vec> verts;
    for (const Vec& v : p.vertices())
        verts.push_back(-v);
    std::vector<Halfspace> hs;
    for (const auto& h : p.halfspaces())
        hs.push_back({-h.normal, h.offset});
    return Polytope::from_rep(p.dim(), std::move(verts), std::move(hs));
}

/// Orthogonal projection onto the coordinate subspace spanned by axes;
/// the result lives in its own (lower) dimension.
inline Polytope project(const Polytope& p, const std::vector<int>& axes)
{
    std::vector<Vec> proj;
    for (const Vec& v : p.vertices()) {
        Vec w(static_cast<int>(axes.size()));
        for (size_t i = 0; i < axes.size(); ++i)
            w[static_cast<int>(i)] = v[axes[i]];
        proj.push_back(w);
    }
    if (axes.size() == 1) {
        Rat lo = proj[0][0], hi = proj[0][0];
        for (const Vec& w : proj) {
            lo = std::min(lo, w[0]);
            hi = std::max(hi, w[0]);
        }
        return Polytope::from_rep(1, {Vec{lo}, Vec{hi}},
                                  {Halfspace{Vec{Rat(-1)}, -lo}, Halfspace{Vec{Rat(1)}, hi}});
    }
    return convex_hull(proj);
}

/// Minkowski sum via exact support structure: candidate facet normals come
/// from both H-reps plus (in 3D) edge-pair cross products; candidates are
/// kept when the exposed face of the sum has dimension n-1.
inline Polytope minkowski_sum(const Polytope& p, const Polytope& q)
{
    int n = p.dim();
    if (n >= 4) {
        std::vector<Vec> sums;
        for (const Vec& v : p.vertices())
            for (const Vec& w : q.vertices())
                sums.push_back(v + w);
        return convex_hull(sums);
    }

    std::vector<Vec> normals;
    for (const auto& h : p.halfspaces())
        normals.push_back(h.normal);
    for (const auto& h : q.halfspaces())
        normals.push_back(h.normal);
    if (n == 3) {
        auto edge_dirs = [](const Polytope& a) {
            std::vector<Vec> dirs;
            for (auto [i, j] : a.edges())
                dirs.push_back(primitive(a.vertices()[j] - a.vertices()[i]));
            std::sort(dirs.begin(), dirs.end());
            dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
            return dirs;
        };
        for (const Vec& ep : edge_dirs(p))
            for (const Vec& eq : edge_dirs(q)) {
                Vec c = cross3(ep, eq);
                if (!c.is_zero()) {
                    normals.push_back(c);
                    normals.push_back(-c);
                }
            }
    }
    for (Vec& v : normals)
        v = primitive(v);
    std::sort(normals.begin(), normals.end());
    normals.erase(std::unique(normals.begin(), normals.end()), normals.end());

    std::vector<Halfspace> facets;
    for (const Vec& nu : normals) {
        auto sp = p.argmax_vertices(nu);
        auto sq = q.argmax_vertices(nu);
        std::vector<Vec> diffs;
        for (size_t i = 1; i < sp.size(); ++i)
            diffs.push_back(p.vertices()[sp[i]] - p.vertices()[sp[0]]);
        for (size_t i = 1; i < sq.size(); ++i)
            diffs.push_back(q.vertices()[sq[i]] - q.vertices()[sq[0]]);
        int face_dim = diffs.empty() ? 0 : rank(Mat::from_rows(diffs));
        if (face_dim == n - 1)
            facets.push_back({nu, p.support(nu) + q.support(nu)});
    }
    facets = detail::dedupe_canonical(facets);

    std::vector<Vec> sums;
    for (const Vec& v : p.vertices())
        for (const Vec& w : q.vertices())
            sums.push_back(v + w);
    return detail::assemble(n, sums, facets);
}

} // namespace covlab
