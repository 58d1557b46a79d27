#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "covlab/embed.hpp"
#include "covlab/polytope.hpp"

namespace covlab {

/// A proper face, identified by the owner's vertex indices lying on it.
struct Face {
    int dim = 0;
    std::vector<int> vertex_ids;
    Vec relint_point; // average of the face's vertices

    bool operator==(const Face& o) const
    {
        return dim == o.dim && vertex_ids == o.vertex_ids;
    }
};

/// Support or normal cone data at a face. The support cone is carried as
/// halfspaces through the origin plus a generating ray set; the normal cone
/// as its generating rays (the active facet normals).
struct FaceCone {
    Vec apex;
    std::vector<Halfspace> halfspaces;
    std::vector<Vec> rays;
};

inline std::vector<Vec> face_vertices(const Polytope& p, const Face& f)
{
    std::vector<Vec> out;
    for (int id : f.vertex_ids)
        out.push_back(p.vertices()[id]);
    return out;
}

inline Face make_face(const Polytope& p, std::vector<int> ids)
{
    Face f;
    std::sort(ids.begin(), ids.end());
    f.vertex_ids = std::move(ids);
    std::vector<Vec> pts = face_vertices(p, f);
    f.dim = affine_rank(pts);
    Vec c(p.dim());
    for (const Vec& v : pts)
        c = c + v;
    f.relint_point = Rat(1, static_cast<int>(pts.size())) * c;
    return f;
}

/// All proper faces (vertices, edges, ..., facets), each reported once.
inline std::vector<Face> face_lattice(const Polytope& p)
{
    std::vector<Face> out;
    for (const FaceSet& fs : p.face_sets())
        out.push_back(make_face(p, fs.verts));
    return out;
}

/// The exposed face P_w = argmax of w over P, from the V-rep.
inline Face exposed_face(const Polytope& p, const Vec& w)
{
    if (w.is_zero())
        throw Error(ErrorKind::DegenerateInput, "exposed_face: w = 0");
    return make_face(p, p.argmax_vertices(w));
}

/// Facet halfspaces active at the face (those containing every face vertex).
inline std::vector<Halfspace> active_halfspaces(const Polytope& p, const Face& f)
{
    std::vector<Halfspace> act;
    for (const auto& h : p.halfspaces()) {
        bool all_on = true;
        for (int id : f.vertex_ids)
            if (dot(h.normal, p.vertices()[id]) != h.offset) {
                all_on = false;
                break;
            }
        if (all_on)
            act.push_back(h);
    }
    return act;
}

/// cone(P,F): directions from the face into P, apex moved to the origin.
inline FaceCone support_cone(const Polytope& p, const Face& f)
{
    FaceCone c;
    c.apex = f.relint_point;
    for (const auto& h : active_halfspaces(p, f))
        c.halfspaces.push_back({h.normal, Rat(0)});
    for (const Vec& v : p.vertices()) {
        Vec d = v - f.relint_point;
        if (!d.is_zero())
            c.rays.push_back(primitive(d));
    }
    std::sort(c.rays.begin(), c.rays.end());
    c.rays.erase(std::unique(c.rays.begin(), c.rays.end()), c.rays.end());
    return c;
}

/// N(P,F): positive hull of the active facet normals; the polar of the
/// support cone.
inline FaceCone normal_cone(const Polytope& p, const Face& f)
{
    FaceCone c;
    c.apex = f.relint_point;
    for (const auto& h : active_halfspaces(p, f))
        c.rays.push_back(h.normal); // canonical H-rep keeps these primitive
    std::sort(c.rays.begin(), c.rays.end());
    c.rays.erase(std::unique(c.rays.begin(), c.rays.end()), c.rays.end());
    // polar H-rep: {x : g . x <= 0} over the support cone generators
    for (const Vec& v : p.vertices()) {
        Vec d = v - f.relint_point;
        if (!d.is_zero())
            c.halfspaces.push_back({primitive(d), Rat(0)});
    }
    c.halfspaces = detail::dedupe_canonical(c.halfspaces);
    return c;
}

/// A rational direction in the relative interior of N(P,F): the sum of the
/// generating normals.
inline Vec normal_cone_relint_direction(const Polytope& p, const Face& f)
{
    Vec s(p.dim());
    for (const auto& h : active_halfspaces(p, f))
        s = s + h.normal;
    return s;
}

inline Polytope difference_body(const Polytope& p)
{
    return minkowski_sum(p, reflect(p));
}

/// Eq-style face additivity: (P+Q)_w = P_w + Q_w as sets, plus support
/// additivity h_{P+Q}(w) = h_P(w) + h_Q(w).
inline bool check_face_additivity(const Polytope& p, const Polytope& q, const Vec& w)
{
    if (w.is_zero())
        throw Error(ErrorKind::DegenerateInput, "check_face_additivity: w = 0");
    Polytope sum = minkowski_sum(p, q);
    if (sum.support(w) != p.support(w) + q.support(w))
        return false;
    auto lhs = face_vertices(sum, exposed_face(sum, w));
    std::vector<Vec> rhs;
    for (int i : p.argmax_vertices(w))
        for (int j : q.argmax_vertices(w))
            rhs.push_back(p.vertices()[i] + q.vertices()[j]);
    return same_hull(lhs, rhs);
}

/// Exact centroid via the facet-pyramid decomposition from a vertex.
inline Vec centroid(const Polytope& p)
{
    int n = p.dim();
    if (n == 1) {
        auto [lo, hi] = p.bounding_box();
        return Vec{(lo[0] + hi[0]) / 2};
    }
    if (n == 2) {
        auto v = hull_chain_2d(p.vertices());
        Rat a(0);
        Vec c(2);
        for (size_t i = 1; i + 1 < v.size(); ++i) {
            Rat cr = (v[i][0] - v[0][0]) * (v[i + 1][1] - v[0][1])
                   - (v[i][1] - v[0][1]) * (v[i + 1][0] - v[0][0]);
            a += cr;
            Vec tc = Rat(1, 3) * (v[0] + v[i] + v[i + 1]);
            c = c + cr * tc;
        }
        return Rat(1) / a * c;
    }
    const Vec apex = p.vertices()[0];
    Rat vol(0);
    Vec moment(n);
    for (const auto& h : p.halfspaces()) {
        Rat height = h.offset - dot(h.normal, apex);
        if (height == 0)
            continue;
        int k = dominant_axis(h.normal);
        std::vector<Vec> onpts;
        for (int id : p.on_set(h))
            onpts.push_back(p.vertices()[id]);
        std::vector<Vec> proj;
        for (const Vec& q : onpts)
            proj.push_back(drop_coord(q, k));
        Rat chart_vol = volume_of_points(proj);
        Rat pyr_vol = rat_abs(height) * chart_vol / (rat_abs(h.normal[k]) * n);
        if (pyr_vol == 0)
            continue;
        // facet centroid: lift the chart centroid back onto the hyperplane
        Vec fc_local = centroid(convex_hull(proj));
        Vec fc(n);
        for (int i = 0, j = 0; i < n; ++i)
            if (i != k)
                fc[i] = fc_local[j++];
        Rat acc = h.offset;
        for (int i = 0; i < n; ++i)
            if (i != k)
                acc -= h.normal[i] * fc[i];
        fc[k] = acc / h.normal[k];
        Vec pyr_c = Rat(1, n + 1) * (apex + Rat(n) * fc);
        vol += pyr_vol;
        moment = moment + pyr_vol * pyr_c;
    }
    return Rat(1) / vol * moment;
}

/// Steiner point, numeric. 2D evaluates the defining circle integral in
/// closed form per vertex arc; 3D weights vertices by external solid angles
/// computed from triangulated normal cones (l'Huilier). Tolerance 1e-9.
inline std::vector<double> steiner_point(const Polytope& p)
{
    if (p.dim() == 2) {
        auto v = hull_chain_2d(p.vertices());
        int m = static_cast<int>(v.size());
        double sx = 0, sy = 0;
        for (int i = 0; i < m; ++i) {
            const Vec& prev = v[(i + m - 1) % m];
            const Vec& cur = v[i];
            const Vec& next = v[(i + 1) % m];
            // outward normal angles of the adjacent edges bound the arc
            auto edge_normal_angle = [](const Vec& a, const Vec& b) {
                double ex = to_double(b[0] - a[0]), ey = to_double(b[1] - a[1]);
                return std::atan2(-ex, ey); // rotate edge dir by -90deg
            };
            double alpha = edge_normal_angle(prev, cur);
            double beta = edge_normal_angle(cur, next);
            while (beta < alpha)
                beta += 2 * std::numbers::pi;
            double vx = to_double(cur[0]), vy = to_double(cur[1]);
            // integral over [alpha,beta] of (v.u(t)) u(t) dt
            auto ix = [&](double t) {
                return vx * (t / 2 + std::sin(2 * t) / 4) - vy * std::cos(2 * t) / 4;
            };
            auto iy = [&](double t) {
                return -vx * std::cos(2 * t) / 4 + vy * (t / 2 - std::sin(2 * t) / 4);
            };
            sx += ix(beta) - ix(alpha);
            sy += iy(beta) - iy(alpha);
        }
        return {sx / std::numbers::pi, sy / std::numbers::pi};
    }
    if (p.dim() != 3)
        throw Error(ErrorKind::DegenerateInput, "steiner_point: dims 2 and 3 only");

    double sx = 0, sy = 0, sz = 0;
    for (int vi = 0; vi < static_cast<int>(p.vertices().size()); ++vi) {
        Face f = make_face(p, {vi});
        std::vector<std::array<double, 3>> dirs;
        for (const auto& h : active_halfspaces(p, f)) {
            double x = to_double(h.normal[0]), y = to_double(h.normal[1]),
                   z = to_double(h.normal[2]);
            double nn = std::sqrt(x * x + y * y + z * z);
            dirs.push_back({x / nn, y / nn, z / nn});
        }
        // order the normal cone rays around their mean direction
        std::array<double, 3> mean{0, 0, 0};
        for (auto& d : dirs)
            for (int i = 0; i < 3; ++i)
                mean[i] += d[i];
        double mn = std::sqrt(mean[0] * mean[0] + mean[1] * mean[1] + mean[2] * mean[2]);
        for (auto& c : mean)
            c /= mn;
        std::array<double, 3> ref{1, 0, 0};
        if (std::fabs(mean[0]) > 0.9)
            ref = {0, 1, 0};
        auto crossd = [](std::array<double, 3> a, std::array<double, 3> b) {
            return std::array<double, 3>{a[1] * b[2] - a[2] * b[1],
                                         a[2] * b[0] - a[0] * b[2],
                                         a[0] * b[1] - a[1] * b[0]};
        };
        auto dotd = [](std::array<double, 3> a, std::array<double, 3> b) {
            return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        };
        auto e1 = crossd(mean, ref);
        double e1n = std::sqrt(dotd(e1, e1));
        for (auto& c : e1)
            c /= e1n;
        auto e2 = crossd(mean, e1);
        std::sort(dirs.begin(), dirs.end(), [&](const auto& a, const auto& b) {
            return std::atan2(dotd(a, e2), dotd(a, e1)) < std::atan2(dotd(b, e2), dotd(b, e1));
        });
        // spherical polygon area by fan triangulation + l'Huilier
        double omega = 0;
        auto arc = [&](const std::array<double, 3>& a, const std::array<double, 3>& b) {
            double c = std::clamp(dotd(a, b), -1.0, 1.0);
            return std::acos(c);
        };
        for (size_t t = 1; t + 1 < dirs.size(); ++t) {
            double a = arc(dirs[0], dirs[t]);
            double b = arc(dirs[t], dirs[t + 1]);
            double c = arc(dirs[t + 1], dirs[0]);
            double s = (a + b + c) / 2;
            double tt = std::tan(s / 2) * std::tan((s - a) / 2) * std::tan((s - b) / 2)
                      * std::tan((s - c) / 2);
            omega += 4 * std::atan(std::sqrt(std::max(0.0, tt)));
        }
        double w = omega / (4 * std::numbers::pi);
        sx += w * to_double(p.vertices()[vi][0]);
        sy += w * to_double(p.vertices()[vi][1]);
        sz += w * to_double(p.vertices()[vi][2]);
    }
    return {sx, sy, sz};
}

/// K1 (+) ... (+) Ks over complementary coordinate subspaces.
inline Polytope direct_sum(const std::vector<std::pair<Polytope, std::vector<int>>>& parts)
{
    int n = 0;
    for (const auto& [poly, axes] : parts)
        n += static_cast<int>(axes.size());
    std::vector<bool> used(n, false);
    for (const auto& [poly, axes] : parts) {
        if (poly.dim() != static_cast<int>(axes.size()))
            throw Error(ErrorKind::SubspacesNotComplementary, "part/axes dimension mismatch");
        for (int a : axes) {
            if (a < 0 || a >= n || used[a])
                throw Error(ErrorKind::SubspacesNotComplementary, "axes not a partition");
            used[a] = true;
        }
    }

    std::vector<Vec> verts = {Vec(n)};
    for (const auto& [poly, axes] : parts) {
        std::vector<Vec> next;
        for (const Vec& base : verts)
            for (const Vec& v : poly.vertices()) {
                Vec w = base;
                for (size_t i = 0; i < axes.size(); ++i)
                    w[axes[i]] = v[static_cast<int>(i)];
                next.push_back(w);
            }
        verts = std::move(next);
    }
    std::vector<Halfspace> hs;
    for (const auto& [poly, axes] : parts)
        for (const auto& h : poly.halfspaces()) {
            Vec nu(n);
            for (size_t i = 0; i < axes.size(); ++i)
                nu[axes[i]] = h.normal[static_cast<int>(i)];
            hs.push_back({nu, h.offset});
        }
    return Polytope::from_rep(n, std::move(verts), std::move(hs));
}

} // namespace covlab
