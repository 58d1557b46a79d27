#pragma once

#include <functional>
#include <vector>

#include "covlab/covariogram.hpp"
#include "covlab/faces.hpp"
#include "covlab/polytope.hpp"
#include "covlab/rng.hpp"

namespace covlab::testutil {

/// Runs f and reports the ErrorKind it throws (Io if it does not throw).
template <typename F>
ErrorKind thrown_kind(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Io;
}

inline Polytope unit_cube()
{
    std::vector<Vec> pts;
    for (int m = 0; m < 8; ++m)
        pts.push_back(Vec{Rat(m & 1), Rat((m >> 1) & 1), Rat((m >> 2) & 1)});
    return convex_hull(pts);
}

inline Polytope unit_tetra()
{
    return convex_hull({Vec{Rat(0), Rat(0), Rat(0)}, Vec{Rat(1), Rat(0), Rat(0)},
                        Vec{Rat(0), Rat(1), Rat(0)}, Vec{Rat(0), Rat(0), Rat(1)}});
}

inline Polytope unit_square()
{
    return convex_hull({Vec{Rat(0), Rat(0)}, Vec{Rat(1), Rat(0)}, Vec{Rat(0), Rat(1)},
                        Vec{Rat(1), Rat(1)}});
}

inline Polytope unit_triangle()
{
    return convex_hull({Vec{Rat(0), Rat(0)}, Vec{Rat(1), Rat(0)}, Vec{Rat(0), Rat(1)}});
}

inline Polytope triangular_prism()
{
    std::vector<Vec> pts;
    for (int z = 0; z <= 1; ++z) {
        pts.push_back(Vec{Rat(0), Rat(0), Rat(z)});
        pts.push_back(Vec{Rat(1), Rat(0), Rat(z)});
        pts.push_back(Vec{Rat(0), Rat(1), Rat(z)});
    }
    return convex_hull(pts);
}

inline Polytope octahedron()
{
    std::vector<Vec> pts;
    for (int a = 0; a < 3; ++a)
        for (int s : {-1, 1}) {
            Vec v(3);
            v[a] = s;
            pts.push_back(v);
        }
    return convex_hull(pts);
}

/// Random full-dimensional polytope with small-denominator vertices.
inline Polytope random_polytope(Rng& rng, int dim, int npts, std::int64_t scale = 2)
{
    for (;;) {
        std::vector<Vec> pts;
        for (int i = 0; i < npts; ++i)
            pts.push_back(rng.vec(dim, scale, 1, 6));
        try {
            return convex_hull(pts);
        } catch (const Error&) {
            continue; // degenerate draw
        }
    }
}

/// Independent O(m^{n+1}) facet enumeration: every n-subset spanning a
/// hyperplane with all points on one side.
inline std::vector<Halfspace> brute_force_hull_facets(const std::vector<Vec>& pts)
{
    int n = pts[0].dim();
    int m = static_cast<int>(pts.size());
    std::vector<Halfspace> out;
    std::vector<int> idx(n);
    std::function<void(int, int)> go = [&](int start, int k) {
        if (k == n) {
            std::vector<Vec> diffs;
            for (int i = 1; i < n; ++i)
                diffs.push_back(pts[idx[i]] - pts[idx[0]]);
            auto ns = nullspace(Mat::from_rows(diffs));
            if (ns.size() != 1)
                return;
            Vec nu = primitive(ns[0]);
            Rat c = dot(nu, pts[idx[0]]);
            bool below = true, above = true;
            for (const Vec& p : pts) {
                Rat s = dot(nu, p) - c;
                if (s > 0)
                    below = false;
                if (s < 0)
                    above = false;
            }
            if (below)
                out.push_back({nu, c});
            if (above)
                out.push_back({-nu, -c});
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

/// Monte-Carlo volume with binomial standard error, for 3-sigma checks.
struct McVolume {
    double estimate;
    double sigma;
};

inline McVolume monte_carlo_volume(const Polytope& p, Rng& rng, int samples)
{
    auto [lo, hi] = p.bounding_box();
    int n = p.dim();
    std::vector<double> lod(n), span(n);
    for (int i = 0; i < n; ++i) {
        lod[i] = to_double(lo[i]);
        span[i] = to_double(hi[i]) - lod[i];
    }
    struct Hs {
        std::vector<double> nu;
        double c;
    };
    std::vector<Hs> hs;
    for (const auto& h : p.halfspaces()) {
        Hs e;
        for (int i = 0; i < n; ++i)
            e.nu.push_back(to_double(h.normal[i]));
        e.c = to_double(h.offset);
        hs.push_back(e);
    }
    int hits = 0;
    for (int s = 0; s < samples; ++s) {
        double x[4];
        for (int i = 0; i < n; ++i)
            x[i] = lod[i] + span[i] * (rng.next() >> 11) * 0x1.0p-53;
        bool in = true;
        for (const auto& e : hs) {
            double d = -e.c;
            for (int i = 0; i < n; ++i)
                d += e.nu[i] * x[i];
            if (d > 0) {
                in = false;
                break;
            }
        }
        hits += in;
    }
    double boxvol = 1;
    for (int i = 0; i < n; ++i)
        boxvol *= span[i];
    double frac = static_cast<double>(hits) / samples;
    McVolume mc;
    mc.estimate = boxvol * frac;
    mc.sigma = boxvol * std::sqrt(std::max(frac * (1 - frac), 1e-12) / samples);
    return mc;
}

} // namespace covlab::testutil
