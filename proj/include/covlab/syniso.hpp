#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "covlab/embed.hpp"
#include "covlab/faces.hpp"

namespace covlab {

/// Witness that faces F of P and G of Q are isothetic: G = F + x with
/// equal support cones.
struct IsothesisCertificate {
    Face f, g;
    Vec translation;
    bool cone_match = false;
};

namespace synisodetail {

/// Canonical support-cone key: the sorted primitive normals of the facets
/// active at the face. Active facet halfspaces are an irredundant H-rep of
/// the support cone, so set equality decides cone equality.
inline std::vector<Vec> support_cone_key(const Polytope& p, const Face& f)
{
    std::vector<Vec> key;
    for (const auto& h : active_halfspaces(p, f))
        key.push_back(h.normal);
    std::sort(key.begin(), key.end());
    return key;
}

} // namespace synisodetail

inline std::optional<IsothesisCertificate> isothetic(const Polytope& p, const Face& f,
                                                     const Polytope& q, const Face& g)
{
    auto t = translation_between(face_vertices(p, f), face_vertices(q, g));
    if (!t)
        return std::nullopt;
    if (synisodetail::support_cone_key(p, f) != synisodetail::support_cone_key(q, g))
        return std::nullopt;
    IsothesisCertificate cert{f, g, *t, true};
    return cert;
}

/// One entry of a synisothesis witness map: face `from_face` of pair
/// member `from` is isothetic to face `to_face` of pair member `to`.
struct SynisoWitness {
    int from;      // 0 or 1: which of (P1, P2)
    int from_face; // index into face_lattice
    int to;        // 0 or 1: which of (Q1, Q2)
    int to_face;
};

struct SynisoResult {
    bool value = false;
    std::vector<SynisoWitness> witness; // coverage of P-faces, then Q-faces
};

/// (P1,P2) and (Q1,Q2) are synisothetic when every proper face of either
/// P has an isothetic partner among the faces of the Qs, and conversely.
inline SynisoResult synisothetic(const Polytope& p1, const Polytope& p2, const Polytope& q1,
                                 const Polytope& q2)
{
    const Polytope* ps[2] = {&p1, &p2};
    const Polytope* qs[2] = {&q1, &q2};
    std::vector<Face> pfaces[2] = {face_lattice(p1), face_lattice(p2)};
    std::vector<Face> qfaces[2] = {face_lattice(q1), face_lattice(q2)};

    SynisoResult out;
    auto cover = [&](const Polytope* from[2], std::vector<Face> ffaces[2],
                     const Polytope* to[2], std::vector<Face> tfaces[2], bool record) {
        for (int a = 0; a < 2; ++a)
            for (int i = 0; i < static_cast<int>(ffaces[a].size()); ++i) {
                bool found = false;
                for (int b = 0; b < 2 && !found; ++b)
                    for (int j = 0; j < static_cast<int>(tfaces[b].size()); ++j)
                        if (isothetic(*from[a], ffaces[a][i], *to[b], tfaces[b][j])) {
                            if (record)
                                out.witness.push_back({a, i, b, j});
                            found = true;
                            break;
                        }
                if (!found)
                    return false;
            }
        return true;
    };
    out.value = cover(ps, pfaces, qs, qfaces, true) && cover(qs, qfaces, ps, pfaces, false);
    if (!out.value)
        out.witness.clear();
    return out;
}

enum class Sign { positive, negative, neutral };

/// Face classification against P': positive when P_w is a translate of
/// P'_w with equal support cones, negative for the reflected copy, neutral
/// for both.
struct FaceSign {
    Face face;
    Sign sign = Sign::neutral;
    std::optional<Vec> x_plus;  // P_w = P'_w + x_plus
    std::optional<Vec> x_minus; // P_w = (-P')_w + x_minus
};

inline FaceSign face_sign(const Polytope& p, const Polytope& pprime, const Vec& w)
{
    if (!synisothetic(p, reflect(p), pprime, reflect(pprime)).value)
        throw Error(ErrorKind::NotSynisothetic, "face_sign requires synisothetic pairs");

    Face f = exposed_face(p, w);
    FaceSign out;
    out.face = f;
    auto try_sigma = [&](const Polytope& q) -> std::optional<Vec> {
        Face fq = exposed_face(q, w);
        auto cert = isothetic(q, fq, p, f);
        if (!cert)
            return std::nullopt;
        return cert->translation;
    };
    out.x_plus = try_sigma(pprime);
    out.x_minus = try_sigma(reflect(pprime));
    if (out.x_plus && out.x_minus)
        out.sign = Sign::neutral;
    else if (out.x_plus)
        out.sign = Sign::positive;
    else if (out.x_minus)
        out.sign = Sign::negative;
    else
        throw Error(ErrorKind::NotSynisothetic, "no sigma satisfies the face identity");
    return out;
}

/// Synisothesis of (P,-P) and (P',-P') forces DP = DP'. Returns the value
/// of the implication (vacuously true when the hypothesis fails).
inline bool corpodiff_check(const Polytope& p, const Polytope& pprime)
{
    if (!synisothetic(p, reflect(p), pprime, reflect(pprime)).value)
        return true;
    return difference_body(p) == difference_body(pprime);
}

} // namespace covlab
