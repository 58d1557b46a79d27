#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "covlab/conetomo.hpp"
#include "covlab/covariogram.hpp"
#include "covlab/faces.hpp"
#include "covlab/polytope.hpp"

namespace covlab {

using Json = nlohmann::json;

// Rationals are serialized as integers when integral (and small enough for
// the JSON integer type), else as "p/q" strings.
inline Json rat_to_json(const Rat& r)
{
    if (rat_den(r) == 1) {
        Int n = rat_num(r);
        if (n >= std::numeric_limits<std::int64_t>::min()
            && n <= std::numeric_limits<std::int64_t>::max())
            return Json(n.convert_to<std::int64_t>());
    }
    return Json(rat_to_string(r));
}

inline Rat rat_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Rat(static_cast<std::int64_t>(j.get<std::int64_t>()));
    if (j.is_string())
        return parse_rat(j.get<std::string>());
    throw Error(ErrorKind::Io, "expected integer or \"p/q\" string");
}

inline Json vec_to_json(const Vec& v)
{
    Json a = Json::array();
    for (int i = 0; i < v.dim(); ++i)
        a.push_back(rat_to_json(v[i]));
    return a;
}

inline Vec vec_from_json(const Json& j)
{
    if (!j.is_array() || j.empty())
        throw Error(ErrorKind::Io, "expected coordinate array");
    std::vector<Rat> xs;
    for (const auto& e : j)
        xs.push_back(rat_from_json(e));
    return Vec(std::move(xs));
}

inline Json polytope_to_json(const Polytope& p)
{
    Json j;
    j["dim"] = p.dim();
    Json verts = Json::array();
    for (const Vec& v : p.vertices())
        verts.push_back(vec_to_json(v));
    j["vertices"] = std::move(verts);
    return j;
}

inline Json polytope_to_hrep_json(const Polytope& p)
{
    Json j;
    j["dim"] = p.dim();
    Json hs = Json::array();
    for (const auto& h : p.halfspaces())
        hs.push_back(Json{{"normal", vec_to_json(h.normal)}, {"offset", rat_to_json(h.offset)}});
    j["halfspaces"] = std::move(hs);
    return j;
}

/// Reads either the V-rep or the H-rep polytope format.
inline Polytope polytope_from_json(const Json& j)
{
    if (!j.contains("dim"))
        throw Error(ErrorKind::Io, "polytope: missing dim");
    int dim = j.at("dim").get<int>();
    if (j.contains("vertices")) {
        std::vector<Vec> pts;
        for (const auto& e : j.at("vertices")) {
            Vec v = vec_from_json(e);
            if (v.dim() != dim)
                throw Error(ErrorKind::Io, "polytope: vertex dimension mismatch");
            pts.push_back(v);
        }
        if (dim == 1) {
            Rat lo = pts.at(0)[0], hi = pts.at(0)[0];
            for (const Vec& v : pts) {
                lo = std::min(lo, v[0]);
                hi = std::max(hi, v[0]);
            }
            return Polytope::from_rep(1, {Vec{lo}, Vec{hi}},
                                      {Halfspace{Vec{Rat(-1)}, -lo}, Halfspace{Vec{Rat(1)}, hi}});
        }
        return convex_hull(pts);
    }
    if (j.contains("halfspaces")) {
        std::vector<Halfspace> hs;
        for (const auto& e : j.at("halfspaces"))
            hs.push_back({vec_from_json(e.at("normal")), rat_from_json(e.at("offset"))});
        return halfspace_intersection(hs, dim);
    }
    throw Error(ErrorKind::Io, "polytope: need vertices or halfspaces");
}

inline Json cone_to_json(const ConvexCone& c)
{
    Json j;
    j["dim"] = c.dim;
    Json rays = Json::array();
    for (const Vec& r : c.rays)
        rays.push_back(vec_to_json(r));
    j["rays"] = std::move(rays);
    return j;
}

inline ConvexCone cone_from_json(const Json& j)
{
    if (j.contains("section")) {
        Polytope section = polytope_from_json(j.at("section"));
        Rat height = j.contains("height") ? rat_from_json(j.at("height")) : Rat(1);
        if (height != 1)
            throw Error(ErrorKind::Io, "cone section must be given at height 1");
        return cone_from_section(section);
    }
    if (!j.contains("rays"))
        throw Error(ErrorKind::Io, "cone: need rays or section");
    std::vector<Vec> rays;
    for (const auto& e : j.at("rays"))
        rays.push_back(vec_from_json(e));
    bool allow_lines = j.value("allow_lines", false);
    return cone_from_rays(rays, allow_lines);
}

/// Face lattice dump: per face its dimension, vertex ids and the normal
/// cone generators.
inline Json face_lattice_to_json(const Polytope& p)
{
    Json faces = Json::array();
    for (const Face& f : face_lattice(p)) {
        Json jf;
        jf["dim"] = f.dim;
        jf["vertex_ids"] = f.vertex_ids;
        Json rays = Json::array();
        for (const Vec& r : normal_cone(p, f).rays)
            rays.push_back(vec_to_json(r));
        jf["normal_cone_rays"] = std::move(rays);
        faces.push_back(std::move(jf));
    }
    Json j;
    j["dim"] = p.dim();
    j["vertex_count"] = p.vertices().size();
    j["faces"] = std::move(faces);
    return j;
}

/// CSV with header "x1,...,xn,value", one row per node in field order;
/// rationals rendered canonically.
inline std::string scalar_field_to_csv(const ScalarField& f)
{
    std::ostringstream os;
    for (int a = 0; a < f.dim; ++a)
        os << "x" << (a + 1) << ",";
    os << "value\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        Vec x = f.node(i);
        for (int a = 0; a < f.dim; ++a)
            os << rat_to_string(x[a]) << ",";
        os << rat_to_string(f.values[i]) << "\n";
    }
    return os.str();
}

inline Json scalar_field_sidecar(const ScalarField& f)
{
    Json j;
    j["dim"] = f.dim;
    j["box"] = Json{{"lo", vec_to_json(f.lo)}, {"hi", vec_to_json(f.hi)}};
    j["resolution"] = f.res;
    return j;
}

/// Rebuilds a field from the CSV plus its sidecar (for diffing).
inline ScalarField scalar_field_from_csv(const std::string& csv, const Json& sidecar)
{
    ScalarField f;
    f.dim = sidecar.at("dim").get<int>();
    f.lo = vec_from_json(sidecar.at("box").at("lo"));
    f.hi = vec_from_json(sidecar.at("box").at("hi"));
    f.res = sidecar.at("resolution").get<std::vector<int>>();
    std::istringstream is(csv);
    std::string line;
    if (!std::getline(is, line))
        throw Error(ErrorKind::Io, "csv: missing header");
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        auto pos = line.rfind(',');
        if (pos == std::string::npos)
            throw Error(ErrorKind::Io, "csv: bad row");
        f.values.push_back(parse_rat(line.substr(pos + 1)));
    }
    if (f.values.size() != f.size())
        throw Error(ErrorKind::Io, "csv: row count does not match the resolution");
    return f;
}

inline Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open " + path);
    Json j;
    in >> j;
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::Io, "cannot write " + path);
    out << text;
}

} // namespace covlab
