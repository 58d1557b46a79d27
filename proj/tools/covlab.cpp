// covlab: exact covariograms and cross covariograms of convex polytopes
// and polyhedral cones, with the identity checks exposed as verify suites.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "covlab/conetomo.hpp"
#include "covlab/covariogram.hpp"
#include "covlab/facerecovery.hpp"
#include "covlab/gallery.hpp"
#include "covlab/io.hpp"
#include "covlab/syniso.hpp"
#include "covlab/verify.hpp"

using namespace covlab;

namespace {

std::string render_rat(const Rat& r, bool as_float)
{
    if (!as_float)
        return rat_to_string(r);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", to_double(r));
    return buf;
}

Polytope load_polytope(const std::string& path)
{
    return polytope_from_json(read_json_file(path));
}

int run_manifest(const std::string& path, std::uint64_t seed)
{
    Json manifest = read_json_file(path);
    std::filesystem::path base = std::filesystem::path(path).parent_path();
    auto file = [&](const Json& name) { return (base / name.get<std::string>()).string(); };
    Rng rng(seed);
    int failures = 0;
    for (const auto& rel : manifest.at("relations")) {
        std::string type = rel.at("type").get<std::string>();
        int probes = rel.value("probes", 400);
        bool ok = true;
        if (type == "cross_cov_equal") {
            Polytope k1 = load_polytope(file(rel.at("pair1").at(0)));
            Polytope l1 = load_polytope(file(rel.at("pair1").at(1)));
            Polytope k2 = load_polytope(file(rel.at("pair2").at(0)));
            Polytope l2 = load_polytope(file(rel.at("pair2").at(1)));
            for (int i = 0; i < probes && ok; ++i) {
                Vec x = rng.vec(k1.dim(), 4, 32, 96);
                ok = cross_cov(k1, l1, x) == cross_cov(k2, l2, x);
            }
        } else if (type == "cone_cross_cov_equal") {
            ConvexCone a1 = cone_from_json(read_json_file(file(rel.at("pair1").at(0))));
            ConvexCone b1 = cone_from_json(read_json_file(file(rel.at("pair1").at(1))));
            ConvexCone a2 = cone_from_json(read_json_file(file(rel.at("pair2").at(0))));
            ConvexCone b2 = cone_from_json(read_json_file(file(rel.at("pair2").at(1))));
            for (int i = 0; i < probes && ok; ++i) {
                Vec x = rng.vec(a1.dim, 4, 32, 96);
                ok = cross_cov_cones(a1, b1, x) == cross_cov_cones(a2, b2, x);
            }
        } else if (type == "cov_equal") {
            Polytope p = load_polytope(file(rel.at("pair").at(0)));
            Polytope q = load_polytope(file(rel.at("pair").at(1)));
            for (int i = 0; i < probes && ok; ++i) {
                Vec x = rng.vec(p.dim(), 2, 8, 24);
                ok = cov(p, x) == cov(q, x);
            }
        } else if (type == "not_synisothetic" || type == "synisothetic") {
            Polytope k1 = load_polytope(file(rel.at("pair1").at(0)));
            Polytope l1 = load_polytope(file(rel.at("pair1").at(1)));
            Polytope k2 = load_polytope(file(rel.at("pair2").at(0)));
            Polytope l2 = load_polytope(file(rel.at("pair2").at(1)));
            bool syn = synisothetic(k1, reflect(l1), k2, reflect(l2)).value;
            ok = (type == "synisothetic") ? syn : !syn;
        } else if (type == "not_trivial_associates") {
            Polytope k1 = load_polytope(file(rel.at("pair1").at(0)));
            Polytope l1 = load_polytope(file(rel.at("pair1").at(1)));
            Polytope k2 = load_polytope(file(rel.at("pair2").at(0)));
            Polytope l2 = load_polytope(file(rel.at("pair2").at(1)));
            ok = !trivial_associates(k1, l1, k2, l2);
        } else if (type == "not_congruent") {
            Polytope p = load_polytope(file(rel.at("pair").at(0)));
            Polytope q = load_polytope(file(rel.at("pair").at(1)));
            ok = !congruent(p, q);
        } else {
            std::cout << "FAIL " << type << ": unknown relation\n";
            ++failures;
            continue;
        }
        std::cout << (ok ? "PASS " : "FAIL ") << type << "\n";
        failures += !ok;
    }
    std::cout << (failures == 0 ? "RESULT PASS" : "RESULT FAIL") << "\n";
    return failures == 0 ? 0 : 1;
}

void write_gallery(const std::string& family, const std::string& outdir, const Json& params)
{
    std::filesystem::create_directories(outdir);
    auto out = [&](const std::string& name, const Json& j) {
        write_text_file((std::filesystem::path(outdir) / name).string(), j.dump(2) + "\n");
    };
    Json manifest;
    manifest["family"] = family;
    Json relations = Json::array();
    auto rp = [&](const std::string& k) { return parse_rat(params.value(k, std::string("1"))); };

    if (family == "parall") {
        Vec y = params.contains("y") ? parse_vec(params.at("y").get<std::string>()) : Vec(2);
        auto fam = parall_family(rp("alpha"), rp("beta"), rp("gamma"), rp("delta"), y);
        out("k1.json", polytope_to_json(fam.k1));
        out("l1.json", polytope_to_json(fam.l1));
        out("k2.json", polytope_to_json(fam.k2));
        out("l2.json", polytope_to_json(fam.l2));
        relations.push_back({{"type", "cross_cov_equal"},
                             {"pair1", {"k1.json", "l1.json"}},
                             {"pair2", {"k2.json", "l2.json"}}});
        relations.push_back({{"type", "not_synisothetic"},
                             {"pair1", {"k1.json", "l1.json"}},
                             {"pair2", {"k2.json", "l2.json"}}});
        relations.push_back({{"type", "not_trivial_associates"},
                             {"pair1", {"k1.json", "l1.json"}},
                             {"pair2", {"k2.json", "l2.json"}}});
    } else if (family == "parall_due") {
        Vec y = params.contains("y") ? parse_vec(params.at("y").get<std::string>()) : Vec(2);
        auto fam = parall_due_family(rp("alpha"), rp("beta"), rp("gamma"), rp("delta"),
                                     params.contains("m") ? parse_rat(params.at("m")) : Rat(1), y);
        out("k3.json", polytope_to_json(fam.k3));
        out("l3.json", polytope_to_json(fam.l3));
        out("k4.json", polytope_to_json(fam.k4));
        out("l4.json", polytope_to_json(fam.l4));
        relations.push_back({{"type", "cross_cov_equal"},
                             {"pair1", {"k3.json", "l3.json"}},
                             {"pair2", {"k4.json", "l4.json"}}});
        relations.push_back({{"type", "synisothetic"},
                             {"pair1", {"k3.json", "l3.json"}},
                             {"pair2", {"k4.json", "l4.json"}}});
        relations.push_back({{"type", "not_trivial_associates"},
                             {"pair1", {"k3.json", "l3.json"}},
                             {"pair2", {"k4.json", "l4.json"}}});
    } else if (family == "cones") {
        ConeQuadruple q = cone_quadruple();
        out("a1.json", cone_to_json(q.a1));
        out("b1.json", cone_to_json(q.b1));
        out("a2.json", cone_to_json(q.a2));
        out("b2.json", cone_to_json(q.b2));
        relations.push_back({{"type", "cone_cross_cov_equal"},
                             {"pair1", {"a1.json", "b1.json"}},
                             {"pair2", {"a2.json", "b2.json"}},
                             {"probes", 500}});
    } else if (family == "product") {
        Polytope t = convex_hull({Vec{Rat(0), Rat(0)}, Vec{Rat(1), Rat(0)}, Vec{Rat(0), Rat(1)}});
        Polytope k = convex_hull({Vec{Rat(0), Rat(-2)}, Vec{Rat(0), Rat(2)}, Vec{Rat(1), Rat(1)},
                                  Vec{Rat(1), Rat(-1)}});
        auto pc = product_counterexample(k, t);
        out("p.json", polytope_to_json(pc.p));
        out("pprime.json", polytope_to_json(pc.pprime));
        relations.push_back({{"type", "cov_equal"},
                             {"pair", {"p.json", "pprime.json"}},
                             {"probes", 400}});
        relations.push_back({{"type", "not_congruent"}, {"pair", {"p.json", "pprime.json"}}});
    } else {
        throw Error(ErrorKind::Io, "unknown gallery family '" + family + "'");
    }
    manifest["relations"] = std::move(relations);
    out("expectations.json", manifest);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact covariograms of convex polytopes and cones"};
    app.require_subcommand(1);
    bool as_float = false;
    app.add_flag("--float", as_float, "render rationals as decimals (17 significant digits)");

    // cov eval|grid
    auto* cov_cmd = app.add_subcommand("cov", "evaluate covariograms");
    cov_cmd->require_subcommand(1);
    std::string k_path, l_path, x_str, out_path;
    int res = 9;
    auto* cov_eval = cov_cmd->add_subcommand("eval", "evaluate at a point");
    cov_eval->add_option("--k", k_path, "polytope JSON")->required();
    cov_eval->add_option("--l", l_path, "second polytope JSON (cross covariogram)");
    cov_eval->add_option("--x", x_str, "offset, comma-separated rationals")->required();
    auto* cov_grid_cmd = cov_cmd->add_subcommand("grid", "sample on the support grid");
    cov_grid_cmd->add_option("--k", k_path, "polytope JSON")->required();
    cov_grid_cmd->add_option("--l", l_path, "second polytope JSON (cross covariogram)");
    cov_grid_cmd->add_option("--res", res, "nodes per axis (>= 2)")->required();
    cov_grid_cmd->add_option("--out", out_path, "CSV output path")->required();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run acceptance suites");
    std::string suite = "all", manifest_path;
    std::uint64_t seed = 7;
    verify_cmd->add_option("--suite", suite,
                           "all|identities|gallery|facerecovery|conetomo|syniso");
    verify_cmd->add_option("--seed", seed, "RNG seed");
    verify_cmd->add_option("--manifest", manifest_path, "gallery expectations manifest");

    // faces classify|lattice
    auto* faces_cmd = app.add_subcommand("faces", "face machinery");
    faces_cmd->require_subcommand(1);
    std::string poly_path, w_str;
    auto* classify_cmd = faces_cmd->add_subcommand("classify", "antipodal case of (P, w)");
    classify_cmd->add_option("--polytope", poly_path, "polytope JSON")->required();
    classify_cmd->add_option("--w", w_str, "direction")->required();
    auto* recover_cmd =
        faces_cmd->add_subcommand("recover", "projected antipodal faces F0, G0 along w");
    recover_cmd->add_option("--polytope", poly_path, "polytope JSON")->required();
    recover_cmd->add_option("--w", w_str, "direction")->required();
    auto* lattice_cmd = faces_cmd->add_subcommand("lattice", "dump the face lattice");
    lattice_cmd->add_option("--polytope", poly_path, "polytope JSON")->required();

    // syniso check
    auto* syniso_cmd = app.add_subcommand("syniso", "synisothesis tests");
    syniso_cmd->require_subcommand(1);
    std::string p_path, q_path;
    auto* syniso_check = syniso_cmd->add_subcommand("check", "are (P,-P), (Q,-Q) synisothetic?");
    syniso_check->add_option("--p", p_path, "polytope JSON")->required();
    syniso_check->add_option("--q", q_path, "polytope JSON")->required();

    // gallery build
    auto* gallery_cmd = app.add_subcommand("gallery", "example families");
    gallery_cmd->require_subcommand(1);
    std::string family, outdir;
    std::vector<std::string> param_kv;
    auto* build_cmd = gallery_cmd->add_subcommand("build", "write a family and its manifest");
    build_cmd->add_option("family", family, "parall|parall_due|cones|product")->required();
    build_cmd->add_option("--out", outdir, "output directory")->required();
    build_cmd->add_option("--params", param_kv, "key=value pairs (alpha, beta, gamma, delta, m, y)");

    // xray
    auto* xray_cmd = app.add_subcommand("xray", "chord length of a cone along a line");
    std::string cone_path, d_str, y_str;
    xray_cmd->add_option("--cone", cone_path, "cone JSON")->required();
    xray_cmd->add_option("--d", d_str, "direction")->required();
    xray_cmd->add_option("--y", y_str, "offset in the chart of d-perp")->required();

    // chord (minus-one chord function)
    auto* chord_cmd = app.add_subcommand("chord", "minus-one chord function of a polygon");
    std::string pt_str;
    chord_cmd->add_option("--polygon", poly_path, "2-polytope JSON")->required();
    chord_cmd->add_option("--p", pt_str, "external point")->required();
    chord_cmd->add_option("--d", d_str, "direction")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cov_eval->parsed()) {
            Polytope k = load_polytope(k_path);
            Vec x = parse_vec(x_str);
            Rat g = l_path.empty() ? cov(k, x) : cross_cov(k, load_polytope(l_path), x);
            std::cout << render_rat(g, as_float) << "\n";
            return 0;
        }
        if (cov_grid_cmd->parsed()) {
            Polytope k = load_polytope(k_path);
            ScalarField f = l_path.empty() ? cov_grid(k, res)
                                           : cross_cov_grid(k, load_polytope(l_path), res);
            write_text_file(out_path, scalar_field_to_csv(f));
            write_text_file(out_path + ".json", scalar_field_sidecar(f).dump(2) + "\n");
            std::cout << "wrote " << f.size() << " nodes to " << out_path << "\n";
            return 0;
        }
        if (verify_cmd->parsed()) {
            if (!manifest_path.empty())
                return run_manifest(manifest_path, seed);
            for (const char* known :
                 {"all", "identities", "gallery", "facerecovery", "conetomo", "syniso"}) {
                if (suite == known) {
                    Report r = run_suite(suite, seed);
                    std::cout << r.render();
                    return r.all_pass() ? 0 : 1;
                }
            }
            std::cerr << "usage: unknown suite '" << suite << "'\n";
            return 2;
        }
        if (classify_cmd->parsed()) {
            auto c = classify_antipodal(load_polytope(poly_path), parse_vec(w_str));
            Json j{{"case", c.case_id},
                   {"exponent", c.leading_exponent},
                   {"dim_DPw", c.dim_dpw},
                   {"sum_vanishes", c.sum_vanishes}};
            std::cout << j.dump() << "\n";
            return 0;
        }
        if (recover_cmd->parsed()) {
            ParallelFacetData d = parallel_facet_data(load_polytope(poly_path), parse_vec(w_str));
            auto pts = [](const std::vector<Vec>& vs) {
                Json a = Json::array();
                for (const Vec& v : vs)
                    a.push_back(vec_to_json(v));
                return a;
            };
            Json j{{"w", vec_to_json(d.w)},
                   {"chart_axis", d.chart_axis},
                   {"width", rat_to_json(d.width)},
                   {"f_dim", d.f_dim},
                   {"g_dim", d.g_dim},
                   {"f0_chart", pts(d.f0_chart)},
                   {"g0_chart", pts(d.g0_chart)}};
            std::cout << j.dump() << "\n";
            return 0;
        }
        if (lattice_cmd->parsed()) {
            std::cout << face_lattice_to_json(load_polytope(poly_path)).dump(2) << "\n";
            return 0;
        }
        if (syniso_check->parsed()) {
            Polytope p = load_polytope(p_path);
            Polytope q = load_polytope(q_path);
            auto r = synisothetic(p, reflect(p), q, reflect(q));
            Json wit = Json::array();
            for (const auto& w : r.witness)
                wit.push_back({{"from", w.from},
                               {"from_face", w.from_face},
                               {"to", w.to},
                               {"to_face", w.to_face}});
            Json j{{"synisothetic", r.value}, {"witness", std::move(wit)}};
            std::cout << j.dump() << "\n";
            return 0;
        }
        if (build_cmd->parsed()) {
            Json params = Json::object();
            for (const std::string& kv : param_kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw Error(ErrorKind::Io, "params must be key=value");
                params[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            write_gallery(family, outdir, params);
            std::cout << "wrote " << family << " family to " << outdir << "\n";
            return 0;
        }
        if (xray_cmd->parsed()) {
            ConvexCone cone = cone_from_json(read_json_file(cone_path));
            Vec d = parse_vec(d_str);
            Vec y = parse_vec(y_str);
            AffineChart ch = plane_chart(d, Rat(0));
            try {
                auto seg = detail::clip_line(cone.halfspaces, ch.to_ambient(y), d);
                Rat len = seg ? detail::euclidean_length(seg->second - seg->first, d) : Rat(0);
                std::cout << render_rat(len, as_float) << "\n";
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::InfiniteChord)
                    throw;
                std::cout << "InfiniteChord\n";
            }
            return 0;
        }
        if (chord_cmd->parsed()) {
            Polytope k = load_polytope(poly_path);
            auto r = minus_one_chord(k, parse_vec(pt_str), parse_vec(d_str));
            if (r.exact && !as_float)
                std::cout << rat_to_string(*r.exact) << "\n";
            else {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.17g", r.value);
                std::cout << buf << "\n";
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
