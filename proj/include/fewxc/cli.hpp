#pragma once

// Command-line front end. Subcommands map one-to-one onto module entry
// operations; all output is JSON on stdout and byte-identical across runs.
// Exit codes: 0 exact/ok, 1 failed verification, 2 interval or infeasible
// geometry, 3 malformed input.

#include "fewxc/bounds.hpp"
#include "fewxc/classifier.hpp"
#include "fewxc/corpus.hpp"
#include "fewxc/gale.hpp"
#include "fewxc/json_io.hpp"
#include "fewxc/oracle.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fewxc::cli {

namespace detail {

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw input_error("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact extension-complexity toolkit for polytopes with few vertices or facets"};
    app.require_subcommand(1);

    std::string polytope_path, cert_path, spec_path, out_dir;
    long long bd = 0, bn = -1, br = -1, balpha = -1;

    auto* classify = app.add_subcommand("classify", "decide the extension complexity of a polytope");
    classify->add_option("polytope", polytope_path, "polytope JSON file")->required();

    auto* construct = app.add_subcommand("construct", "build a family member from a spec");
    construct->add_option("spec", spec_path, "family spec JSON file")->required();

    auto* gale = app.add_subcommand("gale", "Gale transform of a polytope's vertex set");
    gale->add_option("polytope", polytope_path, "polytope JSON file")->required();

    auto* enumerate =
        app.add_subcommand("enumerate-sporadic",
                           "non-pyramidal polytopes with d+4 vertices and d+3 facets");

    auto* bounds = app.add_subcommand("bounds", "lower-bound calculators");
    bounds->add_option("--d", bd, "dimension")->required();
    bounds->add_option("--n", bn, "vertex or facet count");
    bounds->add_option("--r", br, "realization space dimension");
    bounds->add_option("--alpha", balpha, "vertex excess n-d-1");

    auto* slack = app.add_subcommand("slack", "slack matrix of a polytope");
    slack->add_option("polytope", polytope_path, "polytope JSON file")->required();

    auto* verify = app.add_subcommand("verify", "check an extension certificate");
    verify->add_option("polytope", polytope_path, "target polytope JSON file")->required();
    verify->add_option("certificate", cert_path, "certificate JSON file")->required();

    auto* corpus_cmd = app.add_subcommand("corpus", "materialize the test corpus");
    corpus_cmd->add_option("outdir", out_dir, "output directory")->required();

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg;
        const int code = app.exit(e, msg, msg);
        err << msg.str();
        return code == 0 ? 0 : 3;
    }

    try {
        if (classify->parsed()) {
            const Polytope p = polytope_from_json(detail::load_json(polytope_path));
            const XcResult r = classify_xc(p);
            detail::emit(out, to_json(r));
            return r.exact ? 0 : 2;
        }
        if (construct->parsed()) {
            const FamilySpec spec = family_spec_from_json(detail::load_json(spec_path));
            detail::emit(out, to_json(build_family(spec)));
            return 0;
        }
        if (gale->parsed()) {
            const Polytope p = polytope_from_json(detail::load_json(polytope_path));
            const GaleDiagram g = gale_transform(p.vertices);
            detail::emit(out, to_json(g, is_polytopal(g)));
            return 0;
        }
        if (enumerate->parsed()) {
            json types = json::array();
            std::map<std::string, std::size_t> per_dim;
            for (std::size_t d = 3; d <= 7; ++d) per_dim[std::to_string(d)] = 0;
            for (const auto& [d, p] : sporadic_d4_vertices()) {
                json rec;
                rec["dim"] = d;
                rec["vertices"] = to_json(p)["vertices"];
                rec["facet_count"] = p.n_facets();
                types.push_back(rec);
                ++per_dim[std::to_string(d)];
            }
            json j;
            j["types"] = types;
            j["count_per_dimension"] = per_dim;
            j["total"] = types.size();
            detail::emit(out, j);
            return 0;
        }
        if (bounds->parsed()) {
            json j;
            j["d"] = bd;
            if (bn >= 0) {
                j["n"] = bn;
                j["r"] = bd * bn;
                const auto b = simple_or_simplicial_lower(bd, bn);
                j["generic_lower"] = b.value;
                j["generic_lower_exact"] = b.attained_exactly;
            } else if (br >= 0) {
                j["r"] = br;
                const auto b = generic_xc_lower(br, bd);
                j["generic_lower"] = b.value;
                j["generic_lower_exact"] = b.attained_exactly;
            }
            if (balpha >= 0) {
                j["alpha"] = balpha;
                j["alpha_threshold"] = alpha_threshold(balpha);
            }
            j["join_family_count"] = join_family_count(bd);
            j["pyramid_dim_guard"] = pyramid_dim_guard(3, 2);
            detail::emit(out, j);
            return 0;
        }
        if (slack->parsed()) {
            const Polytope p = polytope_from_json(detail::load_json(polytope_path));
            detail::emit(out, to_json(slack_matrix(p)));
            return 0;
        }
        if (verify->parsed()) {
            const Polytope p = polytope_from_json(detail::load_json(polytope_path));
            const ExtensionCertificate cert = certificate_from_json(detail::load_json(cert_path));
            const auto res = verify_extension(p, cert);
            json j;
            j["ok"] = res.ok;
            j["facet_count"] = res.facet_count;
            detail::emit(out, j);
            return res.ok ? 0 : 1;
        }
        if (corpus_cmd->parsed()) {
            std::filesystem::create_directories(out_dir);
            json manifest = json::array();
            for (const auto& e : corpus()) {
                const std::string file = e.name + ".json";
                std::ofstream f(std::filesystem::path(out_dir) / file);
                f << to_json(e.polytope).dump(2) << "\n";
                json rec;
                rec["name"] = e.name;
                rec["file"] = file;
                rec["dim"] = e.polytope.dim;
                rec["n_vertices"] = e.polytope.n_vertices();
                rec["n_facets"] = e.polytope.n_facets();
                manifest.push_back(rec);
            }
            std::ofstream mf(std::filesystem::path(out_dir) / "manifest.json");
            mf << manifest.dump(2) << "\n";
            out << "wrote " << manifest.size() << " corpus members to " << out_dir << "\n";
            return 0;
        }
    } catch (const input_error& e) {
        err << "input error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        err << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "infeasible: " << e.what() << "\n";
        return 2;
    }
    return 3;
}

} // namespace fewxc::cli
