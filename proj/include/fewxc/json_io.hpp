#pragma once

// JSON serialization: rationals as strings "p/q" (or "p"), polytopes as
// dim + vertex grid + labels. Facets and incidence are always recomputed on
// load, never trusted from a file.

#include "fewxc/classifier.hpp"
#include "fewxc/constructors.hpp"
#include "fewxc/gale.hpp"
#include "fewxc/oracle.hpp"
#include "fewxc/polytope.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>

namespace fewxc {

using json = nlohmann::json;

// Malformed input files map to CLI exit code 3.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline json to_json(const RVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

inline json to_json(const Polytope& p) {
    json j;
    j["dim"] = p.dim;
    json verts = json::array();
    for (const auto& v : p.vertices.points) verts.push_back(to_json(v));
    j["vertices"] = verts;
    j["labels"] = p.vertices.labels;
    return j;
}

inline RVector rvector_from_json(const json& a) {
    if (!a.is_array()) throw input_error("expected an array of rational strings");
    RVector v;
    for (const auto& x : a) {
        if (!x.is_string()) throw input_error("rational entries must be strings");
        try {
            v.push_back(parse_rational(x.get<std::string>()));
        } catch (const std::invalid_argument& e) {
            throw input_error(e.what());
        }
    }
    return v;
}

inline Polytope polytope_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("vertices"))
        throw input_error("polytope JSON needs \"dim\" and \"vertices\"");
    if (!j["dim"].is_number_unsigned()) throw input_error("\"dim\" must be a nonnegative integer");
    const std::size_t dim = j["dim"].get<std::size_t>();
    if (!j["vertices"].is_array() || j["vertices"].empty())
        throw input_error("\"vertices\" must be a nonempty array");
    std::vector<RVector> pts;
    for (const auto& row : j["vertices"]) pts.push_back(rvector_from_json(row));
    const std::size_t ambient = pts[0].size();
    for (const auto& p : pts)
        if (p.size() != ambient) throw input_error("vertex rows have mixed lengths");
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j["labels"].is_array() || j["labels"].size() != pts.size())
            throw input_error("\"labels\" must match the vertex count");
        for (const auto& l : j["labels"]) {
            if (!l.is_string()) throw input_error("labels must be strings");
            labels.push_back(l.get<std::string>());
        }
    }
    Polytope p;
    try {
        p = hull(PointConfig::make(ambient, std::move(pts), std::move(labels)));
    } catch (const std::invalid_argument& e) {
        throw input_error(e.what());
    }
    if (p.dim != dim)
        throw input_error("declared dim " + std::to_string(dim) + " but the hull has dimension " +
                          std::to_string(p.dim));
    return p;
}

inline FamilySpec family_spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw input_error("family spec JSON needs a string \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    FamilySpec s;
    if (kind == "simplex")
        s.kind = FamilySpec::Kind::simplex;
    else if (kind == "kfold_pyramid_product")
        s.kind = FamilySpec::Kind::kfold_pyramid_product;
    else if (kind == "kfold_pyramid_sum")
        s.kind = FamilySpec::Kind::kfold_pyramid_sum;
    else if (kind == "join_family")
        s.kind = FamilySpec::Kind::join_family;
    else
        throw input_error("unknown family kind '" + kind + "'");
    auto read = [&](const char* key, std::size_t dflt, std::size_t min) {
        if (!j.contains(key)) return dflt;
        if (!j[key].is_number_unsigned()) throw input_error(std::string(key) + " must be a count");
        const auto v = j[key].get<std::size_t>();
        if (v < min) throw input_error(std::string(key) + " out of range");
        return v;
    };
    s.k = read("k", 0, 0);
    s.n = read("n", 1, 1);
    s.m = read("m", 1, 1);
    return s;
}

inline json to_json(const GaleDiagram& g, bool polytopal) {
    json j;
    j["corank"] = g.corank;
    json vecs = json::array();
    for (const auto& v : g.vectors) vecs.push_back(to_json(v));
    j["vectors"] = vecs;
    j["labels"] = g.labels;
    j["polytopal"] = polytopal;
    return j;
}

inline json to_json(const SlackMatrix& s) {
    json rows = json::array();
    for (const auto& row : s.entries) {
        json r = json::array();
        for (const auto& x : row) r.push_back(to_string(x));
        rows.push_back(r);
    }
    json j;
    j["rows"] = s.rows;
    j["cols"] = s.cols;
    j["entries"] = rows;
    return j;
}

inline json to_json(const ExtensionCertificate& c) {
    json j;
    j["Q"] = to_json(c.q);
    j["keep"] = c.keep;
    return j;
}

inline ExtensionCertificate certificate_from_json(const json& j) {
    if (!j.is_object() || !j.contains("Q") || !j.contains("keep"))
        throw input_error("certificate JSON needs \"Q\" and \"keep\"");
    if (!j["keep"].is_number_unsigned()) throw input_error("\"keep\" must be a count");
    return ExtensionCertificate{polytope_from_json(j["Q"]), j["keep"].get<std::size_t>()};
}

inline json to_json(const XcResult& r) {
    json j;
    if (r.exact) {
        j["xc"] = r.value;
    } else {
        j["xc"] = json{{"lo", r.lo}, {"hi", r.hi}};
    }
    j["case"] = to_string(r.kase);
    j["dim"] = r.dim;
    j["n_vertices"] = r.n;
    j["n_facets"] = r.m;
    json cert;
    switch (r.kase) {
        case XcCase::simplex:
        case XcCase::facets_d2:
        case XcCase::vertices_le_d3:
            cert["n"] = r.n;
            cert["m"] = r.m;
            break;
        case XcCase::facets_d3_sporadic:
            cert["n"] = r.n;
            cert["m"] = r.m;
            cert["dualized"] = r.dualized;
            if (!r.prism_labels.empty()) cert["prism_subset"] = r.prism_labels;
            break;
        case XcCase::desarguian_pyramid: {
            cert["dualized"] = r.dualized;
            cert["apex_labels"] = r.apex_labels;
            cert["hexagon_labels"] = r.hexagon_labels;
            cert["labeling"] =
                json{{"rotation", r.witness->rotation}, {"reflected", r.witness->reflected}};
            cert["witness_point"] = to_json(RVector{r.witness->point.x, r.witness->point.y,
                                                    r.witness->point.w});
            cert["target"] = to_json(*r.target);
            cert["extension"] = to_json(ExtensionCertificate{*r.lift, r.target->dim});
            break;
        }
        case XcCase::prism_subset:
            cert["dualized"] = r.dualized;
            cert["prism_subset"] = r.prism_labels;
            if (r.lift && r.target) {
                cert["target"] = to_json(*r.target);
                cert["extension"] = to_json(ExtensionCertificate{*r.lift, r.target->dim});
            }
            break;
        case XcCase::generic_d4:
            cert["dualized"] = r.dualized;
            cert["hexagon_tested"] = r.hexagon_tested;
            cert["labelings_tested"] = r.labelings_tested;
            cert["prism_subsets_searched"] = r.subsets_searched;
            break;
        case XcCase::out_of_scope:
            cert["cover_bound_used"] = r.cover_bound_used;
            break;
    }
    j["certificate"] = cert;
    return j;
}

} // namespace fewxc
