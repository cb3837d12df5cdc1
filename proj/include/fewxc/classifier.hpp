#pragma once

// The complete extension-complexity classifier for polytopes with at most
// d+4 vertices or facets, with verifiable certificates: explicit prism
// lifts for Desarguian hexagon pyramids, prism vertex subsets, and an
// exhaustion record when the value is d+4. Out of that range the result is
// an exact-arithmetic interval.

#include "fewxc/comb_iso.hpp"
#include "fewxc/constructors.hpp"
#include "fewxc/oracle.hpp"
#include "fewxc/parallel.hpp"
#include "fewxc/polytope.hpp"
#include "fewxc/projective.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fewxc {

struct DesarguianWitness {
    std::size_t rotation = 0; // cyclic relabeling offset
    bool reflected = false;
    HomPoint point{Rational(0), Rational(0), Rational(1)};
};

namespace detail {

// Vertex coordinates of a hexagon in the cyclic order fixed by a labeling.
inline std::vector<RVector> labeled_cycle(const Polytope& hex, std::size_t rotation,
                                          bool reflected) {
    const auto cyc = polygon_cycle(hex);
    std::vector<RVector> pts(6);
    for (std::size_t i = 0; i < 6; ++i) {
        const std::size_t j = reflected ? (rotation + 6 - i) % 6 : (rotation + i) % 6;
        pts[i] = hex.vertices.points[cyc[j]];
    }
    return pts;
}

inline std::vector<std::string> labeled_cycle_names(const Polytope& hex, std::size_t rotation,
                                                    bool reflected) {
    const auto cyc = polygon_cycle(hex);
    std::vector<std::string> names(6);
    for (std::size_t i = 0; i < 6; ++i) {
        const std::size_t j = reflected ? (rotation + 6 - i) % 6 : (rotation + i) % 6;
        names[i] = hex.vertices.labels[cyc[j]];
    }
    return names;
}

} // namespace detail

// Tries all 12 cyclic labelings p0..p5 and reports the first for which the
// lines p0p1, p5p2, p3p4 are concurrent (projectively; parallels count).
inline std::optional<DesarguianWitness> desarguian_test(const Polytope& hex) {
    if (hex.dim != 2 || hex.n_vertices() != 6)
        throw std::invalid_argument("desarguian_test: input is not a hexagon");
    for (std::size_t rot = 0; rot < 6; ++rot)
        for (int refl = 0; refl < 2; ++refl) {
            const auto p = detail::labeled_cycle(hex, rot, refl != 0);
            const auto w = concurrent(line_through(p[0], p[1]), line_through(p[5], p[2]),
                                      line_through(p[3], p[4]));
            if (w) return DesarguianWitness{rot, refl != 0, *w};
        }
    return std::nullopt;
}

struct HexagonLift {
    Polytope q; // 3-polytope, combinatorially a triangular prism, projecting onto the hexagon
    PreservationReport report;
    std::map<std::string, Rational> heights; // per hexagon vertex label
};

// Solves the linear coplanarity system for lift heights: under the witness
// labeling the three quadrilaterals {q0,q1,q2,q5}, {q0,q1,q3,q4} and
// {q2,q5,q3,q4} must be planar. Trivial solutions are affine functions of
// the plane; any kernel element beyond them is a candidate lift, accepted
// once the hull verifies as a prism projecting back onto the hexagon.
inline HexagonLift lift_hexagon(const Polytope& hex, const DesarguianWitness& w) {
    if (hex.dim != 2 || hex.n_vertices() != 6)
        throw std::invalid_argument("lift_hexagon: input is not a hexagon");
    const auto pts = detail::labeled_cycle(hex, w.rotation, w.reflected);
    const auto names = detail::labeled_cycle_names(hex, w.rotation, w.reflected);

    const std::size_t quads[3][4] = {{0, 1, 2, 5}, {0, 1, 3, 4}, {2, 5, 3, 4}};
    RMatrix sys(3, 6);
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t k = 0; k < 4; ++k) {
            // Coefficient of z_{quads[r][k]}: signed 3x3 minor of the other three
            // rows (x, y, 1) in the 4x4 coplanarity determinant.
            RMatrix minor(3, 3);
            std::size_t mi = 0;
            for (std::size_t l = 0; l < 4; ++l) {
                if (l == k) continue;
                minor(mi, 0) = pts[quads[r][l]][0];
                minor(mi, 1) = pts[quads[r][l]][1];
                minor(mi, 2) = 1;
                ++mi;
            }
            const Rational cof = det(minor);
            sys(r, quads[r][k]) = (k % 2 == 0) ? cof : -cof;
        }
    }

    std::vector<RVector> trivial = {RVector(6, Rational(1))};
    {
        RVector xs(6), ys(6);
        for (std::size_t i = 0; i < 6; ++i) {
            xs[i] = pts[i][0];
            ys[i] = pts[i][1];
        }
        trivial.push_back(xs);
        trivial.push_back(ys);
    }

    // Kernel basis vectors, plus pairwise sums in case the solution space is
    // degenerate and no single basis vector is both nontrivial and convex.
    std::vector<RVector> candidates = null_space(sys);
    const std::size_t basis_count = candidates.size();
    for (std::size_t i = 0; i < basis_count; ++i)
        for (std::size_t j = i + 1; j < basis_count; ++j)
            candidates.push_back(add(candidates[i], candidates[j]));
    for (const auto& cand : candidates) {
        auto stacked = trivial;
        stacked.push_back(cand);
        if (rank(RMatrix::from_rows(stacked)) != 4) continue; // affine, no lift
        std::vector<RVector> lifted;
        std::vector<std::string> lbls;
        for (std::size_t i = 0; i < 6; ++i) {
            RVector v = pts[i];
            v.push_back(cand[i]);
            lifted.push_back(std::move(v));
            lbls.push_back(names[i]);
        }
        Polytope q;
        try {
            q = hull(PointConfig::make(3, lifted, lbls));
        } catch (const std::exception&) {
            continue;
        }
        if (q.dim != 3 || q.n_vertices() != 6 || q.n_facets() != 5) continue;
        if (!comb_iso(q, product(simplex(1), simplex(2)))) continue;
        if (!verify_extension(hex, ExtensionCertificate{q, 2}).ok) continue;
        auto report = preserved_faces(q);
        if (std::count(report.vertex_status.begin(), report.vertex_status.end(),
                       Preservation::strictly_preserved) != 6)
            continue;
        HexagonLift out;
        out.q = std::move(q);
        out.report = std::move(report);
        for (std::size_t i = 0; i < 6; ++i) out.heights[names[i]] = cand[i];
        return out;
    }
    throw std::logic_error("lift not found");
}

// First 6-subset of vertices (lexicographic) whose hull is a 3-dimensional
// triangular prism. The scan over subsets fans out across the thread budget.
inline std::optional<std::vector<std::string>> find_prism_subset(const Polytope& p) {
    const std::size_t n = p.n_vertices();
    if (n < 6) return std::nullopt;
    static const Polytope reference = product(simplex(1), simplex(2));

    std::vector<std::vector<std::size_t>> subsets;
    {
        std::vector<std::size_t> idx{0, 1, 2, 3, 4, 5};
        bool done = false;
        while (!done) {
            subsets.push_back(idx);
            detail::next_combination_done(idx, n, done);
        }
    }
    auto worker = [&](std::size_t lo, std::size_t hi) -> std::optional<std::size_t> {
        for (std::size_t s = lo; s < hi; ++s) {
            std::vector<RVector> pts;
            for (auto i : subsets[s]) pts.push_back(p.vertices.points[i]);
            if (affine_rank(pts) != 3) continue;
            std::vector<std::string> lbls;
            for (auto i : subsets[s]) lbls.push_back(p.vertices.labels[i]);
            Polytope h;
            try {
                h = hull(PointConfig::make(p.dim, pts, lbls));
            } catch (const std::exception&) {
                continue;
            }
            if (h.n_vertices() != 6 || h.n_facets() != 5) continue;
            if (comb_iso(h, reference)) return s;
        }
        return std::nullopt;
    };
    auto hit = first_hit_parallel<std::size_t>(subsets.size(), worker);
    if (!hit) return std::nullopt;
    std::vector<std::string> lbls;
    for (auto i : subsets[*hit]) lbls.push_back(p.vertices.labels[i]);
    return lbls;
}

enum class XcCase {
    simplex,
    facets_d2,
    facets_d3_sporadic,
    vertices_le_d3,
    desarguian_pyramid,
    prism_subset,
    generic_d4,
    out_of_scope,
};

inline const char* to_string(XcCase c) {
    switch (c) {
        case XcCase::simplex: return "simplex";
        case XcCase::facets_d2: return "facets_d2";
        case XcCase::facets_d3_sporadic: return "facets_d3_sporadic";
        case XcCase::vertices_le_d3: return "vertices_le_d3";
        case XcCase::desarguian_pyramid: return "desarguian_pyramid";
        case XcCase::prism_subset: return "prism_subset";
        case XcCase::generic_d4: return "generic_d4";
        case XcCase::out_of_scope: return "out_of_scope";
    }
    return "?";
}

struct XcResult {
    XcCase kase = XcCase::out_of_scope;
    bool exact = false;
    std::size_t value = 0;   // when exact
    std::size_t lo = 0, hi = 0; // when not
    std::size_t n = 0, m = 0, dim = 0;
    bool dualized = false; // certificates below refer to the polar when set

    // desarguian_pyramid
    std::optional<DesarguianWitness> witness;
    std::vector<std::string> apex_labels;
    std::vector<std::string> hexagon_labels;
    std::optional<Polytope> lift;   // full lift of the worked polytope
    std::optional<Polytope> target; // the worked polytope itself (P or its polar)

    // prism_subset
    std::vector<std::string> prism_labels;

    // generic_d4 exhaustion record
    bool hexagon_tested = false;
    std::size_t labelings_tested = 0;
    std::size_t subsets_searched = 0;

    // out_of_scope
    bool cover_bound_used = false;
};

namespace detail {

// Lift of the whole worked polytope from the base-hexagon lift: hexagon
// vertices take their solved heights, pyramid apexes stay at height zero.
// The hull is a (d+1)-polytope with d+3 facets projecting exactly onto W.
inline Polytope full_desarguian_lift(const Polytope& w, const std::map<std::string, Rational>& heights) {
    std::vector<RVector> pts;
    for (std::size_t v = 0; v < w.n_vertices(); ++v) {
        RVector x = w.vertices.points[v];
        const auto it = heights.find(w.vertices.labels[v]);
        x.push_back(it == heights.end() ? Rational(0) : it->second);
        pts.push_back(std::move(x));
    }
    Polytope q = hull(PointConfig::make(w.dim + 1, pts, w.vertices.labels));
    if (q.n_vertices() != w.n_vertices() || q.n_facets() != w.dim + 3)
        throw std::logic_error("desarguian lift of the pyramid failed to verify");
    if (!verify_extension(w, ExtensionCertificate{q, w.dim}).ok)
        throw std::logic_error("desarguian lift does not project back");
    return q;
}

// Explicit extension for the prism-subset case: lifting the vertices
// outside the prism to distinct heights straightens the rest into an
// iterated pyramid over the prism, a (d+1)-polytope with d+3 facets whose
// shadow is the polytope itself. Accepted only after exact verification.
inline std::optional<Polytope> prism_subset_lift(const Polytope& w,
                                                 const std::vector<std::string>& prism_labels) {
    auto in_prism = [&](const std::string& l) {
        return std::find(prism_labels.begin(), prism_labels.end(), l) != prism_labels.end();
    };
    for (long base : {3L, 5L, 7L}) {
        std::vector<RVector> pts;
        Rational h(1);
        for (std::size_t v = 0; v < w.n_vertices(); ++v) {
            RVector x = w.vertices.points[v];
            if (in_prism(w.vertices.labels[v])) {
                x.push_back(Rational(0));
            } else {
                x.push_back(h);
                h *= base;
            }
            pts.push_back(std::move(x));
        }
        Polytope q;
        try {
            q = hull(PointConfig::make(w.dim + 1, pts, w.vertices.labels));
        } catch (const std::exception&) {
            continue;
        }
        if (q.n_vertices() != w.n_vertices() || q.n_facets() != w.dim + 3) continue;
        if (!verify_extension(w, ExtensionCertificate{q, w.dim}).ok) continue;
        return q;
    }
    return std::nullopt;
}

} // namespace detail

// The classification decision tree. Exact value with certificate for every
// polytope with at most d+4 vertices or at most d+4 facets; an interval
// from the covering oracle otherwise.
inline XcResult classify_xc(const Polytope& p) {
    XcResult res;
    const std::size_t d = p.dim, n = p.n_vertices(), m = p.n_facets();
    res.n = n;
    res.m = m;
    res.dim = d;
    const std::size_t mn = std::min(n, m), mx = std::max(n, m);

    if (n == d + 1) {
        res.kase = XcCase::simplex;
        res.exact = true;
        res.value = d + 1;
        return res;
    }
    if (mn == d + 2) {
        res.kase = XcCase::facets_d2;
        res.exact = true;
        res.value = d + 2;
        return res;
    }
    if (mn == d + 3) {
        res.exact = true;
        res.value = d + 3;
        if (mx != d + 4) {
            res.kase = XcCase::vertices_le_d3;
            return res;
        }
        // The sporadic family: d+4 vertices against d+3 facets (either
        // orientation). A prism subset certificate is attached when the
        // d+4-vertex side has one; the join members with n = m = 1 do.
        res.kase = XcCase::facets_d3_sporadic;
        res.dualized = (n != d + 4);
        const Polytope work = res.dualized ? polar_dual(p) : p;
        if (auto prism = find_prism_subset(work)) {
            res.prism_labels = *prism;
            res.target = work;
        }
        return res;
    }
    if (mn == d + 4) {
        // Work on the side with d+4 vertices.
        res.dualized = (n != d + 4);
        const Polytope work = res.dualized ? polar_dual(p) : p;
        const auto dec = pyramid_decompose(work);
        res.apex_labels = dec.apex_labels;
        if (dec.base.dim == 2 && dec.base.n_vertices() == 6) {
            res.hexagon_tested = true;
            res.labelings_tested = 12;
            const auto w = desarguian_test(dec.base);
            if (w) {
                auto lift = lift_hexagon(dec.base, *w);
                res.kase = XcCase::desarguian_pyramid;
                res.exact = true;
                res.value = d + 3;
                res.witness = w;
                res.hexagon_labels = dec.base.vertices.labels;
                res.target = work;
                res.lift = detail::full_desarguian_lift(work, lift.heights);
                return res;
            }
        }
        const auto prism = find_prism_subset(work);
        res.subsets_searched =
            work.n_vertices() >= 6
                ? [&] {
                      std::size_t c = 1;
                      for (std::size_t i = 0; i < 6; ++i)
                          c = c * (work.n_vertices() - i) / (i + 1);
                      return c;
                  }()
                : 0;
        if (prism) {
            res.kase = XcCase::prism_subset;
            res.exact = true;
            res.value = d + 3;
            res.prism_labels = *prism;
            res.target = work;
            res.lift = detail::prism_subset_lift(work, *prism);
            return res;
        }
        res.kase = XcCase::generic_d4;
        res.exact = true;
        res.value = d + 4;
        return res;
    }

    res.kase = XcCase::out_of_scope;
    const auto iv = xc_interval(p);
    res.exact = false;
    res.lo = iv.lo;
    res.hi = iv.hi;
    res.cover_bound_used = iv.cover_bound_used;
    return res;
}

// Structure report for the prism-subset case: base vertices split into the
// prism part and the rest; depending on the rest's affine dimension the
// polytope is a pyramid over a join with a direct sum of simplices, or a
// chain of one-point suspensions and Lawrence extensions over a prism
// pyramid. The chain is recovered by peeling point pairs through
// homogeneous coordinates, so replacement points at infinity are exact.
struct StructureReport {
    enum class Form { join_form, chain_form };
    Form form = Form::join_form;
    std::size_t pyramid_k = 0;
    std::size_t join_n = 0, join_m = 0;           // join form
    std::vector<std::string> steps;               // chain form, outermost first
    bool final_point_projective = false;          // chain form
};

namespace detail {

inline std::size_t hom_rank(const std::vector<RVector>& homs) {
    return rank(RMatrix::from_rows(homs));
}

} // namespace detail

inline StructureReport decompose_structure(const Polytope& p,
                                           const std::vector<std::string>& prism_labels) {
    StructureReport rep;
    const auto dec = pyramid_decompose(p);
    rep.pyramid_k = dec.k;
    const Polytope& base = dec.base;
    const std::size_t d0 = base.dim;

    auto is_prism_label = [&](const std::string& l) {
        return std::find(prism_labels.begin(), prism_labels.end(), l) != prism_labels.end();
    };
    std::vector<RVector> bpts, apts;
    for (std::size_t v = 0; v < base.n_vertices(); ++v) {
        RVector h = base.vertices.points[v];
        h.push_back(1);
        (is_prism_label(base.vertices.labels[v]) ? bpts : apts).push_back(std::move(h));
    }
    if (bpts.size() != 6) throw std::domain_error("not in case (2) structure");

    const std::size_t dimA = apts.empty() ? 0 : detail::hom_rank(apts) - 1;
    if (apts.size() >= 2 && d0 >= 4 && dimA == d0 - 4) {
        // Join form: the rest is a pyramid-free direct sum of two simplices.
        std::vector<RVector> raw;
        std::vector<std::string> lbls;
        for (std::size_t v = 0; v < base.n_vertices(); ++v)
            if (!is_prism_label(base.vertices.labels[v])) {
                raw.push_back(base.vertices.points[v]);
                lbls.push_back(base.vertices.labels[v]);
            }
        Polytope rest = hull(PointConfig::make(base.dim, raw, lbls));
        const auto rd = pyramid_decompose(rest);
        rep.pyramid_k += rd.k;
        const std::size_t v = rd.base.n_vertices(), f = rd.base.n_facets();
        // v = n+m+2 and f = (n+1)(m+1) determine {n, m}.
        const std::size_t sum = v - 2;
        for (std::size_t nn = 1; nn < sum; ++nn) {
            const std::size_t mm = sum - nn;
            if ((nn + 1) * (mm + 1) == f && nn >= mm) {
                rep.form = StructureReport::Form::join_form;
                rep.join_n = nn;
                rep.join_m = mm;
                return rep;
            }
        }
        throw std::domain_error("not in case (2) structure");
    }
    if (dimA != d0 - 3) throw std::domain_error("not in case (2) structure");

    // Chain form. Peel configuration apexes and point pairs until a single
    // extra point remains next to the prism.
    rep.form = StructureReport::Form::chain_form;
    std::vector<RVector> a = apts;
    auto all_points = [&]() {
        std::vector<RVector> out = bpts;
        out.insert(out.end(), a.begin(), a.end());
        return out;
    };
    while (a.size() >= 2) {
        const std::size_t full = detail::hom_rank(all_points());
        // Configuration apexes: removing the point drops the span.
        bool peeled = false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::vector<RVector> others = bpts;
            for (std::size_t j = 0; j < a.size(); ++j)
                if (j != i) others.push_back(a[j]);
            if (detail::hom_rank(others) == full - 1) {
                a.erase(a.begin() + i);
                ++rep.pyramid_k;
                peeled = true;
                break;
            }
        }
        if (peeled) continue;
        bool stepped = false;
        for (std::size_t i = 0; i < a.size() && !stepped; ++i) {
            for (std::size_t j = i + 1; j < a.size() && !stepped; ++j) {
                std::vector<RVector> s = bpts;
                for (std::size_t t = 0; t < a.size(); ++t)
                    if (t != i && t != j) s.push_back(a[t]);
                if (detail::hom_rank(s) != full - 1) continue;
                auto with = [&](const RVector& x) {
                    auto v = s;
                    v.push_back(x);
                    return detail::hom_rank(v);
                };
                if (with(a[i]) != full || with(a[j]) != full) continue;
                // A functional vanishing on the hyperplane, nonzero on both.
                const auto kernel = null_space(RMatrix::from_rows(s));
                RVector h;
                for (std::size_t u = 0; u < kernel.size() && h.empty(); ++u) {
                    if (dot(kernel[u], a[i]) != 0 && dot(kernel[u], a[j]) != 0) h = kernel[u];
                    for (std::size_t w = u + 1; w < kernel.size() && h.empty(); ++w) {
                        const RVector comb = add(kernel[u], kernel[w]);
                        if (dot(comb, a[i]) != 0 && dot(comb, a[j]) != 0) h = comb;
                    }
                }
                if (h.empty()) continue;
                const Rational hi = dot(h, a[i]), hj = dot(h, a[j]);
                rep.steps.push_back(sign(hi) == sign(hj) ? "lawrence" : "one_point_suspension");
                // Replacement: the intersection of the line through the pair
                // with the hyperplane, possibly at infinity.
                RVector repl = sub(scaled(a[i], hj), scaled(a[j], hi));
                if (is_zero(repl)) throw std::domain_error("not in case (2) structure");
                a.erase(a.begin() + j);
                a.erase(a.begin() + i);
                a.push_back(primitive_signed(repl));
                stepped = true;
            }
        }
        if (!stepped) throw std::domain_error("not in case (2) structure");
    }
    if (!a.empty()) rep.final_point_projective = (a[0].back() == 0);
    return rep;
}

} // namespace fewxc
