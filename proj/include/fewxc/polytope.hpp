#pragma once

// Dual-description polytopes over exact rationals: brute-force facet
// enumeration from vertex sets, polarity, projection, pyramid peeling and
// the face-preservation report for codimension-one projections.

#include "fewxc/linalg.hpp"
#include "fewxc/rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fewxc {

struct PointConfig {
    std::size_t ambient_dim = 0;
    std::vector<RVector> points;
    std::vector<std::string> labels; // unique; auto-filled "p0","p1",... when empty

    static PointConfig make(std::size_t ambient, std::vector<RVector> pts,
                            std::vector<std::string> lbls = {}) {
        PointConfig c;
        c.ambient_dim = ambient;
        c.points = std::move(pts);
        if (lbls.empty()) {
            for (std::size_t i = 0; i < c.points.size(); ++i)
                lbls.push_back("p" + std::to_string(i));
        }
        c.labels = std::move(lbls);
        if (c.labels.size() != c.points.size())
            throw std::invalid_argument("labels/points size mismatch");
        std::set<std::string> seen;
        for (const auto& l : c.labels)
            if (!seen.insert(l).second) throw std::invalid_argument("duplicate label " + l);
        for (const auto& p : c.points)
            if (p.size() != c.ambient_dim) throw std::invalid_argument("point dimension mismatch");
        return c;
    }

    std::size_t size() const { return points.size(); }
};

// Outer description entry: normal * x <= offset, supporting and irredundant.
struct Facet {
    RVector normal;
    Rational offset;

    Rational slack(const RVector& x) const { return offset - dot(normal, x); }
};

struct Polytope {
    std::size_t dim = 0; // intrinsic; equals the ambient dim of `vertices`
    PointConfig vertices;
    std::vector<Facet> facets;
    std::vector<std::vector<bool>> incidence; // [facet][vertex], true on the facet

    std::size_t n_vertices() const { return vertices.size(); }
    std::size_t n_facets() const { return facets.size(); }

    bool contains(const RVector& x) const {
        for (const auto& f : facets)
            if (f.slack(x) < 0) return false;
        return true;
    }

    std::vector<std::string> vertex_labels() const { return vertices.labels; }
};

inline std::size_t affine_rank(const std::vector<RVector>& pts) {
    if (pts.size() <= 1) return 0;
    std::vector<RVector> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
    return rank(RMatrix::from_rows(diffs));
}

inline RVector vertex_centroid(const Polytope& p) {
    RVector c(p.dim, Rational(0));
    for (const auto& v : p.vertices.points) c = add(c, v);
    return scaled(c, Rational(1) / Rational(static_cast<long>(p.n_vertices())));
}

namespace detail {

struct LexLess {
    bool operator()(const RVector& a, const RVector& b) const {
        for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
            if (a[i] < b[i]) return true;
            if (a[i] > b[i]) return false;
        }
        return a.size() < b.size();
    }
};

// Coordinates of the input points inside their affine hull: translate by the
// first point and express in a greedily chosen difference basis.
inline std::vector<RVector> restrict_to_affine_hull(const std::vector<RVector>& pts,
                                                    std::size_t r) {
    std::vector<RVector> basis;
    for (std::size_t i = 1; i < pts.size() && basis.size() < r; ++i) {
        basis.push_back(sub(pts[i], pts[0]));
        if (rank(RMatrix::from_rows(basis)) < basis.size()) basis.pop_back();
    }
    RMatrix bt(pts[0].size(), r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < pts[0].size(); ++i) bt(i, j) = basis[j][i];
    std::vector<RVector> out;
    out.reserve(pts.size());
    for (const auto& p : pts) {
        auto lam = solve(bt, sub(p, pts[0]));
        if (!lam) throw std::logic_error("restriction basis does not span");
        out.push_back(*lam);
    }
    return out;
}

inline void next_combination_done(std::vector<std::size_t>& idx, std::size_t n, bool& done) {
    const std::size_t k = idx.size();
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (idx[i] != i + n - k) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return;
        }
    }
    done = true;
}

} // namespace detail

// Convex hull by exhaustive hyperplane search over affinely independent
// d-subsets. Lower-dimensional inputs are restricted to their affine hull
// first; full-dimensional inputs keep their coordinates. Facets are sorted
// canonically and non-vertex points dropped, so output is deterministic.
inline Polytope hull(const PointConfig& input) {
    if (input.size() == 0) throw std::invalid_argument("hull of empty point set");

    // Drop exact duplicates, keeping the first label.
    std::vector<RVector> pts;
    std::vector<std::string> labels;
    {
        std::set<RVector, detail::LexLess> seen;
        for (std::size_t i = 0; i < input.size(); ++i) {
            if (seen.insert(input.points[i]).second) {
                pts.push_back(input.points[i]);
                labels.push_back(input.labels[i]);
            }
        }
    }

    const std::size_t r = affine_rank(pts);
    if (r == 0) throw std::domain_error("zero-dimensional point set");
    std::vector<RVector> work =
        (r == input.ambient_dim) ? pts : detail::restrict_to_affine_hull(pts, r);

    const std::size_t n = work.size();
    std::map<RVector, Facet, detail::LexLess> found; // keyed by primitive (normal|offset)
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    bool done = (n < r);
    while (!done) {
        // Hyperplane through the chosen r points, when they are affinely independent.
        std::vector<RVector> diffs;
        for (std::size_t i = 1; i < r; ++i) diffs.push_back(sub(work[idx[i]], work[idx[0]]));
        RMatrix d = r > 1 ? RMatrix::from_rows(diffs) : RMatrix(0, r);
        auto kernel = null_space(d.rows() ? d : RMatrix(1, r)); // 1x r zero matrix when r == 1
        if (kernel.size() == 1) {
            const RVector a = kernel[0];
            const Rational b = dot(a, work[idx[0]]);
            int lo = 0, hi = 0;
            for (const auto& p : work) {
                const int s = sign(dot(a, p) - b);
                if (s > 0) ++hi;
                if (s < 0) ++lo;
                if (lo && hi) break;
            }
            if (!(lo && hi)) {
                RVector key(a);
                Rational off(b);
                if (hi) { // flip so all points satisfy <=
                    key = scaled(key, Rational(-1));
                    off = -off;
                }
                key.push_back(off);
                key = primitive(key);
                RVector normal(key.begin(), key.end() - 1);
                found.emplace(key, Facet{normal, key.back()});
            }
        }
        detail::next_combination_done(idx, n, done);
    }

    std::vector<Facet> facets;
    for (auto& [k, f] : found) facets.push_back(f);

    // A config point is a vertex iff its active facet normals span full rank.
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<RVector> active;
        for (const auto& f : facets)
            if (f.slack(work[i]) == 0) active.push_back(f.normal);
        if (!active.empty() && rank(RMatrix::from_rows(active)) == r) keep.push_back(i);
    }
    if (keep.empty()) throw std::logic_error("hull found no vertices");

    Polytope p;
    p.dim = r;
    std::vector<RVector> vps;
    std::vector<std::string> vls;
    for (auto i : keep) {
        vps.push_back(work[i]);
        vls.push_back(labels[i]);
    }
    p.vertices = PointConfig::make(r, std::move(vps), std::move(vls));
    p.facets = std::move(facets);
    p.incidence.assign(p.facets.size(), std::vector<bool>(keep.size(), false));
    for (std::size_t f = 0; f < p.facets.size(); ++f)
        for (std::size_t v = 0; v < keep.size(); ++v)
            p.incidence[f][v] = (p.facets[f].slack(p.vertices.points[v]) == 0);
    return p;
}

// Polar with respect to the vertex centroid (always interior). Vertices and
// facets swap, incidence transposes; no hull recomputation is needed.
inline Polytope polar_dual(const Polytope& p) {
    const RVector c = vertex_centroid(p);
    Polytope q;
    q.dim = p.dim;
    std::vector<RVector> qverts;
    std::vector<std::string> qlabels;
    for (std::size_t f = 0; f < p.n_facets(); ++f) {
        const Rational b = p.facets[f].slack(c);
        if (b <= 0) throw std::logic_error("centroid not interior");
        qverts.push_back(scaled(p.facets[f].normal, Rational(1) / b));
        qlabels.push_back("F" + std::to_string(f));
    }
    q.vertices = PointConfig::make(p.dim, std::move(qverts), std::move(qlabels));
    for (std::size_t v = 0; v < p.n_vertices(); ++v)
        q.facets.push_back(Facet{sub(p.vertices.points[v], c), Rational(1)});
    q.incidence.assign(q.facets.size(), std::vector<bool>(q.n_vertices(), false));
    for (std::size_t f = 0; f < q.facets.size(); ++f)
        for (std::size_t v = 0; v < q.n_vertices(); ++v)
            q.incidence[f][v] = p.incidence[v][f];
    return q;
}

// Forgets trailing coordinates down to `keep` and re-hulls.
inline Polytope project(const Polytope& p, std::size_t keep) {
    if (keep >= p.dim) throw std::invalid_argument("project: keep must be below ambient dimension");
    std::vector<RVector> pts;
    for (const auto& v : p.vertices.points) pts.emplace_back(v.begin(), v.begin() + keep);
    return hull(PointConfig::make(keep, std::move(pts), p.vertices.labels));
}

enum class FaceClass { upper, lower, vertical };

enum class Preservation { strictly_preserved, preserved_not_strictly, not_preserved };

struct PreservationReport {
    std::vector<FaceClass> facet_class;      // by facet index
    std::vector<Preservation> facet_status;  // facet as a face of Q
    std::vector<Preservation> vertex_status; // by vertex index
};

// Face preservation under the projection that forgets the last coordinate:
// a face is strictly preserved iff its containing facets include an
// upper+lower pair, and preserved but not strictly iff they are all vertical.
// Reported at the two layers the incidence data carries, facets and vertices.
inline PreservationReport preserved_faces(const Polytope& q) {
    PreservationReport rep;
    for (const auto& f : q.facets) {
        const int s = sign(f.normal.back());
        rep.facet_class.push_back(s > 0 ? FaceClass::upper
                                        : (s < 0 ? FaceClass::lower : FaceClass::vertical));
    }
    for (std::size_t f = 0; f < q.n_facets(); ++f)
        rep.facet_status.push_back(rep.facet_class[f] == FaceClass::vertical
                                       ? Preservation::preserved_not_strictly
                                       : Preservation::not_preserved);
    for (std::size_t v = 0; v < q.n_vertices(); ++v) {
        bool up = false, lo = false, all_vertical = true, any = false;
        for (std::size_t f = 0; f < q.n_facets(); ++f) {
            if (!q.incidence[f][v]) continue;
            any = true;
            if (rep.facet_class[f] == FaceClass::upper) up = true;
            if (rep.facet_class[f] == FaceClass::lower) lo = true;
            if (rep.facet_class[f] != FaceClass::vertical) all_vertical = false;
        }
        if (up && lo)
            rep.vertex_status.push_back(Preservation::strictly_preserved);
        else if (any && all_vertical)
            rep.vertex_status.push_back(Preservation::preserved_not_strictly);
        else
            rep.vertex_status.push_back(Preservation::not_preserved);
    }
    return rep;
}

struct PyramidDecomposition {
    Polytope base;
    std::vector<std::string> apex_labels; // in peel order
    std::size_t k = 0;
};

// Peels apexes (vertices missing exactly one facet), lowest label first
// among simultaneous apexes, until none remain. Edges are not peeled
// further: the 1-dimensional base of a simplex is a segment, so simplices
// decompose with k = d-1.
inline PyramidDecomposition pyramid_decompose(const Polytope& p) {
    PyramidDecomposition out;
    out.base = p;
    while (out.base.dim >= 2) {
        std::size_t apex = out.base.n_vertices();
        for (std::size_t v = 0; v < out.base.n_vertices(); ++v) {
            std::size_t off = 0;
            for (std::size_t f = 0; f < out.base.n_facets(); ++f)
                if (!out.base.incidence[f][v]) ++off;
            if (off == 1 && (apex == out.base.n_vertices() ||
                             out.base.vertices.labels[v] < out.base.vertices.labels[apex]))
                apex = v;
        }
        if (apex == out.base.n_vertices()) break;
        out.apex_labels.push_back(out.base.vertices.labels[apex]);
        ++out.k;
        std::vector<RVector> pts;
        std::vector<std::string> lbls;
        for (std::size_t v = 0; v < out.base.n_vertices(); ++v) {
            if (v == apex) continue;
            pts.push_back(out.base.vertices.points[v]);
            lbls.push_back(out.base.vertices.labels[v]);
        }
        out.base = hull(PointConfig::make(out.base.dim, std::move(pts), std::move(lbls)));
    }
    return out;
}

// Cyclic vertex order of a 2-polytope, starting at vertex 0 and moving
// toward its lower-indexed neighbor first.
inline std::vector<std::size_t> polygon_cycle(const Polytope& p) {
    if (p.dim != 2) throw std::invalid_argument("polygon_cycle: not a 2-polytope");
    const std::size_t n = p.n_vertices();
    std::vector<std::vector<std::size_t>> nbr(n);
    for (std::size_t f = 0; f < p.n_facets(); ++f) {
        std::vector<std::size_t> on;
        for (std::size_t v = 0; v < n; ++v)
            if (p.incidence[f][v]) on.push_back(v);
        if (on.size() != 2) throw std::logic_error("polygon edge without two vertices");
        nbr[on[0]].push_back(on[1]);
        nbr[on[1]].push_back(on[0]);
    }
    std::vector<std::size_t> cycle{0};
    std::size_t prev = n, cur = 0;
    for (std::size_t step = 1; step < n; ++step) {
        const auto& cand = nbr[cur];
        if (cand.size() != 2) throw std::logic_error("polygon vertex without two edges");
        const std::size_t next =
            (prev == n) ? std::min(cand[0], cand[1]) : (cand[0] == prev ? cand[1] : cand[0]);
        cycle.push_back(next);
        prev = cur;
        cur = next;
    }
    return cycle;
}

// Structural sanity checks used across the test suites.
inline void validate(const Polytope& p) {
    const std::size_t n = p.n_vertices(), m = p.n_facets(), d = p.dim;
    if (p.vertices.ambient_dim != d) throw std::logic_error("ambient/dim mismatch");
    if (affine_rank(p.vertices.points) != d) throw std::logic_error("vertices do not span");
    for (std::size_t f = 0; f < m; ++f) {
        std::vector<RVector> on;
        for (std::size_t v = 0; v < n; ++v) {
            const Rational s = p.facets[f].slack(p.vertices.points[v]);
            if (s < 0) throw std::logic_error("vertex outside facet");
            if ((s == 0) != static_cast<bool>(p.incidence[f][v]))
                throw std::logic_error("incidence/zero-slack mismatch");
            if (s == 0) on.push_back(p.vertices.points[v]);
        }
        if (d >= 1 && affine_rank(on) != d - 1)
            throw std::logic_error("facet contact set has wrong affine rank");
    }
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<RVector> active;
        for (std::size_t f = 0; f < m; ++f)
            if (p.incidence[f][v]) active.push_back(p.facets[f].normal);
        if (active.empty() || rank(RMatrix::from_rows(active)) != d)
            throw std::logic_error("vertex active normals do not span");
    }
}

} // namespace fewxc
