#pragma once

// Exact builders for the polytope operations used throughout: simplices,
// pyramids, products, direct sums, joins, one-point suspensions, Lawrence
// extensions, cyclic polytopes and certified Desarguian hexagons.

#include "fewxc/comb_iso.hpp"
#include "fewxc/polytope.hpp"
#include "fewxc/projective.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace fewxc {

inline Polytope simplex(std::size_t d) {
    if (d == 0) throw std::invalid_argument("simplex: dimension must be positive");
    std::vector<RVector> pts(d + 1, RVector(d, Rational(0)));
    std::vector<std::string> lbl;
    for (std::size_t i = 0; i <= d; ++i) {
        if (i > 0) pts[i][i - 1] = 1;
        lbl.push_back("v" + std::to_string(i));
    }
    Polytope p;
    p.dim = d;
    p.vertices = PointConfig::make(d, std::move(pts), std::move(lbl));
    // Facet i misses exactly vertex i.
    {
        RVector a(d, Rational(1));
        p.facets.push_back(Facet{a, Rational(1)}); // misses v0
    }
    for (std::size_t i = 1; i <= d; ++i) {
        RVector a(d, Rational(0));
        a[i - 1] = -1;
        p.facets.push_back(Facet{a, Rational(0)});
    }
    p.incidence.assign(d + 1, std::vector<bool>(d + 1, true));
    for (std::size_t i = 0; i <= d; ++i) p.incidence[i][i] = false;
    return p;
}

// One pyramid step: base at height 0, apex above the vertex centroid.
inline Polytope pyramid_step(const Polytope& p, const std::string& apex_label) {
    const std::size_t d = p.dim;
    const RVector c = vertex_centroid(p);
    Polytope q;
    q.dim = d + 1;
    std::vector<RVector> pts;
    std::vector<std::string> lbl = p.vertices.labels;
    for (const auto& v : p.vertices.points) {
        RVector w = v;
        w.push_back(0);
        pts.push_back(std::move(w));
    }
    RVector apex = c;
    apex.push_back(1);
    pts.push_back(std::move(apex));
    lbl.push_back(apex_label);
    q.vertices = PointConfig::make(d + 1, std::move(pts), std::move(lbl));
    for (const auto& f : p.facets) {
        RVector a = f.normal;
        a.push_back(f.offset - dot(f.normal, c));
        q.facets.push_back(Facet{std::move(a), f.offset});
    }
    RVector base(d + 1, Rational(0));
    base[d] = -1;
    q.facets.push_back(Facet{std::move(base), Rational(0)});
    const std::size_t n = p.n_vertices(), m = p.n_facets();
    q.incidence.assign(m + 1, std::vector<bool>(n + 1, false));
    for (std::size_t f = 0; f < m; ++f) {
        for (std::size_t v = 0; v < n; ++v) q.incidence[f][v] = p.incidence[f][v];
        q.incidence[f][n] = true; // apex sits on every lifted facet
    }
    for (std::size_t v = 0; v < n; ++v) q.incidence[m][v] = true;
    return q;
}

inline Polytope pyramid(const Polytope& p, std::size_t k) {
    Polytope q = p;
    std::size_t next = 1;
    for (std::size_t i = 0; i < k; ++i) {
        std::string label;
        do {
            label = "apex" + std::to_string(next++);
        } while (std::find(q.vertices.labels.begin(), q.vertices.labels.end(), label) !=
                 q.vertices.labels.end());
        q = pyramid_step(q, label);
    }
    return q;
}

inline Polytope product(const Polytope& p, const Polytope& q) {
    Polytope r;
    r.dim = p.dim + q.dim;
    std::vector<RVector> pts;
    std::vector<std::string> lbl;
    for (std::size_t i = 0; i < p.n_vertices(); ++i)
        for (std::size_t j = 0; j < q.n_vertices(); ++j) {
            RVector w = p.vertices.points[i];
            w.insert(w.end(), q.vertices.points[j].begin(), q.vertices.points[j].end());
            pts.push_back(std::move(w));
            lbl.push_back("(" + p.vertices.labels[i] + "," + q.vertices.labels[j] + ")");
        }
    r.vertices = PointConfig::make(r.dim, std::move(pts), std::move(lbl));
    for (const auto& f : p.facets) {
        RVector a = f.normal;
        a.resize(r.dim, Rational(0));
        r.facets.push_back(Facet{std::move(a), f.offset});
    }
    for (const auto& f : q.facets) {
        RVector a(p.dim, Rational(0));
        a.insert(a.end(), f.normal.begin(), f.normal.end());
        r.facets.push_back(Facet{std::move(a), f.offset});
    }
    const std::size_t np = p.n_vertices(), nq = q.n_vertices();
    r.incidence.assign(r.facets.size(), std::vector<bool>(np * nq, false));
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < nq; ++j) {
            for (std::size_t f = 0; f < p.n_facets(); ++f)
                r.incidence[f][i * nq + j] = p.incidence[f][i];
            for (std::size_t f = 0; f < q.n_facets(); ++f)
                r.incidence[p.n_facets() + f][i * nq + j] = q.incidence[f][j];
        }
    return r;
}

namespace detail {

// Facets rewritten as a*x <= 1 around the vertex centroid.
inline std::vector<RVector> centered_unit_facets(const Polytope& p, const RVector& c) {
    std::vector<RVector> out;
    for (const auto& f : p.facets) {
        const Rational b = f.slack(c);
        if (b <= 0) throw std::logic_error("centroid not interior");
        out.push_back(scaled(f.normal, Rational(1) / b));
    }
    return out;
}

} // namespace detail

inline Polytope direct_sum(const Polytope& p, const Polytope& q) {
    const RVector cp = vertex_centroid(p), cq = vertex_centroid(q);
    const auto fp = detail::centered_unit_facets(p, cp);
    const auto fq = detail::centered_unit_facets(q, cq);
    Polytope r;
    r.dim = p.dim + q.dim;
    std::vector<RVector> pts;
    std::vector<std::string> lbl;
    for (std::size_t i = 0; i < p.n_vertices(); ++i) {
        RVector w = sub(p.vertices.points[i], cp);
        w.resize(r.dim, Rational(0));
        pts.push_back(std::move(w));
        lbl.push_back("L:" + p.vertices.labels[i]);
    }
    for (std::size_t j = 0; j < q.n_vertices(); ++j) {
        RVector w(p.dim, Rational(0));
        const RVector t = sub(q.vertices.points[j], cq);
        w.insert(w.end(), t.begin(), t.end());
        pts.push_back(std::move(w));
        lbl.push_back("R:" + q.vertices.labels[j]);
    }
    r.vertices = PointConfig::make(r.dim, std::move(pts), std::move(lbl));
    for (const auto& a : fp)
        for (const auto& b : fq) {
            RVector w = a;
            w.insert(w.end(), b.begin(), b.end());
            r.facets.push_back(Facet{std::move(w), Rational(1)});
        }
    const std::size_t np = p.n_vertices(), nq = q.n_vertices();
    r.incidence.assign(r.facets.size(), std::vector<bool>(np + nq, false));
    for (std::size_t i = 0; i < fp.size(); ++i)
        for (std::size_t j = 0; j < fq.size(); ++j) {
            auto& row = r.incidence[i * fq.size() + j];
            for (std::size_t v = 0; v < np; ++v) row[v] = p.incidence[i][v];
            for (std::size_t v = 0; v < nq; ++v) row[np + v] = q.incidence[j][v];
        }
    return r;
}

// Join: P at (x, 0, 0), Q at (0, y, 1) in skew affine subspaces.
inline Polytope join(const Polytope& p, const Polytope& q) {
    Polytope r;
    r.dim = p.dim + q.dim + 1;
    std::vector<RVector> pts;
    std::vector<std::string> lbl;
    for (std::size_t i = 0; i < p.n_vertices(); ++i) {
        RVector w = p.vertices.points[i];
        w.resize(r.dim, Rational(0));
        pts.push_back(std::move(w));
        lbl.push_back("L:" + p.vertices.labels[i]);
    }
    for (std::size_t j = 0; j < q.n_vertices(); ++j) {
        RVector w(p.dim, Rational(0));
        w.insert(w.end(), q.vertices.points[j].begin(), q.vertices.points[j].end());
        w.push_back(1);
        pts.push_back(std::move(w));
        lbl.push_back("R:" + q.vertices.labels[j]);
    }
    r.vertices = PointConfig::make(r.dim, std::move(pts), std::move(lbl));
    for (const auto& f : p.facets) { // F * Q
        RVector a = f.normal;
        a.resize(r.dim - 1, Rational(0));
        a.push_back(f.offset);
        r.facets.push_back(Facet{std::move(a), f.offset});
    }
    for (const auto& f : q.facets) { // P * G
        RVector a(p.dim, Rational(0));
        a.insert(a.end(), f.normal.begin(), f.normal.end());
        a.push_back(-f.offset);
        r.facets.push_back(Facet{std::move(a), Rational(0)});
    }
    const std::size_t np = p.n_vertices(), nq = q.n_vertices();
    r.incidence.assign(r.facets.size(), std::vector<bool>(np + nq, false));
    for (std::size_t f = 0; f < p.n_facets(); ++f) {
        for (std::size_t v = 0; v < np; ++v) r.incidence[f][v] = p.incidence[f][v];
        for (std::size_t v = 0; v < nq; ++v) r.incidence[f][np + v] = true;
    }
    for (std::size_t f = 0; f < q.n_facets(); ++f) {
        auto& row = r.incidence[p.n_facets() + f];
        for (std::size_t v = 0; v < np; ++v) row[v] = true;
        for (std::size_t v = 0; v < nq; ++v) row[np + v] = q.incidence[f][v];
    }
    return r;
}

// A lift point for suspensions and Lawrence extensions: either an ordinary
// point of the base's affine hull or a direction (projective point). The
// direction form is realized through a far-away surrogate whose hull
// combinatorics are confirmed stable under doubling the distance.
struct LiftPoint {
    RVector coords;
    bool at_infinity = false;

    static LiftPoint finite(RVector v) { return {std::move(v), false}; }
    static LiftPoint direction(RVector v) { return {std::move(v), true}; }
};

namespace detail {

inline void check_in_affine_hull(const Polytope& p, const LiftPoint& lp) {
    std::vector<RVector> pts = p.vertices.points;
    if (lp.at_infinity) {
        if (is_zero(lp.coords)) throw std::invalid_argument("zero direction");
        pts.push_back(add(p.vertices.points[0], lp.coords));
    } else {
        pts.push_back(lp.coords);
    }
    if (affine_rank(pts) != p.dim)
        throw std::domain_error("lift point outside the affine hull");
}

// Hull of the base's vertices plus two lifted copies of p, re-checked at a
// doubled surrogate distance when p is a direction.
inline Polytope lifted_hull(const Polytope& p, const LiftPoint& lp, const Rational& h1,
                            const Rational& h2) {
    auto build = [&](const RVector& pt) {
        std::vector<RVector> pts;
        std::vector<std::string> lbl = p.vertices.labels;
        for (const auto& v : p.vertices.points) {
            RVector w = v;
            w.push_back(0);
            pts.push_back(std::move(w));
        }
        RVector a = pt, b = pt;
        a.push_back(h1);
        b.push_back(h2);
        pts.push_back(std::move(a));
        pts.push_back(std::move(b));
        lbl.push_back("q+");
        lbl.push_back("q-");
        return hull(PointConfig::make(p.dim + 1, std::move(pts), std::move(lbl)));
    };
    if (!lp.at_infinity) return build(lp.coords);
    const RVector c = vertex_centroid(p);
    Rational t(1);
    for (int round = 0; round < 64; ++round) {
        const Polytope a = build(add(c, scaled(lp.coords, t)));
        const Polytope b = build(add(c, scaled(lp.coords, t * 2)));
        if (a.n_vertices() == b.n_vertices() && a.n_facets() == b.n_facets() &&
            comb_iso(a, b))
            return b;
        t *= 2;
    }
    throw std::logic_error("surrogate for projective lift point did not stabilize");
}

} // namespace detail

inline Polytope one_point_suspension(const Polytope& p, const LiftPoint& lp) {
    detail::check_in_affine_hull(p, lp);
    return detail::lifted_hull(p, lp, Rational(1), Rational(-1));
}

inline Polytope one_point_suspension(const Polytope& p, const RVector& pt) {
    return one_point_suspension(p, LiftPoint::finite(pt));
}

inline Polytope lawrence_extension(const Polytope& p, const LiftPoint& lp) {
    detail::check_in_affine_hull(p, lp);
    if (!lp.at_infinity && p.contains(lp.coords))
        throw std::domain_error("absorbed lift point");
    return detail::lifted_hull(p, lp, Rational(1), Rational(2));
}

inline Polytope lawrence_extension(const Polytope& p, const RVector& pt) {
    return lawrence_extension(p, LiftPoint::finite(pt));
}

// Moment curve hull; simplicial and neighborly for distinct parameters.
inline Polytope cyclic(std::size_t d, std::size_t n, const std::vector<Rational>& params) {
    if (d < 2) throw std::invalid_argument("cyclic: dimension must be at least 2");
    if (n < d + 1) throw std::invalid_argument("cyclic: need at least d+1 points");
    if (params.size() != n) throw std::invalid_argument("cyclic: need n parameters");
    for (std::size_t i = 1; i < n; ++i)
        if (!(params[i - 1] < params[i]))
            throw std::invalid_argument("cyclic: parameters must be strictly increasing");
    std::vector<RVector> pts;
    for (const auto& t : params) {
        RVector w;
        Rational v(1);
        for (std::size_t j = 0; j < d; ++j) {
            v *= t;
            w.push_back(v);
        }
        pts.push_back(std::move(w));
    }
    return hull(PointConfig::make(d, std::move(pts)));
}

inline Polytope cyclic(std::size_t d, std::size_t n) {
    std::vector<Rational> params;
    for (std::size_t i = 1; i <= n; ++i) params.emplace_back(static_cast<long>(i));
    return cyclic(d, n, params);
}

// Exact regular-hexagon substitute (2,0),(1,2),(-1,2),(-2,0),(-1,-2),(1,-2):
// opposite edges parallel, so the Desargues point sits at infinity.
inline Polytope regular_hexagon() {
    std::vector<RVector> pts = {
        {Rational(2), Rational(0)},  {Rational(1), Rational(2)},   {Rational(-1), Rational(2)},
        {Rational(-2), Rational(0)}, {Rational(-1), Rational(-2)}, {Rational(1), Rational(-2)}};
    return hull(PointConfig::make(2, std::move(pts)));
}

struct DesarguianHexagon {
    Polytope hexagon;
    HomPoint witness;
    std::vector<std::string> line_pair_labels[3]; // the two vertex labels per line
};

// Hexagon built from three concurrent lines (two chosen points per line),
// certified by construction: the induced cyclic labeling must place the
// line pairs in positions {0,1}, {2,5}, {3,4}. For a witness at infinity the
// `rays` entries are anchor points of three parallel lines with direction c.
inline DesarguianHexagon desarguian_hexagon(const HomPoint& c,
                                            const std::vector<RVector>& rays,
                                            const std::vector<Rational>& picks) {
    if (rays.size() != 3 || picks.size() != 6)
        throw std::invalid_argument("desarguian_hexagon: need 3 rays and 6 picks");
    std::vector<RVector> pts;
    std::vector<int> line_of;
    for (std::size_t j = 0; j < 3; ++j) {
        RVector base, dir;
        if (!c.at_infinity()) {
            base = {c.x / c.w, c.y / c.w};
            dir = rays[j];
        } else {
            base = rays[j];
            dir = {c.x, c.y};
        }
        if (is_zero(dir)) throw std::invalid_argument("zero ray direction");
        for (int s = 0; s < 2; ++s) {
            pts.push_back(add(base, scaled(dir, picks[2 * j + s])));
            line_of.push_back(static_cast<int>(j));
        }
    }
    Polytope h;
    try {
        h = hull(PointConfig::make(2, pts));
    } catch (const std::domain_error&) {
        throw std::domain_error("not a hexagon with the required labeling");
    }
    if (h.dim != 2 || h.n_vertices() != 6)
        throw std::domain_error("not a hexagon with the required labeling");

    // Recover which construction line each hull vertex came from.
    std::vector<int> vline(6, -1);
    for (std::size_t v = 0; v < 6; ++v)
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (h.vertices.points[v] == pts[i]) vline[v] = line_of[i];

    const auto cyc = polygon_cycle(h);
    bool ok = false;
    for (int rot = 0; rot < 6 && !ok; ++rot)
        for (int refl = 0; refl < 2 && !ok; ++refl) {
            auto at = [&](int i) {
                const int j = refl ? (rot + 6 - i) % 6 : (rot + i) % 6;
                return vline[cyc[j]];
            };
            ok = at(0) == at(1) && at(2) == at(5) && at(3) == at(4) && at(0) != at(2) &&
                 at(0) != at(3) && at(2) != at(3);
        }
    if (!ok) throw std::domain_error("not a hexagon with the required labeling");

    DesarguianHexagon out;
    out.hexagon = h;
    out.witness = c.normalized();
    for (std::size_t v = 0; v < 6; ++v)
        out.line_pair_labels[vline[v]].push_back(h.vertices.labels[v]);
    return out;
}

struct FamilySpec {
    enum class Kind { simplex, kfold_pyramid_product, kfold_pyramid_sum, join_family };
    Kind kind = Kind::simplex;
    std::size_t k = 0, n = 1, m = 1;
};

inline Polytope build_family(const FamilySpec& s) {
    switch (s.kind) {
        case FamilySpec::Kind::simplex:
            return simplex(s.n);
        case FamilySpec::Kind::kfold_pyramid_product:
            return pyramid(product(simplex(s.n), simplex(s.m)), s.k);
        case FamilySpec::Kind::kfold_pyramid_sum:
            return pyramid(direct_sum(simplex(s.n), simplex(s.m)), s.k);
        case FamilySpec::Kind::join_family:
            return pyramid(join(product(simplex(1), simplex(2)),
                                direct_sum(simplex(s.n), simplex(s.m))),
                           s.k);
    }
    throw std::invalid_argument("build_family: invalid spec");
}

} // namespace fewxc
