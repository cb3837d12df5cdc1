#pragma once

// Gale transforms and diagrams: the kernel construction, the polytopality
// criterion, face recovery, and the planar contracted-diagram enumeration
// of d-polytopes with d+3 vertices that drives the sporadic search.

#include "fewxc/comb_iso.hpp"
#include "fewxc/lp.hpp"
#include "fewxc/polytope.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fewxc {

struct GaleDiagram {
    std::size_t corank = 0;
    std::vector<RVector> vectors; // one per source point, length corank
    std::vector<std::string> labels;
};

// Rows of a kernel basis of the homogenized point matrix.
inline GaleDiagram gale_transform(const PointConfig& pts) {
    const std::size_t n = pts.size();
    const std::size_t r = affine_rank(pts.points);
    if (n < r + 2) throw std::domain_error("no dependencies");
    RMatrix a(pts.ambient_dim + 1, n);
    for (std::size_t j = 0; j < n; ++j) {
        a(0, j) = 1;
        for (std::size_t i = 0; i < pts.ambient_dim; ++i) a(i + 1, j) = pts.points[j][i];
    }
    const auto kernel = null_space(a);
    GaleDiagram g;
    g.corank = n - r - 1;
    if (kernel.size() != g.corank) throw std::logic_error("kernel dimension mismatch");
    g.labels = pts.labels;
    g.vectors.assign(n, RVector(g.corank, Rational(0)));
    for (std::size_t k = 0; k < g.corank; ++k)
        for (std::size_t i = 0; i < n; ++i) g.vectors[i][k] = kernel[k][i];
    return g;
}

// Grünbaum's criterion: a configuration is the Gale diagram of a polytope
// with all source points as vertices iff every open halfspace bounded by a
// linear hyperplane holds at least 2 vectors. The minimum over halfspaces is
// attained at hyperplanes spanned by diagram vectors, so those suffice.
inline bool is_polytopal(const GaleDiagram& g) {
    const std::size_t c = g.corank;
    if (c == 0) return true; // simplex: nothing to separate
    std::vector<RVector> nz;
    for (const auto& v : g.vectors)
        if (!is_zero(v)) nz.push_back(v);
    if (nz.empty() || rank(RMatrix::from_rows(nz)) < c) return false;

    std::vector<RVector> normals;
    if (c == 1) {
        normals.push_back({Rational(1)});
    } else {
        std::vector<std::size_t> idx(c - 1);
        for (std::size_t i = 0; i < c - 1; ++i) idx[i] = i;
        bool done = nz.size() < c - 1;
        while (!done) {
            std::vector<RVector> rows;
            for (auto i : idx) rows.push_back(nz[i]);
            if (rank(RMatrix::from_rows(rows)) == c - 1) {
                auto kernel = null_space(RMatrix::from_rows(rows));
                if (kernel.size() == 1) normals.push_back(primitive_signed(kernel[0]));
            }
            detail::next_combination_done(idx, nz.size(), done);
        }
        std::sort(normals.begin(), normals.end(), detail::LexLess{});
        normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
    }
    for (const auto& w : normals) {
        std::size_t pos = 0, neg = 0;
        for (const auto& v : nz) {
            const int s = sign(dot(w, v));
            if (s > 0) ++pos;
            if (s < 0) ++neg;
        }
        if (pos < 2 || neg < 2) return false;
    }
    return true;
}

// Facet-level incidence recovered from the diagram: a vertex set S supports
// a face iff the origin lies in the relative interior of the hull of the
// complement's vectors; facets are the maximal proper faces. Rows are
// sorted by their vertex-set bitmask.
inline std::vector<std::vector<bool>> faces_from_gale(const GaleDiagram& g) {
    if (!is_polytopal(g)) throw std::domain_error("diagram is not polytopal");
    const std::size_t n = g.vectors.size();
    if (n > 20) throw std::invalid_argument("faces_from_gale: too many points");
    std::vector<std::uint32_t> faces;
    for (std::uint32_t comp = 1; comp < (1u << n); ++comp) {
        std::vector<RVector> sel;
        for (std::size_t i = 0; i < n; ++i)
            if (comp >> i & 1) sel.push_back(g.vectors[i]);
        if (origin_in_relint(sel)) faces.push_back(~comp & ((1u << n) - 1));
    }
    std::vector<std::uint32_t> facets;
    for (auto f : faces) {
        bool maximal = true;
        for (auto h : faces)
            if (h != f && (f & h) == f) {
                maximal = false;
                break;
            }
        if (maximal) facets.push_back(f);
    }
    std::sort(facets.begin(), facets.end());
    std::vector<std::vector<bool>> rows;
    for (auto f : facets) {
        std::vector<bool> row(n, false);
        for (std::size_t i = 0; i < n; ++i) row[i] = (f >> i & 1);
        rows.push_back(std::move(row));
    }
    return rows;
}

// Contracted planar diagram: tau distinct lines through the origin give
// 2*tau ray slots in circular order with slot i opposite slot i+tau; each
// slot carries a multiplicity and each line is occupied on at least one
// side. Zero vectors are recorded separately (they are pyramid apexes).
struct ContractedDiagram {
    std::vector<std::size_t> word; // multiplicities per ray slot, length 2*tau
    std::size_t zero_multiplicity = 0;
};

struct EnumeratedType {
    Polytope polytope;
    ContractedDiagram diagram;
};

namespace detail {

// Deterministic exact realization of the ray slots: slot i (i < tau) is the
// primitive vector (1, i), slot i+tau its negative. Angular order around
// the circle then matches slot order, with antipodality i <-> i+tau.
inline RVector slot_direction(std::size_t slot, std::size_t tau) {
    if (slot < tau) return {Rational(1), Rational(static_cast<long>(slot))};
    return {Rational(-1), Rational(-static_cast<long>(slot - tau))};
}

inline std::vector<RVector> diagram_vectors(const ContractedDiagram& cd) {
    const std::size_t tau = cd.word.size() / 2;
    std::vector<RVector> vs;
    for (std::size_t slot = 0; slot < cd.word.size(); ++slot)
        for (std::size_t rep = 0; rep < cd.word[slot]; ++rep)
            vs.push_back(slot_direction(slot, tau));
    for (std::size_t rep = 0; rep < cd.zero_multiplicity; ++rep)
        vs.push_back({Rational(0), Rational(0)});
    return vs;
}

inline bool word_is_canonical(const std::vector<std::size_t>& w) {
    const std::size_t len = w.size();
    std::vector<std::size_t> t(len);
    for (std::size_t shift = 0; shift < len; ++shift) {
        for (int refl = 0; refl < 2; ++refl) {
            for (std::size_t i = 0; i < len; ++i)
                t[i] = refl ? w[(shift + len - i) % len] : w[(shift + i) % len];
            if (t < w) return false;
        }
    }
    return true;
}

// Point configuration whose Gale diagram has the given vectors (which must
// sum to zero): complete the all-ones vector to a basis of the orthogonal
// complement of the diagram's column span.
inline PointConfig realize_from_gale(const std::vector<RVector>& vectors) {
    const std::size_t n = vectors.size(), c = vectors[0].size();
    RMatrix gt(c, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < c; ++k) gt(k, i) = vectors[i][k];
    auto basis = null_space(gt); // dimension n - c
    if (basis.size() != n - c) throw std::logic_error("diagram does not have full rank");
    RMatrix bm(n, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) bm(i, j) = basis[j][i];
    const auto alpha = solve(bm, RVector(n, Rational(1)));
    if (!alpha) throw std::logic_error("all-ones vector not orthogonal to diagram");
    std::size_t drop = basis.size();
    for (std::size_t j = 0; j < basis.size(); ++j)
        if ((*alpha)[j] != 0) {
            drop = j;
            break;
        }
    if (drop == basis.size()) throw std::logic_error("cannot exchange all-ones into basis");
    std::vector<RVector> pts(n);
    const std::size_t d = n - c - 1;
    for (std::size_t i = 0; i < n; ++i) pts[i] = RVector(d, Rational(0));
    std::size_t coord = 0;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        if (j == drop) continue;
        for (std::size_t i = 0; i < n; ++i) pts[i][coord] = basis[j][i];
        ++coord;
    }
    return PointConfig::make(d, std::move(pts));
}

inline Polytope realize_diagram(const ContractedDiagram& cd) {
    auto vs = diagram_vectors(cd);
    std::vector<RVector> nz;
    for (const auto& v : vs)
        if (!is_zero(v)) nz.push_back(v);
    const auto lambda = positive_combination_zero(nz);
    if (!lambda) throw std::logic_error("polytopal diagram has no positive dependence");
    std::size_t j = 0;
    for (auto& v : vs)
        if (!is_zero(v)) v = scaled(v, (*lambda)[j++]);
    auto pts = realize_from_gale(vs);
    Polytope p = hull(pts);
    if (p.n_vertices() != vs.size())
        throw std::logic_error("realized diagram lost vertices");
    return p;
}

struct TypeKey {
    std::size_t facets;
    std::vector<std::size_t> facet_sizes;
    std::vector<std::size_t> vertex_degrees;
    auto operator<=>(const TypeKey&) const = default;
};

inline TypeKey type_key(const Polytope& p) {
    TypeKey k;
    k.facets = p.n_facets();
    for (const auto& row : p.incidence)
        k.facet_sizes.push_back(std::count(row.begin(), row.end(), true));
    std::sort(k.facet_sizes.begin(), k.facet_sizes.end());
    for (std::size_t v = 0; v < p.n_vertices(); ++v) {
        std::size_t deg = 0;
        for (std::size_t f = 0; f < p.n_facets(); ++f)
            if (p.incidence[f][v]) ++deg;
        k.vertex_degrees.push_back(deg);
    }
    std::sort(k.vertex_degrees.begin(), k.vertex_degrees.end());
    return k;
}

} // namespace detail

// All combinatorial types of d-polytopes with d+3 vertices, enumerated
// through contracted planar diagrams up to rotation, reflection and the
// antipodal map, filtered by polytopality, realized exactly, and finally
// deduplicated by combinatorial isomorphism.
inline std::vector<EnumeratedType> enumerate_d_plus_3(std::size_t d) {
    if (d < 2 || d > 8) throw std::invalid_argument("enumerate_d_plus_3: guard is 2 <= d <= 8");
    const std::size_t n = d + 3;
    std::vector<EnumeratedType> out;
    std::map<detail::TypeKey, std::vector<std::size_t>> buckets;

    for (std::size_t z = 0; z + 4 <= n; ++z) {
        const std::size_t s = n - z;
        for (std::size_t tau = 2; tau <= s; ++tau) {
            // Split s across tau diameters (each >= 1), then across sides.
            std::vector<std::size_t> word(2 * tau, 0);
            auto consider = [&]() {
                if (!detail::word_is_canonical(word)) return;
                ContractedDiagram cd{word, z};
                GaleDiagram g;
                g.corank = 2;
                g.vectors = detail::diagram_vectors(cd);
                for (std::size_t i = 0; i < g.vectors.size(); ++i)
                    g.labels.push_back("p" + std::to_string(i));
                if (!is_polytopal(g)) return;
                Polytope p = detail::realize_diagram(cd);
                const auto key = detail::type_key(p);
                for (auto idx : buckets[key])
                    if (comb_iso(out[idx].polytope, p)) return;
                buckets[key].push_back(out.size());
                out.push_back(EnumeratedType{std::move(p), std::move(cd)});
            };
            auto split = [&](auto&& self, std::size_t diam, std::size_t rem) -> void {
                if (diam == tau) {
                    if (rem == 0) consider();
                    return;
                }
                const std::size_t slots_left = tau - diam - 1;
                for (std::size_t t = 1; t + slots_left <= rem; ++t) {
                    for (std::size_t a = 0; a <= t; ++a) {
                        word[diam] = a;
                        word[diam + tau] = t - a;
                        self(self, diam + 1, rem - t);
                    }
                }
                word[diam] = word[diam + tau] = 0;
            };
            split(split, 0, s);
        }
    }
    return out;
}

namespace detail {

inline std::vector<std::pair<std::size_t, Polytope>> sporadic_up_to(std::size_t dmax) {
    std::vector<std::pair<std::size_t, Polytope>> out;
    for (std::size_t d = 3; d <= dmax; ++d) {
        for (auto& t : enumerate_d_plus_3(d)) {
            if (t.polytope.n_facets() != d + 4) continue;
            Polytope polar = polar_dual(t.polytope);
            if (pyramid_decompose(polar).k != 0) continue;
            out.emplace_back(d, std::move(polar));
        }
    }
    return out;
}

} // namespace detail

// The non-pyramidal d-polytopes with d+4 vertices and exactly d+3 facets:
// polars of the enumerated (d+3)-vertex types with d+4 facets, pyramids
// discarded. The dimension guard of 7 suffices; see the bounds module's
// pyramid dimension guard.
inline std::vector<std::pair<std::size_t, Polytope>> sporadic_d4_vertices() {
    return detail::sporadic_up_to(7);
}

} // namespace fewxc
