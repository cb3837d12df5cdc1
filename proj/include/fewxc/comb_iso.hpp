#pragma once

// Combinatorial equivalence of polytopes at the vertex-facet level:
// backtracking over vertex bijections with color refinement and pairwise
// pruning, then verification that facet vertex-sets map onto facet
// vertex-sets.

#include "fewxc/polytope.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace fewxc {

struct CombIso {
    std::vector<std::size_t> vertex_map; // P vertex index -> Q vertex index
    std::vector<std::size_t> facet_map;  // P facet index -> Q facet index
};

namespace detail {

struct IsoData {
    std::size_t n = 0, m = 0;
    std::vector<std::uint64_t> facet_masks;          // per facet, bitset over vertices
    std::vector<std::vector<std::size_t>> vfacets;   // per vertex, containing facets
    std::vector<std::vector<int>> common;            // common facet counts per vertex pair
};

inline IsoData iso_data(const Polytope& p) {
    IsoData d;
    d.n = p.n_vertices();
    d.m = p.n_facets();
    if (d.n > 64) throw std::invalid_argument("comb_iso supports at most 64 vertices");
    d.facet_masks.assign(d.m, 0);
    d.vfacets.assign(d.n, {});
    for (std::size_t f = 0; f < d.m; ++f)
        for (std::size_t v = 0; v < d.n; ++v)
            if (p.incidence[f][v]) {
                d.facet_masks[f] |= (std::uint64_t{1} << v);
                d.vfacets[v].push_back(f);
            }
    d.common.assign(d.n, std::vector<int>(d.n, 0));
    for (std::size_t f = 0; f < d.m; ++f)
        for (std::size_t a = 0; a < d.n; ++a)
            if (p.incidence[f][a])
                for (std::size_t b = 0; b < d.n; ++b)
                    if (p.incidence[f][b]) ++d.common[a][b];
    return d;
}

// Iterated color refinement over the vertex/facet bipartite incidence;
// colors are canonical across both inputs so classes can be compared.
inline std::pair<std::vector<int>, std::vector<int>> refine_colors(const IsoData& p,
                                                                   const IsoData& q) {
    std::vector<int> vp(p.n, 0), vq(q.n, 0), fp(p.m, 0), fq(q.m, 0);
    for (int round = 0; round < 4; ++round) {
        std::map<std::vector<int>, int> canon;
        auto facet_sig = [&](const IsoData& d, const std::vector<int>& vc, std::size_t f,
                             int old) {
            std::vector<int> sig{old};
            for (std::size_t v = 0; v < d.n; ++v)
                if (d.facet_masks[f] >> v & 1) sig.push_back(vc[v]);
            std::sort(sig.begin() + 1, sig.end());
            return sig;
        };
        for (std::size_t f = 0; f < p.m; ++f) {
            auto s = facet_sig(p, vp, f, fp[f]);
            fp[f] = canon.emplace(s, static_cast<int>(canon.size())).first->second;
        }
        for (std::size_t f = 0; f < q.m; ++f) {
            auto s = facet_sig(q, vq, f, fq[f]);
            fq[f] = canon.emplace(s, static_cast<int>(canon.size())).first->second;
        }
        canon.clear();
        auto vertex_sig = [&](const IsoData& d, const std::vector<int>& fc, std::size_t v,
                              int old) {
            std::vector<int> sig{old};
            for (auto f : d.vfacets[v]) sig.push_back(fc[f]);
            std::sort(sig.begin() + 1, sig.end());
            return sig;
        };
        for (std::size_t v = 0; v < p.n; ++v) {
            auto s = vertex_sig(p, fp, v, vp[v]);
            vp[v] = canon.emplace(s, static_cast<int>(canon.size())).first->second;
        }
        for (std::size_t v = 0; v < q.n; ++v) {
            auto s = vertex_sig(q, fq, v, vq[v]);
            vq[v] = canon.emplace(s, static_cast<int>(canon.size())).first->second;
        }
    }
    return {vp, vq};
}

inline bool extend(const IsoData& p, const IsoData& q, const std::vector<int>& vp,
                   const std::vector<int>& vq, std::vector<std::size_t>& vmap,
                   std::vector<bool>& used, std::size_t level) {
    if (level == p.n) {
        // Mapped facet vertex-sets must be exactly Q's facet vertex-sets.
        std::vector<std::uint64_t> mapped;
        for (auto mask : p.facet_masks) {
            std::uint64_t im = 0;
            for (std::size_t v = 0; v < p.n; ++v)
                if (mask >> v & 1) im |= (std::uint64_t{1} << vmap[v]);
            mapped.push_back(im);
        }
        std::vector<std::uint64_t> target = q.facet_masks;
        std::sort(mapped.begin(), mapped.end());
        std::sort(target.begin(), target.end());
        return mapped == target;
    }
    for (std::size_t w = 0; w < q.n; ++w) {
        if (used[w] || vq[w] != vp[level]) continue;
        bool ok = true;
        for (std::size_t v = 0; v < level && ok; ++v)
            ok = (p.common[level][v] == q.common[w][vmap[v]]);
        if (!ok) continue;
        vmap[level] = w;
        used[w] = true;
        if (extend(p, q, vp, vq, vmap, used, level + 1)) return true;
        used[w] = false;
    }
    return false;
}

} // namespace detail

// A vertex-and-facet bijection making the incidence matrices equal, if any.
inline std::optional<CombIso> comb_iso(const Polytope& p, const Polytope& q) {
    if (p.n_vertices() != q.n_vertices() || p.n_facets() != q.n_facets()) return std::nullopt;
    const auto dp = detail::iso_data(p);
    const auto dq = detail::iso_data(q);
    auto [vp, vq] = detail::refine_colors(dp, dq);
    {
        auto a = vp, b = vq;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }
    std::vector<std::size_t> vmap(dp.n);
    std::vector<bool> used(dq.n, false);
    if (!detail::extend(dp, dq, vp, vq, vmap, used, 0)) return std::nullopt;

    CombIso iso;
    iso.vertex_map = vmap;
    std::map<std::uint64_t, std::vector<std::size_t>> qmask_to_f;
    for (std::size_t f = 0; f < dq.m; ++f) qmask_to_f[dq.facet_masks[f]].push_back(f);
    iso.facet_map.assign(dp.m, 0);
    std::map<std::uint64_t, std::size_t> next_use;
    for (std::size_t f = 0; f < dp.m; ++f) {
        std::uint64_t im = 0;
        for (std::size_t v = 0; v < dp.n; ++v)
            if (dp.facet_masks[f] >> v & 1) im |= (std::uint64_t{1} << vmap[v]);
        iso.facet_map[f] = qmask_to_f[im][next_use[im]++];
    }
    return iso;
}

} // namespace fewxc
