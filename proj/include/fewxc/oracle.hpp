#pragma once

// Independent validation machinery: slack matrices, the exact rectangle
// covering lower bound, and verification of extension certificates.

#include "fewxc/polytope.hpp"

#include <algorithm>
#include <bitset>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace fewxc {

struct SlackMatrix {
    std::size_t rows = 0, cols = 0; // facets x vertices
    std::vector<std::vector<Rational>> entries;
};

inline SlackMatrix slack_matrix(const Polytope& p) {
    SlackMatrix s;
    s.rows = p.n_facets();
    s.cols = p.n_vertices();
    s.entries.assign(s.rows, std::vector<Rational>(s.cols, Rational(0)));
    for (std::size_t f = 0; f < s.rows; ++f)
        for (std::size_t v = 0; v < s.cols; ++v) {
            s.entries[f][v] = p.facets[f].slack(p.vertices.points[v]);
            if (s.entries[f][v] < 0) throw std::logic_error("negative slack");
        }
    return s;
}

inline std::size_t slack_rank(const SlackMatrix& s) {
    RMatrix m(s.rows, s.cols);
    for (std::size_t i = 0; i < s.rows; ++i)
        for (std::size_t j = 0; j < s.cols; ++j) m(i, j) = s.entries[i][j];
    return rank(m);
}

namespace detail {

constexpr std::size_t kCoverGuard = 200;

struct CoverInstance {
    std::size_t n_cells = 0;
    std::vector<std::bitset<kCoverGuard>> rect_cells; // maximal rectangles
    std::vector<std::vector<std::size_t>> covering;   // per cell, rectangle ids
    std::vector<std::bitset<kCoverGuard>> compatible; // cells coverable together
};

// Maximal all-positive rectangles (formal concepts) of the support,
// enumerated over subsets of the smaller side.
inline CoverInstance build_cover_instance(const std::vector<std::vector<bool>>& support) {
    const std::size_t m = support.size(), n = support[0].size();
    const bool flip = m > n;
    const std::size_t rows = flip ? n : m, cols = flip ? m : n;
    auto at = [&](std::size_t r, std::size_t c) { return flip ? support[c][r] : support[r][c]; };

    CoverInstance inst;
    std::vector<std::vector<int>> cell_id(rows, std::vector<int>(cols, -1));
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (at(r, c)) {
                cell_id[r][c] = static_cast<int>(cells.size());
                cells.emplace_back(r, c);
            }
    inst.n_cells = cells.size();

    std::vector<std::uint64_t> row_mask_of_col(cols, 0);
    std::vector<std::bitset<kCoverGuard>> col_support(rows);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (at(r, c)) {
                row_mask_of_col[c] |= (std::uint64_t{1} << r);
                col_support[r].set(c);
            }

    std::set<std::pair<std::uint64_t, std::vector<std::size_t>>> seen;
    for (std::uint64_t rset = 1; rset < (std::uint64_t{1} << rows); ++rset) {
        // Columns positive on every chosen row.
        std::bitset<kCoverGuard> colset;
        colset.set();
        for (std::size_t r = 0; r < rows; ++r)
            if (rset >> r & 1) colset &= col_support[r];
        std::vector<std::size_t> colv;
        for (std::size_t c = 0; c < cols; ++c)
            if (c < kCoverGuard && colset.test(c)) colv.push_back(c);
        if (colv.empty()) continue;
        // Row closure: all rows positive on every chosen column.
        std::uint64_t closure = ~std::uint64_t{0};
        for (auto c : colv) closure &= row_mask_of_col[c];
        closure &= (rows == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << rows) - 1);
        if (!seen.emplace(closure, colv).second) continue;
        std::bitset<kCoverGuard> cellmask;
        for (std::size_t r = 0; r < rows; ++r)
            if (closure >> r & 1)
                for (auto c : colv) cellmask.set(static_cast<std::size_t>(cell_id[r][c]));
        inst.rect_cells.push_back(cellmask);
    }

    inst.covering.assign(inst.n_cells, {});
    for (std::size_t j = 0; j < inst.rect_cells.size(); ++j)
        for (std::size_t i = 0; i < inst.n_cells; ++i)
            if (inst.rect_cells[j].test(i)) inst.covering[i].push_back(j);

    // Two cells fit in one rectangle iff their 2x2 pattern is all positive.
    inst.compatible.assign(inst.n_cells, {});
    for (std::size_t i = 0; i < inst.n_cells; ++i)
        for (std::size_t j = 0; j < inst.n_cells; ++j) {
            const auto [ri, ci] = cells[i];
            const auto [rj, cj] = cells[j];
            if (at(ri, cj) && at(rj, ci)) inst.compatible[i].set(j);
        }
    return inst;
}

// Greedy antichain of pairwise incompatible cells: a sound lower bound,
// since each needs its own rectangle.
inline std::size_t antichain_bound(const CoverInstance& inst,
                                   const std::bitset<kCoverGuard>& uncovered) {
    std::bitset<kCoverGuard> chosen;
    std::size_t count = 0;
    for (std::size_t i = 0; i < inst.n_cells; ++i) {
        if (!uncovered.test(i)) continue;
        if ((inst.compatible[i] & chosen).any()) continue;
        chosen.set(i);
        ++count;
    }
    return count;
}

inline void cover_search(const CoverInstance& inst, std::bitset<kCoverGuard> uncovered,
                         std::size_t used, std::size_t& best) {
    if (uncovered.none()) {
        best = std::min(best, used);
        return;
    }
    if (used + antichain_bound(inst, uncovered) >= best) return;
    // Branch on the uncovered cell with the fewest covering rectangles.
    std::size_t cell = inst.n_cells;
    for (std::size_t i = 0; i < inst.n_cells; ++i) {
        if (!uncovered.test(i)) continue;
        if (cell == inst.n_cells || inst.covering[i].size() < inst.covering[cell].size())
            cell = i;
    }
    for (auto rect : inst.covering[cell])
        cover_search(inst, uncovered & ~inst.rect_cells[rect], used + 1, best);
}

} // namespace detail

// Exact minimum number of all-positive rectangles covering the support of
// the slack matrix; a lower bound on the nonnegative rank. Exact branch and
// bound over maximal rectangles with an antichain bound for pruning.
inline std::size_t rectangle_cover_bound(const SlackMatrix& s) {
    if (s.rows * s.cols > detail::kCoverGuard)
        throw std::domain_error("support too large for exact cover");
    std::vector<std::vector<bool>> support(s.rows, std::vector<bool>(s.cols, false));
    bool any = false;
    for (std::size_t i = 0; i < s.rows; ++i)
        for (std::size_t j = 0; j < s.cols; ++j) {
            support[i][j] = (s.entries[i][j] != 0);
            any = any || support[i][j];
        }
    if (!any) return 0;
    auto inst = detail::build_cover_instance(support);
    std::bitset<detail::kCoverGuard> all;
    for (std::size_t i = 0; i < inst.n_cells; ++i) all.set(i);
    // Greedy cover as the starting incumbent.
    std::size_t incumbent = 0;
    {
        auto uncovered = all;
        while (uncovered.any()) {
            std::size_t bestrect = 0, bestgain = 0;
            for (std::size_t j = 0; j < inst.rect_cells.size(); ++j) {
                const std::size_t gain = (inst.rect_cells[j] & uncovered).count();
                if (gain > bestgain) {
                    bestgain = gain;
                    bestrect = j;
                }
            }
            uncovered &= ~inst.rect_cells[bestrect];
            ++incumbent;
        }
    }
    std::size_t best = incumbent;
    detail::cover_search(inst, all, 0, best);
    return best;
}

inline std::size_t rectangle_cover_bound(const Polytope& p) {
    return rectangle_cover_bound(slack_matrix(p));
}

struct ExtensionCertificate {
    Polytope q;
    std::size_t keep = 0; // the projection forgets trailing coordinates down to here
};

struct VerifyResult {
    bool ok = false;
    std::size_t facet_count = 0; // of Q; a certified upper bound when ok
};

// Recomputes the projection of Q and demands exact vertex-set equality with
// the target, as rational coordinate sets. keep == dim(Q) is the identity
// extension (nothing forgotten).
inline VerifyResult verify_extension(const Polytope& p, const ExtensionCertificate& cert) {
    VerifyResult res;
    res.facet_count = cert.q.n_facets();
    if (cert.keep != p.dim || cert.keep > cert.q.dim) return res;
    Polytope shadow;
    try {
        shadow = (cert.keep == cert.q.dim) ? cert.q : project(cert.q, cert.keep);
    } catch (const std::exception&) {
        return res;
    }
    if (shadow.dim != p.dim) return res;
    auto a = shadow.vertices.points, b = p.vertices.points;
    std::sort(a.begin(), a.end(), detail::LexLess{});
    std::sort(b.begin(), b.end(), detail::LexLess{});
    res.ok = (a == b);
    return res;
}

struct XcInterval {
    std::size_t lo = 0, hi = 0;
    bool cover_bound_used = false;
};

// lo = max(d+1, rectangle cover bound when within the guard); hi = min(n, m).
inline XcInterval xc_interval(const Polytope& p) {
    XcInterval res;
    res.hi = std::min(p.n_vertices(), p.n_facets());
    res.lo = p.dim + 1;
    if (p.n_vertices() * p.n_facets() <= detail::kCoverGuard) {
        res.cover_bound_used = true;
        res.lo = std::max(res.lo, rectangle_cover_bound(p));
    }
    return res;
}

} // namespace fewxc
