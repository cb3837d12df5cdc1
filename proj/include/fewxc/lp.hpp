#pragma once

// Small exact-rational feasibility solver (phase-1 simplex with Bland's
// rule) plus the positive-dependence tests built on it. These back the
// Gale face criterion and the diagram realization step.

#include "fewxc/linalg.hpp"
#include "fewxc/rational.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace fewxc {

// Finds x >= 0 with Ax = b, or nullopt if infeasible.
inline std::optional<RVector> feasible_nonneg(const RMatrix& a, RVector b) {
    const std::size_t m = a.rows(), n = a.cols();
    if (b.size() != m) throw std::invalid_argument("feasible_nonneg: size mismatch");

    // Tableau with one artificial variable per row; minimize their sum.
    RMatrix t(m, n + m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        const bool neg = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) t(i, j) = neg ? -a(i, j) : a(i, j);
        t(i, n + i) = 1;
        t(i, n + m) = neg ? -b[i] : b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    auto reduced_cost = [&](std::size_t j) {
        // c_j - sum over rows with artificial basic of t(i, j).
        Rational r = (j >= n) ? Rational(1) : Rational(0);
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] >= n) r -= t(i, j);
        return r;
    };

    while (true) {
        // Bland: entering = lowest index with negative reduced cost.
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (reduced_cost(j) < 0) {
                enter = j;
                break;
            }
        }
        if (enter == n + m) break;
        // Ratio test, Bland tie-break on lowest basis index.
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t(i, enter) <= 0) continue;
            const Rational ratio = t(i, n + m) / t(i, enter);
            if (leave == m || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave == m)
            throw std::logic_error("phase-1 simplex unbounded");
        // Pivot.
        const Rational piv = t(leave, enter);
        for (std::size_t j = 0; j <= n + m; ++j) t(leave, j) /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t(i, enter) == 0) continue;
            const Rational f = t(i, enter);
            for (std::size_t j = 0; j <= n + m; ++j) t(i, j) -= f * t(leave, j);
        }
        basis[leave] = enter;
    }

    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= n && t(i, n + m) != 0) return std::nullopt;
    RVector x(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = t(i, n + m);
    return x;
}

// Coefficients lambda_i >= 1 with sum lambda_i v_i = 0, if they exist.
// Existence is equivalent to a strictly positive dependence.
inline std::optional<RVector> positive_combination_zero(const std::vector<RVector>& vs) {
    if (vs.empty()) return std::nullopt;
    const std::size_t k = vs[0].size(), n = vs.size();
    RMatrix a(k, n);
    RVector b(k, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        if (vs[j].size() != k) throw std::invalid_argument("ragged vectors");
        for (std::size_t i = 0; i < k; ++i) {
            a(i, j) = vs[j][i];
            b[i] -= vs[j][i];
        }
    }
    auto mu = feasible_nonneg(a, b);
    if (!mu) return std::nullopt;
    RVector lambda(n);
    for (std::size_t j = 0; j < n; ++j) lambda[j] = (*mu)[j] + 1;
    return lambda;
}

namespace detail {

// cross > 0 means b lies strictly counterclockwise of a, less than half a turn.
inline Rational cross2(const RVector& a, const RVector& b) {
    return a[0] * b[1] - a[1] * b[0];
}

// Strictly positive dependence among nonzero plane vectors: every gap between
// angularly consecutive directions must be under half a turn.
inline bool positively_dependent_rank2(const std::vector<RVector>& nz) {
    std::vector<RVector> dirs;
    for (const auto& v : nz) {
        RVector p = primitive(v);
        if (std::find(dirs.begin(), dirs.end(), p) == dirs.end()) dirs.push_back(p);
    }
    auto angular_less = [](const RVector& a, const RVector& b) {
        auto half = [](const RVector& v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; };
        const int ha = half(a), hb = half(b);
        if (ha != hb) return ha < hb;
        return cross2(a, b) > 0;
    };
    std::sort(dirs.begin(), dirs.end(), angular_less);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        const auto& u = dirs[i];
        const auto& v = dirs[(i + 1) % dirs.size()];
        if (dirs.size() == 1 || cross2(u, v) <= 0) return false;
    }
    return true;
}

} // namespace detail

// Whether the origin lies in the relative interior of conv(vs). Rank <= 2
// resolves combinatorially; higher ranks fall back to the simplex solver.
inline bool origin_in_relint(const std::vector<RVector>& vs) {
    if (vs.empty()) return false;
    std::vector<RVector> nz;
    for (const auto& v : vs)
        if (!is_zero(v)) nz.push_back(v);
    if (nz.empty()) return true; // conv of zero vectors is the origin itself
    const std::size_t r = rank(RMatrix::from_rows(nz));
    if (r == 1) {
        bool pos = false, neg = false;
        std::size_t lead = 0;
        while (nz[0][lead] == 0) ++lead;
        for (const auto& v : nz) (v[lead] > 0 ? pos : neg) = true;
        return pos && neg;
    }
    if (r == 2 && nz[0].size() == 2) return detail::positively_dependent_rank2(nz);
    return positive_combination_zero(nz).has_value();
}

} // namespace fewxc
