#pragma once

// Closed-form lower-bound calculators: the realization-space dimension
// count, its specializations to simple/simplicial polytopes and polygons,
// the join-family count, and the pyramid dimension guard. All comparisons
// against square roots are resolved by integer squaring; nothing rounds.

#include "fewxc/rational.hpp"

#include <cstddef>
#include <stdexcept>

namespace fewxc {

struct BoundValue {
    long long value = 0;
    bool attained_exactly = false; // the real bound is an integer
};

namespace detail {

// ceil(sqrt(x)) for x >= 0, exactly.
inline long long ceil_isqrt(long long x) {
    if (x < 0) throw std::invalid_argument("ceil_isqrt: negative");
    Integer q(static_cast<long>(x)), s;
    mpz_sqrt(s.get_mpz_t(), q.get_mpz_t());
    long long r = s.get_si();
    if (r * r < x) ++r;
    return r;
}

} // namespace detail

// Smallest integer >= 2*sqrt(r - d) - d + 1, with a flag for exact
// attainment. A generic realization of a polytope whose realization space
// has dimension r admits no extension with fewer facets.
inline BoundValue generic_xc_lower(long long r, long long d) {
    if (r <= d) throw std::invalid_argument("generic_xc_lower: need r > d");
    const long long q = 4 * (r - d); // (2 sqrt(r-d))^2
    const long long c = detail::ceil_isqrt(q);
    return BoundValue{c - d + 1, c * c == q};
}

// Specialization r = d*n for simplicial polytopes with n vertices or simple
// polytopes with n facets.
inline BoundValue simple_or_simplicial_lower(long long d, long long n) {
    if (n < d + 1) throw std::invalid_argument("simple_or_simplicial_lower: need n >= d+1");
    return generic_xc_lower(d * n, d);
}

// Dimension bound D*N - (D+1)*(D-d) for the realizations arising as
// projections of D-polytopes with N facets.
inline long long realization_dim_upper(long long N, long long D, long long d) {
    if (D < d || N < D + 1)
        throw std::invalid_argument("realization_dim_upper: need D >= d and N >= D+1");
    return D * N - (D + 1) * (D - d);
}

// Exact rational threshold ((D+1)(D-d) + r) / D on the facet count of a
// D-dimensional extension.
inline Rational min_facets_needed(long long D, long long d, long long r) {
    if (d < 1 || D < d) throw std::invalid_argument("min_facets_needed: need D >= d >= 1");
    return make_rational(Integer(static_cast<long>((D + 1) * (D - d) + r)),
                         Integer(static_cast<long>(D)));
}

// Smallest d with d > ((alpha-1)/2)^2, i.e. 4d > (alpha-1)^2.
inline long long alpha_threshold(long long alpha) {
    if (alpha < 1) throw std::invalid_argument("alpha_threshold: need alpha >= 1");
    return (alpha - 1) * (alpha - 1) / 4 + 1;
}

// Number of combinatorial types in the pyramid-join family for dimension d:
// floor((d-4)^2 / 4), the count of triples (k, n, m) with k + n + m = d - 4
// and n >= m >= 1.
inline long long join_family_count(long long d) {
    if (d < 4) return 0;
    return (d - 4) * (d - 4) / 4;
}

// Dimension guard for polytopes with few vertices and few facets:
// F(x, y) = 0 if x or y is 0, 3x + y - 2 for 1 <= x <= 5, C(x,2) + y + 3
// for x >= 5 (the branches agree at x = 5).
inline long long pyramid_dim_bound_f(long long x, long long y) {
    if (x < 0 || y < 0) throw std::invalid_argument("pyramid_dim_bound_f: negatives");
    if (x == 0 || y == 0) return 0;
    if (x <= 5) return 3 * x + y - 2;
    return x * (x - 1) / 2 + y + 3;
}

// min(F(alpha, beta), F(beta, alpha)): every d-polytope with at most
// d+1+alpha vertices and d+1+beta facets is a pyramid over one of bounded
// dimension.
inline long long pyramid_dim_guard(long long alpha, long long beta) {
    const long long a = pyramid_dim_bound_f(alpha, beta);
    const long long b = pyramid_dim_bound_f(beta, alpha);
    return a < b ? a : b;
}

} // namespace fewxc
