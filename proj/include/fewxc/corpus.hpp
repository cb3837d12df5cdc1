#pragma once

// The materialized test corpus: families, sporadics, hexagons and cyclic
// witnesses, all deterministic. The sampled Desarguian hexagons use a fixed
// xorshift stream with rejection through the certified generator.

#include "fewxc/classifier.hpp"
#include "fewxc/constructors.hpp"
#include "fewxc/gale.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fewxc {

struct CorpusEntry {
    std::string name;
    Polytope polytope;
};

namespace detail {

struct CorpusRng {
    std::uint64_t state;
    explicit CorpusRng(std::uint64_t seed) : state(seed ? seed : 1) {}
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    long pick(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
    Rational small(long lo, long hi, long den_max) {
        return make_rational(pick(lo, hi), pick(1, den_max));
    }
};

} // namespace detail

// Deterministic stream of certified Desarguian hexagons with finite
// witnesses: two supporting lines and a diagonal through a sampled point
// below the hexagon, rejection-sampled until the generator certifies.
inline std::vector<DesarguianHexagon> sampled_desarguian_hexagons(std::size_t count,
                                                                  std::uint64_t seed) {
    detail::CorpusRng rng(seed);
    std::vector<DesarguianHexagon> out;
    while (out.size() < count) {
        const HomPoint c{rng.small(-3, 3, 2), rng.small(-7, -3, 2), Rational(1)};
        const std::vector<RVector> rays = {
            {Rational(1), rng.small(1, 4, 2)},
            {rng.small(-1, 1, 4), Rational(1)},
            {Rational(-1), rng.small(1, 4, 2)},
        };
        const std::vector<Rational> picks = {
            rng.small(1, 2, 2), rng.small(3, 5, 2), // right supporting line
            rng.small(6, 9, 2), rng.small(2, 3, 2), // diagonal: top then bottom
            rng.small(1, 2, 2), rng.small(3, 5, 2), // left supporting line
        };
        try {
            auto gen = desarguian_hexagon(c, rays, picks);
            if (!desarguian_test(gen.hexagon)) continue;
            out.push_back(std::move(gen));
        } catch (const std::exception&) {
            continue;
        }
    }
    return out;
}

// Hexagon whose twelve labelings all fail the concurrency test.
inline Polytope generic_hexagon() {
    std::vector<RVector> pts = {{Rational(0), Rational(0)}, {Rational(2), Rational(0)},
                                {Rational(3), Rational(2)}, {Rational(2), Rational(4)},
                                {Rational(0), Rational(5)}, {Rational(-1), Rational(2)}};
    return hull(PointConfig::make(2, std::move(pts)));
}

// Hexagon with three upper, one vertical and two lower edges; the planar
// face-preservation example.
inline Polytope preservation_hexagon() {
    std::vector<RVector> pts = {{Rational(0), Rational(0)},  {Rational(0), Rational(2)},
                                {Rational(1), Rational(3)},  {Rational(3), Rational(3)},
                                {Rational(4), Rational(1)},  {Rational(2), Rational(-1)}};
    return hull(PointConfig::make(2, std::move(pts)));
}

// The full corpus. Sporadic members run the planar enumeration and dominate
// the build time; with_sporadics=false gives the quick subset.
inline std::vector<CorpusEntry> corpus(bool with_sporadics = true) {
    std::vector<CorpusEntry> out;
    auto put = [&](std::string name, Polytope p) {
        out.push_back(CorpusEntry{std::move(name), std::move(p)});
    };

    for (std::size_t d = 1; d <= 6; ++d) put("simplex_d" + std::to_string(d), simplex(d));

    put("square", direct_sum(simplex(1), simplex(1)));
    put("pentagon", cyclic(2, 5));
    put("hexagon_regular", regular_hexagon());
    {
        auto hexes = sampled_desarguian_hexagons(3, 20240711);
        for (std::size_t i = 0; i < hexes.size(); ++i)
            put("hexagon_desarguian_" + std::to_string(i + 1), hexes[i].hexagon);
    }
    put("hexagon_generic", generic_hexagon());
    put("hexagon_preservation", preservation_hexagon());
    put("heptagon", cyclic(2, 7));
    put("octagon", cyclic(2, 8));

    put("cube", product(product(simplex(1), simplex(1)), simplex(1)));
    put("octahedron", direct_sum(direct_sum(simplex(1), simplex(1)), simplex(1)));

    put("product_d1_d2", product(simplex(1), simplex(2)));
    put("product_d1_d3", product(simplex(1), simplex(3)));
    put("product_d2_d2", product(simplex(2), simplex(2)));
    put("product_d2_d3", product(simplex(2), simplex(3)));
    put("sum_d1_d2", direct_sum(simplex(1), simplex(2)));
    put("sum_d2_d2", direct_sum(simplex(2), simplex(2)));
    put("sum_d1_d3", direct_sum(simplex(1), simplex(3)));

    put("pyr1_square", pyramid(direct_sum(simplex(1), simplex(1)), 1));
    put("pyr2_square", pyramid(direct_sum(simplex(1), simplex(1)), 2));
    for (std::size_t k = 1; k <= 4; ++k)
        put("pyr" + std::to_string(k) + "_product_d1_d3",
            build_family(FamilySpec{FamilySpec::Kind::kfold_pyramid_product, k, 1, 3}));

    for (std::size_t d = 6; d <= 9; ++d)
        for (std::size_t k = 0; k + 2 <= d - 4; ++k)
            for (std::size_t n = 1; k + n + 1 <= d - 4; ++n) {
                const std::size_t m = d - 4 - k - n;
                if (m < 1 || n < m) continue;
                put("join_d" + std::to_string(d) + "_k" + std::to_string(k) + "_n" +
                        std::to_string(n) + "_m" + std::to_string(m),
                    build_family(FamilySpec{FamilySpec::Kind::join_family, k, n, m}));
            }

    for (auto [d, n] : std::vector<std::pair<std::size_t, std::size_t>>{
             {3, 6}, {3, 7}, {4, 8}, {5, 9}, {6, 10}, {7, 11}, {8, 12}})
        put("cyclic_" + std::to_string(d) + "_" + std::to_string(n), cyclic(d, n));

    {
        auto prism = product(simplex(1), simplex(2));
        put("ops_prism", one_point_suspension(prism, vertex_centroid(prism)));
        put("lawrence_prism",
            lawrence_extension(prism, RVector{Rational(3), Rational(3), Rational(3)}));
        auto pyr_prism = pyramid(prism, 1);
        put("ops_pyr1_prism",
            one_point_suspension(pyr_prism, vertex_centroid(pyr_prism)));
        put("lawrence_pyr1_prism",
            lawrence_extension(pyr_prism,
                               RVector{Rational(3), Rational(3), Rational(3), Rational(0)}));
    }

    if (with_sporadics) {
        std::size_t i = 0;
        for (auto& [d, p] : sporadic_d4_vertices())
            put("sporadic_" + std::to_string(++i) + "_d" + std::to_string(d), std::move(p));
    }
    return out;
}

} // namespace fewxc
