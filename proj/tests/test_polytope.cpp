#include "catch2/catch_amalgamated.hpp"

#include "fewxc/comb_iso.hpp"
#include "fewxc/constructors.hpp"
#include "fewxc/polytope.hpp"

#include "test_support.hpp"

#include <algorithm>

using namespace fewxc;
using testsupport::Xorshift;

namespace {

PointConfig config2(std::vector<std::pair<long, long>> pts) {
    std::vector<RVector> v;
    for (auto [x, y] : pts) v.push_back({Rational(x), Rational(y)});
    return PointConfig::make(2, std::move(v));
}

// Facet sets as canonical primitive (normal|offset) rows, order-insensitive.
std::vector<RVector> facet_keys(const Polytope& p) {
    std::vector<RVector> keys;
    for (const auto& f : p.facets) {
        RVector k = f.normal;
        k.push_back(f.offset);
        keys.push_back(primitive(k));
    }
    std::sort(keys.begin(), keys.end(), detail::LexLess{});
    return keys;
}

} // namespace

TEST_CASE("hull drops interior points and orders deterministically") {
    auto p = hull(config2({{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}}));
    CHECK(p.dim == 2);
    CHECK(p.n_vertices() == 4);
    CHECK(p.n_facets() == 4);
    validate(p);
    // Labels of surviving vertices are preserved from the input.
    const auto l = p.vertex_labels();
    CHECK(std::find(l.begin(), l.end(), "p4") == l.end());
}

TEST_CASE("hull of the triangular prism vertex set") {
    std::vector<RVector> pts;
    for (long z = 0; z <= 1; ++z) {
        pts.push_back({Rational(0), Rational(0), Rational(z)});
        pts.push_back({Rational(1), Rational(0), Rational(z)});
        pts.push_back({Rational(0), Rational(1), Rational(z)});
    }
    auto p = hull(PointConfig::make(3, pts));
    CHECK(p.n_vertices() == 6);
    CHECK(p.n_facets() == 5);
    std::vector<std::size_t> sizes;
    for (const auto& row : p.incidence)
        sizes.push_back(std::count(row.begin(), row.end(), true));
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{3, 3, 4, 4, 4});
    validate(p);
}

TEST_CASE("hull of eight points on the moment curve in dimension 4") {
    auto p = cyclic(4, 8);
    CHECK(p.n_vertices() == 8);
    CHECK(p.n_facets() == 20);
    // Independent oracle: Gale's evenness condition.
    auto expect = testsupport::cyclic_incidence_by_evenness(4, 8);
    std::sort(expect.begin(), expect.end());
    CHECK(testsupport::sorted_incidence(p) == expect);
    validate(p);
}

TEST_CASE("evenness oracle matches hull on more cyclic polytopes") {
    for (auto [d, n] : std::vector<std::pair<std::size_t, std::size_t>>{
             {2, 6}, {3, 6}, {3, 7}, {5, 9}, {6, 10}}) {
        auto p = cyclic(d, n);
        auto expect = testsupport::cyclic_incidence_by_evenness(d, n);
        std::sort(expect.begin(), expect.end());
        CHECK(testsupport::sorted_incidence(p) == expect);
    }
}

TEST_CASE("hull is idempotent") {
    auto p = cyclic(3, 6);
    auto q = hull(p.vertices);
    CHECK(q.n_vertices() == p.n_vertices());
    CHECK(facet_keys(q) == facet_keys(p));
    CHECK(q.vertices.points == p.vertices.points);
}

TEST_CASE("hull error cases") {
    CHECK_THROWS_AS(hull(config2({{1, 1}, {1, 1}, {1, 1}})), std::domain_error);
    CHECK_THROWS_AS(hull(PointConfig::make(2, {})), std::invalid_argument);
}

TEST_CASE("lower-dimensional input is restricted to its affine hull") {
    // A triangle embedded in 4-space.
    std::vector<RVector> pts = {
        {Rational(1), Rational(1), Rational(0), Rational(2)},
        {Rational(2), Rational(3), Rational(0), Rational(2)},
        {Rational(5), Rational(1), Rational(0), Rational(2)},
    };
    auto p = hull(PointConfig::make(4, pts));
    CHECK(p.dim == 2);
    CHECK(p.n_vertices() == 3);
    CHECK(p.n_facets() == 3);
    validate(p);
}

TEST_CASE("polar dual of a product is a direct sum") {
    auto p = product(simplex(1), simplex(3));
    CHECK(p.n_vertices() == 8);
    CHECK(p.n_facets() == 6);
    auto q = polar_dual(p);
    CHECK(q.n_vertices() == 6);
    CHECK(q.n_facets() == 8);
    CHECK(comb_iso(q, direct_sum(simplex(1), simplex(3))).has_value());
    // Exactness cross-check: re-hulling the polar's vertices reproduces it.
    auto rq = hull(q.vertices);
    CHECK(rq.n_vertices() == q.n_vertices());
    CHECK(facet_keys(rq) == facet_keys(q));
    validate(q);
}

TEST_CASE("polar dual incidence transposes and the dual is an involution") {
    auto cube = product(product(simplex(1), simplex(1)), simplex(1));
    auto oct = polar_dual(cube);
    for (std::size_t f = 0; f < oct.n_facets(); ++f)
        for (std::size_t v = 0; v < oct.n_vertices(); ++v)
            CHECK(oct.incidence[f][v] == cube.incidence[v][f]);
    CHECK(comb_iso(polar_dual(oct), cube).has_value());
    CHECK(comb_iso(polar_dual(simplex(4)), simplex(4)).has_value());
}

TEST_CASE("combinatorial isomorphism basics") {
    auto square = hull(config2({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    auto quad = hull(config2({{0, 0}, {5, -1}, {6, 7}, {-1, 2}}));
    CHECK(comb_iso(square, quad).has_value());
    auto tri = hull(config2({{0, 0}, {1, 0}, {0, 1}}));
    CHECK_FALSE(comb_iso(square, tri).has_value());
    auto prism = product(simplex(1), simplex(2));
    auto oct = direct_sum(direct_sum(simplex(1), simplex(1)), simplex(1));
    CHECK(oct.n_vertices() == 6);
    CHECK(oct.n_facets() == 8);
    CHECK_FALSE(comb_iso(prism, oct).has_value());
}

TEST_CASE("combinatorial isomorphism is an equivalence and affine-invariant") {
    Xorshift rng(23);
    std::vector<Polytope> corpus = {simplex(3), product(simplex(1), simplex(2)),
                                    direct_sum(simplex(2), simplex(2)), cyclic(4, 8),
                                    pyramid(product(simplex(1), simplex(2)), 1)};
    for (const auto& p : corpus) {
        auto self = comb_iso(p, p);
        REQUIRE(self.has_value());
        // Random relabeling + random invertible affine map.
        const std::size_t n = p.n_vertices(), d = p.dim;
        RMatrix m(d, d);
        do {
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) m(i, j) = rng.rational(3, 2);
        } while (det(m) == 0);
        RVector t(d);
        for (std::size_t i = 0; i < d; ++i) t[i] = rng.rational(3, 2);
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        std::vector<RVector> pts(n);
        for (std::size_t i = 0; i < n; ++i) {
            RVector w = t;
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c)
                    w[r] += m(r, c) * p.vertices.points[perm[i]][c];
            pts[i] = w;
        }
        auto q = hull(PointConfig::make(d, pts));
        auto iso = comb_iso(p, q);
        REQUIRE(iso.has_value());
        auto back = comb_iso(q, p); // symmetry
        CHECK(back.has_value());
        // The returned bijection really equates incidences.
        for (std::size_t f = 0; f < p.n_facets(); ++f)
            for (std::size_t v = 0; v < p.n_vertices(); ++v)
                CHECK(p.incidence[f][v] ==
                      q.incidence[iso->facet_map[f]][iso->vertex_map[v]]);
    }
}

TEST_CASE("pyramid decomposition") {
    auto egyptian = pyramid(hull(config2({{0, 0}, {1, 0}, {1, 1}, {0, 1}})), 1);
    auto d1 = pyramid_decompose(egyptian);
    CHECK(d1.k == 1);
    CHECK(d1.apex_labels == std::vector<std::string>{"apex1"});
    CHECK(d1.base.n_vertices() == 4);
    CHECK(d1.base.dim == 2);

    auto d2 = pyramid_decompose(simplex(5));
    CHECK(d2.k == 4);
    CHECK(d2.base.dim == 1);
    CHECK(d2.base.n_vertices() == 2);

    auto d3 = pyramid_decompose(product(simplex(1), simplex(2)));
    CHECK(d3.k == 0);
    CHECK(d3.base.n_vertices() == 6);
}

TEST_CASE("pyramid decomposition recovers k for iterated pyramids") {
    for (std::size_t k = 1; k <= 3; ++k) {
        auto p = pyramid(product(simplex(1), simplex(2)), k);
        auto d = pyramid_decompose(p);
        CHECK(d.k == k);
        CHECK(comb_iso(d.base, product(simplex(1), simplex(2))).has_value());
    }
}

TEST_CASE("projection of a cube is a square, of an axis-aligned prism a triangle") {
    auto cube = product(product(simplex(1), simplex(1)), simplex(1));
    auto sq = project(cube, 2);
    CHECK(sq.n_vertices() == 4);
    CHECK(sq.n_facets() == 4);
    auto prism = product(simplex(2), simplex(1)); // prism axis along the last coordinate
    auto tri = project(prism, 2);
    CHECK(tri.n_vertices() == 3);
    CHECK_THROWS_AS(project(cube, 3), std::invalid_argument);
}

TEST_CASE("preserved faces on the hexagon of the planar projection picture") {
    auto hex = hull(config2({{0, 0}, {0, 2}, {1, 3}, {3, 3}, {4, 1}, {2, -1}}));
    REQUIRE(hex.n_vertices() == 6);
    auto rep = preserved_faces(hex);
    std::size_t upper = 0, lower = 0, vertical = 0;
    for (auto c : rep.facet_class) {
        if (c == FaceClass::upper) ++upper;
        if (c == FaceClass::lower) ++lower;
        if (c == FaceClass::vertical) ++vertical;
    }
    CHECK(upper == 3);
    CHECK(vertical == 1);
    CHECK(lower == 2);
    CHECK(std::count(rep.vertex_status.begin(), rep.vertex_status.end(),
                     Preservation::strictly_preserved) == 1);
    CHECK(std::count(rep.facet_status.begin(), rep.facet_status.end(),
                     Preservation::preserved_not_strictly) == 1);
    // The strictly preserved vertex is the one on complementary facets: (4,1).
    for (std::size_t v = 0; v < 6; ++v)
        if (rep.vertex_status[v] == Preservation::strictly_preserved)
            CHECK(hex.vertices.points[v] == RVector{Rational(4), Rational(1)});
}

TEST_CASE("preserved faces on the axis-aligned square") {
    auto sq = hull(config2({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    auto rep = preserved_faces(sq);
    CHECK(std::count(rep.facet_status.begin(), rep.facet_status.end(),
                     Preservation::preserved_not_strictly) == 2); // left and right edges
    CHECK(std::count(rep.vertex_status.begin(), rep.vertex_status.end(),
                     Preservation::strictly_preserved) == 0);
    CHECK(std::count(rep.vertex_status.begin(), rep.vertex_status.end(),
                     Preservation::not_preserved) == 4);
}

TEST_CASE("facet irredundancy: removing any facet admits a point beyond it") {
    for (const auto& p : {cyclic(3, 6), product(simplex(1), simplex(2)),
                          polar_dual(cyclic(4, 7))}) {
        for (std::size_t f = 0; f < p.n_facets(); ++f) {
            // Centroid of the facet's vertices, pushed slightly outward.
            RVector c(p.dim, Rational(0));
            std::size_t cnt = 0;
            for (std::size_t v = 0; v < p.n_vertices(); ++v)
                if (p.incidence[f][v]) {
                    c = add(c, p.vertices.points[v]);
                    ++cnt;
                }
            c = scaled(c, Rational(1) / Rational(static_cast<long>(cnt)));
            // Step just beyond facet f while staying inside all the others.
            Rational step(1);
            const RVector& a = p.facets[f].normal;
            for (std::size_t g = 0; g < p.n_facets(); ++g) {
                if (g == f) continue;
                const Rational d = dot(p.facets[g].normal, a);
                if (d > 0) {
                    const Rational cand = p.facets[g].slack(c) / d / 2;
                    if (cand < step) step = cand;
                }
            }
            REQUIRE(step > 0);
            const RVector x = add(c, scaled(a, step / dot(a, a)));
            CHECK(p.facets[f].slack(x) < 0);
            for (std::size_t g = 0; g < p.n_facets(); ++g)
                if (g != f) CHECK(p.facets[g].slack(x) >= 0);
        }
    }
}

TEST_CASE("apexes of pyramids are strictly preserved when both sides exist") {
    // Mix coordinates with invertible maps until the lift has at least two
    // upper and two lower facets, then every apex must be strictly preserved.
    Xorshift rng(59);
    std::vector<Polytope> pyramids = {pyramid(direct_sum(simplex(1), simplex(1)), 1),
                                      pyramid(product(simplex(1), simplex(2)), 1),
                                      pyramid(cyclic(2, 5), 2)};
    std::size_t exercised = 0;
    for (const auto& p : pyramids) {
        const std::size_t d = p.dim;
        for (int attempt = 0; attempt < 20; ++attempt) {
            RMatrix m(d, d);
            do {
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j) m(i, j) = rng.rational(2, 1);
            } while (det(m) == 0);
            std::vector<RVector> pts;
            for (const auto& v : p.vertices.points) {
                RVector w(d, Rational(0));
                for (std::size_t r = 0; r < d; ++r)
                    for (std::size_t c = 0; c < d; ++c) w[r] += m(r, c) * v[c];
                pts.push_back(w);
            }
            auto q = hull(PointConfig::make(d, pts, p.vertices.labels));
            auto rep = preserved_faces(q);
            std::size_t upper = 0, lower = 0;
            for (auto cls : rep.facet_class) {
                if (cls == FaceClass::upper) ++upper;
                if (cls == FaceClass::lower) ++lower;
            }
            if (upper < 2 || lower < 2) continue;
            ++exercised;
            const auto dec = pyramid_decompose(q);
            REQUIRE_FALSE(dec.apex_labels.empty());
            for (const auto& apex : dec.apex_labels) {
                for (std::size_t v = 0; v < q.n_vertices(); ++v)
                    if (q.vertices.labels[v] == apex)
                        CHECK(rep.vertex_status[v] == Preservation::strictly_preserved);
            }
            break;
        }
    }
    CHECK(exercised == pyramids.size());
}

TEST_CASE("pyramid peeling: label order and order independence of the base") {
    auto p = pyramid(direct_sum(simplex(1), simplex(1)), 3);
    auto dec = pyramid_decompose(p);
    CHECK(dec.apex_labels == std::vector<std::string>{"apex1", "apex2", "apex3"});
    // Relabel so a different apex peels first; the base type is unchanged.
    auto relabeled = p;
    for (auto& l : relabeled.vertices.labels) {
        if (l == "apex1") l = "zz_last";
        else if (l == "apex3") l = "aa_first";
    }
    auto dec2 = pyramid_decompose(relabeled);
    CHECK(dec2.k == dec.k);
    CHECK(dec2.apex_labels.front() == "aa_first");
    CHECK(comb_iso(dec2.base, dec.base).has_value());
}
