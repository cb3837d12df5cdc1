#include "catch2/catch_amalgamated.hpp"

#include "fewxc/comb_iso.hpp"
#include "fewxc/constructors.hpp"
#include "fewxc/corpus.hpp"

#include "test_support.hpp"

#include <algorithm>

using namespace fewxc;
using testsupport::Xorshift;

namespace {

RVector rv(std::vector<long> xs) {
    RVector v;
    for (auto x : xs) v.emplace_back(x);
    return v;
}

} // namespace

TEST_CASE("simplex") {
    auto seg = simplex(1);
    CHECK(seg.n_vertices() == 2);
    CHECK(seg.n_facets() == 2);
    auto tet = simplex(3);
    CHECK(tet.n_vertices() == 4);
    CHECK(tet.n_facets() == 4);
    auto s5 = simplex(5);
    CHECK(s5.n_vertices() == 6);
    CHECK(s5.n_facets() == 6);
    validate(tet);
    validate(s5);
    CHECK_THROWS_AS(simplex(0), std::invalid_argument);
    // Agreement with a from-scratch hull of the same vertex set.
    auto rehull = hull(tet.vertices);
    CHECK(rehull.n_facets() == 4);
    CHECK(comb_iso(rehull, tet).has_value());
}

TEST_CASE("pyramid counts and round trip") {
    auto square = direct_sum(simplex(1), simplex(1));
    auto egyptian = pyramid(square, 1);
    CHECK(egyptian.dim == 3);
    CHECK(egyptian.n_vertices() == 5);
    CHECK(egyptian.n_facets() == 5);
    validate(egyptian);
    CHECK(comb_iso(egyptian, hull(egyptian.vertices)).has_value());

    auto p = pyramid(product(simplex(1), simplex(2)), 2); // d = 5
    CHECK(p.dim == 5);
    CHECK(p.n_vertices() == 8);
    CHECK(p.n_facets() == 7);
    validate(p);

    auto dec = pyramid_decompose(p);
    CHECK(dec.k == 2);
    CHECK(comb_iso(dec.base, product(simplex(1), simplex(2))).has_value());
}

TEST_CASE("product, direct sum and join of small simplices") {
    auto prism = product(simplex(1), simplex(2));
    CHECK(prism.n_vertices() == 6);
    CHECK(prism.n_facets() == 5);
    validate(prism);
    CHECK(comb_iso(prism, hull(prism.vertices)).has_value());

    auto square = direct_sum(simplex(1), simplex(1));
    CHECK(square.n_vertices() == 4);
    CHECK(square.n_facets() == 4);
    validate(square);

    auto tet = join(simplex(1), simplex(1));
    CHECK(tet.dim == 3);
    CHECK(tet.n_vertices() == 4);
    CHECK(tet.n_facets() == 4);
    validate(tet);
    CHECK(comb_iso(tet, simplex(3)).has_value());
}

TEST_CASE("counting identities on random small factors") {
    Xorshift rng(31);
    std::vector<Polytope> pool = {simplex(1), simplex(2), simplex(3),
                                  direct_sum(simplex(1), simplex(1)),
                                  product(simplex(1), simplex(2))};
    for (int iter = 0; iter < 10; ++iter) {
        const auto& p = pool[rng.below(pool.size())];
        const auto& q = pool[rng.below(pool.size())];
        auto pr = product(p, q);
        CHECK(pr.n_vertices() == p.n_vertices() * q.n_vertices());
        CHECK(pr.n_facets() == p.n_facets() + q.n_facets());
        CHECK(pr.dim == p.dim + q.dim);
        validate(pr);
        auto ds = direct_sum(p, q);
        CHECK(ds.n_vertices() == p.n_vertices() + q.n_vertices());
        CHECK(ds.n_facets() == p.n_facets() * q.n_facets());
        CHECK(ds.dim == p.dim + q.dim);
        validate(ds);
        auto jn = join(p, q);
        CHECK(jn.n_vertices() == p.n_vertices() + q.n_vertices());
        CHECK(jn.n_facets() == p.n_facets() + q.n_facets());
        CHECK(jn.dim == p.dim + q.dim + 1);
        validate(jn);
        // Polar exchanges the product with the direct sum.
        CHECK(comb_iso(polar_dual(pr), direct_sum(polar_dual(p), polar_dual(q)))
                  .has_value());
    }
}

TEST_CASE("one-point suspension") {
    auto seg = simplex(1);
    auto q = one_point_suspension(seg, RVector{Rational(1, 2)});
    CHECK(q.dim == 2);
    CHECK(q.n_vertices() == 4);
    validate(q);

    auto square = direct_sum(simplex(1), simplex(1));
    auto at_vertex = one_point_suspension(square, square.vertices.points[0]);
    CHECK(at_vertex.dim == 3);
    CHECK(at_vertex.n_vertices() == 5); // the suspended vertex is absorbed
    validate(at_vertex);

    // A point with the wrong coordinate count cannot lie in the affine hull.
    CHECK_THROWS(one_point_suspension(square, rv({7, 7, 7})));
}

TEST_CASE("lawrence extension") {
    auto seg = simplex(1);
    auto q = lawrence_extension(seg, RVector{Rational(2)});
    CHECK(q.dim == 2);
    CHECK(q.n_vertices() == 4);
    // Frozen from the construction: the four vertices are exactly these.
    std::vector<RVector> expect = {rv({0, 0}), rv({1, 0}), rv({2, 1}), rv({2, 2})};
    auto got = q.vertices.points;
    std::sort(got.begin(), got.end(), fewxc::detail::LexLess{});
    std::sort(expect.begin(), expect.end(), fewxc::detail::LexLess{});
    CHECK(got == expect);

    auto prism = product(simplex(1), simplex(2));
    auto ext = lawrence_extension(prism, rv({3, 3, 3}));
    CHECK(ext.dim == 4);
    CHECK(ext.n_vertices() == 8);
    validate(ext);

    CHECK_THROWS_AS(lawrence_extension(prism, prism.vertices.points[0]), std::domain_error);
    CHECK_THROWS_AS(lawrence_extension(seg, RVector{Rational(1, 2)}), std::domain_error);
}

TEST_CASE("lifts at a projective point stabilize via a far surrogate") {
    auto prism = product(simplex(1), simplex(2));
    auto ext = lawrence_extension(prism, LiftPoint::direction(rv({1, 0, 0})));
    CHECK(ext.dim == 4);
    CHECK(ext.n_vertices() == 8);
    validate(ext);
    auto ops = one_point_suspension(prism, LiftPoint::direction(rv({0, 1, 0})));
    CHECK(ops.dim == 4);
    CHECK(ops.n_vertices() == 8);
    validate(ops);
}

TEST_CASE("cyclic polytopes") {
    auto hexagon = cyclic(2, 6);
    CHECK(hexagon.n_vertices() == 6);
    CHECK(hexagon.n_facets() == 6);
    auto c48 = cyclic(4, 8);
    CHECK(c48.n_vertices() == 8);
    CHECK(c48.n_facets() == 20);
    auto c36 = cyclic(3, 6);
    CHECK(c36.n_vertices() == 6);
    CHECK(c36.n_facets() == 8);
    std::vector<Rational> bad = {Rational(1), Rational(1), Rational(2)};
    CHECK_THROWS_AS(cyclic(2, 3, bad), std::invalid_argument);
}

TEST_CASE("regular hexagon is Desarguian with all three lines parallel") {
    auto hex = regular_hexagon();
    REQUIRE(hex.n_vertices() == 6);
    const auto cyc = polygon_cycle(hex);
    // Pairs {0,1}, {2,5}, {3,4} along the cycle give parallel lines.
    auto pt = [&](std::size_t i) { return hex.vertices.points[cyc[i]]; };
    auto l1 = line_through(pt(0), pt(1));
    auto l2 = line_through(pt(5), pt(2));
    auto l3 = line_through(pt(3), pt(4));
    auto w = concurrent(l1, l2, l3);
    REQUIRE(w.has_value());
    CHECK(w->at_infinity());
}

TEST_CASE("desarguian hexagon generator") {
    const HomPoint c{Rational(0), Rational(-4), Rational(1)};
    const std::vector<RVector> rays = {rv({1, 2}), rv({0, 1}), rv({-1, 2})};
    const std::vector<Rational> picks = {Rational(3, 2), Rational(3), Rational(7),
                                         Rational(2),    Rational(3, 2), Rational(3)};
    auto gen = desarguian_hexagon(c, rays, picks);
    CHECK(gen.hexagon.n_vertices() == 6);
    CHECK(gen.witness == c);
    validate(gen.hexagon);

    // Witness at infinity: three parallel vertical lines, anchors as rays.
    const HomPoint cinf{Rational(0), Rational(1), Rational(0)};
    auto gen2 = desarguian_hexagon(
        cinf, {rv({-1, 0}), rv({0, 0}), rv({1, 0})},
        {Rational(-1), Rational(1), Rational(-2), Rational(2), Rational(-1), Rational(1)});
    CHECK(gen2.hexagon.n_vertices() == 6);
    CHECK(gen2.witness.at_infinity());

    // Picks that land a line's points inside the hull of the others fail.
    CHECK_THROWS_AS(
        desarguian_hexagon(c, rays,
                           {Rational(3, 2), Rational(3), Rational(9, 2), Rational(4),
                            Rational(3, 2), Rational(3)}),
        std::domain_error);
}

TEST_CASE("build family") {
    FamilySpec jf;
    jf.kind = FamilySpec::Kind::join_family;
    jf.k = 0;
    jf.n = 1;
    jf.m = 1;
    auto p = build_family(jf);
    CHECK(p.dim == 6);
    CHECK(p.n_vertices() == 10);
    validate(p);

    FamilySpec kp;
    kp.kind = FamilySpec::Kind::kfold_pyramid_product;
    kp.k = 3;
    kp.n = 1;
    kp.m = 3;
    auto q = build_family(kp); // d = 7
    CHECK(q.dim == 7);
    CHECK(q.n_vertices() == 11);
    CHECK(q.n_facets() == 9);

    Xorshift rng(37);
    for (int iter = 0; iter < 6; ++iter) {
        FamilySpec ks;
        ks.kind = FamilySpec::Kind::kfold_pyramid_sum;
        ks.k = rng.below(3);
        ks.n = 1 + rng.below(3);
        ks.m = 1 + rng.below(3);
        auto s = build_family(ks);
        CHECK(s.n_vertices() == ks.k + ks.n + ks.m + 2);
        CHECK(s.dim == ks.k + ks.n + ks.m);
    }
}

TEST_CASE("pyramid round trip over the quick corpus") {
    for (const auto& e : corpus(false)) {
        auto lifted = pyramid(e.polytope, 1);
        auto dec = pyramid_decompose(lifted);
        CHECK(dec.k == pyramid_decompose(e.polytope).k + 1);
        CHECK(comb_iso(pyramid(dec.base, dec.k), lifted).has_value());
    }
}
