#include "catch2/catch_amalgamated.hpp"

#include "fewxc/constructors.hpp"
#include "fewxc/oracle.hpp"

#include "test_support.hpp"

#include <algorithm>

using namespace fewxc;

namespace {

Polytope ngon(std::size_t n) { return cyclic(2, n); }

// Independent exhaustive set cover over the same maximal rectangles, with
// nothing but incumbent pruning; cross-checks the branch-and-bound route.
std::size_t naive_cover(const SlackMatrix& s) {
    std::vector<std::vector<bool>> support(s.rows, std::vector<bool>(s.cols));
    for (std::size_t i = 0; i < s.rows; ++i)
        for (std::size_t j = 0; j < s.cols; ++j) support[i][j] = (s.entries[i][j] != 0);
    auto inst = fewxc::detail::build_cover_instance(support);
    std::bitset<fewxc::detail::kCoverGuard> all;
    for (std::size_t i = 0; i < inst.n_cells; ++i) all.set(i);
    std::size_t best = inst.n_cells + 1;
    auto rec = [&](auto&& self, std::bitset<fewxc::detail::kCoverGuard> uncovered,
                   std::size_t used) -> void {
        if (used >= best) return;
        if (uncovered.none()) {
            best = used;
            return;
        }
        std::size_t cell = 0;
        while (!uncovered.test(cell)) ++cell;
        for (auto r : inst.covering[cell]) self(self, uncovered & ~inst.rect_cells[r], used + 1);
    };
    rec(rec, all, 0);
    return best;
}

} // namespace

TEST_CASE("slack matrix structure of simplices and squares") {
    auto tri = simplex(2);
    auto s = slack_matrix(tri);
    // One positive entry per row, pairing each facet with its off vertex.
    for (std::size_t f = 0; f < 3; ++f) {
        std::size_t positives = 0;
        for (std::size_t v = 0; v < 3; ++v) {
            CHECK((s.entries[f][v] == 0) == static_cast<bool>(tri.incidence[f][v]));
            if (s.entries[f][v] != 0) ++positives;
        }
        CHECK(positives == 1);
    }
    auto sq = direct_sum(simplex(1), simplex(1));
    auto ss = slack_matrix(sq);
    for (std::size_t f = 0; f < 4; ++f)
        CHECK(std::count(ss.entries[f].begin(), ss.entries[f].end(), Rational(0)) == 2);
}

TEST_CASE("slack rank is dim + 1") {
    CHECK(slack_rank(slack_matrix(cyclic(4, 8))) == 5);
    CHECK(slack_rank(slack_matrix(simplex(3))) == 4);
    CHECK(slack_rank(slack_matrix(product(simplex(1), simplex(2)))) == 4);
    CHECK(slack_rank(slack_matrix(ngon(7))) == 3);
}

TEST_CASE("rectangle cover bound on frozen cases") {
    CHECK(rectangle_cover_bound(simplex(2)) == 3);
    CHECK(rectangle_cover_bound(direct_sum(simplex(1), simplex(1))) == 4);
    CHECK(rectangle_cover_bound(simplex(4)) == 5);
    CHECK(rectangle_cover_bound(product(simplex(1), simplex(2))) == 5);
}

TEST_CASE("rectangle cover bound agrees with the exhaustive route") {
    std::vector<Polytope> corpus = {simplex(2), simplex(3), direct_sum(simplex(1), simplex(1)),
                                    ngon(5), ngon(6), ngon(7), ngon(8),
                                    product(simplex(1), simplex(2)), cyclic(3, 6)};
    for (const auto& p : corpus) {
        auto s = slack_matrix(p);
        CHECK(rectangle_cover_bound(s) == naive_cover(s));
    }
}

TEST_CASE("rectangle cover guard") {
    auto big = cyclic(4, 15); // 15 x many support exceeds the guard
    CHECK_THROWS_AS(rectangle_cover_bound(big), std::domain_error);
}

TEST_CASE("verify extension accepts identity and rejects mismatches") {
    auto sq = direct_sum(simplex(1), simplex(1));
    auto idcert = ExtensionCertificate{sq, 2};
    auto res = verify_extension(sq, idcert);
    CHECK(res.ok);
    CHECK(res.facet_count == 4);

    // A prism over the square projects onto it.
    auto prism = product(sq, simplex(1));
    auto res2 = verify_extension(sq, ExtensionCertificate{prism, 2});
    CHECK(res2.ok);
    CHECK(res2.facet_count == 6);

    // Shadow hitting only part of the target fails.
    auto tri = simplex(2);
    CHECK_FALSE(verify_extension(tri, ExtensionCertificate{prism, 2}).ok);
    // Wrong keep fails.
    CHECK_FALSE(verify_extension(sq, ExtensionCertificate{prism, 1}).ok);
}

TEST_CASE("verify extension of every corpus member by itself") {
    for (const auto& p : {simplex(4), cyclic(3, 7), product(simplex(2), simplex(2))}) {
        auto res = verify_extension(p, ExtensionCertificate{p, p.dim});
        CHECK(res.ok);
        CHECK(res.facet_count == p.n_facets());
    }
}

TEST_CASE("xc interval") {
    auto tri = simplex(2);
    auto i1 = xc_interval(tri);
    CHECK(i1.lo == 3);
    CHECK(i1.hi == 3);

    auto prism = product(simplex(1), simplex(2));
    auto i2 = xc_interval(prism);
    CHECK(i2.lo == 5);
    CHECK(i2.hi == 5);

    auto oct8 = ngon(8);
    auto i3 = xc_interval(oct8);
    CHECK(i3.hi == 8);
    CHECK(i3.cover_bound_used);
    CHECK(i3.lo == rectangle_cover_bound(oct8));
    CHECK(i3.lo >= 4);
}

TEST_CASE("slack of the polar is the transpose up to scaling") {
    for (const auto& p : {product(simplex(1), simplex(2)), cyclic(3, 6),
                          direct_sum(simplex(2), simplex(1))}) {
        auto s = slack_matrix(p);
        auto sd = slack_matrix(polar_dual(p));
        REQUIRE(sd.rows == s.cols);
        REQUIRE(sd.cols == s.rows);
        for (std::size_t i = 0; i < sd.rows; ++i)
            for (std::size_t j = 0; j < sd.cols; ++j)
                CHECK((sd.entries[i][j] == 0) == (s.entries[j][i] == 0));
        CHECK(slack_rank(sd) == slack_rank(s));
    }
}
