#include <doctest.h>

#include "hgdecomp/covers.hpp"
#include "support.hpp"

using namespace hgdecomp;
using support::hg;

TEST_CASE("covered_vertices applies the exact threshold") {
    auto h = hg({{"e1", {"a", "b"}}});
    covers::EdgeWeightFunction full;
    full.set("e1", 1);
    CHECK(covers::covered_vertices(h, full) == std::set<std::string>{"a", "b"});

    covers::EdgeWeightFunction half;
    half.set("e1", Rational(1, 2));
    CHECK(covers::covered_vertices(h, half).empty());

    covers::EdgeWeightFunction unknown;
    unknown.set("zz", 1);
    CHECK_THROWS_AS(covers::covered_vertices(h, unknown), std::invalid_argument);
}

TEST_CASE("spread weights cover the pendant star") {
    auto h = support::star_with_big_edge(3);
    covers::EdgeWeightFunction gamma;
    gamma.set("p1", Rational(1, 3));
    gamma.set("p2", Rational(1, 3));
    gamma.set("p3", Rational(1, 3));
    gamma.set("big", Rational(2, 3));
    CHECK(covers::covered_vertices(h, gamma) ==
          std::set<std::string>{"v00", "v01", "v02", "v03"});
}

TEST_CASE("weights outside [0,1] are rejected") {
    covers::EdgeWeightFunction gamma;
    CHECK_THROWS_AS(gamma.set("e1", Rational(3, 2)), std::invalid_argument);
    CHECK_THROWS_AS(gamma.set("e1", Rational(-1, 2)), std::invalid_argument);
    gamma.set("e1", 1);
    gamma.set("e1", 0);  // zero removes the entry
    CHECK(gamma.support().empty());
}

TEST_CASE("integral cover minima") {
    auto single = hg({{"e1", {"a", "b"}}});
    auto r1 = covers::min_integral_cover(single, {"a", "b"});
    CHECK(r1.found);
    CHECK(r1.weight == 1);

    auto tri = support::triangle();
    auto r2 = covers::min_integral_cover(tri, {"a", "b", "c"});
    CHECK(r2.weight == Rational(*support::brute_integral_cover(tri, {"a", "b", "c"})));
    CHECK(r2.weight == 2);

    auto star = support::star_with_big_edge(3);
    std::set<std::string> all(star.vertex_names().begin(), star.vertex_names().end());
    auto r3 = covers::min_integral_cover(star, all);
    CHECK(r3.weight == Rational(*support::brute_integral_cover(star, all)));
    CHECK(r3.weight == 2);

    auto r0 = covers::min_integral_cover(tri, {});
    CHECK(r0.found);
    CHECK(r0.weight == 0);
    CHECK(r0.cover->empty());
}

TEST_CASE("fractional cover hits the known optima") {
    auto single = hg({{"e1", {"a", "b"}}});
    CHECK(covers::min_fractional_cover(single, {"a", "b"}).weight == 1);

    auto star = support::star_with_big_edge(3);
    std::set<std::string> all(star.vertex_names().begin(), star.vertex_names().end());
    CHECK(covers::min_fractional_cover(star, all).weight == Rational(5, 3));

    auto tri = support::triangle();
    auto r = covers::min_fractional_cover(tri, {"a", "b", "c"});
    CHECK(r.weight == Rational(3, 2));
    CHECK(r.weight == support::brute_fractional_cover(tri, {"a", "b", "c"}));

    CHECK_THROWS_AS(covers::min_fractional_cover(tri, {"zz"}), std::invalid_argument);
}

TEST_CASE("fractional witness covers the target exactly") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        auto h = support::fuzz_hypergraph(i, {.seed = 11, .max_edges = 5});
        std::set<std::string> all(h.vertex_names().begin(), h.vertex_names().end());
        auto r = covers::min_fractional_cover(h, all);
        REQUIRE(r.found);
        auto covered = covers::covered_vertices(h, *r.cover);
        CHECK(std::includes(covered.begin(), covered.end(), all.begin(), all.end()));
        CHECK(r.cover->total_weight() == r.weight);
        // LP optimum matches basic-solution enumeration
        if (h.edge_count() <= 5 && h.vertex_count() <= 8) {
            CHECK(r.weight == support::brute_fractional_cover(h, all));
        }
        // never exceeds the integral optimum
        auto integral = covers::min_integral_cover(h, all);
        CHECK(r.weight <= integral.weight);
    }
}

TEST_CASE("cover optima are monotone in the target set") {
    for (std::uint64_t i = 0; i < 30; ++i) {
        auto h = support::fuzz_hypergraph(i, {.seed = 13, .max_edges = 5});
        std::set<std::string> all(h.vertex_names().begin(), h.vertex_names().end());
        std::set<std::string> sub;
        int j = 0;
        for (const auto& v : all) {
            if (j++ % 2 == 0) {
                sub.insert(v);
            }
        }
        CHECK(covers::min_fractional_cover(h, sub).weight <=
              covers::min_fractional_cover(h, all).weight);
        CHECK(covers::min_integral_cover(h, sub).weight <=
              covers::min_integral_cover(h, all).weight);
    }
}

TEST_CASE("support-limited covers") {
    auto star = support::star_with_big_edge(3);
    std::set<std::string> all(star.vertex_names().begin(), star.vertex_names().end());
    auto r = covers::limited_support_cover(star, all, 2, 2);
    REQUIRE(r.found);
    CHECK(r.cover->support().size() <= 2);
    CHECK(r.weight <= 2);
    auto covered = covers::covered_vertices(star, *r.cover);
    CHECK(std::includes(covered.begin(), covered.end(), all.begin(), all.end()));

    auto single = hg({{"e1", {"a", "b"}}});
    CHECK(covers::limited_support_cover(single, {"a", "b"}, 1, 1).found);

    // a tight weight bound with tiny support fails on the star
    auto tight = covers::limited_support_cover(star, all, Rational(5, 3), 2);
    CHECK_FALSE(tight.found);
}

TEST_CASE("unbounded support matches the fractional optimum") {
    for (std::uint64_t i = 0; i < 30; ++i) {
        auto h = support::fuzz_hypergraph(i, {.seed = 17, .max_edges = 4});
        std::set<std::string> all(h.vertex_names().begin(), h.vertex_names().end());
        auto opt = covers::min_fractional_cover(h, all);
        for (const Rational& bound : {opt.weight, opt.weight + 1}) {
            auto r = covers::limited_support_cover(h, all, bound, h.edge_count());
            CHECK(r.found == (opt.weight <= bound));
        }
        if (opt.weight > Rational(1, 2)) {
            auto r = covers::limited_support_cover(h, all, opt.weight - Rational(1, 2),
                                                   h.edge_count());
            CHECK_FALSE(r.found);
        }
    }
}

TEST_CASE("integrality gaps") {
    CHECK(covers::integrality_gap(hg({{"e1", {"a", "b"}}})) == 1);
    CHECK(covers::integrality_gap(support::star_with_big_edge(3)) == Rational(6, 5));
    CHECK(covers::integrality_gap(hg({{"e1", {"a", "b"}}, {"e2", {"c", "d"}}})) == 1);
}

TEST_CASE("star family fractional optimum is 2 - 1/n") {
    for (int n = 2; n <= 12; ++n) {
        auto h = support::star_with_big_edge(n);
        std::set<std::string> all(h.vertex_names().begin(), h.vertex_names().end());
        CHECK(covers::min_fractional_cover(h, all).weight == Rational(2) - Rational(1, n));
    }
}
