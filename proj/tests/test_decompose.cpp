#include <doctest.h>

#include "hgdecomp/decompose.hpp"
#include "hgdecomp/validate.hpp"
#include "support.hpp"

using namespace hgdecomp;
using support::hg;

TEST_CASE("detk solves the single edge at width 1") {
    auto h = hg({{"e1", {"a", "b"}}});
    auto d = decompose::detk_decompose(h, 1);
    REQUIRE(d.has_value());
    CHECK(d->nodes.size() == 1);
    CHECK(d->width() == 1);
    CHECK(validate::validate_hd(h, *d).ok);
    CHECK(validate::is_normal_form(h, *d).ok);
}

TEST_CASE("detk on the triangle") {
    auto h = support::triangle();
    CHECK_FALSE(decompose::detk_decompose(h, 1).has_value());
    auto d = decompose::detk_decompose(h, 2);
    REQUIRE(d.has_value());
    CHECK(d->width() <= 2);
    CHECK(validate::validate_hd(h, *d).ok);
    CHECK(validate::is_normal_form(h, *d).ok);
}

TEST_CASE("detk output is normal form across fuzz instances") {
    for (std::uint64_t i = 0; i < 40; ++i) {
        auto h = support::fuzz_hypergraph(i, {.seed = 41, .max_edges = 7});
        for (int k = 1; k <= 2; ++k) {
            auto d = decompose::detk_decompose(h, k);
            if (d) {
                CHECK(d->width() <= k);
                CHECK(validate::validate_hd(h, *d).ok);
                CHECK(validate::is_normal_form(h, *d).ok);
            }
        }
    }
}

TEST_CASE("subedge generation, pairs variant") {
    auto tri = support::triangle();
    auto subs = decompose::generate_subedges(tri, decompose::SubedgeVariant::Pairs);
    std::set<std::set<std::string>> sets;
    for (const auto& [name, verts] : subs.subedges) {
        sets.insert(verts);
    }
    CHECK(sets == std::set<std::set<std::string>>{{"a"}, {"b"}, {"c"}});
    for (const auto& [name, verts] : subs.subedges) {
        auto origin = tri.edge_vertices(subs.provenance.at(name));
        CHECK(std::includes(origin.begin(), origin.end(), verts.begin(), verts.end()));
    }

    auto disjoint = hg({{"e1", {"a", "b"}}, {"e2", {"c", "d"}}});
    CHECK(decompose::generate_subedges(disjoint, decompose::SubedgeVariant::Pairs)
              .subedges.empty());

    auto star = support::star_with_big_edge(3);
    auto star_subs = decompose::generate_subedges(star, decompose::SubedgeVariant::Pairs);
    std::set<std::set<std::string>> star_sets;
    for (const auto& [name, verts] : star_subs.subedges) {
        star_sets.insert(verts);
    }
    CHECK(star_sets ==
          std::set<std::set<std::string>>{{"v00"}, {"v01"}, {"v02"}, {"v03"}});
}

TEST_CASE("subedge generation, bounded-rank variant") {
    auto h = hg({{"e1", {"a", "b", "c"}}});
    auto subs = decompose::generate_subedges(h, decompose::SubedgeVariant::BoundedRank);
    CHECK(subs.subedges.size() == 6);  // proper nonempty subsets
    decompose::SubedgeParams tight;
    tight.max_rank = 2;
    CHECK_THROWS_AS(decompose::generate_subedges(h, decompose::SubedgeVariant::BoundedRank, tight),
                    std::invalid_argument);
    decompose::SubedgeParams capped;
    capped.output_cap = 2;
    CHECK_THROWS_AS(decompose::generate_subedges(h, decompose::SubedgeVariant::BoundedRank, capped),
                    decompose::ResourceLimitError);
}

TEST_CASE("ghw via detk with subedges") {
    auto tri = support::triangle();
    CHECK_FALSE(decompose::ghw_decompose_detk(tri, 1, decompose::BipVariant::Global).has_value());
    CHECK_FALSE(decompose::ghw_decompose_detk(tri, 1, decompose::BipVariant::Local).has_value());
    auto d = decompose::ghw_decompose_detk(tri, 2, decompose::BipVariant::Global);
    REQUIRE(d.has_value());
    CHECK(validate::validate_ghd(tri, *d).ok);
    CHECK(d->width() <= 2);

    auto path = support::path_hypergraph(3);
    auto p = decompose::ghw_decompose_detk(path, 1, decompose::BipVariant::Local);
    REQUIRE(p.has_value());
    CHECK(p->width() == 1);
    CHECK(validate::validate_ghd(path, *p).ok);
}

TEST_CASE("balsep accepts the path at width 1 and rejects the triangle") {
    auto path = support::path_hypergraph(4);
    decompose::BalsepRunInfo info;
    auto d = decompose::balsep_decompose(path, 1, {}, &info);
    REQUIRE(d.has_value());
    CHECK(d->width() == 1);
    CHECK(validate::validate_ghd(path, *d).ok);
    // every separator node was balanced for its subproblem
    for (const auto& n : info.nodes) {
        if (n.separator_node) {
            CHECK(2 * n.largest_component <= n.subproblem_items);
        }
    }

    auto tri = support::triangle();
    CHECK_FALSE(decompose::balsep_decompose(tri, 1).has_value());
    auto d2 = decompose::balsep_decompose(tri, 2);
    REQUIRE(d2.has_value());
    CHECK(validate::validate_ghd(tri, *d2).ok);
}

TEST_CASE("balsep recursion depth stays logarithmic") {
    for (int n : {4, 6, 8, 10, 12}) {
        auto path = support::path_hypergraph(n);
        decompose::BalsepRunInfo info;
        auto d = decompose::balsep_decompose(path, 2, {}, &info);
        REQUIRE(d.has_value());
        int bound = 1;
        while ((1 << bound) < n) {
            ++bound;  // ceil(log2 n)
        }
        CHECK(info.max_depth <= bound + 1);
    }
}

TEST_CASE("hybrid boundary depths match their pure counterparts") {
    for (std::uint64_t i = 0; i < 25; ++i) {
        auto h = support::fuzz_hypergraph(i, {.seed = 43, .max_edges = 6});
        for (int k = 1; k <= 2; ++k) {
            bool pure_detk =
                decompose::ghw_decompose_detk(h, k, decompose::BipVariant::Local).has_value();
            bool pure_balsep = decompose::balsep_decompose(h, k).has_value();
            bool h0 = decompose::hybrid_decompose(h, k, 0).has_value();
            bool h1 = decompose::hybrid_decompose(h, k, 1).has_value();
            bool hinf = decompose::hybrid_decompose(h, k, decompose::kInfiniteDepth).has_value();
            CHECK(h0 == pure_detk);
            CHECK(hinf == pure_balsep);
            CHECK(h1 == pure_balsep);  // all methods agree on acceptance
        }
    }
}

TEST_CASE("candidate tree decomposition from given bags") {
    auto h = hg({{"e1", {"a", "b"}}, {"e2", {"b", "c"}}});
    auto d = decompose::candidate_td(h, {{"a", "b"}, {"b", "c"}});
    REQUIRE(d.has_value());
    CHECK(d->nodes.size() == 2);
    CHECK(validate::validate_td(h, *d).ok);
    CHECK(validate::is_normal_form(h, *d).ok);

    auto tri = support::triangle();
    CHECK_FALSE(decompose::candidate_td(tri, {{"a", "b"}, {"b", "c"}, {"c", "a"}}).has_value());

    auto any = decompose::candidate_td(tri, {{"a", "b", "c"}});
    REQUIRE(any.has_value());
    CHECK(any->nodes.size() == 1);

    CHECK_THROWS_AS(decompose::candidate_td(tri, {}), std::invalid_argument);
    CHECK_THROWS_AS(decompose::candidate_td(tri, {{}}), std::invalid_argument);
}

TEST_CASE("bounded-rank candidate bags") {
    auto single = hg({{"e1", {"a", "b"}}});
    auto bags = decompose::candidate_bags_bounded_rank(single, 1, 5);
    CHECK(bags == std::set<std::set<std::string>>{{"a"}, {"b"}, {"a", "b"}});

    auto tri = support::triangle();
    auto bags1 = decompose::candidate_bags_bounded_rank(tri, 1, 5);
    CHECK(bags1 == std::set<std::set<std::string>>{
                       {"a"}, {"b"}, {"c"}, {"a", "b"}, {"b", "c"}, {"a", "c"}});
    auto bags2 = decompose::candidate_bags_bounded_rank(tri, 2, 5);
    CHECK(bags2.count({"a", "b", "c"}) == 1);

    decompose::SearchOptions tiny;
    tiny.candidate_bag_cap = 3;
    CHECK_THROWS_AS(decompose::candidate_bags_bounded_rank(tri, 2, 5, tiny),
                    decompose::ResourceLimitError);
}

TEST_CASE("ghw via candidate bags") {
    auto tri = support::triangle();
    CHECK_FALSE(decompose::ghw_via_candidates(tri, 1, 5).has_value());
    auto d = decompose::ghw_via_candidates(tri, 2, 5);
    REQUIRE(d.has_value());
    CHECK(validate::validate_ghd(tri, *d).ok);
    CHECK(d->width() <= 2);

    auto single = hg({{"e1", {"a", "b"}}});
    auto s = decompose::ghw_via_candidates(single, 1, 5);
    REQUIRE(s.has_value());
    CHECK(s->width() == 1);
}

TEST_CASE("minimal width searches") {
    auto tri = support::triangle();
    auto hw = decompose::minimal_width(tri, WidthKind::Hw, decompose::Method::Detk, 3);
    CHECK(hw.found);
    CHECK(hw.width == 2);
    auto ghw = decompose::minimal_width(support::star_with_big_edge(3), WidthKind::Ghw,
                                        decompose::Method::Balsep, 3);
    CHECK(ghw.found);
    CHECK(ghw.width == 2);
    auto single = decompose::minimal_width(hg({{"e1", {"a", "b"}}}), WidthKind::Hw,
                                           decompose::Method::Detk, 3);
    CHECK(single.width == 1);
    auto capped = decompose::minimal_width(tri, WidthKind::Hw, decompose::Method::Detk, 1);
    CHECK_FALSE(capped.found);
    CHECK_THROWS_AS(
        decompose::minimal_width(tri, WidthKind::Hw, decompose::Method::Balsep, 2),
        std::invalid_argument);
}

TEST_CASE("methods agree with the oracles on a corpus sample") {
    auto corpus = support::corpus(400);
    for (const auto& mh : corpus) {
        auto h = support::to_hypergraph(mh);
        for (int k = 1; k <= 2; ++k) {
            bool hd_expected = support::oracle_hd_leq(mh, k);
            CHECK(decompose::detk_decompose(h, k).has_value() == hd_expected);
            bool ghd_expected = support::oracle_ghw_leq(mh, k);
            CHECK(decompose::ghw_decompose_detk(h, k, decompose::BipVariant::Global)
                      .has_value() == ghd_expected);
            CHECK(decompose::balsep_decompose(h, k).has_value() == ghd_expected);
            std::size_t rank = 0;
            for (std::size_t e = 0; e < h.edge_count(); ++e) {
                rank = std::max(rank, h.edge_bits(e).count());
            }
            CHECK(decompose::ghw_via_candidates(h, k, rank).has_value() == ghd_expected);
        }
    }
}

TEST_CASE("negative cache does not change answers") {
    for (std::uint64_t i = 0; i < 20; ++i) {
        auto h = support::fuzz_hypergraph(i, {.seed = 47, .max_edges = 6});
        decompose::SearchOptions with;
        decompose::SearchOptions without;
        without.use_cache = false;
        for (int k = 1; k <= 2; ++k) {
            CHECK(decompose::detk_decompose(h, k, with).has_value() ==
                  decompose::detk_decompose(h, k, without).has_value());
            CHECK(decompose::balsep_decompose(h, k, with).has_value() ==
                  decompose::balsep_decompose(h, k, without).has_value());
        }
    }
}

TEST_CASE("timeouts surface as TimeoutError") {
    // a large instance with an immediate deadline
    auto h = support::fuzz_hypergraph(1, {.seed = 53, .max_edges = 18});
    decompose::SearchOptions opts;
    opts.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    CHECK_THROWS_AS(decompose::detk_decompose(h, 3, opts), decompose::TimeoutError);
}

TEST_CASE("balsep workers do not change the verdict") {
    for (std::uint64_t i = 0; i < 12; ++i) {
        auto h = support::fuzz_hypergraph(i, {.seed = 59, .max_edges = 7});
        for (int k = 1; k <= 2; ++k) {
            decompose::SearchOptions seq;
            decompose::SearchOptions par;
            par.workers = 4;
            auto a = decompose::balsep_decompose(h, k, seq);
            auto b = decompose::balsep_decompose(h, k, par);
            CHECK(a.has_value() == b.has_value());
            if (b) {
                CHECK(validate::validate_ghd(h, *b).ok);
                CHECK(b->width() <= k);
            }
        }
    }
}
