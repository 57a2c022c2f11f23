#include <doctest.h>

#include "hgdecomp/stats.hpp"
#include "support.hpp"

using namespace hgdecomp;
using support::hg;

TEST_CASE("rank and degree") {
    CHECK(stats::rank(hg({{"e1", {"a", "b", "c"}}})) == 3);
    CHECK(stats::rank(support::triangle()) == 2);
    CHECK(stats::degree(support::triangle()) == 2);
    CHECK(stats::degree(hg({{"e1", {"a", "b"}}, {"e2", {"c", "d"}}})) == 1);
    for (int n = 2; n <= 8; ++n) {
        auto h = support::star_with_big_edge(n);
        CHECK(stats::rank(h) == static_cast<std::size_t>(n));
        CHECK(stats::degree(h) == static_cast<std::size_t>(n));
    }
}

TEST_CASE("multi-intersection sizes") {
    auto tri = support::triangle();
    CHECK(stats::multi_intersection_size(tri, 2) == 1);
    CHECK(stats::multi_intersection_size(tri, 3) == 0);
    CHECK(stats::multi_intersection_size(hg({{"e1", {"a", "b"}}, {"e2", {"c", "d"}}}), 2) == 0);
    for (int n = 2; n <= 10; ++n) {
        CHECK(stats::multi_intersection_size(support::star_with_big_edge(n), 2) == 1);
    }
    CHECK_THROWS_AS(stats::multi_intersection_size(tri, 1), std::invalid_argument);
    CHECK_THROWS_AS(stats::multi_intersection_size(tri, 4), std::invalid_argument);
}

TEST_CASE("multi-intersection is non-increasing in c") {
    for (std::uint64_t i = 0; i < 40; ++i) {
        auto h = support::fuzz_hypergraph(i, {.seed = 23, .max_edges = 8});
        std::size_t prev = SIZE_MAX;
        for (std::size_t c = 2; c <= std::min<std::size_t>(h.edge_count(), 4); ++c) {
            std::size_t mi = stats::multi_intersection_size(h, c);
            CHECK(mi <= prev);
            prev = mi;
        }
    }
}

TEST_CASE("pruned enumeration equals the naive maximum") {
    for (std::uint64_t i = 0; i < 40; ++i) {
        auto h = support::fuzz_hypergraph(i, {.seed = 29, .max_edges = 8});
        if (h.edge_count() < 2) {
            continue;
        }
        std::size_t c = 2 + i % std::min<std::size_t>(h.edge_count() - 1, 3);
        if (c > h.edge_count()) {
            continue;
        }
        // naive: iterate all c-subsets directly
        std::vector<std::size_t> combo;
        std::size_t best = 0;
        std::function<void(std::size_t)> gen = [&](std::size_t start) {
            if (combo.size() == c) {
                auto inter = h.edge_bits(combo[0]);
                for (std::size_t j = 1; j < combo.size(); ++j) {
                    inter &= h.edge_bits(combo[j]);
                }
                best = std::max(best, inter.count());
                return;
            }
            for (std::size_t e = start; e < h.edge_count(); ++e) {
                combo.push_back(e);
                gen(e + 1);
                combo.pop_back();
            }
        };
        gen(0);
        CHECK(stats::multi_intersection_size(h, c) == best);
    }
}

TEST_CASE("cd-hypergraph checks") {
    auto tri = support::triangle();
    CHECK(stats::is_cd_hypergraph(tri, 3, 0));  // degree 2 -> (3,0)
    CHECK(stats::is_cd_hypergraph(hg({{"e1", {"a", "b", "c"}}}), 1, 3));  // rank 3 -> (1,3)
    for (int n = 2; n <= 8; ++n) {
        CHECK(stats::is_cd_hypergraph(support::star_with_big_edge(n), 2, 1));
    }
    // the general identities
    for (std::uint64_t i = 0; i < 30; ++i) {
        auto h = support::fuzz_hypergraph(i, {.seed = 31, .max_edges = 6});
        CHECK(stats::is_cd_hypergraph(h, 1, stats::rank(h)));
        CHECK(stats::is_cd_hypergraph(h, stats::degree(h) + 1, 0));
    }
}

TEST_CASE("report flags follow the default thresholds") {
    auto tri = support::triangle();
    auto r = stats::report(tri, "triangle");
    CHECK(r.flags.at("(6,0)-hypergraph"));
    CHECK(r.flags.at("(2,5)-hypergraph"));
    CHECK(r.multi_intersection.at(2) == 1);

    auto big = stats::report(support::star_with_big_edge(10), "star10");
    CHECK_FALSE(big.flags.at("(6,0)-hypergraph"));  // degree 10
    CHECK(big.flags.at("(2,5)-hypergraph"));

    auto counts = stats::report(tri, "bare", {}, 5);
    CHECK(counts.vertex_count == 3);
    CHECK(counts.edge_count == 3);
    CHECK(counts.multi_intersection.empty());
}

TEST_CASE("csv rows match the fixed header") {
    auto r = stats::report(support::triangle(), "tri");
    CHECK(std::string(stats::kCsvHeader) ==
          "name,vertices,edges,rank,degree,mi2,mi3,mi4,deg_le5,i2_le5,mi3_le5,mi4_le5");
    CHECK(stats::csv_row(r) == "tri,3,3,2,2,1,0,0,1,1,1,1");
}

TEST_CASE("corpus summary aggregates percentages") {
    auto tri = stats::report(support::triangle(), "tri");
    auto star = stats::report(support::star_with_big_edge(10), "star10");
    auto one = stats::corpus_summary({tri});
    CHECK(one.find("all,1,100,100,100,100") != std::string::npos);
    auto two = stats::corpus_summary({tri, star});
    CHECK(two.find("all,2,50,100,100,100") != std::string::npos);
    auto none = stats::corpus_summary({});
    CHECK(none == "class,instances,deg_le5_pct,mi2_le5_pct,mi3_le5_pct,mi4_le5_pct\n");
}

TEST_CASE("subset guard suggests sampling") {
    // 40 edges choose 10 exceeds a tiny guard
    std::map<std::string, std::set<std::string>> edges;
    for (int i = 0; i < 40; ++i) {
        edges["e" + std::to_string(100 + i)] = {"a", "v" + std::to_string(100 + i)};
    }
    auto h = hg(edges);
    stats::StatsOptions opts;
    opts.subset_guard = 1000;
    CHECK_THROWS_AS(stats::multi_intersection_size(h, 10, opts), std::runtime_error);
    opts.allow_sampling = true;
    opts.sample_size = 200;
    CHECK(stats::multi_intersection_size(h, 10, opts) == 1);  // all share vertex a
}
