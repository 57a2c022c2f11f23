#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "hgdecomp/core.hpp"

namespace hgdecomp::stats {

struct StatsOptions {
    // Exact enumeration refuses when C(|E|, c) exceeds this; pass
    // allow_sampling to fall back to a deterministic strided sample instead.
    std::size_t subset_guard = 10'000'000;
    bool allow_sampling = false;
    std::size_t sample_size = 1'000'000;
};

struct StatsReport {
    std::string name;
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    std::size_t rank = 0;
    std::size_t degree = 0;
    // c -> max |intersection of any c distinct edges|.
    std::map<std::size_t, std::size_t> multi_intersection;
    std::map<std::string, bool> flags;
    bool approximate = false;
};

std::size_t rank(const core::Hypergraph& h);
std::size_t degree(const core::Hypergraph& h);

// Exact max over c-subsets of edges, with subset pruning when the running
// intersection cannot beat the best found. Throws when the guard is hit and
// sampling is not allowed.
std::size_t multi_intersection_size(const core::Hypergraph& h, std::size_t c,
                                    const StatsOptions& opts = {});

bool is_cd_hypergraph(const core::Hypergraph& h, std::size_t c, std::size_t d,
                      const StatsOptions& opts = {});

// Default c values {2,3,4} with threshold d = 5, plus the degree <= 5 flag
// reported as "(6,0)".
StatsReport report(const core::Hypergraph& h, const std::string& name,
                   const std::vector<std::size_t>& c_values = {2, 3, 4}, std::size_t threshold = 5,
                   const StatsOptions& opts = {});

// Fixed per-instance CSV header.
extern const char* kCsvHeader;
std::string csv_row(const StatsReport& r);

// Aggregate percentages over a corpus of reports, one summary row; empty
// corpus yields the header only.
std::string corpus_summary(const std::vector<StatsReport>& reports);

}  // namespace hgdecomp::stats
