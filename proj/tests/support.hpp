#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hgdecomp/core.hpp"
#include "hgdecomp/rational.hpp"

// Test-side helpers and independent oracles. Everything here is
// deliberately written as plain brute force over small instances and shares
// no search logic with the library.
namespace support {

namespace core = hgdecomp::core;
using hgdecomp::Rational;

core::Hypergraph hg(const std::map<std::string, std::set<std::string>>& edges);

// Pendant-star hypergraph family: vertices v0..vn, edges p01..p0n = {v0,vi}
// plus big = {v1..vn}.
core::Hypergraph star_with_big_edge(int n);

core::Hypergraph triangle();

// Path of binary edges e1={x1,x2}, ..., en={xn,xn+1}.
core::Hypergraph path_hypergraph(int edges);

// Breadth-first search over separator-avoiding edge paths.
std::vector<std::set<std::string>> bfs_components(const core::Hypergraph& h,
                                                  const std::set<std::string>& separator);

// Minimum number of edges whose union covers x, by enumerating all subsets.
std::optional<std::size_t> brute_integral_cover(const core::Hypergraph& h,
                                                const std::set<std::string>& x);

// Exact optimum of the covering LP by enumerating basic solutions of
// [A | -I] z = 1, z >= 0 with exact Gaussian elimination.
Rational brute_fractional_cover(const core::Hypergraph& h, const std::set<std::string>& x);

// Mask-based instances for the exhaustive corpus (at most 6 vertices).
struct MaskHypergraph {
    std::vector<std::uint64_t> edges;
};

core::Hypergraph to_hypergraph(const MaskHypergraph& mh);

bool mask_connected(const MaskHypergraph& mh);

// Exhaustive normal-form HD enumerator: true iff an HD of width <= k
// exists. Enumerates every cover subset and component split directly.
bool oracle_hd_leq(const MaskHypergraph& mh, int k);

// Exhaustive normal-form GHD enumerator over all integrally k-coverable
// bags.
bool oracle_ghw_leq(const MaskHypergraph& mh, int k);

// Deterministic corpus of connected hypergraphs with <= 5 edges over <= 6
// vertices: strided enumeration per edge count, capped at 20,000 total.
std::vector<MaskHypergraph> corpus(std::size_t cap = 20000);

// Deterministic fuzz hypergraphs (splitmix64-based); rank <= 5.
struct FuzzOptions {
    std::uint64_t seed = 1;
    std::size_t max_edges = 20;
};
core::Hypergraph fuzz_hypergraph(std::uint64_t index, const FuzzOptions& opts = {});

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace support
