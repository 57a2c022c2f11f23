#pragma once

#include <atomic>
#include <chrono>
#include <climits>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_set>
#include <vector>

#include "hgdecomp/core.hpp"
#include "hgdecomp/decomposition.hpp"

namespace hgdecomp::decompose {

enum class Method { Detk, DetkGhwGlobal, DetkGhwLocal, Balsep, Hybrid, Candidate };

std::string method_name(Method m);
std::optional<Method> method_from_name(const std::string& s);

// Sentinel hybrid depth: balanced-separator logic all the way down.
inline constexpr int kInfiniteDepth = INT_MAX;

struct TimeoutError : std::runtime_error {
    TimeoutError() : std::runtime_error("search timed out") {}
};

struct ResourceLimitError : std::runtime_error {
    explicit ResourceLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SearchOptions {
    int workers = 1;
    // Hard cap on generated subedges; exceeding it raises ResourceLimitError.
    std::size_t subedge_cap = 1'000'000;
    std::size_t candidate_bag_cap = 5'000'000;
    // Cap on the size of subsets taken of pairwise intersections (d_max).
    std::size_t pair_subset_cap = SIZE_MAX;
    bool use_cache = true;
    // When false, balsep only tries full edge unions as separator bags
    // instead of all subsets of the union.
    bool balsep_subset_bags = true;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::atomic<bool>* cancel = nullptr;
};

// Canonical fingerprint of an exhausted subproblem; entries are inserted
// only after a complete failure at that k. Safe for concurrent use: readers
// may miss an in-flight insert (they just re-search) but never see a
// partial entry.
class NegativeCache {
public:
    struct Key {
        Bitset edges;
        Bitset conn;
        std::vector<Bitset> specials;  // kept sorted
        int k = 0;
        bool operator==(const Key& o) const {
            return k == o.k && edges == o.edges && conn == o.conn && specials == o.specials;
        }
    };
    struct KeyHash {
        std::size_t operator()(const Key& key) const {
            std::size_t h = key.edges.hash() * 31 + key.conn.hash() + key.k;
            for (const auto& s : key.specials) {
                h = h * 131 + s.hash();
            }
            return h;
        }
    };

    bool contains(const Key& key) const {
        std::shared_lock lock(mu_);
        return entries_.count(key) != 0;
    }
    void insert(Key key) {
        std::unique_lock lock(mu_);
        entries_.insert(std::move(key));
    }
    std::size_t size() const {
        std::shared_lock lock(mu_);
        return entries_.size();
    }

private:
    mutable std::shared_mutex mu_;
    std::unordered_set<Key, KeyHash> entries_;
};

struct SubedgeSet {
    // generated name -> vertex set
    std::map<std::string, std::set<std::string>> subedges;
    // generated name -> originating full edge (lex-smallest superset)
    std::map<std::string, std::string> provenance;
};

enum class SubedgeVariant { Pairs, BoundedRank };

struct SubedgeParams {
    // Pairs: max size of subsets taken of each pairwise intersection.
    std::size_t pair_subset_cap = SIZE_MAX;
    // BoundedRank: required bound on the hypergraph rank.
    std::size_t max_rank = 16;
    std::size_t output_cap = 1'000'000;
};

SubedgeSet generate_subedges(const core::Hypergraph& h, SubedgeVariant variant,
                             const SubedgeParams& params = {});

// Per-node bookkeeping of an accepting balanced-separator run, for checking
// the balance and recursion-depth guarantees from the outside.
struct BalsepNodeInfo {
    int depth = 0;
    std::size_t subproblem_items = 0;    // edges + specials
    std::size_t largest_component = 0;   // edges + specials of the biggest part
    bool separator_node = false;         // false for base-case nodes
};

struct BalsepRunInfo {
    std::vector<BalsepNodeInfo> nodes;
    int max_depth = 0;
};

// Top-down HD search; absence of a decomposition is a value, not an error.
std::optional<Decomposition> detk_decompose(const core::Hypergraph& h, int k,
                                            const SearchOptions& opts = {});

// HD search with the root bag constrained to contain the given vertices;
// used when gluing per-block decompositions back together.
std::optional<Decomposition> detk_decompose_rooted(const core::Hypergraph& h, int k,
                                                   const std::set<std::string>& root_vertices,
                                                   const SearchOptions& opts = {});

enum class BipVariant { Global, Local };

// GHD search via HD search over the hypergraph augmented with subedges.
// Global adds the full pairwise closure up front; Local offers subedges of
// the current subproblem's edges at each recursion step. Returned covers
// use original edges only.
std::optional<Decomposition> ghw_decompose_detk(const core::Hypergraph& h, int k,
                                                BipVariant variant,
                                                const SearchOptions& opts = {});

std::optional<Decomposition> balsep_decompose(const core::Hypergraph& h, int k,
                                              const SearchOptions& opts = {},
                                              BalsepRunInfo* info = nullptr);

// Balanced-separator logic for recursion depths <= m, then the local-subedge
// HD search on each remaining subproblem.
std::optional<Decomposition> hybrid_decompose(const core::Hypergraph& h, int k, int m,
                                              const SearchOptions& opts = {});

// Normal-form tree decomposition with every bag drawn from `bags`.
std::optional<Decomposition> candidate_td(const core::Hypergraph& h,
                                          const std::set<std::set<std::string>>& bags);

// All nonempty subsets of unions of k edges. Requires rank(h) <= r_max.
std::set<std::set<std::string>> candidate_bags_bounded_rank(const core::Hypergraph& h, int k,
                                                            std::size_t r_max,
                                                            const SearchOptions& opts = {});

std::optional<Decomposition> ghw_via_candidates(const core::Hypergraph& h, int k,
                                                std::size_t r_max,
                                                const SearchOptions& opts = {});

struct MinimalWidthResult {
    bool found = false;
    int width = 0;  // smallest accepted k when found
    std::optional<Decomposition> witness;
};

// Linear search over k = 1..k_max with the given method. WidthKind::Hw
// requires Method::Detk; WidthKind::Ghw accepts the GHD methods.
MinimalWidthResult minimal_width(const core::Hypergraph& h, WidthKind kind, Method method,
                                 int k_max, const SearchOptions& opts = {},
                                 int hybrid_m = 2);

}  // namespace hgdecomp::decompose
