#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "hgdecomp/core.hpp"
#include "hgdecomp/rational.hpp"

namespace hgdecomp::covers {

// Weight assignment on edges with codomain [0,1]. Only nonzero weights are
// stored, so the support is exactly the stored key set.
class EdgeWeightFunction {
public:
    EdgeWeightFunction() = default;

    // Throws std::invalid_argument when the weight is outside [0,1].
    void set(const std::string& edge, const Rational& weight);
    Rational get(const std::string& edge) const;

    std::set<std::string> support() const;
    Rational total_weight() const;
    bool empty() const { return weights_.empty(); }

    const std::map<std::string, Rational>& weights() const { return weights_; }

    bool operator==(const EdgeWeightFunction& o) const { return weights_ == o.weights_; }

private:
    std::map<std::string, Rational> weights_;
};

struct CoverResult {
    bool found = false;
    std::optional<EdgeWeightFunction> cover;
    Rational weight = 0;
};

// B(gamma): vertices whose incident weight sums to >= 1. Throws on weights
// referencing unknown edges.
std::set<std::string> covered_vertices(const core::Hypergraph& h, const EdgeWeightFunction& gamma);

// Exact minimum over {0,1}-weight functions covering X. Branch and bound
// seeded with a greedy upper bound. X empty yields weight 0.
CoverResult min_integral_cover(const core::Hypergraph& h, const std::set<std::string>& x);

// Exact rational optimum of the covering LP
//   min sum gamma(e)  s.t.  for v in X: sum_{e containing v} gamma(e) >= 1,
// with gamma(e) in [0,1]. Solved by exact-pivot simplex. Throws when X is
// not a subset of V.
CoverResult min_fractional_cover(const core::Hypergraph& h, const std::set<std::string>& x);

// True iff a cover of X with weight <= max_weight and support size <=
// max_support exists. Enumerates candidate supports with dominance pruning
// and solves each small LP exactly.
CoverResult limited_support_cover(const core::Hypergraph& h, const std::set<std::string>& x,
                                  const Rational& max_weight, std::size_t max_support);

// rho(V) / rho*(V).
Rational integrality_gap(const core::Hypergraph& h);

// Index-space helpers shared with the decomposition search.
namespace detail {
// Smallest number of edges (drawn from `candidates`) whose union covers
// `target`, up to `limit`; returns the chosen edges or nullopt.
std::optional<std::vector<std::size_t>> min_edge_union_cover(const core::Hypergraph& h,
                                                             const Bitset& target,
                                                             const Bitset& candidates,
                                                             std::size_t limit);
}  // namespace detail

}  // namespace hgdecomp::covers
