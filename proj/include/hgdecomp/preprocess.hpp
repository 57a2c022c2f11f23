#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hgdecomp/core.hpp"
#include "hgdecomp/covers.hpp"
#include "hgdecomp/decomposition.hpp"

namespace hgdecomp::preprocess {

enum class StepKind {
    SubsumedEdge,
    DegreeOneVertex,
    SimplicialVertex,
    TypeCollapse,
    BiconnectedSplit,
};

std::string step_kind_name(StepKind k);

// One record per atomic simplification; replaying the steps on the original
// hypergraph reproduces the simplified blocks exactly.
struct Step {
    StepKind kind = StepKind::SubsumedEdge;
    int block = 0;

    // SubsumedEdge
    std::string removed_edge;
    std::string witness_edge;

    // DegreeOneVertex / SimplicialVertex / TypeCollapse
    std::string vertex;
    std::string host_edge;                    // DegreeOneVertex
    std::vector<std::string> incident_edges;  // SimplicialVertex
    covers::EdgeWeightFunction clique_cover;  // SimplicialVertex
    Rational lower_bound = 0;                 // SimplicialVertex

    std::string kept_vertex;                   // TypeCollapse
    std::vector<std::string> removed_vertices; // TypeCollapse

    // BiconnectedSplit
    std::vector<std::pair<int, std::vector<std::string>>> new_blocks;
    std::vector<std::string> articulation_vertices;
};

struct SimplificationTrace {
    std::vector<Step> steps;
};

std::string trace_to_json(const SimplificationTrace& trace);

struct RuleResult {
    core::Hypergraph hypergraph;
    std::vector<Step> steps;
};

// Removes every edge contained in another; among equal edges the smallest
// name survives.
RuleResult remove_subsumed_edges(const core::Hypergraph& h);

// Removes vertices of degree one; an edge whose vertices are all degree one
// keeps its smallest vertex so edges never become empty.
RuleResult remove_degree_one_vertices(const core::Hypergraph& h);

// Removes vertices whose neighbourhood is a clique of the primal graph and
// tracks the fractional cover number of the closed neighbourhood as a lower
// bound. Licensed for fhw only; other modes are an error.
struct SimplicialResult {
    core::Hypergraph hypergraph;
    std::vector<Step> steps;
    Rational lower_bound = 0;
};
SimplicialResult remove_simplicial_vertices(const core::Hypergraph& h, WidthKind mode);

// Keeps one vertex per type (set of incident edges).
RuleResult collapse_vertex_types(const core::Hypergraph& h);

struct SplitResult {
    std::vector<core::Hypergraph> blocks;
    std::optional<Step> step;  // absent when the hypergraph is one block
};
// Edge partition induced by the biconnected blocks of the primal graph;
// single-vertex edges join the block of their vertex.
SplitResult split_biconnected(const core::Hypergraph& h);

struct Block {
    int id = 0;
    core::Hypergraph hypergraph;
};

struct PreprocessResult {
    std::vector<Block> blocks;
    SimplificationTrace trace;
    Rational fhw_lower_bound = 0;
};

// Applies the licensed rules to a fixpoint, per pass: subsumed edges, vertex
// types, degree-one vertices, simplicial vertices (fhw only), biconnected
// split. hw/ghw license rules 1,2,3,5; fhw licenses all five.
PreprocessResult simplify(const core::Hypergraph& h, WidthKind notion);

// Replays a trace on the original hypergraph; returns block id -> edge map.
std::map<int, std::map<std::string, std::set<std::string>>> replay(
    const core::Hypergraph& original, const SimplificationTrace& trace);

// Re-solves a block when gluing needs a decomposition rooted at a cut
// vertex (HD only: rerooting is not width-safe there). Arguments: block
// hypergraph, width bound, vertices the root bag must contain.
using BlockSolver = std::function<std::optional<Decomposition>(
    const core::Hypergraph&, int, const std::set<std::string>&)>;

// Reverses the trace: reinserts collapsed and removed vertices, restores
// subsumed edges and glues blocks at articulation vertices. The result
// validates against the original hypergraph at width <= max(block widths, 1)
// (plus recorded clique bounds on the fhw path). Throws when a block
// decomposition is missing or does not validate against its block.
Decomposition lift_decomposition(const core::Hypergraph& original,
                                 const SimplificationTrace& trace,
                                 const std::map<int, Decomposition>& block_decompositions,
                                 const BlockSolver& hd_resolver = nullptr);

}  // namespace hgdecomp::preprocess
