#pragma once

#include <stdexcept>
#include <string>

#include "hgdecomp/core.hpp"
#include "hgdecomp/decomposition.hpp"
#include "hgdecomp/validate.hpp"

namespace hgdecomp::io {

struct ParseError : std::runtime_error {
    ParseError(int line, int col, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                             ": " + msg),
          line(line),
          col(col) {}
    int line;
    int col;
};

struct HypergraphDocument {
    core::Hypergraph hypergraph;
    std::string source_name;
    int line_count = 0;
};

// Grammar (HyperBench-style):
//   file    := ws (stmt ws)*
//   stmt    := NAME '(' NAME (',' NAME)* ')' (','|'.')?
//   comment := '%' .* EOL
//   NAME    := [A-Za-z0-9_:]+
// Duplicate vertex mentions within an edge collapse; duplicate edge names,
// empty edges and empty files are errors.
HypergraphDocument parse_hypergraph(const std::string& text,
                                    const std::string& source_name = "<memory>");

// Canonical form: statements sorted by edge name, one per line, vertices
// sorted, ',' terminators and a final '.'.
std::string serialize_hypergraph(const core::Hypergraph& h);

enum class DecompositionFormat { Json, Gml };

// Canonical, deterministic output; parse(serialize(d)) reproduces bags,
// covers, tree edges, root and notion exactly. Refuses structurally broken
// input (not a rooted tree).
std::string serialize_decomposition(const Decomposition& d, DecompositionFormat format);

// Auto-detects the format. Weights outside [0,1] and width mismatches are
// errors; references to unknown hypergraph edges are left to the validator.
Decomposition parse_decomposition(const std::string& text);

// Validation report as JSON for the CLI validate subcommand.
std::string report_to_json(const validate::ValidationReport& report);

}  // namespace hgdecomp::io
