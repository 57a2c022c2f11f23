#pragma once

#include <string>
#include <vector>

#include "hgdecomp/core.hpp"
#include "hgdecomp/decomposition.hpp"

namespace hgdecomp::validate {

enum class Condition {
    EdgeCoverage,     // (1) every edge inside some bag
    Connectedness,    // (2) per-vertex occurrence set connected in T
    BagCover,         // (3) B_u subset of B(gamma_u)
    Integrality,      // GHD/HD weights in {0,1}
    SpecialCondition, // (4) V(T_u) & B(gamma_u) subset of B_u
    NormalForm,       // each child subtree is exactly one [B_u]-component
};

std::string condition_name(Condition c);

struct Violation {
    Condition condition;
    std::vector<int> node_ids;
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
    Rational width = 0;

    void add(Condition c, std::vector<int> nodes, std::string detail) {
        ok = false;
        violations.push_back({c, std::move(nodes), std::move(detail)});
    }
};

// All validators collect violations exhaustively rather than failing fast.
// Dangling references (bag vertices or cover edges outside H, broken tree
// shape) throw std::invalid_argument instead of reporting a violation.
ValidationReport validate_td(const core::Hypergraph& h, const Decomposition& d);
ValidationReport validate_fhd(const core::Hypergraph& h, const Decomposition& d);
ValidationReport validate_ghd(const core::Hypergraph& h, const Decomposition& d);
ValidationReport validate_hd(const core::Hypergraph& h, const Decomposition& d);

// Checks the normal-form condition for internal nodes only.
ValidationReport is_normal_form(const core::Hypergraph& h, const Decomposition& d);

// Dispatch on the decomposition's notion.
ValidationReport validate_for_notion(const core::Hypergraph& h, const Decomposition& d);

Rational width_of(const Decomposition& d);

}  // namespace hgdecomp::validate
