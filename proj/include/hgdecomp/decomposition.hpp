#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hgdecomp/covers.hpp"
#include "hgdecomp/rational.hpp"

namespace hgdecomp {

enum class Notion { Td, Hd, Ghd, Fhd };

std::string notion_name(Notion n);
std::optional<Notion> notion_from_name(const std::string& s);

// Width notions a caller can ask the toolkit to compute or preprocess for.
enum class WidthKind { Hw, Ghw, Fhw };

std::string width_kind_name(WidthKind k);
std::optional<WidthKind> width_kind_from_name(const std::string& s);

struct DecompositionNode {
    std::set<std::string> bag;
    covers::EdgeWeightFunction cover;
};

// One rooted-tree type serves TD/HD/GHD/FHD; the notion picks which
// validator conditions apply and constrains the cover weights.
struct Decomposition {
    std::map<int, DecompositionNode> nodes;
    std::vector<std::pair<int, int>> tree_edges;  // parent -> child
    int root = 0;
    Notion notion = Notion::Td;

    int add_node(DecompositionNode node);
    void add_edge(int parent, int child) { tree_edges.emplace_back(parent, child); }

    std::vector<int> children(int id) const;
    std::optional<int> parent(int id) const;

    // True when tree_edges form a single rooted tree over exactly the node
    // ids, rooted at `root`.
    bool is_tree() const;

    // Max cover weight over all nodes; 0 for an empty decomposition.
    Rational width() const;

    // Union of bags in the subtree rooted at id.
    std::set<std::string> subtree_vertices(int id) const;

    // Node ids in deterministic preorder (children in ascending id order).
    std::vector<int> preorder() const;

    // Structure-preserving reroot; safe for TD/GHD/FHD whose conditions are
    // root-independent. Canonicalizes edges to parent->child from new_root.
    void reroot(int new_root);

    // Renumber node ids to a dense 1..n preorder numbering with sorted edge
    // list, which makes serialized output canonical.
    void normalize_ids();
};

}  // namespace hgdecomp
