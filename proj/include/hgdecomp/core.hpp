#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgdecomp/bitset.hpp"

namespace hgdecomp::core {

// Identifiers are opaque strings; internally everything runs on dense
// indices assigned in lexicographic name order, so index order equals
// name order and every iteration is deterministic.
class Hypergraph {
public:
    Hypergraph() = default;
    // Throws std::invalid_argument on an empty edge or an empty edge map.
    explicit Hypergraph(const std::map<std::string, std::set<std::string>>& edges);

    std::size_t vertex_count() const { return vertex_names_.size(); }
    std::size_t edge_count() const { return edge_names_.size(); }

    const std::vector<std::string>& vertex_names() const { return vertex_names_; }
    const std::vector<std::string>& edge_names() const { return edge_names_; }

    const std::string& vertex_name(std::size_t i) const { return vertex_names_[i]; }
    const std::string& edge_name(std::size_t i) const { return edge_names_[i]; }

    // Vertex membership of edge i as a bitset over the vertex universe.
    const Bitset& edge_bits(std::size_t i) const { return edge_bits_[i]; }
    // Edges containing vertex v as a bitset over the edge universe.
    const Bitset& incidence_bits(std::size_t v) const { return incidence_bits_[v]; }

    // Number of edges containing vertex v.
    std::size_t vertex_degree(std::size_t v) const { return incidence_bits_[v].count(); }

    bool has_vertex(const std::string& name) const {
        return vertex_index_.count(name) != 0;
    }
    bool has_edge(const std::string& name) const {
        return edge_index_.count(name) != 0;
    }
    std::size_t vertex_index(const std::string& name) const;
    std::size_t edge_index(const std::string& name) const;

    std::set<std::string> edge_vertices(const std::string& edge) const;
    std::map<std::string, std::set<std::string>> edge_map() const;

    Bitset make_vertex_set() const { return Bitset(vertex_count()); }
    Bitset make_edge_set() const { return Bitset(edge_count()); }
    Bitset vertex_set_of(const std::set<std::string>& names) const;
    std::set<std::string> vertex_names_of(const Bitset& bits) const;

    Bitset all_vertices() const;
    Bitset all_edges() const;

    bool operator==(const Hypergraph& o) const {
        return edge_names_ == o.edge_names_ && vertex_names_ == o.vertex_names_ &&
               edge_bits_ == o.edge_bits_;
    }

private:
    std::vector<std::string> vertex_names_;
    std::vector<std::string> edge_names_;
    std::map<std::string, std::size_t> vertex_index_;
    std::map<std::string, std::size_t> edge_index_;
    std::vector<Bitset> edge_bits_;
    std::vector<Bitset> incidence_bits_;
};

// A maximal [S]-connected vertex set together with its incident edges E_C.
// Carried eagerly because component sizes are queried constantly during
// separator search.
struct Component {
    std::set<std::string> vertices;
    std::set<std::string> incident_edges;
};

struct Separator {
    std::set<std::string> vertices;
    // Optional witnessing edges whose union contains the vertices.
    std::vector<std::string> witness_edges;
};

std::size_t component_size(const Component& c);

// Maximal [S]-connected components of V \ S, sorted by smallest vertex name.
// S = V yields an empty list.
std::vector<Component> components(const Hypergraph& h, const std::set<std::string>& separator);

// Index-space variant restricted to a subset of edges; used by the search
// algorithms. Returns (component vertex bits, incident edge bits) pairs in
// smallest-vertex order.
struct IndexComponent {
    Bitset vertices;
    Bitset incident_edges;
};
std::vector<IndexComponent> components_within(const Hypergraph& h, const Bitset& edges,
                                              const Bitset& separator);

// True iff every [S]-component C satisfies |E_C| <= |E| / 2. The comparison
// is exact (2 |E_C| <= |E|).
bool is_balanced_separator(const Hypergraph& h, const std::set<std::string>& separator);

struct PrimalGraph {
    std::vector<std::string> vertices;
    // Sorted pairs with first < second.
    std::vector<std::pair<std::string, std::string>> edges;
    // Adjacency over vertex indices of the source hypergraph.
    std::vector<Bitset> adjacency;
};

PrimalGraph primal_graph(const Hypergraph& h);

// Throws std::invalid_argument on an empty edge set or unknown edge names.
Hypergraph induced_subhypergraph(const Hypergraph& h, const std::set<std::string>& edge_subset);

}  // namespace hgdecomp::core
