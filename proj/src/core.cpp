#include "hgdecomp/core.hpp"

#include <algorithm>

namespace hgdecomp::core {

Hypergraph::Hypergraph(const std::map<std::string, std::set<std::string>>& edges) {
    if (edges.empty()) {
        throw std::invalid_argument("hypergraph must have at least one edge");
    }
    std::set<std::string> verts;
    for (const auto& [name, vs] : edges) {
        if (vs.empty()) {
            throw std::invalid_argument("edge '" + name + "' is empty");
        }
        verts.insert(vs.begin(), vs.end());
    }
    vertex_names_.assign(verts.begin(), verts.end());
    for (std::size_t i = 0; i < vertex_names_.size(); ++i) {
        vertex_index_[vertex_names_[i]] = i;
    }
    for (const auto& [name, vs] : edges) {
        edge_index_[name] = edge_names_.size();
        edge_names_.push_back(name);
        Bitset bits(vertex_names_.size());
        for (const auto& v : vs) {
            bits.set(vertex_index_.at(v));
        }
        edge_bits_.push_back(std::move(bits));
    }
    incidence_bits_.assign(vertex_names_.size(), Bitset(edge_names_.size()));
    for (std::size_t e = 0; e < edge_bits_.size(); ++e) {
        for (std::size_t v = edge_bits_[e].find_first(); v != Bitset::npos;
             v = edge_bits_[e].find_next(v)) {
            incidence_bits_[v].set(e);
        }
    }
}

std::size_t Hypergraph::vertex_index(const std::string& name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) {
        throw std::invalid_argument("unknown vertex '" + name + "'");
    }
    return it->second;
}

std::size_t Hypergraph::edge_index(const std::string& name) const {
    auto it = edge_index_.find(name);
    if (it == edge_index_.end()) {
        throw std::invalid_argument("unknown edge '" + name + "'");
    }
    return it->second;
}

std::set<std::string> Hypergraph::edge_vertices(const std::string& edge) const {
    return vertex_names_of(edge_bits_[edge_index(edge)]);
}

std::map<std::string, std::set<std::string>> Hypergraph::edge_map() const {
    std::map<std::string, std::set<std::string>> out;
    for (std::size_t e = 0; e < edge_names_.size(); ++e) {
        out[edge_names_[e]] = vertex_names_of(edge_bits_[e]);
    }
    return out;
}

Bitset Hypergraph::vertex_set_of(const std::set<std::string>& names) const {
    Bitset bits = make_vertex_set();
    for (const auto& n : names) {
        bits.set(vertex_index(n));
    }
    return bits;
}

std::set<std::string> Hypergraph::vertex_names_of(const Bitset& bits) const {
    std::set<std::string> out;
    for (std::size_t v = bits.find_first(); v != Bitset::npos; v = bits.find_next(v)) {
        out.insert(vertex_names_[v]);
    }
    return out;
}

Bitset Hypergraph::all_vertices() const {
    Bitset bits = make_vertex_set();
    for (std::size_t v = 0; v < vertex_count(); ++v) {
        bits.set(v);
    }
    return bits;
}

Bitset Hypergraph::all_edges() const {
    Bitset bits = make_edge_set();
    for (std::size_t e = 0; e < edge_count(); ++e) {
        bits.set(e);
    }
    return bits;
}

std::size_t component_size(const Component& c) { return c.incident_edges.size(); }

std::vector<IndexComponent> components_within(const Hypergraph& h, const Bitset& edges,
                                              const Bitset& separator) {
    // Union-find over vertices: each edge links its non-separator vertices.
    std::vector<std::size_t> parent(h.vertex_count());
    for (std::size_t i = 0; i < parent.size(); ++i) {
        parent[i] = i;
    }
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };

    for (std::size_t e = edges.find_first(); e != Bitset::npos; e = edges.find_next(e)) {
        Bitset rest = h.edge_bits(e) - separator;
        std::size_t first = rest.find_first();
        if (first == Bitset::npos) {
            continue;
        }
        for (std::size_t v = rest.find_next(first); v != Bitset::npos; v = rest.find_next(v)) {
            unite(first, v);
        }
    }

    // Collect classes in smallest-vertex order. Only vertices that occur in
    // one of the given edges (and not in the separator) belong to a component.
    Bitset relevant(h.vertex_count());
    for (std::size_t e = edges.find_first(); e != Bitset::npos; e = edges.find_next(e)) {
        relevant |= h.edge_bits(e);
    }
    relevant -= separator;

    std::map<std::size_t, std::size_t> root_to_slot;
    std::vector<IndexComponent> out;
    for (std::size_t v = relevant.find_first(); v != Bitset::npos; v = relevant.find_next(v)) {
        std::size_t r = find(v);
        auto it = root_to_slot.find(r);
        if (it == root_to_slot.end()) {
            root_to_slot[r] = out.size();
            out.push_back({Bitset(h.vertex_count()), Bitset(edges.universe_size())});
            it = root_to_slot.find(r);
        }
        out[it->second].vertices.set(v);
    }
    for (auto& comp : out) {
        for (std::size_t e = edges.find_first(); e != Bitset::npos; e = edges.find_next(e)) {
            if (h.edge_bits(e).intersects(comp.vertices)) {
                comp.incident_edges.set(e);
            }
        }
    }
    return out;
}

std::vector<Component> components(const Hypergraph& h, const std::set<std::string>& separator) {
    Bitset sep = h.vertex_set_of(separator);
    auto idx = components_within(h, h.all_edges(), sep);
    std::vector<Component> out;
    out.reserve(idx.size());
    for (const auto& c : idx) {
        Component comp;
        comp.vertices = h.vertex_names_of(c.vertices);
        for (std::size_t e = c.incident_edges.find_first(); e != Bitset::npos;
             e = c.incident_edges.find_next(e)) {
            comp.incident_edges.insert(h.edge_name(e));
        }
        out.push_back(std::move(comp));
    }
    return out;
}

bool is_balanced_separator(const Hypergraph& h, const std::set<std::string>& separator) {
    Bitset sep = h.vertex_set_of(separator);
    auto comps = components_within(h, h.all_edges(), sep);
    for (const auto& c : comps) {
        if (2 * c.incident_edges.count() > h.edge_count()) {
            return false;
        }
    }
    return true;
}

PrimalGraph primal_graph(const Hypergraph& h) {
    PrimalGraph g;
    g.vertices = h.vertex_names();
    g.adjacency.assign(h.vertex_count(), Bitset(h.vertex_count()));
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        auto verts = h.edge_bits(e).to_indices();
        for (std::size_t i = 0; i < verts.size(); ++i) {
            for (std::size_t j = i + 1; j < verts.size(); ++j) {
                g.adjacency[verts[i]].set(verts[j]);
                g.adjacency[verts[j]].set(verts[i]);
            }
        }
    }
    for (std::size_t v = 0; v < h.vertex_count(); ++v) {
        for (std::size_t w = g.adjacency[v].find_first(); w != Bitset::npos;
             w = g.adjacency[v].find_next(w)) {
            if (v < w) {
                g.edges.emplace_back(h.vertex_name(v), h.vertex_name(w));
            }
        }
    }
    return g;
}

Hypergraph induced_subhypergraph(const Hypergraph& h, const std::set<std::string>& edge_subset) {
    if (edge_subset.empty()) {
        throw std::invalid_argument("empty subhypergraph");
    }
    std::map<std::string, std::set<std::string>> edges;
    for (const auto& name : edge_subset) {
        edges[name] = h.edge_vertices(name);
    }
    return Hypergraph(edges);
}

}  // namespace hgdecomp::core
