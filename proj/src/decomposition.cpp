#include "hgdecomp/decomposition.hpp"

#include <algorithm>
#include <functional>

namespace hgdecomp {

std::string notion_name(Notion n) {
    switch (n) {
        case Notion::Td:
            return "td";
        case Notion::Hd:
            return "hd";
        case Notion::Ghd:
            return "ghd";
        case Notion::Fhd:
            return "fhd";
    }
    return "td";
}

std::optional<Notion> notion_from_name(const std::string& s) {
    if (s == "td") {
        return Notion::Td;
    }
    if (s == "hd") {
        return Notion::Hd;
    }
    if (s == "ghd") {
        return Notion::Ghd;
    }
    if (s == "fhd") {
        return Notion::Fhd;
    }
    return std::nullopt;
}

std::string width_kind_name(WidthKind k) {
    switch (k) {
        case WidthKind::Hw:
            return "hw";
        case WidthKind::Ghw:
            return "ghw";
        case WidthKind::Fhw:
            return "fhw";
    }
    return "hw";
}

std::optional<WidthKind> width_kind_from_name(const std::string& s) {
    if (s == "hw") {
        return WidthKind::Hw;
    }
    if (s == "ghw") {
        return WidthKind::Ghw;
    }
    if (s == "fhw") {
        return WidthKind::Fhw;
    }
    return std::nullopt;
}

int Decomposition::add_node(DecompositionNode node) {
    int id = nodes.empty() ? 1 : nodes.rbegin()->first + 1;
    nodes.emplace(id, std::move(node));
    return id;
}

std::vector<int> Decomposition::children(int id) const {
    std::vector<int> out;
    for (const auto& [p, c] : tree_edges) {
        if (p == id) {
            out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<int> Decomposition::parent(int id) const {
    for (const auto& [p, c] : tree_edges) {
        if (c == id) {
            return p;
        }
    }
    return std::nullopt;
}

bool Decomposition::is_tree() const {
    if (nodes.empty() || nodes.count(root) == 0) {
        return false;
    }
    if (tree_edges.size() + 1 != nodes.size()) {
        return false;
    }
    std::map<int, int> indegree;
    for (const auto& [id, n] : nodes) {
        indegree[id] = 0;
    }
    for (const auto& [p, c] : tree_edges) {
        if (nodes.count(p) == 0 || nodes.count(c) == 0) {
            return false;
        }
        indegree[c] += 1;
    }
    if (indegree[root] != 0) {
        return false;
    }
    for (const auto& [id, d] : indegree) {
        if (id != root && d != 1) {
            return false;
        }
    }
    // Reachability from the root covers all nodes.
    std::set<int> seen;
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        if (!seen.insert(u).second) {
            return false;  // cycle
        }
        for (int c : children(u)) {
            stack.push_back(c);
        }
    }
    return seen.size() == nodes.size();
}

Rational Decomposition::width() const {
    Rational w = 0;
    for (const auto& [id, n] : nodes) {
        w = std::max(w, n.cover.total_weight());
    }
    return w;
}

std::set<std::string> Decomposition::subtree_vertices(int id) const {
    std::set<std::string> out;
    std::vector<int> stack{id};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        const auto& bag = nodes.at(u).bag;
        out.insert(bag.begin(), bag.end());
        for (int c : children(u)) {
            stack.push_back(c);
        }
    }
    return out;
}

std::vector<int> Decomposition::preorder() const {
    std::vector<int> order;
    std::function<void(int)> walk = [&](int u) {
        order.push_back(u);
        for (int c : children(u)) {
            walk(c);
        }
    };
    walk(root);
    return order;
}

void Decomposition::reroot(int new_root) {
    std::map<int, std::vector<int>> adj;
    for (const auto& [p, c] : tree_edges) {
        adj[p].push_back(c);
        adj[c].push_back(p);
    }
    std::vector<std::pair<int, int>> oriented;
    std::set<int> seen{new_root};
    std::vector<int> stack{new_root};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        auto nbrs = adj[u];
        std::sort(nbrs.begin(), nbrs.end());
        for (int v : nbrs) {
            if (seen.insert(v).second) {
                oriented.emplace_back(u, v);
                stack.push_back(v);
            }
        }
    }
    tree_edges = std::move(oriented);
    root = new_root;
}

void Decomposition::normalize_ids() {
    std::map<int, int> remap;
    int next = 1;
    for (int id : preorder()) {
        remap[id] = next++;
    }
    std::map<int, DecompositionNode> renamed;
    for (auto& [id, n] : nodes) {
        renamed[remap.at(id)] = std::move(n);
    }
    nodes = std::move(renamed);
    for (auto& [p, c] : tree_edges) {
        p = remap.at(p);
        c = remap.at(c);
    }
    std::sort(tree_edges.begin(), tree_edges.end());
    root = remap.at(root);
}

}  // namespace hgdecomp
