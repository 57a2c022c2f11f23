#include "hgdecomp/validate.hpp"

#include <algorithm>
#include <functional>

namespace hgdecomp::validate {

std::string condition_name(Condition c) {
    switch (c) {
        case Condition::EdgeCoverage:
            return "1";
        case Condition::Connectedness:
            return "2";
        case Condition::BagCover:
            return "3";
        case Condition::Integrality:
            return "integrality";
        case Condition::SpecialCondition:
            return "4";
        case Condition::NormalForm:
            return "normal-form";
    }
    return "?";
}

namespace {

void check_references(const core::Hypergraph& h, const Decomposition& d) {
    if (!d.is_tree()) {
        throw std::invalid_argument("decomposition tree edges do not form a rooted tree");
    }
    for (const auto& [id, node] : d.nodes) {
        for (const auto& v : node.bag) {
            if (!h.has_vertex(v)) {
                throw std::invalid_argument("bag of node " + std::to_string(id) +
                                            " references unknown vertex '" + v + "'");
            }
        }
        for (const auto& [e, w] : node.cover.weights()) {
            if (!h.has_edge(e)) {
                throw std::invalid_argument("cover of node " + std::to_string(id) +
                                            " references unknown edge '" + e + "'");
            }
        }
    }
}

void check_td_conditions(const core::Hypergraph& h, const Decomposition& d,
                         ValidationReport& report) {
    // (1) every edge fits inside some bag
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        auto verts = h.edge_vertices(h.edge_name(e));
        bool covered = false;
        for (const auto& [id, node] : d.nodes) {
            if (std::includes(node.bag.begin(), node.bag.end(), verts.begin(), verts.end())) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            report.add(Condition::EdgeCoverage, {},
                       "edge '" + h.edge_name(e) + "' not contained in any bag");
        }
    }
    // (2) per-vertex occurrence sets are connected in T
    for (const auto& vname : h.vertex_names()) {
        std::set<int> occ;
        for (const auto& [id, node] : d.nodes) {
            if (node.bag.count(vname)) {
                occ.insert(id);
            }
        }
        if (occ.size() <= 1) {
            continue;
        }
        std::set<int> reached;
        std::vector<int> stack{*occ.begin()};
        reached.insert(*occ.begin());
        // Walk the tree as an undirected graph restricted to occurrence nodes.
        std::map<int, std::vector<int>> adj;
        for (const auto& [p, c] : d.tree_edges) {
            adj[p].push_back(c);
            adj[c].push_back(p);
        }
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[u]) {
                if (occ.count(v) && reached.insert(v).second) {
                    stack.push_back(v);
                }
            }
        }
        if (reached.size() != occ.size()) {
            report.add(Condition::Connectedness, std::vector<int>(occ.begin(), occ.end()),
                       "occurrences of vertex '" + vname + "' are disconnected");
        }
    }
}

void check_cover_condition(const core::Hypergraph& h, const Decomposition& d,
                           ValidationReport& report) {
    for (const auto& [id, node] : d.nodes) {
        auto covered = covers::covered_vertices(h, node.cover);
        for (const auto& v : node.bag) {
            if (!covered.count(v)) {
                report.add(Condition::BagCover, {id},
                           "bag vertex '" + v + "' not covered at node " + std::to_string(id));
            }
        }
    }
}

void check_integrality(const Decomposition& d, ValidationReport& report) {
    for (const auto& [id, node] : d.nodes) {
        for (const auto& [e, w] : node.cover.weights()) {
            if (w != 0 && w != 1) {
                report.add(Condition::Integrality, {id},
                           "weight " + format_rational(w) + " on edge '" + e +
                               "' at node " + std::to_string(id) + " is not integral");
            }
        }
    }
}

void check_special_condition(const core::Hypergraph& h, const Decomposition& d,
                             ValidationReport& report) {
    for (const auto& [id, node] : d.nodes) {
        auto covered = covers::covered_vertices(h, node.cover);
        auto below = d.subtree_vertices(id);
        for (const auto& v : below) {
            if (covered.count(v) && !node.bag.count(v)) {
                report.add(Condition::SpecialCondition, {id},
                           "covered vertex '" + v + "' occurs below node " +
                               std::to_string(id) + " but not in its bag");
            }
        }
    }
}

}  // namespace

ValidationReport validate_td(const core::Hypergraph& h, const Decomposition& d) {
    check_references(h, d);
    ValidationReport report;
    report.width = d.width();
    check_td_conditions(h, d, report);
    return report;
}

ValidationReport validate_fhd(const core::Hypergraph& h, const Decomposition& d) {
    ValidationReport report = validate_td(h, d);
    check_cover_condition(h, d, report);
    return report;
}

ValidationReport validate_ghd(const core::Hypergraph& h, const Decomposition& d) {
    ValidationReport report = validate_fhd(h, d);
    check_integrality(d, report);
    return report;
}

ValidationReport validate_hd(const core::Hypergraph& h, const Decomposition& d) {
    ValidationReport report = validate_ghd(h, d);
    check_special_condition(h, d, report);
    return report;
}

ValidationReport is_normal_form(const core::Hypergraph& h, const Decomposition& d) {
    check_references(h, d);
    ValidationReport report;
    report.width = d.width();
    for (const auto& [id, node] : d.nodes) {
        auto kids = d.children(id);
        if (kids.empty()) {
            continue;
        }
        auto comps = core::components(h, node.bag);
        for (int child : kids) {
            auto below = d.subtree_vertices(child);
            std::set<std::string> residue;
            for (const auto& v : below) {
                if (!node.bag.count(v)) {
                    residue.insert(v);
                }
            }
            bool matches = false;
            for (const auto& comp : comps) {
                if (comp.vertices == residue) {
                    matches = true;
                    break;
                }
            }
            if (!matches) {
                report.add(Condition::NormalForm, {id, child},
                           "subtree of node " + std::to_string(child) +
                               " is not exactly one component of its parent's bag");
            }
        }
    }
    return report;
}

ValidationReport validate_for_notion(const core::Hypergraph& h, const Decomposition& d) {
    switch (d.notion) {
        case Notion::Td:
            return validate_td(h, d);
        case Notion::Fhd:
            return validate_fhd(h, d);
        case Notion::Ghd:
            return validate_ghd(h, d);
        case Notion::Hd:
            return validate_hd(h, d);
    }
    return validate_td(h, d);
}

Rational width_of(const Decomposition& d) { return d.width(); }

}  // namespace hgdecomp::validate
