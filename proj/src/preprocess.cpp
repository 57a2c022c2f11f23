#include "hgdecomp/preprocess.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>

#include "hgdecomp/validate.hpp"

namespace hgdecomp::preprocess {

std::string step_kind_name(StepKind k) {
    switch (k) {
        case StepKind::SubsumedEdge:
            return "subsumed-edge";
        case StepKind::DegreeOneVertex:
            return "degree-one-vertex";
        case StepKind::SimplicialVertex:
            return "simplicial-vertex";
        case StepKind::TypeCollapse:
            return "type-collapse";
        case StepKind::BiconnectedSplit:
            return "biconnected-split";
    }
    return "?";
}

namespace {

using EdgeMap = std::map<std::string, std::set<std::string>>;

bool rule_subsumed(EdgeMap& edges, int block, std::vector<Step>& steps) {
    std::set<std::string> removed;
    for (const auto& [e, ev] : edges) {
        for (const auto& [f, fv] : edges) {
            if (e == f) {
                continue;
            }
            bool proper = ev != fv && std::includes(fv.begin(), fv.end(), ev.begin(), ev.end());
            bool equal_smaller = ev == fv && f < e;
            if (proper || equal_smaller) {
                removed.insert(e);
                break;
            }
        }
    }
    for (const auto& e : removed) {
        // Witness among survivors so the record points at a live superedge.
        std::string witness;
        for (const auto& [f, fv] : edges) {
            if (f != e && !removed.count(f) &&
                std::includes(fv.begin(), fv.end(), edges.at(e).begin(), edges.at(e).end())) {
                witness = f;
                break;
            }
        }
        Step s;
        s.kind = StepKind::SubsumedEdge;
        s.block = block;
        s.removed_edge = e;
        s.witness_edge = witness;
        steps.push_back(std::move(s));
    }
    for (const auto& e : removed) {
        edges.erase(e);
    }
    return !removed.empty();
}

bool rule_types(EdgeMap& edges, int block, std::vector<Step>& steps) {
    std::map<std::string, std::set<std::string>> incidence;  // vertex -> edge names
    for (const auto& [e, ev] : edges) {
        for (const auto& v : ev) {
            incidence[v].insert(e);
        }
    }
    std::map<std::set<std::string>, std::vector<std::string>> groups;
    for (const auto& [v, inc] : incidence) {
        groups[inc].push_back(v);
    }
    bool changed = false;
    for (auto& [inc, verts] : groups) {
        if (verts.size() < 2) {
            continue;
        }
        std::sort(verts.begin(), verts.end());
        Step s;
        s.kind = StepKind::TypeCollapse;
        s.block = block;
        s.kept_vertex = verts.front();
        s.removed_vertices.assign(verts.begin() + 1, verts.end());
        for (const auto& e : inc) {
            for (std::size_t i = 1; i < verts.size(); ++i) {
                edges[e].erase(verts[i]);
            }
        }
        steps.push_back(std::move(s));
        changed = true;
    }
    return changed;
}

bool rule_degree_one(EdgeMap& edges, int block, std::vector<Step>& steps) {
    std::map<std::string, std::size_t> degree;
    for (const auto& [e, ev] : edges) {
        for (const auto& v : ev) {
            degree[v] += 1;
        }
    }
    bool changed = false;
    for (auto& [e, ev] : edges) {
        std::vector<std::string> removable;
        for (const auto& v : ev) {
            if (degree[v] == 1) {
                removable.push_back(v);
            }
        }
        if (removable.size() == ev.size()) {
            removable.erase(removable.begin());  // keep the smallest vertex
        }
        for (const auto& v : removable) {
            Step s;
            s.kind = StepKind::DegreeOneVertex;
            s.block = block;
            s.vertex = v;
            s.host_edge = e;
            steps.push_back(std::move(s));
            ev.erase(v);
            changed = true;
        }
    }
    return changed;
}

bool rule_simplicial(EdgeMap& edges, int block, std::vector<Step>& steps, Rational& bound) {
    bool changed = false;
    while (true) {
        core::Hypergraph h(edges);
        auto primal = core::primal_graph(h);
        bool removed = false;
        for (std::size_t v = 0; v < h.vertex_count(); ++v) {
            const std::string& vname = h.vertex_name(v);
            // Removal must keep every incident edge nonempty.
            bool safe = true;
            for (std::size_t e = h.incidence_bits(v).find_first(); e != Bitset::npos;
                 e = h.incidence_bits(v).find_next(e)) {
                if (h.edge_bits(e).count() == 1) {
                    safe = false;
                    break;
                }
            }
            if (!safe) {
                continue;
            }
            const Bitset& nbhd = primal.adjacency[v];
            bool clique = true;
            for (std::size_t a = nbhd.find_first(); a != Bitset::npos && clique;
                 a = nbhd.find_next(a)) {
                for (std::size_t b = nbhd.find_next(a); b != Bitset::npos; b = nbhd.find_next(b)) {
                    if (!primal.adjacency[a].test(b)) {
                        clique = false;
                        break;
                    }
                }
            }
            if (!clique) {
                continue;
            }
            std::set<std::string> closed = h.vertex_names_of(nbhd);
            closed.insert(vname);
            auto cover = covers::min_fractional_cover(h, closed);
            Step s;
            s.kind = StepKind::SimplicialVertex;
            s.block = block;
            s.vertex = vname;
            for (std::size_t e = h.incidence_bits(v).find_first(); e != Bitset::npos;
                 e = h.incidence_bits(v).find_next(e)) {
                s.incident_edges.push_back(h.edge_name(e));
            }
            s.clique_cover = *cover.cover;
            s.lower_bound = cover.weight;
            bound = std::max(bound, cover.weight);
            for (const auto& e : s.incident_edges) {
                edges[e].erase(vname);
            }
            steps.push_back(std::move(s));
            removed = true;
            changed = true;
            break;
        }
        if (!removed) {
            return changed;
        }
    }
}

struct BiconnectedBlocks {
    // Each block is a set of primal edges (index pairs, min first).
    std::vector<std::set<std::pair<std::size_t, std::size_t>>> blocks;
    std::set<std::size_t> articulation;
};

BiconnectedBlocks biconnected_components(const std::vector<Bitset>& adjacency) {
    const std::size_t n = adjacency.size();
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    BiconnectedBlocks res;
    std::vector<int> disc(n, 0);
    std::vector<int> low(n, 0);
    int timer = 0;
    std::vector<std::pair<std::size_t, std::size_t>> stack;

    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t u, std::size_t parent) {
        disc[u] = low[u] = ++timer;
        std::size_t children = 0;
        for (std::size_t v = adjacency[u].find_first(); v != Bitset::npos;
             v = adjacency[u].find_next(v)) {
            if (!disc[v]) {
                stack.emplace_back(u, v);
                ++children;
                dfs(v, u);
                low[u] = std::min(low[u], low[v]);
                if ((parent == kNone && children > 1) || (parent != kNone && low[v] >= disc[u])) {
                    res.articulation.insert(u);
                }
                if (low[v] >= disc[u]) {
                    std::set<std::pair<std::size_t, std::size_t>> blockEdges;
                    while (!stack.empty() && stack.back() != std::make_pair(u, v)) {
                        auto [a, b] = stack.back();
                        stack.pop_back();
                        blockEdges.insert({std::min(a, b), std::max(a, b)});
                    }
                    if (!stack.empty()) {
                        auto [a, b] = stack.back();
                        stack.pop_back();
                        blockEdges.insert({std::min(a, b), std::max(a, b)});
                    }
                    res.blocks.push_back(std::move(blockEdges));
                }
            } else if (v != parent && disc[v] < disc[u]) {
                stack.emplace_back(u, v);
                low[u] = std::min(low[u], disc[v]);
            }
        }
    };
    for (std::size_t u = 0; u < n; ++u) {
        if (!disc[u] && adjacency[u].any()) {
            dfs(u, kNone);
        }
    }
    return res;
}

// Partition of the edge names into biconnected groups, or nullopt when the
// hypergraph is a single block.
std::optional<std::pair<std::vector<std::vector<std::string>>, std::vector<std::string>>>
split_groups(const EdgeMap& edges) {
    core::Hypergraph h(edges);
    auto primal = core::primal_graph(h);
    auto bc = biconnected_components(primal.adjacency);

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_block;
    for (std::size_t b = 0; b < bc.blocks.size(); ++b) {
        for (const auto& pe : bc.blocks[b]) {
            pair_block[pe] = b;
        }
    }
    std::map<std::size_t, std::size_t> vertex_block;  // smallest block per vertex
    for (std::size_t b = 0; b < bc.blocks.size(); ++b) {
        for (const auto& [x, y] : bc.blocks[b]) {
            vertex_block.emplace(x, b);
            vertex_block.emplace(y, b);
        }
    }

    std::map<std::size_t, std::vector<std::string>> groups;  // block key -> edges
    std::size_t isolated_key = bc.blocks.size();
    std::map<std::size_t, std::size_t> isolated_vertex_key;
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        auto verts = h.edge_bits(e).to_indices();
        if (verts.size() >= 2) {
            auto key = std::make_pair(std::min(verts[0], verts[1]), std::max(verts[0], verts[1]));
            groups[pair_block.at(key)].push_back(h.edge_name(e));
        } else {
            auto it = vertex_block.find(verts[0]);
            if (it != vertex_block.end()) {
                groups[it->second].push_back(h.edge_name(e));
            } else {
                auto [slot, inserted] = isolated_vertex_key.emplace(verts[0], isolated_key);
                if (inserted) {
                    ++isolated_key;
                }
                groups[slot->second].push_back(h.edge_name(e));
            }
        }
    }
    if (groups.size() <= 1) {
        return std::nullopt;
    }
    std::vector<std::vector<std::string>> out;
    for (auto& [key, names] : groups) {
        std::sort(names.begin(), names.end());
        out.push_back(std::move(names));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    std::vector<std::string> articulation;
    for (std::size_t v : bc.articulation) {
        articulation.push_back(h.vertex_name(v));
    }
    std::sort(articulation.begin(), articulation.end());
    return std::make_pair(std::move(out), std::move(articulation));
}

void apply_step(const Step& s, std::map<int, EdgeMap>& live) {
    EdgeMap& em = live.at(s.block);
    switch (s.kind) {
        case StepKind::SubsumedEdge:
            em.erase(s.removed_edge);
            break;
        case StepKind::DegreeOneVertex:
            em.at(s.host_edge).erase(s.vertex);
            break;
        case StepKind::SimplicialVertex:
            for (const auto& e : s.incident_edges) {
                em.at(e).erase(s.vertex);
            }
            break;
        case StepKind::TypeCollapse:
            for (auto& [e, ev] : em) {
                for (const auto& y : s.removed_vertices) {
                    ev.erase(y);
                }
            }
            break;
        case StepKind::BiconnectedSplit: {
            for (const auto& [id, names] : s.new_blocks) {
                EdgeMap part;
                for (const auto& name : names) {
                    part[name] = em.at(name);
                }
                live[id] = std::move(part);
            }
            live.erase(s.block);
            break;
        }
    }
}

}  // namespace

RuleResult remove_subsumed_edges(const core::Hypergraph& h) {
    EdgeMap em = h.edge_map();
    std::vector<Step> steps;
    rule_subsumed(em, 0, steps);
    return {core::Hypergraph(em), std::move(steps)};
}

RuleResult remove_degree_one_vertices(const core::Hypergraph& h) {
    EdgeMap em = h.edge_map();
    std::vector<Step> steps;
    rule_degree_one(em, 0, steps);
    return {core::Hypergraph(em), std::move(steps)};
}

SimplicialResult remove_simplicial_vertices(const core::Hypergraph& h, WidthKind mode) {
    if (mode != WidthKind::Fhw) {
        throw std::invalid_argument("simplicial removal not licensed for " +
                                    width_kind_name(mode));
    }
    EdgeMap em = h.edge_map();
    std::vector<Step> steps;
    Rational bound = 0;
    rule_simplicial(em, 0, steps, bound);
    return {core::Hypergraph(em), std::move(steps), bound};
}

RuleResult collapse_vertex_types(const core::Hypergraph& h) {
    EdgeMap em = h.edge_map();
    std::vector<Step> steps;
    rule_types(em, 0, steps);
    return {core::Hypergraph(em), std::move(steps)};
}

SplitResult split_biconnected(const core::Hypergraph& h) {
    EdgeMap em = h.edge_map();
    auto groups = split_groups(em);
    SplitResult res;
    if (!groups) {
        res.blocks.push_back(h);
        return res;
    }
    Step s;
    s.kind = StepKind::BiconnectedSplit;
    s.block = 0;
    s.articulation_vertices = groups->second;
    int next_id = 1;
    for (const auto& names : groups->first) {
        EdgeMap part;
        for (const auto& name : names) {
            part[name] = em.at(name);
        }
        s.new_blocks.emplace_back(next_id++, names);
        res.blocks.push_back(core::Hypergraph(part));
    }
    res.step = std::move(s);
    return res;
}

PreprocessResult simplify(const core::Hypergraph& h, WidthKind notion) {
    std::map<int, EdgeMap> live;
    live[0] = h.edge_map();
    int next_id = 1;
    PreprocessResult result;
    auto& steps = result.trace.steps;

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> ids;
        for (const auto& [id, em] : live) {
            ids.push_back(id);
        }
        for (int id : ids) {
            if (!live.count(id)) {
                continue;
            }
            EdgeMap& em = live.at(id);
            changed |= rule_subsumed(em, id, steps);
            changed |= rule_types(em, id, steps);
            changed |= rule_degree_one(em, id, steps);
            if (notion == WidthKind::Fhw) {
                changed |= rule_simplicial(em, id, steps, result.fhw_lower_bound);
            }
            auto groups = split_groups(em);
            if (groups) {
                Step s;
                s.kind = StepKind::BiconnectedSplit;
                s.block = id;
                s.articulation_vertices = groups->second;
                for (const auto& names : groups->first) {
                    s.new_blocks.emplace_back(next_id++, names);
                }
                steps.push_back(s);
                apply_step(steps.back(), live);
                changed = true;
            }
        }
    }
    for (const auto& [id, em] : live) {
        result.blocks.push_back({id, core::Hypergraph(em)});
    }
    return result;
}

std::map<int, EdgeMap> replay(const core::Hypergraph& original,
                              const SimplificationTrace& trace) {
    std::map<int, EdgeMap> live;
    live[0] = original.edge_map();
    for (const auto& s : trace.steps) {
        apply_step(s, live);
    }
    return live;
}

std::string trace_to_json(const SimplificationTrace& trace) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& s : trace.steps) {
        nlohmann::ordered_json item;
        item["kind"] = step_kind_name(s.kind);
        item["block"] = s.block;
        switch (s.kind) {
            case StepKind::SubsumedEdge:
                item["removed_edge"] = s.removed_edge;
                item["witness_edge"] = s.witness_edge;
                break;
            case StepKind::DegreeOneVertex:
                item["vertex"] = s.vertex;
                item["host_edge"] = s.host_edge;
                break;
            case StepKind::SimplicialVertex: {
                item["vertex"] = s.vertex;
                item["incident_edges"] = s.incident_edges;
                nlohmann::ordered_json cover;
                for (const auto& [e, w] : s.clique_cover.weights()) {
                    cover[e] = format_rational(w);
                }
                item["clique_cover"] = std::move(cover);
                item["lower_bound"] = format_rational(s.lower_bound);
                break;
            }
            case StepKind::TypeCollapse:
                item["kept_vertex"] = s.kept_vertex;
                item["removed_vertices"] = s.removed_vertices;
                break;
            case StepKind::BiconnectedSplit: {
                nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
                for (const auto& [id, names] : s.new_blocks) {
                    blocks.push_back({{"block", id}, {"edges", names}});
                }
                item["new_blocks"] = std::move(blocks);
                item["articulation_vertices"] = s.articulation_vertices;
                break;
            }
        }
        doc.push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

namespace {

std::map<int, int> parent_map(const Decomposition& d) {
    std::map<int, int> parent;
    for (const auto& [p, c] : d.tree_edges) {
        parent[c] = p;
    }
    return parent;
}

bool bag_includes(const DecompositionNode& node, const std::set<std::string>& verts) {
    return std::includes(node.bag.begin(), node.bag.end(), verts.begin(), verts.end());
}

// Reinserts a degree-one vertex by hanging a fresh node with the restored
// edge below a bag containing the rest of it. For HDs the attachment point
// must be chosen so no ancestor both covers the vertex through the restored
// edge and omits it from its bag.
void undo_degree_one(Decomposition& d, const std::string& x, const std::string& host,
                     const std::set<std::string>& host_full) {
    std::set<std::string> reduced = host_full;
    reduced.erase(x);
    auto parents = parent_map(d);
    auto ancestors_clean = [&](int id, const std::set<int>& users, bool include_self) {
        int cur = id;
        if (!include_self) {
            auto it = parents.find(cur);
            if (it == parents.end()) {
                return true;
            }
            cur = it->second;
        }
        while (true) {
            if (users.count(cur)) {
                return false;
            }
            auto it = parents.find(cur);
            if (it == parents.end()) {
                return true;
            }
            cur = it->second;
        }
    };

    int attach = -1;
    bool extend_bag = false;
    if (d.notion == Notion::Hd) {
        std::set<int> users;
        for (const auto& [id, node] : d.nodes) {
            if (node.cover.get(host) == 1) {
                users.insert(id);
            }
        }
        for (int w : users) {
            if (ancestors_clean(w, users, false) && bag_includes(d.nodes.at(w), reduced)) {
                attach = w;
                extend_bag = true;
                break;
            }
        }
        if (attach < 0) {
            for (const auto& [id, node] : d.nodes) {
                if (bag_includes(node, reduced) && ancestors_clean(id, users, true)) {
                    attach = id;
                    break;
                }
            }
        }
    } else {
        for (const auto& [id, node] : d.nodes) {
            if (bag_includes(node, reduced)) {
                attach = id;
                break;
            }
        }
    }
    if (attach < 0) {
        throw std::logic_error("no attachment point for reinserted vertex '" + x + "'");
    }
    if (extend_bag) {
        d.nodes.at(attach).bag.insert(x);
    }
    DecompositionNode child;
    child.bag = host_full;
    child.cover.set(host, 1);
    int cid = d.add_node(std::move(child));
    d.add_edge(attach, cid);
}

void undo_simplicial(Decomposition& d, const Step& s, const EdgeMap& em) {
    std::set<std::string> bag;
    for (const auto& e : s.incident_edges) {
        const auto& ev = em.at(e);
        bag.insert(ev.begin(), ev.end());
    }
    std::set<std::string> neighborhood = bag;
    neighborhood.erase(s.vertex);
    int attach = -1;
    if (neighborhood.empty()) {
        attach = d.root;
    } else {
        // A clique of the primal graph always sits inside some bag.
        for (const auto& [id, node] : d.nodes) {
            if (bag_includes(node, neighborhood)) {
                attach = id;
                break;
            }
        }
    }
    if (attach < 0) {
        throw std::logic_error("no bag contains the neighborhood of simplicial vertex '" +
                               s.vertex + "'");
    }
    DecompositionNode child;
    child.bag = bag;
    child.cover = s.clique_cover;
    int cid = d.add_node(std::move(child));
    d.add_edge(attach, cid);
}

void undo_type_collapse(Decomposition& d, const Step& s) {
    for (auto& [id, node] : d.nodes) {
        if (node.bag.count(s.kept_vertex)) {
            for (const auto& y : s.removed_vertices) {
                node.bag.insert(y);
            }
        }
    }
}

std::set<std::string> vertex_set(const EdgeMap& em) {
    std::set<std::string> out;
    for (const auto& [e, ev] : em) {
        out.insert(ev.begin(), ev.end());
    }
    return out;
}

// Appends `sub` below node `attach` of `base`, renumbering ids.
void merge_tree(Decomposition& base, const Decomposition& sub, int attach) {
    int offset = base.nodes.empty() ? 0 : base.nodes.rbegin()->first;
    for (const auto& [id, node] : sub.nodes) {
        base.nodes[id + offset] = node;
    }
    for (const auto& [p, c] : sub.tree_edges) {
        base.add_edge(p + offset, c + offset);
    }
    base.add_edge(attach, sub.root + offset);
}

int width_bound(const Decomposition& d) {
    Rational w = d.width();
    Integer num = numerator(w);
    Integer den = denominator(w);
    Integer q = num / den + (num % den == 0 ? 0 : 1);
    int k = static_cast<int>(q.convert_to<long>());
    return std::max(k, 1);
}

Decomposition glue_blocks(std::vector<std::pair<EdgeMap, Decomposition>> children,
                          const BlockSolver& hd_resolver) {
    Decomposition glued = std::move(children.front().second);
    EdgeMap glued_edges = std::move(children.front().first);
    std::set<std::string> glued_verts = vertex_set(glued_edges);
    std::vector<bool> done(children.size(), false);
    done[0] = true;
    std::size_t remaining = children.size() - 1;

    while (remaining > 0) {
        // Next child sharing a cut vertex with the glued part; disconnected
        // children attach anywhere once nothing shares vertices.
        std::size_t pick = children.size();
        std::string shared;
        for (std::size_t j = 1; j < children.size() && pick == children.size(); ++j) {
            if (done[j]) {
                continue;
            }
            for (const auto& v : vertex_set(children[j].first)) {
                if (glued_verts.count(v)) {
                    pick = j;
                    shared = v;
                    break;
                }
            }
        }
        if (pick == children.size()) {
            for (std::size_t j = 1; j < children.size(); ++j) {
                if (!done[j]) {
                    pick = j;
                    break;
                }
            }
            shared.clear();
        }

        auto& [em, dec] = children[pick];
        if (shared.empty()) {
            merge_tree(glued, dec, glued.root);
        } else {
            int target = -1;
            for (const auto& [id, node] : glued.nodes) {
                if (node.bag.count(shared)) {
                    target = id;
                    break;
                }
            }
            if (target < 0) {
                throw std::logic_error("cut vertex '" + shared + "' missing from glued part");
            }
            if (dec.nodes.at(dec.root).bag.count(shared)) {
                merge_tree(glued, dec, target);
            } else if (dec.notion != Notion::Hd) {
                int at = -1;
                for (const auto& [id, node] : dec.nodes) {
                    if (node.bag.count(shared)) {
                        at = id;
                        break;
                    }
                }
                if (at < 0) {
                    throw std::logic_error("cut vertex '" + shared +
                                           "' missing from block decomposition");
                }
                dec.reroot(at);
                merge_tree(glued, dec, target);
            } else {
                // Rerooting is not width-safe for HDs; re-solve the block
                // with the cut vertex pinned into the root bag, falling back
                // to one joint solve of everything glued so far.
                std::optional<Decomposition> redone;
                if (hd_resolver) {
                    redone = hd_resolver(core::Hypergraph(em), width_bound(dec), {shared});
                }
                if (redone) {
                    merge_tree(glued, *redone, target);
                } else {
                    EdgeMap merged = glued_edges;
                    for (const auto& [e, ev] : em) {
                        merged[e] = ev;
                    }
                    int k = std::max(width_bound(glued), width_bound(dec));
                    std::optional<Decomposition> joint;
                    if (hd_resolver) {
                        joint = hd_resolver(core::Hypergraph(merged), k, {});
                    }
                    if (!joint) {
                        throw std::runtime_error(
                            "unable to glue hd block decompositions at width " +
                            std::to_string(k));
                    }
                    glued = std::move(*joint);
                }
            }
        }
        for (const auto& [e, ev] : em) {
            glued_edges[e] = ev;
        }
        glued_verts = vertex_set(glued_edges);
        done[pick] = true;
        --remaining;
    }
    return glued;
}

}  // namespace

Decomposition lift_decomposition(const core::Hypergraph& original,
                                 const SimplificationTrace& trace,
                                 const std::map<int, Decomposition>& block_decompositions,
                                 const BlockSolver& hd_resolver) {
    // Forward replay, remembering each step's pre-state of its block.
    std::map<int, EdgeMap> live;
    live[0] = original.edge_map();
    std::vector<EdgeMap> pre_state;
    for (const auto& s : trace.steps) {
        pre_state.push_back(live.at(s.block));
        apply_step(s, live);
    }

    std::map<int, Decomposition> decomp;
    for (const auto& [id, em] : live) {
        auto it = block_decompositions.find(id);
        if (it == block_decompositions.end()) {
            throw std::invalid_argument("missing decomposition for block " + std::to_string(id));
        }
        auto report = validate::validate_for_notion(core::Hypergraph(em), it->second);
        if (!report.ok) {
            throw std::invalid_argument("decomposition for block " + std::to_string(id) +
                                        " does not validate against its block");
        }
        decomp[id] = it->second;
    }

    for (std::size_t i = trace.steps.size(); i-- > 0;) {
        const Step& s = trace.steps[i];
        switch (s.kind) {
            case StepKind::SubsumedEdge:
                live.at(s.block)[s.removed_edge] = pre_state[i].at(s.removed_edge);
                break;
            case StepKind::DegreeOneVertex: {
                auto& em = live.at(s.block);
                em.at(s.host_edge).insert(s.vertex);
                undo_degree_one(decomp.at(s.block), s.vertex, s.host_edge, em.at(s.host_edge));
                break;
            }
            case StepKind::SimplicialVertex: {
                auto& em = live.at(s.block);
                for (const auto& e : s.incident_edges) {
                    em.at(e).insert(s.vertex);
                }
                undo_simplicial(decomp.at(s.block), s, em);
                break;
            }
            case StepKind::TypeCollapse: {
                auto& em = live.at(s.block);
                for (const auto& y : s.removed_vertices) {
                    for (const auto& [e, ev] : pre_state[i]) {
                        if (ev.count(y)) {
                            em.at(e).insert(y);
                        }
                    }
                }
                undo_type_collapse(decomp.at(s.block), s);
                break;
            }
            case StepKind::BiconnectedSplit: {
                std::vector<std::pair<EdgeMap, Decomposition>> children;
                for (const auto& [id, names] : s.new_blocks) {
                    children.emplace_back(std::move(live.at(id)), std::move(decomp.at(id)));
                    live.erase(id);
                    decomp.erase(id);
                }
                Decomposition glued = glue_blocks(std::move(children), hd_resolver);
                live[s.block] = pre_state[i];
                decomp[s.block] = std::move(glued);
                break;
            }
        }
    }

    Decomposition result = std::move(decomp.at(0));
    result.normalize_ids();
    auto report = validate::validate_for_notion(original, result);
    if (!report.ok) {
        std::string detail =
            report.violations.empty() ? "" : (": " + report.violations.front().detail);
        throw std::runtime_error("lifted decomposition does not validate" + detail);
    }
    return result;
}

}  // namespace hgdecomp::preprocess
