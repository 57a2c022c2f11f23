#include "hgdecomp/decompose.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>

namespace hgdecomp::decompose {

std::string method_name(Method m) {
    switch (m) {
        case Method::Detk:
            return "detk";
        case Method::DetkGhwGlobal:
            return "detk-ghw-global";
        case Method::DetkGhwLocal:
            return "detk-ghw-local";
        case Method::Balsep:
            return "balsep";
        case Method::Hybrid:
            return "hybrid";
        case Method::Candidate:
            return "candidate";
    }
    return "detk";
}

std::optional<Method> method_from_name(const std::string& s) {
    for (Method m : {Method::Detk, Method::DetkGhwGlobal, Method::DetkGhwLocal, Method::Balsep,
                     Method::Hybrid, Method::Candidate}) {
        if (method_name(m) == s) {
            return m;
        }
    }
    return std::nullopt;
}

namespace {

// Thrown inside worker threads when another worker already decided the
// subproblem; never escapes the public API.
struct SearchCancelled {};

struct SearchContext {
    const SearchOptions* opts;
    std::atomic<bool>* stop = nullptr;

    void checkpoint() const {
        if (stop && stop->load(std::memory_order_relaxed)) {
            throw SearchCancelled{};
        }
        if (opts->cancel && opts->cancel->load(std::memory_order_relaxed)) {
            throw SearchCancelled{};
        }
        if (opts->deadline && std::chrono::steady_clock::now() > *opts->deadline) {
            throw TimeoutError{};
        }
    }
};

// Cover candidate pool: original edges first, then subedges pointing back
// at their originating edge.
struct Pool {
    std::vector<Bitset> bits;
    std::vector<std::size_t> prov;
    std::size_t n_orig = 0;
};

Pool original_pool(const core::Hypergraph& h) {
    Pool p;
    p.n_orig = h.edge_count();
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        p.bits.push_back(h.edge_bits(e));
        p.prov.push_back(e);
    }
    return p;
}

std::size_t smallest_superset_edge(const core::Hypergraph& h, const Bitset& verts) {
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        if (verts.is_subset_of(h.edge_bits(e))) {
            return e;
        }
    }
    return h.edge_count();
}

// All nonempty subsets of pairwise intersections among `within`, the
// intersections themselves always included, subsets capped at
// `pair_subset_cap` vertices. Deduplicated against existing pool entries.
void add_pairs_closure(Pool& pool, const core::Hypergraph& h, const Bitset& within,
                       std::size_t pair_subset_cap, std::size_t output_cap) {
    std::set<Bitset> known(pool.bits.begin(), pool.bits.end());
    std::set<Bitset> generated;
    auto edges = within.to_indices();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            Bitset inter = h.edge_bits(edges[i]) & h.edge_bits(edges[j]);
            if (inter.none()) {
                continue;
            }
            auto verts = inter.to_indices();
            if (verts.size() > 24) {
                throw ResourceLimitError("subedge explosion: pairwise intersection with " +
                                         std::to_string(verts.size()) + " vertices");
            }
            if (!known.count(inter)) {
                generated.insert(inter);
            }
            std::size_t total = std::size_t{1} << verts.size();
            for (std::size_t mask = 1; mask + 1 < total; ++mask) {
                if (static_cast<std::size_t>(__builtin_popcountll(mask)) > pair_subset_cap) {
                    continue;
                }
                Bitset sub(h.vertex_count());
                for (std::size_t b = 0; b < verts.size(); ++b) {
                    if (mask & (std::size_t{1} << b)) {
                        sub.set(verts[b]);
                    }
                }
                if (!known.count(sub)) {
                    generated.insert(std::move(sub));
                }
                if (generated.size() > output_cap) {
                    throw ResourceLimitError("subedge explosion: more than " +
                                             std::to_string(output_cap) + " subedges");
                }
            }
        }
    }
    for (const auto& sub : generated) {
        pool.bits.push_back(sub);
        pool.prov.push_back(smallest_superset_edge(h, sub));
    }
}

// Components of [bag] over the given edges plus specials treated as
// pseudo-edges; each part carries the edges and specials meeting it and the
// union of their full vertex sets.
struct Part {
    Bitset vertices;
    Bitset edges;
    std::vector<std::size_t> specials;
    Bitset space;
};

std::vector<Part> split_items(const core::Hypergraph& h, const Bitset& edges,
                              const std::vector<Bitset>& specials, const Bitset& bag) {
    std::vector<std::size_t> parent(h.vertex_count());
    for (std::size_t i = 0; i < parent.size(); ++i) {
        parent[i] = i;
    }
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto link_item = [&](const Bitset& item) {
        Bitset rest = item - bag;
        std::size_t first = rest.find_first();
        if (first == Bitset::npos) {
            return;
        }
        for (std::size_t v = rest.find_next(first); v != Bitset::npos; v = rest.find_next(v)) {
            parent[find(v)] = find(first);
        }
    };
    Bitset relevant(h.vertex_count());
    for (std::size_t e = edges.find_first(); e != Bitset::npos; e = edges.find_next(e)) {
        link_item(h.edge_bits(e));
        relevant |= h.edge_bits(e);
    }
    for (const auto& s : specials) {
        link_item(s);
        relevant |= s;
    }
    relevant -= bag;

    std::map<std::size_t, std::size_t> slot;
    std::vector<Part> parts;
    for (std::size_t v = relevant.find_first(); v != Bitset::npos; v = relevant.find_next(v)) {
        std::size_t r = find(v);
        auto it = slot.find(r);
        if (it == slot.end()) {
            slot[r] = parts.size();
            parts.push_back(
                {Bitset(h.vertex_count()), Bitset(edges.universe_size()), {}, Bitset(h.vertex_count())});
            it = slot.find(r);
        }
        parts[it->second].vertices.set(v);
    }
    for (auto& part : parts) {
        for (std::size_t e = edges.find_first(); e != Bitset::npos; e = edges.find_next(e)) {
            if (h.edge_bits(e).intersects(part.vertices)) {
                part.edges.set(e);
                part.space |= h.edge_bits(e);
            }
        }
        for (std::size_t i = 0; i < specials.size(); ++i) {
            if (specials[i].intersects(part.vertices)) {
                part.specials.push_back(i);
                part.space |= specials[i];
            }
        }
    }
    return parts;
}

std::size_t part_items(const Part& p) { return p.edges.count() + p.specials.size(); }

// Candidate cover combinations of size 1..k, ordered by descending sum of
// vertex degrees over the union, ties broken by the index tuple.
std::vector<std::vector<std::size_t>> ordered_combos(const core::Hypergraph& h, const Pool& pool,
                                                     const std::vector<std::size_t>& cands,
                                                     int k) {
    std::vector<std::size_t> degree(h.vertex_count());
    for (std::size_t v = 0; v < h.vertex_count(); ++v) {
        degree[v] = h.vertex_degree(v);
    }
    struct Entry {
        std::vector<std::size_t> combo;
        std::size_t degsum;
    };
    std::vector<Entry> entries;
    std::vector<std::size_t> current;
    std::function<void(std::size_t, int)> gen = [&](std::size_t start, int remaining) {
        if (!current.empty()) {
            Bitset u(h.vertex_count());
            for (std::size_t i : current) {
                u |= pool.bits[i];
            }
            std::size_t degsum = 0;
            for (std::size_t v = u.find_first(); v != Bitset::npos; v = u.find_next(v)) {
                degsum += degree[v];
            }
            entries.push_back({current, degsum});
        }
        if (remaining == 0) {
            return;
        }
        for (std::size_t i = start; i < cands.size(); ++i) {
            current.push_back(cands[i]);
            gen(i + 1, remaining - 1);
            current.pop_back();
        }
    };
    gen(0, k);
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.degsum != b.degsum) {
            return a.degsum > b.degsum;
        }
        return a.combo < b.combo;
    });
    std::vector<std::vector<std::size_t>> out;
    out.reserve(entries.size());
    for (auto& e : entries) {
        out.push_back(std::move(e.combo));
    }
    return out;
}

// Search-internal tree; converted to the public Decomposition at the end.
struct LocalNode {
    Bitset bag;
    std::vector<std::size_t> cover;  // original edge indices, weight 1 each
    BalsepNodeInfo info;
};

struct LocalTree {
    std::vector<LocalNode> nodes;
    std::vector<std::pair<int, int>> edges;
    int root = 0;

    int add(LocalNode n) {
        nodes.push_back(std::move(n));
        return static_cast<int>(nodes.size()) - 1;
    }

    void absorb(LocalTree&& sub, int parent) {
        int offset = static_cast<int>(nodes.size());
        for (auto& n : sub.nodes) {
            nodes.push_back(std::move(n));
        }
        for (auto& [p, c] : sub.edges) {
            edges.emplace_back(p + offset, c + offset);
        }
        edges.emplace_back(parent, sub.root + offset);
    }

    int find_bag_superset(const Bitset& verts) const {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (verts.is_subset_of(nodes[i].bag)) {
                return static_cast<int>(i);
            }
        }
        return -1;
    }

    void reroot(int new_root) {
        std::vector<std::vector<int>> adj(nodes.size());
        for (auto& [p, c] : edges) {
            adj[p].push_back(c);
            adj[c].push_back(p);
        }
        std::vector<std::pair<int, int>> oriented;
        std::vector<bool> seen(nodes.size(), false);
        std::vector<int> stack{new_root};
        seen[new_root] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            std::sort(adj[u].begin(), adj[u].end());
            for (int v : adj[u]) {
                if (!seen[v]) {
                    seen[v] = true;
                    oriented.emplace_back(u, v);
                    stack.push_back(v);
                }
            }
        }
        edges = std::move(oriented);
        root = new_root;
    }

    Decomposition to_decomposition(const core::Hypergraph& h, Notion notion) const {
        Decomposition d;
        d.notion = notion;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            DecompositionNode n;
            n.bag = h.vertex_names_of(nodes[i].bag);
            for (std::size_t e : nodes[i].cover) {
                n.cover.set(h.edge_name(e), 1);
            }
            d.nodes[static_cast<int>(i) + 1] = std::move(n);
        }
        for (auto& [p, c] : edges) {
            d.add_edge(p + 1, c + 1);
        }
        d.root = root + 1;
        d.normalize_ids();
        return d;
    }

    void collect_info(BalsepRunInfo& out) const {
        for (const auto& n : nodes) {
            out.nodes.push_back(n.info);
            out.max_depth = std::max(out.max_depth, n.info.depth);
        }
    }
};

std::vector<std::size_t> cover_from_combo(const Pool& pool, const std::vector<std::size_t>& combo) {
    std::vector<std::size_t> cover;
    for (std::size_t i : combo) {
        cover.push_back(pool.prov[i]);
    }
    std::sort(cover.begin(), cover.end());
    cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
    return cover;
}

Bitset union_of(const core::Hypergraph& h, const Bitset& edges) {
    Bitset u(h.vertex_count());
    for (std::size_t e = edges.find_first(); e != Bitset::npos; e = edges.find_next(e)) {
        u |= h.edge_bits(e);
    }
    return u;
}

// Top-down HD search engine; also runs the GHD variants when the pool has
// subedges, and the hybrid tail when handed specials.
struct DetkEngine {
    const core::Hypergraph& h;
    int k;
    SearchContext ctx;
    Pool pool;              // originals, plus the global closure for GlobalBIP
    bool local_subedges;    // LocalBIP: per-subproblem pairwise closures
    std::size_t pair_subset_cap;
    std::size_t subedge_cap;
    bool use_cache;
    NegativeCache cache;
    std::map<Bitset, Pool> local_pools;
    std::mutex local_pools_mu;

    DetkEngine(const core::Hypergraph& h, int k, SearchContext ctx, Pool pool,
               bool local_subedges, const SearchOptions& opts)
        : h(h),
          k(k),
          ctx(ctx),
          pool(std::move(pool)),
          local_subedges(local_subedges),
          pair_subset_cap(opts.pair_subset_cap),
          subedge_cap(opts.subedge_cap),
          use_cache(opts.use_cache) {}

    const Pool& pool_for(const Bitset& edges) {
        if (!local_subedges) {
            return pool;
        }
        std::lock_guard<std::mutex> lock(local_pools_mu);
        auto it = local_pools.find(edges);
        if (it == local_pools.end()) {
            Pool p = original_pool(h);
            add_pairs_closure(p, h, edges, pair_subset_cap, subedge_cap);
            it = local_pools.emplace(edges, std::move(p)).first;
        }
        return it->second;
    }

    std::optional<LocalTree> solve(const Bitset& edges, const Bitset& conn,
                                   std::vector<Bitset> specials) {
        ctx.checkpoint();
        std::sort(specials.begin(), specials.end());
        NegativeCache::Key key{edges, conn, specials, k};
        if (use_cache && cache.contains(key)) {
            return std::nullopt;
        }

        Bitset space = union_of(h, edges) | conn;
        for (const auto& s : specials) {
            space |= s;
        }
        Bitset component = space - conn;

        const Pool& p = pool_for(edges);
        std::vector<std::size_t> cands;
        for (std::size_t i = 0; i < p.bits.size(); ++i) {
            if (p.bits[i].intersects(space)) {
                cands.push_back(i);
            }
        }
        for (const auto& combo : ordered_combos(h, p, cands, k)) {
            ctx.checkpoint();
            Bitset u(h.vertex_count());
            for (std::size_t i : combo) {
                u |= p.bits[i];
            }
            if (!conn.is_subset_of(u)) {
                continue;
            }
            Bitset bag = u & space;
            if (component.any() && !(bag & component).any()) {
                continue;
            }
            auto parts = split_items(h, edges, specials, bag);
            LocalTree tree;
            LocalNode node;
            node.bag = bag;
            node.cover = cover_from_combo(p, combo);
            int me = tree.add(std::move(node));
            bool ok = true;
            for (const auto& part : parts) {
                Bitset child_conn = bag & part.space;
                std::vector<Bitset> child_specials;
                for (std::size_t si : part.specials) {
                    child_specials.push_back(specials[si]);
                }
                auto sub = solve(part.edges, child_conn, std::move(child_specials));
                if (!sub) {
                    ok = false;
                    break;
                }
                tree.absorb(std::move(*sub), me);
            }
            if (ok) {
                return tree;
            }
        }
        if (use_cache) {
            cache.insert(std::move(key));
        }
        return std::nullopt;
    }
};

struct Special {
    Bitset verts;
    std::vector<std::size_t> witnesses;  // original edges, at most k
};

// Balanced-separator GHD engine with the hybrid switch to the local-subedge
// HD search after depth m.
struct BalsepEngine {
    const core::Hypergraph& h;
    int k;
    const SearchOptions& opts;
    SearchContext ctx;
    int switch_depth;  // balsep logic while depth <= switch_depth
    Pool originals;
    NegativeCache cache;
    std::unique_ptr<DetkEngine> tail;
    std::atomic<bool> stop{false};

    BalsepEngine(const core::Hypergraph& h, int k, const SearchOptions& opts, int switch_depth)
        : h(h), k(k), opts(opts), switch_depth(switch_depth), originals(original_pool(h)) {
        ctx.opts = &opts;
        ctx.stop = &stop;
        if (switch_depth != kInfiniteDepth) {
            tail = std::make_unique<DetkEngine>(h, k, ctx, original_pool(h), true, opts);
        }
    }

    LocalTree base_case(const Bitset& edges, const std::vector<Special>& specials, int depth) {
        LocalTree tree;
        int prev = -1;
        for (std::size_t e = edges.find_first(); e != Bitset::npos; e = edges.find_next(e)) {
            LocalNode n;
            n.bag = h.edge_bits(e);
            n.cover = {e};
            n.info = {depth, edges.count() + specials.size(), 0, false};
            int id = tree.add(std::move(n));
            if (prev >= 0) {
                tree.edges.emplace_back(prev, id);
            }
            prev = id;
        }
        for (const auto& s : specials) {
            LocalNode n;
            n.bag = s.verts;
            n.cover = s.witnesses;
            n.info = {depth, edges.count() + specials.size(), 0, false};
            int id = tree.add(std::move(n));
            if (prev >= 0) {
                tree.edges.emplace_back(prev, id);
            }
            prev = id;
        }
        tree.root = 0;
        return tree;
    }

    // Tests one separator cover; on success returns the finished subtree.
    std::optional<LocalTree> try_separator(const std::vector<std::size_t>& combo,
                                           const Bitset& edges,
                                           const std::vector<Special>& specials,
                                           std::size_t items, const Bitset& space, int depth) {
        Bitset full(h.vertex_count());
        for (std::size_t i : combo) {
            full |= originals.bits[i];
        }
        Bitset full_bag = full & space;
        if (full_bag.none()) {
            return std::nullopt;
        }
        std::vector<Bitset> special_verts;
        for (const auto& s : specials) {
            special_verts.push_back(s.verts);
        }
        // A subset separator only merges components, so an unbalanced full
        // union rules out all its subsets at once.
        auto parts_full = split_items(h, edges, special_verts, full_bag);
        for (const auto& part : parts_full) {
            if (2 * part_items(part) > items) {
                return std::nullopt;
            }
        }

        auto attempt = [&](const Bitset& bag,
                           const std::vector<Part>& parts) -> std::optional<LocalTree> {
            std::size_t largest = 0;
            for (const auto& part : parts) {
                largest = std::max(largest, part_items(part));
                if (2 * part_items(part) > items) {
                    return std::nullopt;
                }
            }
            LocalTree tree;
            LocalNode node;
            node.bag = bag;
            node.cover = cover_from_combo(originals, combo);
            node.info = {depth, items, largest, true};
            int me = tree.add(std::move(node));
            for (const auto& part : parts) {
                Special inherited{bag & part.space, {}};
                inherited.witnesses = cover_from_combo(originals, combo);
                std::vector<Special> child_specials;
                for (std::size_t si : part.specials) {
                    child_specials.push_back(specials[si]);
                }
                child_specials.push_back(inherited);
                auto sub = solve(part.edges, std::move(child_specials), depth + 1);
                if (!sub) {
                    return std::nullopt;
                }
                int at = sub->find_bag_superset(inherited.verts);
                if (at < 0) {
                    throw std::logic_error("special vertex set missing from child decomposition");
                }
                sub->reroot(at);
                tree.absorb(std::move(*sub), me);
            }
            return tree;
        };

        if (auto tree = attempt(full_bag, parts_full)) {
            return tree;
        }
        if (!opts.balsep_subset_bags) {
            return std::nullopt;
        }
        auto positions = full_bag.to_indices();
        if (positions.size() > 22) {
            throw ResourceLimitError("separator bag subset explosion: union has " +
                                     std::to_string(positions.size()) + " vertices");
        }
        // Proper subsets, largest first; the full bag was tried above.
        for (std::size_t size = positions.size() - 1; size >= 1; --size) {
            std::vector<std::size_t> idx;
            std::function<std::optional<LocalTree>(std::size_t)> choose =
                [&](std::size_t start) -> std::optional<LocalTree> {
                if (idx.size() == size) {
                    ctx.checkpoint();
                    Bitset bag(h.vertex_count());
                    for (std::size_t i : idx) {
                        bag.set(positions[i]);
                    }
                    auto parts = split_items(h, edges, special_verts, bag);
                    return attempt(bag, parts);
                }
                for (std::size_t i = start; i + (size - idx.size()) <= positions.size(); ++i) {
                    idx.push_back(i);
                    if (auto tree = choose(i + 1)) {
                        return tree;
                    }
                    idx.pop_back();
                }
                return std::nullopt;
            };
            if (auto tree = choose(0)) {
                return tree;
            }
            if (size == 1) {
                break;
            }
        }
        return std::nullopt;
    }

    std::optional<LocalTree> solve(const Bitset& edges, std::vector<Special> specials,
                                   int depth) {
        ctx.checkpoint();
        std::sort(specials.begin(), specials.end(),
                  [](const Special& a, const Special& b) { return a.verts < b.verts; });
        std::size_t items = edges.count() + specials.size();
        if (items <= 2) {
            return base_case(edges, specials, depth);
        }
        if (depth > switch_depth) {
            std::vector<Bitset> plain;
            for (const auto& s : specials) {
                plain.push_back(s.verts);
            }
            return tail->solve(edges, Bitset(h.vertex_count()), std::move(plain));
        }
        std::vector<Bitset> special_verts;
        for (const auto& s : specials) {
            special_verts.push_back(s.verts);
        }
        NegativeCache::Key key{edges, Bitset(h.vertex_count()), special_verts, k};
        if (opts.use_cache && cache.contains(key)) {
            return std::nullopt;
        }

        Bitset space = union_of(h, edges);
        for (const auto& s : specials) {
            space |= s.verts;
        }
        std::vector<std::size_t> cands;
        for (std::size_t i = 0; i < originals.n_orig; ++i) {
            if (originals.bits[i].intersects(space)) {
                cands.push_back(i);
            }
        }
        auto combos = ordered_combos(h, originals, cands, k);

        if (depth == 1 && opts.workers > 1) {
            auto result = parallel_root(combos, edges, specials, items, space);
            if (result) {
                return result;
            }
        } else {
            for (const auto& combo : combos) {
                ctx.checkpoint();
                if (auto tree = try_separator(combo, edges, specials, items, space, depth)) {
                    return tree;
                }
            }
        }
        if (opts.use_cache) {
            cache.insert(std::move(key));
        }
        return std::nullopt;
    }

    // Strided candidate partition across workers at the root subproblem.
    // Accept/reject is deterministic; the winning witness may vary between
    // runs and is validated by the caller.
    std::optional<LocalTree> parallel_root(const std::vector<std::vector<std::size_t>>& combos,
                                           const Bitset& edges,
                                           const std::vector<Special>& specials,
                                           std::size_t items, const Bitset& space) {
        std::mutex mu;
        std::optional<LocalTree> winner;
        std::exception_ptr error;
        int workers = std::max(1, opts.workers);
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < combos.size();
                         i += static_cast<std::size_t>(workers)) {
                        if (stop.load(std::memory_order_relaxed)) {
                            return;
                        }
                        if (auto tree = try_separator(combos[i], edges, specials, items, space, 1)) {
                            std::lock_guard<std::mutex> lock(mu);
                            if (!winner) {
                                winner = std::move(tree);
                            }
                            stop.store(true, std::memory_order_relaxed);
                            return;
                        }
                    }
                } catch (SearchCancelled&) {
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!error) {
                        error = std::current_exception();
                    }
                    stop.store(true, std::memory_order_relaxed);
                }
            });
        }
        for (auto& t : threads) {
            t.join();
        }
        stop.store(false, std::memory_order_relaxed);
        if (error && !winner) {
            std::rethrow_exception(error);
        }
        return winner;
    }
};

}  // namespace

SubedgeSet generate_subedges(const core::Hypergraph& h, SubedgeVariant variant,
                             const SubedgeParams& params) {
    std::set<Bitset> known;
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        known.insert(h.edge_bits(e));
    }
    std::set<Bitset> generated;
    auto cap_check = [&] {
        if (generated.size() > params.output_cap) {
            throw ResourceLimitError("subedge explosion: more than " +
                                     std::to_string(params.output_cap) + " subedges");
        }
    };
    if (variant == SubedgeVariant::Pairs) {
        Pool p = original_pool(h);
        add_pairs_closure(p, h, h.all_edges(), params.pair_subset_cap, params.output_cap);
        for (std::size_t i = p.n_orig; i < p.bits.size(); ++i) {
            generated.insert(p.bits[i]);
        }
    } else {
        std::size_t r = 0;
        for (std::size_t e = 0; e < h.edge_count(); ++e) {
            r = std::max(r, h.edge_bits(e).count());
        }
        if (r > params.max_rank) {
            throw std::invalid_argument("bounded-rank subedges require rank <= " +
                                        std::to_string(params.max_rank) + ", got " +
                                        std::to_string(r));
        }
        for (std::size_t e = 0; e < h.edge_count(); ++e) {
            auto verts = h.edge_bits(e).to_indices();
            std::size_t total = std::size_t{1} << verts.size();
            for (std::size_t mask = 1; mask + 1 < total; ++mask) {
                Bitset sub(h.vertex_count());
                for (std::size_t b = 0; b < verts.size(); ++b) {
                    if (mask & (std::size_t{1} << b)) {
                        sub.set(verts[b]);
                    }
                }
                if (!known.count(sub)) {
                    generated.insert(std::move(sub));
                    cap_check();
                }
            }
        }
    }
    SubedgeSet out;
    std::size_t counter = 0;
    for (const auto& bits : generated) {
        std::string name = "sub" + std::to_string(++counter);
        out.subedges[name] = h.vertex_names_of(bits);
        out.provenance[name] = h.edge_name(smallest_superset_edge(h, bits));
    }
    return out;
}

std::optional<Decomposition> detk_decompose(const core::Hypergraph& h, int k,
                                            const SearchOptions& opts) {
    if (k < 1) {
        throw std::invalid_argument("width bound must be at least 1");
    }
    SearchContext ctx{&opts, nullptr};
    DetkEngine engine(h, k, ctx, original_pool(h), false, opts);
    auto tree = engine.solve(h.all_edges(), Bitset(h.vertex_count()), {});
    if (!tree) {
        return std::nullopt;
    }
    return tree->to_decomposition(h, Notion::Hd);
}

std::optional<Decomposition> detk_decompose_rooted(const core::Hypergraph& h, int k,
                                                   const std::set<std::string>& root_vertices,
                                                   const SearchOptions& opts) {
    if (k < 1) {
        throw std::invalid_argument("width bound must be at least 1");
    }
    SearchContext ctx{&opts, nullptr};
    DetkEngine engine(h, k, ctx, original_pool(h), false, opts);
    auto tree = engine.solve(h.all_edges(), h.vertex_set_of(root_vertices), {});
    if (!tree) {
        return std::nullopt;
    }
    return tree->to_decomposition(h, Notion::Hd);
}

std::optional<Decomposition> ghw_decompose_detk(const core::Hypergraph& h, int k,
                                                BipVariant variant, const SearchOptions& opts) {
    if (k < 1) {
        throw std::invalid_argument("width bound must be at least 1");
    }
    SearchContext ctx{&opts, nullptr};
    Pool pool = original_pool(h);
    bool local = variant == BipVariant::Local;
    if (!local) {
        add_pairs_closure(pool, h, h.all_edges(), opts.pair_subset_cap, opts.subedge_cap);
    }
    DetkEngine engine(h, k, ctx, std::move(pool), local, opts);
    auto tree = engine.solve(h.all_edges(), Bitset(h.vertex_count()), {});
    if (!tree) {
        return std::nullopt;
    }
    return tree->to_decomposition(h, Notion::Ghd);
}

std::optional<Decomposition> balsep_decompose(const core::Hypergraph& h, int k,
                                              const SearchOptions& opts, BalsepRunInfo* info) {
    if (k < 1) {
        throw std::invalid_argument("width bound must be at least 1");
    }
    BalsepEngine engine(h, k, opts, kInfiniteDepth);
    auto tree = engine.solve(h.all_edges(), {}, 1);
    if (!tree) {
        return std::nullopt;
    }
    if (info) {
        tree->collect_info(*info);
    }
    return tree->to_decomposition(h, Notion::Ghd);
}

std::optional<Decomposition> hybrid_decompose(const core::Hypergraph& h, int k, int m,
                                              const SearchOptions& opts) {
    if (k < 1) {
        throw std::invalid_argument("width bound must be at least 1");
    }
    if (m < 0) {
        throw std::invalid_argument("hybrid depth must be nonnegative");
    }
    BalsepEngine engine(h, k, opts, m);
    auto tree = engine.solve(h.all_edges(), {}, 1);
    if (!tree) {
        return std::nullopt;
    }
    return tree->to_decomposition(h, Notion::Ghd);
}

namespace {

struct CandidateState {
    Bitset component;
    Bitset interface;
    bool operator<(const CandidateState& o) const {
        if (component != o.component) {
            return component < o.component;
        }
        return interface < o.interface;
    }
};

struct CandidateWitness {
    std::size_t bag_index;
    std::vector<CandidateState> children;
};

}  // namespace

std::optional<Decomposition> candidate_td(const core::Hypergraph& h,
                                          const std::set<std::set<std::string>>& bags) {
    if (bags.empty()) {
        throw std::invalid_argument("candidate bag set must be nonempty");
    }
    std::vector<Bitset> pool;
    for (const auto& bag : bags) {
        if (bag.empty()) {
            throw std::invalid_argument("candidate bags must be nonempty");
        }
        pool.push_back(h.vertex_set_of(bag));
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    std::map<CandidateState, std::optional<CandidateWitness>> memo;
    std::function<bool(const CandidateState&)> solvable = [&](const CandidateState& state) {
        auto it = memo.find(state);
        if (it != memo.end()) {
            return it->second.has_value();
        }
        memo[state] = std::nullopt;  // guards against revisiting during recursion
        Bitset obligations(h.edge_count());
        for (std::size_t e = 0; e < h.edge_count(); ++e) {
            if (h.edge_bits(e).intersects(state.component)) {
                obligations.set(e);
            }
        }
        Bitset allowed = state.component | state.interface;
        for (std::size_t b = 0; b < pool.size(); ++b) {
            const Bitset& bag = pool[b];
            if (!state.interface.is_subset_of(bag) || !bag.is_subset_of(allowed) ||
                !(bag & state.component).any()) {
                continue;
            }
            auto parts = split_items(h, obligations, {}, bag);
            CandidateWitness witness{b, {}};
            bool ok = true;
            for (const auto& part : parts) {
                CandidateState child{part.vertices, bag & part.space};
                if (!solvable(child)) {
                    ok = false;
                    break;
                }
                witness.children.push_back(child);
            }
            if (ok) {
                memo[state] = std::move(witness);
                return true;
            }
        }
        return false;
    };

    CandidateState rootState{h.all_vertices(), Bitset(h.vertex_count())};
    if (!solvable(rootState)) {
        return std::nullopt;
    }

    Decomposition d;
    d.notion = Notion::Td;
    std::function<int(const CandidateState&)> build = [&](const CandidateState& state) {
        const auto& witness = *memo.at(state);
        DecompositionNode node;
        node.bag = h.vertex_names_of(pool[witness.bag_index]);
        int id = d.add_node(std::move(node));
        for (const auto& child : witness.children) {
            int cid = build(child);
            d.add_edge(id, cid);
        }
        return id;
    };
    d.root = build(rootState);
    d.normalize_ids();
    return d;
}

std::set<std::set<std::string>> candidate_bags_bounded_rank(const core::Hypergraph& h, int k,
                                                            std::size_t r_max,
                                                            const SearchOptions& opts) {
    if (k < 1) {
        throw std::invalid_argument("width bound must be at least 1");
    }
    std::size_t r = 0;
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        r = std::max(r, h.edge_bits(e).count());
    }
    if (r > r_max) {
        throw std::invalid_argument("candidate bag generation requires rank <= " +
                                    std::to_string(r_max) + ", got " + std::to_string(r));
    }
    std::size_t combo_size = std::min<std::size_t>(static_cast<std::size_t>(k), h.edge_count());
    std::set<Bitset> bags;
    std::vector<std::size_t> combo;
    std::function<void(std::size_t)> gen = [&](std::size_t start) {
        if (combo.size() == combo_size) {
            Bitset u(h.vertex_count());
            for (std::size_t e : combo) {
                u |= h.edge_bits(e);
            }
            auto verts = u.to_indices();
            if (verts.size() > 24) {
                throw ResourceLimitError("candidate bag explosion: union of " +
                                         std::to_string(verts.size()) + " vertices");
            }
            std::size_t total = std::size_t{1} << verts.size();
            for (std::size_t mask = 1; mask < total; ++mask) {
                Bitset bag(h.vertex_count());
                for (std::size_t b = 0; b < verts.size(); ++b) {
                    if (mask & (std::size_t{1} << b)) {
                        bag.set(verts[b]);
                    }
                }
                bags.insert(std::move(bag));
                if (bags.size() > opts.candidate_bag_cap) {
                    throw ResourceLimitError("candidate bag explosion: more than " +
                                             std::to_string(opts.candidate_bag_cap) + " bags");
                }
            }
            return;
        }
        for (std::size_t e = start; e + (combo_size - combo.size()) <= h.edge_count(); ++e) {
            combo.push_back(e);
            gen(e + 1);
            combo.pop_back();
        }
    };
    gen(0);
    std::set<std::set<std::string>> out;
    for (const auto& bag : bags) {
        out.insert(h.vertex_names_of(bag));
    }
    return out;
}

std::optional<Decomposition> ghw_via_candidates(const core::Hypergraph& h, int k,
                                                std::size_t r_max, const SearchOptions& opts) {
    auto bags = candidate_bags_bounded_rank(h, k, r_max, opts);
    auto td = candidate_td(h, bags);
    if (!td) {
        return std::nullopt;
    }
    Decomposition d = std::move(*td);
    d.notion = Notion::Ghd;
    for (auto& [id, node] : d.nodes) {
        Bitset bag = h.vertex_set_of(node.bag);
        auto cover = covers::detail::min_edge_union_cover(h, bag, h.all_edges(),
                                                          static_cast<std::size_t>(k));
        if (!cover) {
            throw std::logic_error("candidate bag not coverable despite construction");
        }
        for (std::size_t e : *cover) {
            node.cover.set(h.edge_name(e), 1);
        }
    }
    return d;
}

MinimalWidthResult minimal_width(const core::Hypergraph& h, WidthKind kind, Method method,
                                 int k_max, const SearchOptions& opts, int hybrid_m) {
    if (k_max < 1) {
        throw std::invalid_argument("k_max must be at least 1");
    }
    if (kind == WidthKind::Fhw) {
        throw std::invalid_argument("fractional width search is not supported");
    }
    if (kind == WidthKind::Hw && method != Method::Detk) {
        throw std::invalid_argument("hypertree width requires the detk method");
    }
    if (kind == WidthKind::Ghw && method == Method::Detk) {
        throw std::invalid_argument("generalized hypertree width requires a GHD method");
    }
    std::size_t r = 0;
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        r = std::max(r, h.edge_bits(e).count());
    }
    MinimalWidthResult res;
    for (int k = 1; k <= k_max; ++k) {
        std::optional<Decomposition> d;
        switch (method) {
            case Method::Detk:
                d = detk_decompose(h, k, opts);
                break;
            case Method::DetkGhwGlobal:
                d = ghw_decompose_detk(h, k, BipVariant::Global, opts);
                break;
            case Method::DetkGhwLocal:
                d = ghw_decompose_detk(h, k, BipVariant::Local, opts);
                break;
            case Method::Balsep:
                d = balsep_decompose(h, k, opts);
                break;
            case Method::Hybrid:
                d = hybrid_decompose(h, k, hybrid_m, opts);
                break;
            case Method::Candidate:
                d = ghw_via_candidates(h, k, r, opts);
                break;
        }
        if (d) {
            res.found = true;
            res.width = k;
            res.witness = std::move(d);
            return res;
        }
    }
    return res;
}

}  // namespace hgdecomp::decompose
