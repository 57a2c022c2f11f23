#include "hgdecomp/covers.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

namespace hgdecomp::covers {

void EdgeWeightFunction::set(const std::string& edge, const Rational& weight) {
    if (weight < 0 || weight > 1) {
        throw std::invalid_argument("edge weight " + format_rational(weight) +
                                    " outside [0,1] for edge '" + edge + "'");
    }
    if (weight == 0) {
        weights_.erase(edge);
    } else {
        weights_[edge] = weight;
    }
}

Rational EdgeWeightFunction::get(const std::string& edge) const {
    auto it = weights_.find(edge);
    return it == weights_.end() ? Rational(0) : it->second;
}

std::set<std::string> EdgeWeightFunction::support() const {
    std::set<std::string> out;
    for (const auto& [e, w] : weights_) {
        out.insert(e);
    }
    return out;
}

Rational EdgeWeightFunction::total_weight() const {
    Rational sum = 0;
    for (const auto& [e, w] : weights_) {
        sum += w;
    }
    return sum;
}

std::set<std::string> covered_vertices(const core::Hypergraph& h,
                                       const EdgeWeightFunction& gamma) {
    std::vector<Rational> load(h.vertex_count(), Rational(0));
    for (const auto& [edge, w] : gamma.weights()) {
        std::size_t e = h.edge_index(edge);  // throws on unknown edge
        const Bitset& bits = h.edge_bits(e);
        for (std::size_t v = bits.find_first(); v != Bitset::npos; v = bits.find_next(v)) {
            load[v] += w;
        }
    }
    std::set<std::string> out;
    for (std::size_t v = 0; v < h.vertex_count(); ++v) {
        if (load[v] >= 1) {
            out.insert(h.vertex_name(v));
        }
    }
    return out;
}

namespace {

// Candidate edges restricted to their contribution on X, with edges whose
// contribution is contained in another candidate's removed. Sound for both
// optima: weight can always shift to the dominating edge, truncated at 1.
struct Candidates {
    std::vector<std::size_t> edges;   // original edge indices, ascending
    std::vector<Bitset> contribution; // e & X
};

Candidates useful_candidates(const core::Hypergraph& h, const Bitset& x) {
    Candidates c;
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        Bitset contrib = h.edge_bits(e) & x;
        if (contrib.none()) {
            continue;
        }
        c.edges.push_back(e);
        c.contribution.push_back(std::move(contrib));
    }
    std::vector<bool> dominated(c.edges.size(), false);
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        for (std::size_t j = 0; j < c.edges.size(); ++j) {
            if (i == j || dominated[j]) {
                continue;
            }
            if (c.contribution[i].is_subset_of(c.contribution[j]) &&
                (c.contribution[i] != c.contribution[j] || j < i)) {
                dominated[i] = true;
                break;
            }
        }
    }
    Candidates out;
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        if (!dominated[i]) {
            out.edges.push_back(c.edges[i]);
            out.contribution.push_back(c.contribution[i]);
        }
    }
    return out;
}

// Exact two-phase primal simplex for  min c.x  s.t.  A x >= 1, x >= 0
// over the 0/1 incidence matrix rows given in `rows`. Dantzig's rule with a
// permanent switch to Bland's rule after a run of degenerate pivots, which
// rules out cycling. Returns the optimal x for the structural variables.
struct LpResult {
    Rational objective;
    std::vector<Rational> x;
};

LpResult solve_covering_lp(const std::vector<Bitset>& rows, std::size_t n_structural) {
    const std::size_t m = rows.size();
    const std::size_t n = n_structural;
    const std::size_t cols = n + m + m;  // structural, surplus, artificial
    const std::size_t rhs = cols;

    std::vector<std::vector<Rational>> t(m + 2, std::vector<Rational>(cols + 1, Rational(0)));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (rows[i].test(j)) {
                t[i][j] = 1;
            }
        }
        t[i][n + i] = -1;
        t[i][n + m + i] = 1;
        t[i][rhs] = 1;
        basis[i] = n + m + i;
    }
    // Row m: phase-2 reduced costs (artificials costed 0 start at 0).
    for (std::size_t j = 0; j < n; ++j) {
        t[m][j] = 1;
    }
    // Row m+1: phase-1 reduced costs with the artificial basis priced in.
    for (std::size_t j = 0; j <= cols; ++j) {
        Rational colsum = 0;
        for (std::size_t i = 0; i < m; ++i) {
            colsum += t[i][j];
        }
        Rational cost = (j >= n + m && j < cols) ? Rational(1) : Rational(0);
        t[m + 1][j] = (j == rhs) ? Rational(-colsum) : Rational(cost - colsum);
    }

    std::vector<bool> row_active(m, true);

    auto pivot = [&](std::size_t pr, std::size_t pc) {
        Rational inv = 1 / t[pr][pc];
        for (std::size_t j = 0; j <= cols; ++j) {
            if (t[pr][j] != 0) {
                t[pr][j] *= inv;
            }
        }
        for (std::size_t i = 0; i < m + 2; ++i) {
            if (i == pr || t[i][pc] == 0) {
                continue;
            }
            Rational factor = t[i][pc];
            for (std::size_t j = 0; j <= cols; ++j) {
                if (t[pr][j] != 0) {
                    t[i][j] -= factor * t[pr][j];
                }
            }
        }
        basis[pr] = pc;
    };

    auto run_phase = [&](std::size_t obj_row, std::size_t col_limit) {
        bool bland = false;
        int stalled = 0;
        while (true) {
            std::size_t pc = cols;
            if (bland) {
                for (std::size_t j = 0; j < col_limit; ++j) {
                    if (t[obj_row][j] < 0) {
                        pc = j;
                        break;
                    }
                }
            } else {
                Rational best = 0;
                for (std::size_t j = 0; j < col_limit; ++j) {
                    if (t[obj_row][j] < best) {
                        best = t[obj_row][j];
                        pc = j;
                    }
                }
            }
            if (pc == cols) {
                return true;  // optimal
            }
            std::size_t pr = m;
            Rational best_ratio = 0;
            for (std::size_t i = 0; i < m; ++i) {
                if (!row_active[i] || t[i][pc] <= 0) {
                    continue;
                }
                Rational ratio = t[i][rhs] / t[i][pc];
                if (pr == m || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[pr])) {
                    pr = i;
                    best_ratio = ratio;
                }
            }
            if (pr == m) {
                return false;  // unbounded; cannot happen for covering LPs
            }
            if (best_ratio == 0) {
                if (!bland && ++stalled > 64) {
                    bland = true;
                }
            } else {
                stalled = 0;
            }
            pivot(pr, pc);
        }
    };

    if (!run_phase(m + 1, cols)) {
        throw std::logic_error("covering LP phase 1 unbounded");
    }
    if (t[m + 1][rhs] != 0) {
        // X is a subset of the covered universe, so this never triggers.
        throw std::logic_error("covering LP infeasible");
    }
    // Remove artificials still sitting (at value zero) in the basis.
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n + m) {
            continue;
        }
        std::size_t pc = cols;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (t[i][j] != 0) {
                pc = j;
                break;
            }
        }
        if (pc == cols) {
            row_active[i] = false;  // redundant constraint
        } else {
            pivot(i, pc);
        }
    }
    if (!run_phase(m, n + m)) {
        throw std::logic_error("covering LP phase 2 unbounded");
    }

    LpResult res;
    res.objective = -t[m][rhs];
    res.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        if (row_active[i] && basis[i] < n) {
            res.x[basis[i]] = t[i][rhs];
        }
    }
    return res;
}

// Runs the covering LP over the given candidate edges and packages the
// witness. An optimal basic solution never exceeds weight 1 on an edge:
// dropping the excess keeps every constraint at >= 1 and lowers the
// objective, so the [0,1] bound holds without explicit rows.
CoverResult fractional_over(const core::Hypergraph& h, const Bitset& x,
                            const Candidates& cand) {
    CoverResult out;
    if (x.none()) {
        out.found = true;
        out.cover = EdgeWeightFunction{};
        out.weight = 0;
        return out;
    }
    std::vector<Bitset> rows;
    for (std::size_t v = x.find_first(); v != Bitset::npos; v = x.find_next(v)) {
        Bitset row(cand.edges.size());
        for (std::size_t j = 0; j < cand.edges.size(); ++j) {
            if (cand.contribution[j].test(v)) {
                row.set(j);
            }
        }
        if (row.none()) {
            return out;  // vertex not coverable from the candidate set
        }
        rows.push_back(std::move(row));
    }
    LpResult lp = solve_covering_lp(rows, cand.edges.size());
    EdgeWeightFunction gamma;
    for (std::size_t j = 0; j < cand.edges.size(); ++j) {
        if (lp.x[j] != 0) {
            gamma.set(h.edge_name(cand.edges[j]), lp.x[j]);  // throws if > 1
        }
    }
    out.found = true;
    out.cover = std::move(gamma);
    out.weight = lp.objective;
    return out;
}

}  // namespace

CoverResult min_integral_cover(const core::Hypergraph& h, const std::set<std::string>& x) {
    Bitset target = h.vertex_set_of(x);
    CoverResult out;
    if (target.none()) {
        out.found = true;
        out.cover = EdgeWeightFunction{};
        out.weight = 0;
        return out;
    }
    auto chosen =
        detail::min_edge_union_cover(h, target, h.all_edges(), h.edge_count());
    if (!chosen) {
        return out;
    }
    EdgeWeightFunction gamma;
    for (std::size_t e : *chosen) {
        gamma.set(h.edge_name(e), 1);
    }
    out.found = true;
    out.weight = Rational(static_cast<long>(chosen->size()));
    out.cover = std::move(gamma);
    return out;
}

namespace detail {

std::optional<std::vector<std::size_t>> min_edge_union_cover(const core::Hypergraph& h,
                                                             const Bitset& target,
                                                             const Bitset& candidates,
                                                             std::size_t limit) {
    if (target.none()) {
        return std::vector<std::size_t>{};
    }
    // Candidate edges with nonempty contribution, dominated ones removed.
    std::vector<std::size_t> edges;
    std::vector<Bitset> contrib;
    for (std::size_t e = candidates.find_first(); e != Bitset::npos;
         e = candidates.find_next(e)) {
        Bitset c = h.edge_bits(e) & target;
        if (c.any()) {
            edges.push_back(e);
            contrib.push_back(std::move(c));
        }
    }
    std::vector<bool> dominated(edges.size(), false);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = 0; j < edges.size(); ++j) {
            if (i == j || dominated[j]) {
                continue;
            }
            if (contrib[i].is_subset_of(contrib[j]) && (contrib[i] != contrib[j] || j < i)) {
                dominated[i] = true;
                break;
            }
        }
    }
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!dominated[i]) {
            live.push_back(i);
        }
    }

    Bitset coverable(target.universe_size());
    std::size_t max_contrib = 0;
    for (std::size_t i : live) {
        coverable |= contrib[i];
        max_contrib = std::max(max_contrib, contrib[i].count());
    }
    if (!target.is_subset_of(coverable)) {
        return std::nullopt;
    }

    // Greedy upper bound.
    std::vector<std::size_t> best;
    {
        Bitset uncovered = target;
        while (uncovered.any()) {
            std::size_t pick = live.size();
            std::size_t gain = 0;
            for (std::size_t i : live) {
                std::size_t g = (contrib[i] & uncovered).count();
                if (g > gain) {
                    gain = g;
                    pick = i;
                }
            }
            best.push_back(edges[pick]);
            uncovered -= contrib[pick];
        }
    }

    // Depth-first exact search branching on the lowest uncovered vertex.
    std::vector<std::size_t> current;
    auto lower_bound = [&](const Bitset& uncovered) {
        return (uncovered.count() + max_contrib - 1) / max_contrib;
    };
    std::function<void(const Bitset&)> dfs = [&](const Bitset& uncovered) {
        if (uncovered.none()) {
            if (current.size() < best.size()) {
                best = current;
            }
            return;
        }
        if (current.size() + lower_bound(uncovered) >= best.size()) {
            return;
        }
        std::size_t v = uncovered.find_first();
        for (std::size_t i : live) {
            if (!contrib[i].test(v)) {
                continue;
            }
            current.push_back(edges[i]);
            dfs(uncovered - contrib[i]);
            current.pop_back();
        }
    };
    dfs(target);

    if (best.size() > limit) {
        return std::nullopt;
    }
    std::sort(best.begin(), best.end());
    return best;
}

}  // namespace detail

CoverResult min_fractional_cover(const core::Hypergraph& h, const std::set<std::string>& x) {
    Bitset target = h.vertex_set_of(x);  // throws when x is not a subset of V
    Candidates cand = useful_candidates(h, target);
    return fractional_over(h, target, cand);
}

CoverResult limited_support_cover(const core::Hypergraph& h, const std::set<std::string>& x,
                                  const Rational& max_weight, std::size_t max_support) {
    if (max_support < 1) {
        throw std::invalid_argument("support bound must be at least 1");
    }
    if (max_weight <= 0) {
        throw std::invalid_argument("weight bound must be positive");
    }
    Bitset target = h.vertex_set_of(x);
    CoverResult out;
    if (target.none()) {
        out.found = true;
        out.cover = EdgeWeightFunction{};
        out.weight = 0;
        return out;
    }
    Candidates cand = useful_candidates(h, target);
    Bitset all(target.universe_size());
    for (const auto& c : cand.contribution) {
        all |= c;
    }
    if (!target.is_subset_of(all)) {
        return out;
    }

    std::size_t q = std::min(max_support, cand.edges.size());
    std::vector<std::size_t> pick;
    // Enumerate candidate supports of size exactly s, smallest first, so the
    // first hit also has minimal support among successes.
    std::function<bool(std::size_t, std::size_t, Bitset)> enumerate =
        [&](std::size_t start, std::size_t remaining, Bitset covered) -> bool {
        if (remaining == 0) {
            if (!target.is_subset_of(covered)) {
                return false;
            }
            Candidates sub;
            for (std::size_t i : pick) {
                sub.edges.push_back(cand.edges[i]);
                sub.contribution.push_back(cand.contribution[i]);
            }
            CoverResult lp = fractional_over(h, target, sub);
            if (lp.found && lp.weight <= max_weight) {
                out = lp;
                return true;
            }
            return false;
        }
        for (std::size_t i = start; i + remaining <= cand.edges.size(); ++i) {
            pick.push_back(i);
            if (enumerate(i + 1, remaining - 1, covered | cand.contribution[i])) {
                return true;
            }
            pick.pop_back();
        }
        return false;
    };
    for (std::size_t s = 1; s <= q; ++s) {
        if (enumerate(0, s, Bitset(target.universe_size()))) {
            return out;
        }
    }
    return out;
}

Rational integrality_gap(const core::Hypergraph& h) {
    std::set<std::string> v(h.vertex_names().begin(), h.vertex_names().end());
    CoverResult integral = min_integral_cover(h, v);
    CoverResult fractional = min_fractional_cover(h, v);
    return integral.weight / fractional.weight;
}

}  // namespace hgdecomp::covers
