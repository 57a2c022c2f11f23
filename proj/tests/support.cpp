#include "support.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace support {

core::Hypergraph hg(const std::map<std::string, std::set<std::string>>& edges) {
    return core::Hypergraph(edges);
}

core::Hypergraph star_with_big_edge(int n) {
    std::map<std::string, std::set<std::string>> edges;
    std::set<std::string> big;
    auto vname = [](int i) {
        std::string s = std::to_string(i);
        return "v" + std::string(2 - std::min<std::size_t>(2, s.size()), '0') + s;
    };
    for (int i = 1; i <= n; ++i) {
        edges["p" + std::to_string(i)] = {vname(0), vname(i)};
        big.insert(vname(i));
    }
    edges["big"] = big;
    return core::Hypergraph(edges);
}

core::Hypergraph triangle() {
    return hg({{"e1", {"a", "b"}}, {"e2", {"b", "c"}}, {"e3", {"c", "a"}}});
}

core::Hypergraph path_hypergraph(int n) {
    std::map<std::string, std::set<std::string>> edges;
    auto vname = [](int i) {
        std::string s = std::to_string(i);
        return "x" + std::string(2 - std::min<std::size_t>(2, s.size()), '0') + s;
    };
    for (int i = 1; i <= n; ++i) {
        edges["e" + std::to_string(i)] = {vname(i), vname(i + 1)};
    }
    return core::Hypergraph(edges);
}

std::vector<std::set<std::string>> bfs_components(const core::Hypergraph& h,
                                                  const std::set<std::string>& separator) {
    std::set<std::string> remaining;
    for (const auto& v : h.vertex_names()) {
        if (!separator.count(v)) {
            remaining.insert(v);
        }
    }
    std::vector<std::set<std::string>> out;
    while (!remaining.empty()) {
        std::set<std::string> comp;
        std::vector<std::string> queue{*remaining.begin()};
        comp.insert(*remaining.begin());
        remaining.erase(remaining.begin());
        while (!queue.empty()) {
            std::string u = queue.back();
            queue.pop_back();
            for (const auto& ename : h.edge_names()) {
                auto ev = h.edge_vertices(ename);
                if (!ev.count(u) || separator.count(u)) {
                    continue;
                }
                for (const auto& w : ev) {
                    if (!separator.count(w) && !comp.count(w)) {
                        comp.insert(w);
                        remaining.erase(w);
                        queue.push_back(w);
                    }
                }
            }
        }
        out.push_back(std::move(comp));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::size_t> brute_integral_cover(const core::Hypergraph& h,
                                                const std::set<std::string>& x) {
    const std::size_t n = h.edge_count();
    std::optional<std::size_t> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::set<std::string> covered;
        for (std::size_t e = 0; e < n; ++e) {
            if (mask & (std::uint64_t{1} << e)) {
                auto ev = h.edge_vertices(h.edge_name(e));
                covered.insert(ev.begin(), ev.end());
            }
        }
        if (std::includes(covered.begin(), covered.end(), x.begin(), x.end())) {
            std::size_t size = static_cast<std::size_t>(__builtin_popcountll(mask));
            if (!best || size < *best) {
                best = size;
            }
        }
    }
    return best;
}

namespace {

// Solves the square rational system M z = b by Gaussian elimination;
// nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> m,
                                                  std::vector<Rational> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        for (std::size_t row = col; row < n; ++row) {
            if (m[row][col] != 0) {
                pivot = row;
                break;
            }
        }
        if (pivot == n) {
            return std::nullopt;
        }
        std::swap(m[col], m[pivot]);
        std::swap(b[col], b[pivot]);
        Rational inv = 1 / m[col][col];
        for (auto& v : m[col]) {
            v *= inv;
        }
        b[col] *= inv;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col] == 0) {
                continue;
            }
            Rational factor = m[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[row][j] -= factor * m[col][j];
            }
            b[row] -= factor * b[col];
        }
    }
    return b;
}

}  // namespace

Rational brute_fractional_cover(const core::Hypergraph& h, const std::set<std::string>& x) {
    std::vector<std::string> verts(x.begin(), x.end());
    const std::size_t m = verts.size();
    const std::size_t n = h.edge_count();
    if (m == 0) {
        return 0;
    }
    const std::size_t cols = n + m;
    // Column j < n: edge incidence; column n+i: -1 surplus for row i.
    auto column = [&](std::size_t j, std::size_t row) -> Rational {
        if (j < n) {
            return h.edge_bits(j).test(h.vertex_index(verts[row])) ? 1 : 0;
        }
        return j - n == row ? -1 : 0;
    };

    std::optional<Rational> best;
    std::vector<std::size_t> basis;
    std::function<void(std::size_t)> choose = [&](std::size_t start) {
        if (basis.size() == m) {
            std::vector<std::vector<Rational>> mat(m, std::vector<Rational>(m));
            for (std::size_t r = 0; r < m; ++r) {
                for (std::size_t c = 0; c < m; ++c) {
                    mat[r][c] = column(basis[c], r);
                }
            }
            auto sol = solve_square(mat, std::vector<Rational>(m, Rational(1)));
            if (sol) {
                bool feasible = true;
                Rational objective = 0;
                for (std::size_t c = 0; c < m; ++c) {
                    if ((*sol)[c] < 0) {
                        feasible = false;
                        break;
                    }
                    if (basis[c] < n) {
                        objective += (*sol)[c];
                    }
                }
                if (feasible && (!best || objective < *best)) {
                    best = objective;
                }
            }
            return;
        }
        for (std::size_t j = start; j + (m - basis.size()) <= cols; ++j) {
            basis.push_back(j);
            choose(j + 1);
            basis.pop_back();
        }
    };
    choose(0);
    if (!best) {
        throw std::logic_error("covering LP has no basic feasible solution");
    }
    return *best;
}

core::Hypergraph to_hypergraph(const MaskHypergraph& mh) {
    std::map<std::string, std::set<std::string>> edges;
    for (std::size_t e = 0; e < mh.edges.size(); ++e) {
        std::set<std::string> verts;
        for (int v = 0; v < 64; ++v) {
            if (mh.edges[e] & (std::uint64_t{1} << v)) {
                verts.insert("v" + std::to_string(v));
            }
        }
        edges["e" + std::to_string(e + 1)] = std::move(verts);
    }
    return core::Hypergraph(edges);
}

bool mask_connected(const MaskHypergraph& mh) {
    if (mh.edges.empty()) {
        return false;
    }
    std::uint64_t reached = mh.edges[0];
    bool grew = true;
    while (grew) {
        grew = false;
        for (auto e : mh.edges) {
            if ((e & reached) && (e & ~reached)) {
                reached |= e;
                grew = true;
            }
        }
    }
    for (auto e : mh.edges) {
        if (e & ~reached) {
            return false;
        }
    }
    return true;
}

namespace {

std::vector<std::uint64_t> mask_components(std::uint64_t vertices,
                                           const std::vector<std::uint64_t>& items) {
    std::vector<std::uint64_t> comps;
    std::uint64_t remaining = vertices;
    while (remaining) {
        std::uint64_t comp = remaining & (~remaining + 1);  // lowest vertex
        bool grew = true;
        while (grew) {
            grew = false;
            for (auto item : items) {
                std::uint64_t part = item & vertices;
                if ((part & comp) && (part & ~comp)) {
                    comp |= part;
                    grew = true;
                }
            }
        }
        comps.push_back(comp);
        remaining &= ~comp;
    }
    return comps;
}

// Cover unions of <= k edges, each paired with its edge subset.
std::vector<std::uint64_t> cover_unions(const MaskHypergraph& mh, int k) {
    std::vector<std::uint64_t> out;
    const std::size_t n = mh.edges.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        if (__builtin_popcountll(mask) > k) {
            continue;
        }
        std::uint64_t u = 0;
        for (std::size_t e = 0; e < n; ++e) {
            if (mask & (std::uint64_t{1} << e)) {
                u |= mh.edges[e];
            }
        }
        out.push_back(u);
    }
    return out;
}

}  // namespace

bool oracle_hd_leq(const MaskHypergraph& mh, int k) {
    auto unions = cover_unions(mh, k);
    std::uint64_t all = 0;
    for (auto e : mh.edges) {
        all |= e;
    }
    std::map<std::pair<std::uint64_t, std::uint64_t>, bool> memo;
    std::function<bool(std::uint64_t, std::uint64_t)> solve = [&](std::uint64_t comp,
                                                                  std::uint64_t conn) {
        auto key = std::make_pair(comp, conn);
        auto it = memo.find(key);
        if (it != memo.end()) {
            return it->second;
        }
        bool ok = false;
        for (auto u : unions) {
            if (conn & ~u) {
                continue;
            }
            std::uint64_t bag = conn | (u & comp);
            if (!(bag & comp)) {
                continue;
            }
            std::vector<std::uint64_t> obligations;
            for (auto e : mh.edges) {
                if (e & comp) {
                    obligations.push_back(e);
                }
            }
            auto parts = mask_components(comp & ~bag, obligations);
            bool sub_ok = true;
            for (auto part : parts) {
                std::uint64_t space = 0;
                for (auto e : obligations) {
                    if (e & part) {
                        space |= e;
                    }
                }
                if (!solve(part, bag & space)) {
                    sub_ok = false;
                    break;
                }
            }
            if (sub_ok) {
                ok = true;
                break;
            }
        }
        memo[key] = ok;
        return ok;
    };
    return solve(all, 0);
}

bool oracle_ghw_leq(const MaskHypergraph& mh, int k) {
    auto unions = cover_unions(mh, k);
    auto coverable = [&](std::uint64_t bag) {
        for (auto u : unions) {
            if (!(bag & ~u)) {
                return true;
            }
        }
        return false;
    };
    std::uint64_t all = 0;
    for (auto e : mh.edges) {
        all |= e;
    }
    std::map<std::pair<std::uint64_t, std::uint64_t>, bool> memo;
    std::function<bool(std::uint64_t, std::uint64_t)> solve = [&](std::uint64_t comp,
                                                                  std::uint64_t interface) {
        auto key = std::make_pair(comp, interface);
        auto it = memo.find(key);
        if (it != memo.end()) {
            return it->second;
        }
        memo[key] = false;
        bool ok = false;
        // bag = interface | sub for every nonempty sub of comp
        std::uint64_t options = comp;
        for (std::uint64_t sub = options; sub && !ok; sub = (sub - 1) & options) {
            std::uint64_t bag = interface | sub;
            if (!coverable(bag)) {
                continue;
            }
            std::vector<std::uint64_t> obligations;
            for (auto e : mh.edges) {
                if (e & comp) {
                    obligations.push_back(e);
                }
            }
            auto parts = mask_components(comp & ~bag, obligations);
            bool sub_ok = true;
            for (auto part : parts) {
                std::uint64_t space = 0;
                for (auto e : obligations) {
                    if (e & part) {
                        space |= e;
                    }
                }
                if (!solve(part, bag & space)) {
                    sub_ok = false;
                    break;
                }
            }
            if (sub_ok) {
                ok = true;
            }
        }
        memo[key] = ok;
        return ok;
    };
    return solve(all, 0);
}

namespace {

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - i + 1) / i;
    }
    return r;
}

// index -> the index-th c-combination of {0..62} in lexicographic order.
std::vector<std::uint64_t> unrank_combination(std::uint64_t index, std::size_t c) {
    std::vector<std::uint64_t> combo;
    std::uint64_t a = 0;
    std::size_t k = c;
    while (k > 0) {
        std::uint64_t count = binom(63 - a - 1, k - 1);
        if (index < count) {
            combo.push_back(a);
            --k;
        } else {
            index -= count;
        }
        ++a;
    }
    return combo;
}

}  // namespace

std::vector<MaskHypergraph> corpus(std::size_t cap) {
    // Per-edge-count caps; small strata are exhaustive.
    const std::size_t caps[5] = {63, 1953, 4000, 6000, 8000};
    std::vector<MaskHypergraph> out;
    for (std::size_t c = 1; c <= 5 && out.size() < cap; ++c) {
        std::uint64_t total = binom(63, c);
        std::uint64_t stride = 2654435761ULL % total;
        if (stride == 0) {
            stride = 1;
        }
        while (std::gcd(stride, total) != 1) {
            ++stride;
        }
        std::size_t taken = 0;
        for (std::uint64_t t = 0; t < total && taken < caps[c - 1] && out.size() < cap; ++t) {
            std::uint64_t index = (t * stride) % total;
            auto combo = unrank_combination(index, c);
            MaskHypergraph mh;
            for (auto m : combo) {
                mh.edges.push_back(m + 1);  // masks 1..63
            }
            if (!mask_connected(mh)) {
                continue;
            }
            out.push_back(std::move(mh));
            ++taken;
        }
    }
    return out;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

core::Hypergraph fuzz_hypergraph(std::uint64_t index, const FuzzOptions& opts) {
    std::uint64_t state = opts.seed * 0x100000001B3ULL + index;
    std::size_t edge_count = 1 + splitmix64(state) % opts.max_edges;
    std::size_t pool = std::max<std::size_t>(4, edge_count * 5 / 2);
    std::map<std::string, std::set<std::string>> edges;
    auto vname = [](std::size_t i) {
        std::string s = std::to_string(i);
        return "v" + std::string(3 - std::min<std::size_t>(3, s.size()), '0') + s;
    };
    for (std::size_t e = 0; e < edge_count; ++e) {
        std::size_t size = 1 + splitmix64(state) % 5;
        std::set<std::string> verts;
        for (std::size_t i = 0; i < size; ++i) {
            verts.insert(vname(splitmix64(state) % pool));
        }
        std::string name = std::to_string(e + 1);
        edges["e" + std::string(2 - std::min<std::size_t>(2, name.size()), '0') + name] =
            std::move(verts);
    }
    return core::Hypergraph(edges);
}

}  // namespace support
