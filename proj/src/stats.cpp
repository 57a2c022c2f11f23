#include "hgdecomp/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace hgdecomp::stats {

std::size_t rank(const core::Hypergraph& h) {
    std::size_t r = 0;
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
        r = std::max(r, h.edge_bits(e).count());
    }
    return r;
}

std::size_t degree(const core::Hypergraph& h) {
    std::size_t d = 0;
    for (std::size_t v = 0; v < h.vertex_count(); ++v) {
        d = std::max(d, h.vertex_degree(v));
    }
    return d;
}

namespace {

std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
    if (k > n) {
        return 0;
    }
    if (k > n - k) {
        k = n - k;
    }
    unsigned __int128 result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        result = result * (n - i + 1) / i;  // exact: intermediate is C(n, i)
        if (result > cap) {
            return cap + 1;
        }
    }
    return static_cast<std::size_t>(result);
}

// Exhaustive DFS over c-subsets carrying the running intersection; branches
// whose intersection cannot beat the best are cut.
std::size_t exact_multi_intersection(const core::Hypergraph& h, std::size_t c) {
    std::size_t best = 0;
    std::function<void(std::size_t, std::size_t, const Bitset&)> dfs =
        [&](std::size_t start, std::size_t remaining, const Bitset& inter) {
            if (remaining == 0) {
                best = std::max(best, inter.count());
                return;
            }
            if (inter.count() <= best) {
                return;  // intersections only shrink from here
            }
            for (std::size_t e = start; e + remaining <= h.edge_count(); ++e) {
                dfs(e + 1, remaining - 1, inter & h.edge_bits(e));
            }
        };
    for (std::size_t e = 0; e + c <= h.edge_count(); ++e) {
        dfs(e + 1, c - 1, h.edge_bits(e));
    }
    return best;
}

// Deterministic strided sample of c-subsets via combination unranking.
std::size_t sampled_multi_intersection(const core::Hypergraph& h, std::size_t c,
                                       std::size_t samples) {
    const std::size_t n = h.edge_count();
    auto unrank = [&](std::size_t index) {
        std::vector<std::size_t> combo;
        std::size_t a = 0;
        std::size_t k = c;
        while (k > 0) {
            std::size_t count = binomial_capped(n - a - 1, k - 1, ~std::size_t{0} >> 1);
            if (index < count) {
                combo.push_back(a);
                --k;
            } else {
                index -= count;
            }
            ++a;
        }
        return combo;
    };
    std::size_t total = binomial_capped(n, c, ~std::size_t{0} >> 1);
    std::size_t stride = std::max<std::size_t>(1, total / samples);
    std::size_t best = 0;
    for (std::size_t i = 0; i < total; i += stride) {
        auto combo = unrank(i);
        Bitset inter = h.edge_bits(combo[0]);
        for (std::size_t j = 1; j < combo.size(); ++j) {
            inter &= h.edge_bits(combo[j]);
        }
        best = std::max(best, inter.count());
    }
    return best;
}

}  // namespace

std::size_t multi_intersection_size(const core::Hypergraph& h, std::size_t c,
                                    const StatsOptions& opts) {
    if (c < 2 || c > h.edge_count()) {
        throw std::invalid_argument("multi-intersection arity must be in [2, |E|]");
    }
    std::size_t subsets = binomial_capped(h.edge_count(), c, opts.subset_guard);
    if (subsets > opts.subset_guard) {
        if (!opts.allow_sampling) {
            throw std::runtime_error(
                "too many edge subsets for exact multi-intersection; enable sampling mode");
        }
        return sampled_multi_intersection(h, c, opts.sample_size);
    }
    return exact_multi_intersection(h, c);
}

bool is_cd_hypergraph(const core::Hypergraph& h, std::size_t c, std::size_t d,
                      const StatsOptions& opts) {
    if (c < 1) {
        throw std::invalid_argument("c must be at least 1");
    }
    if (c == 1) {
        return rank(h) <= d;
    }
    if (c > h.edge_count()) {
        return true;  // no c distinct edges exist
    }
    return multi_intersection_size(h, c, opts) <= d;
}

StatsReport report(const core::Hypergraph& h, const std::string& name,
                   const std::vector<std::size_t>& c_values, std::size_t threshold,
                   const StatsOptions& opts) {
    StatsReport r;
    r.name = name;
    r.vertex_count = h.vertex_count();
    r.edge_count = h.edge_count();
    r.rank = rank(h);
    r.degree = degree(h);
    for (std::size_t c : c_values) {
        std::size_t mi = c > h.edge_count() ? 0 : multi_intersection_size(h, c, opts);
        r.multi_intersection[c] = mi;
        std::ostringstream flag;
        flag << "(" << c << "," << threshold << ")-hypergraph";
        r.flags[flag.str()] = mi <= threshold;
        if (binomial_capped(h.edge_count(), c, opts.subset_guard) > opts.subset_guard) {
            r.approximate = true;
        }
    }
    std::ostringstream deg_flag;
    deg_flag << "(" << r.degree + 1 << ",0)-hypergraph";
    r.flags[deg_flag.str()] = true;
    r.flags["(6,0)-hypergraph"] = r.degree <= 5;
    return r;
}

const char* kCsvHeader =
    "name,vertices,edges,rank,degree,mi2,mi3,mi4,deg_le5,i2_le5,mi3_le5,mi4_le5";

namespace {

std::size_t mi_or_zero(const StatsReport& r, std::size_t c) {
    auto it = r.multi_intersection.find(c);
    return it == r.multi_intersection.end() ? 0 : it->second;
}

std::string percent(std::size_t hits, std::size_t total) {
    // Two decimals, trailing zeros trimmed (50, 33.33, 99.91).
    double p = total == 0 ? 0.0 : 100.0 * static_cast<double>(hits) / static_cast<double>(total);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", p);
    std::string s(buf);
    while (s.find('.') != std::string::npos && (s.back() == '0' || s.back() == '.')) {
        char c = s.back();
        s.pop_back();
        if (c == '.') {
            break;
        }
    }
    return s;
}

}  // namespace

std::string csv_row(const StatsReport& r) {
    std::ostringstream out;
    out << r.name << "," << r.vertex_count << "," << r.edge_count << "," << r.rank << ","
        << r.degree << "," << mi_or_zero(r, 2) << "," << mi_or_zero(r, 3) << ","
        << mi_or_zero(r, 4) << "," << (r.degree <= 5 ? 1 : 0) << ","
        << (mi_or_zero(r, 2) <= 5 ? 1 : 0) << "," << (mi_or_zero(r, 3) <= 5 ? 1 : 0) << ","
        << (mi_or_zero(r, 4) <= 5 ? 1 : 0);
    return out.str();
}

std::string corpus_summary(const std::vector<StatsReport>& reports) {
    std::ostringstream out;
    out << "class,instances,deg_le5_pct,mi2_le5_pct,mi3_le5_pct,mi4_le5_pct\n";
    if (reports.empty()) {
        return out.str();
    }
    std::size_t deg = 0;
    std::size_t mi2 = 0;
    std::size_t mi3 = 0;
    std::size_t mi4 = 0;
    for (const auto& r : reports) {
        deg += r.degree <= 5 ? 1 : 0;
        mi2 += mi_or_zero(r, 2) <= 5 ? 1 : 0;
        mi3 += mi_or_zero(r, 3) <= 5 ? 1 : 0;
        mi4 += mi_or_zero(r, 4) <= 5 ? 1 : 0;
    }
    std::size_t n = reports.size();
    out << "all," << n << "," << percent(deg, n) << "," << percent(mi2, n) << ","
        << percent(mi3, n) << "," << percent(mi4, n) << "\n";
    return out.str();
}

}  // namespace hgdecomp::stats
