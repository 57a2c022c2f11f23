// hgdecomp: batch front end for hypergraph decomposition, validation,
// preprocessing and structural statistics.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "hgdecomp/decompose.hpp"
#include "hgdecomp/io.hpp"
#include "hgdecomp/log.hpp"
#include "hgdecomp/preprocess.hpp"
#include "hgdecomp/stats.hpp"
#include "hgdecomp/validate.hpp"

using namespace hgdecomp;

namespace {

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitTimeout = 124;

struct RunConfig {
    std::string method = "detk";
    int k = 1;
    int k_max = 6;
    int m = 2;  // hybrid switch depth
    int workers = 1;
    int jobs = 1;
    long timeout_seconds = 0;
    std::string notion = "ghw";
    bool no_preprocess = false;
    std::size_t subedge_cap = 1'000'000;
    std::string format = "json";
    std::string output;
    std::string emit_trace;
    std::string output_dir;
    bool summary = false;
    bool sample = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << content;
}

decompose::SearchOptions search_options(const RunConfig& cfg) {
    decompose::SearchOptions opts;
    opts.workers = cfg.workers;
    opts.subedge_cap = cfg.subedge_cap;
    if (cfg.timeout_seconds > 0) {
        opts.deadline =
            std::chrono::steady_clock::now() + std::chrono::seconds(cfg.timeout_seconds);
    }
    return opts;
}

WidthKind kind_for_method(decompose::Method method) {
    return method == decompose::Method::Detk ? WidthKind::Hw : WidthKind::Ghw;
}

std::optional<Decomposition> run_method(const core::Hypergraph& h, decompose::Method method,
                                        int k, const RunConfig& cfg,
                                        const decompose::SearchOptions& opts) {
    switch (method) {
        case decompose::Method::Detk:
            return decompose::detk_decompose(h, k, opts);
        case decompose::Method::DetkGhwGlobal:
            return decompose::ghw_decompose_detk(h, k, decompose::BipVariant::Global, opts);
        case decompose::Method::DetkGhwLocal:
            return decompose::ghw_decompose_detk(h, k, decompose::BipVariant::Local, opts);
        case decompose::Method::Balsep:
            return decompose::balsep_decompose(h, k, opts);
        case decompose::Method::Hybrid:
            return decompose::hybrid_decompose(h, k, cfg.m, opts);
        case decompose::Method::Candidate: {
            std::size_t rank = 0;
            for (std::size_t e = 0; e < h.edge_count(); ++e) {
                rank = std::max(rank, h.edge_bits(e).count());
            }
            return decompose::ghw_via_candidates(h, k, rank, opts);
        }
    }
    return std::nullopt;
}

// Simplify, solve each block, lift. Acceptance at k is equivalent to the
// direct solve; the lifted witness validates against the original input.
std::optional<Decomposition> solve_preprocessed(const core::Hypergraph& h,
                                                decompose::Method method, int k,
                                                const RunConfig& cfg,
                                                const decompose::SearchOptions& opts) {
    WidthKind kind = kind_for_method(method);
    auto pre = preprocess::simplify(h, kind);
    std::map<int, Decomposition> decs;
    for (const auto& block : pre.blocks) {
        auto d = run_method(block.hypergraph, method, k, cfg, opts);
        if (!d) {
            return std::nullopt;
        }
        decs[block.id] = std::move(*d);
    }
    auto resolver = [&opts](const core::Hypergraph& block, int k2,
                            const std::set<std::string>& root) {
        return root.empty() ? decompose::detk_decompose(block, k2, opts)
                            : decompose::detk_decompose_rooted(block, k2, root, opts);
    };
    return preprocess::lift_decomposition(h, pre.trace, decs, resolver);
}

Notion notion_for_method(decompose::Method method) {
    return method == decompose::Method::Detk ? Notion::Hd : Notion::Ghd;
}

int cmd_decompose(const RunConfig& cfg, const std::string& input) {
    auto started = std::chrono::steady_clock::now();
    auto method = decompose::method_from_name(cfg.method);
    if (!method) {
        std::cerr << "unknown method '" << cfg.method << "'\n";
        return kExitInput;
    }
    core::Hypergraph h;
    try {
        h = io::parse_hypergraph(read_file(input), input).hypergraph;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    auto opts = search_options(cfg);
    std::optional<Decomposition> result;
    try {
        result = cfg.no_preprocess ? run_method(h, *method, cfg.k, cfg, opts)
                                   : solve_preprocessed(h, *method, cfg.k, cfg, opts);
    } catch (const decompose::TimeoutError&) {
        std::cout << "timeout after " << cfg.timeout_seconds << "s\n";
        return kExitTimeout;
    } catch (const decompose::ResourceLimitError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return kExitResource;
    }
    if (!result) {
        std::cout << "no decomposition of width <= " << cfg.k << "\n";
        return kExitReject;
    }
    auto report = validate::validate_for_notion(h, *result);
    if (!report.ok) {
        std::cerr << "internal error: produced decomposition failed validation\n";
        return kExitResource;
    }
    auto format = cfg.format == "gml" ? io::DecompositionFormat::Gml
                                      : io::DecompositionFormat::Json;
    auto text = io::serialize_decomposition(*result, format);
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    std::cout << "width=" << format_rational(result->width()) << " method=" << cfg.method
              << " time=" << elapsed.count() << "\n";
    if (!cfg.output.empty()) {
        write_file(cfg.output, text);
    } else {
        std::cout << text;
    }
    return kExitAccept;
}

int cmd_exact(const RunConfig& cfg, const std::string& input) {
    auto started = std::chrono::steady_clock::now();
    auto method = decompose::method_from_name(cfg.method);
    if (!method) {
        std::cerr << "unknown method '" << cfg.method << "'\n";
        return kExitInput;
    }
    auto kind = width_kind_from_name(cfg.notion);
    if (!kind || *kind == WidthKind::Fhw) {
        std::cerr << "exact search supports notions hw and ghw\n";
        return kExitInput;
    }
    core::Hypergraph h;
    try {
        h = io::parse_hypergraph(read_file(input), input).hypergraph;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    auto opts = search_options(cfg);
    try {
        auto res = decompose::minimal_width(h, *kind, *method, cfg.k_max, opts, cfg.m);
        if (!res.found) {
            std::cout << "width exceeds k_max=" << cfg.k_max << "\n";
            return kExitReject;
        }
        std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
        std::cout << "width=" << res.width << " notion=" << cfg.notion
                  << " method=" << cfg.method << " time=" << elapsed.count() << "\n";
        if (!cfg.output.empty()) {
            auto format = cfg.format == "gml" ? io::DecompositionFormat::Gml
                                              : io::DecompositionFormat::Json;
            write_file(cfg.output, io::serialize_decomposition(*res.witness, format));
        }
        return kExitAccept;
    } catch (const decompose::TimeoutError&) {
        std::cout << "timeout after " << cfg.timeout_seconds << "s\n";
        return kExitTimeout;
    } catch (const decompose::ResourceLimitError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return kExitResource;
    }
}

int cmd_validate(const std::string& hg_path, const std::string& dec_path) {
    try {
        auto h = io::parse_hypergraph(read_file(hg_path), hg_path).hypergraph;
        auto d = io::parse_decomposition(read_file(dec_path));
        auto report = validate::validate_for_notion(h, d);
        std::cout << io::report_to_json(report);
        return report.ok ? kExitAccept : kExitReject;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
}

int cmd_stats(const RunConfig& cfg, const std::vector<std::string>& inputs) {
    stats::StatsOptions opts;
    opts.allow_sampling = cfg.sample;
    std::vector<stats::StatsReport> reports;
    for (const auto& path : inputs) {
        try {
            auto h = io::parse_hypergraph(read_file(path), path).hypergraph;
            reports.push_back(stats::report(h, std::filesystem::path(path).stem().string(),
                                            {2, 3, 4}, 5, opts));
        } catch (const std::runtime_error& e) {
            std::cerr << "error on '" << path << "': " << e.what() << "\n";
            return std::string(e.what()).find("sampling") != std::string::npos ? kExitResource
                                                                               : kExitInput;
        }
    }
    std::ostringstream out;
    if (cfg.summary) {
        out << stats::corpus_summary(reports);
    } else {
        out << stats::kCsvHeader << "\n";
        for (const auto& r : reports) {
            out << stats::csv_row(r) << "\n";
        }
    }
    if (!cfg.output.empty()) {
        write_file(cfg.output, out.str());
    } else {
        std::cout << out.str();
    }
    return kExitAccept;
}

int cmd_preprocess(const RunConfig& cfg, const std::string& input) {
    auto kind = width_kind_from_name(cfg.notion);
    if (!kind) {
        std::cerr << "unknown notion '" << cfg.notion << "'\n";
        return kExitInput;
    }
    core::Hypergraph h;
    try {
        h = io::parse_hypergraph(read_file(input), input).hypergraph;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    auto result = preprocess::simplify(h, *kind);
    for (const auto& block : result.blocks) {
        std::cout << "block " << block.id << ": edges=" << block.hypergraph.edge_count()
                  << " vertices=" << block.hypergraph.vertex_count() << "\n";
        if (!cfg.output_dir.empty()) {
            auto stem = std::filesystem::path(input).stem().string();
            auto path = std::filesystem::path(cfg.output_dir) /
                        (stem + ".block" + std::to_string(block.id) + ".hg");
            write_file(path.string(), io::serialize_hypergraph(block.hypergraph));
        }
    }
    std::cout << "steps=" << result.trace.steps.size() << "\n";
    if (*kind == WidthKind::Fhw) {
        std::cout << "fhw_lower_bound=" << format_rational(result.fhw_lower_bound) << "\n";
    }
    if (!cfg.emit_trace.empty()) {
        write_file(cfg.emit_trace, preprocess::trace_to_json(result.trace));
    }
    return kExitAccept;
}

int cmd_corpus(const RunConfig& cfg, const std::vector<std::string>& inputs) {
    struct Row {
        std::string status = "error";
        std::string width = "";
    };
    auto run_one = [&](const std::string& path) -> Row {
        try {
            auto h = io::parse_hypergraph(read_file(path), path).hypergraph;
            auto method = decompose::method_from_name(cfg.method);
            if (!method) {
                return {"error", ""};
            }
            auto opts = search_options(cfg);
            auto d = cfg.no_preprocess ? run_method(h, *method, cfg.k, cfg, opts)
                                       : solve_preprocessed(h, *method, cfg.k, cfg, opts);
            if (!d) {
                return {"reject", ""};
            }
            return {"ok", format_rational(d->width())};
        } catch (const decompose::TimeoutError&) {
            return {"timeout", ""};
        } catch (const io::ParseError&) {
            return {"parse-error", ""};
        } catch (const std::exception&) {
            return {"error", ""};
        }
    };

    std::vector<Row> rows(inputs.size());
    std::size_t jobs = static_cast<std::size_t>(std::max(1, cfg.jobs));
    for (std::size_t base = 0; base < inputs.size(); base += jobs) {
        std::vector<std::future<Row>> batch;
        for (std::size_t i = base; i < std::min(inputs.size(), base + jobs); ++i) {
            batch.push_back(std::async(std::launch::async, run_one, inputs[i]));
        }
        for (std::size_t i = 0; i < batch.size(); ++i) {
            rows[base + i] = batch[i].get();
        }
    }
    std::cout << "file,method,k,status,width\n";
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        std::cout << inputs[i] << "," << cfg.method << "," << cfg.k << "," << rows[i].status
                  << "," << rows[i].width << "\n";
    }
    return kExitAccept;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypergraph decomposition toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string input;
    std::string dec_path;
    std::vector<std::string> inputs;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--workers", cfg.workers, "parallel workers inside one search");
        cmd->add_option("--timeout", cfg.timeout_seconds, "seconds before giving up (0 = none)");
        cmd->add_option("--subedge-cap", cfg.subedge_cap, "max generated subedges");
        cmd->add_option("--format", cfg.format, "output format: json or gml")
            ->check(CLI::IsMember({"json", "gml"}));
        cmd->add_option("--output", cfg.output, "write the result to this path");
        cmd->add_flag("--no-preprocess", cfg.no_preprocess, "skip simplification");
        cmd->add_option("--m", cfg.m, "hybrid switch depth");
    };

    auto* dec = app.add_subcommand("decompose", "decide width <= k and emit a witness");
    dec->add_option("--method", cfg.method,
                    "detk | detk-ghw-global | detk-ghw-local | balsep | hybrid | candidate");
    dec->add_option("--k", cfg.k, "width bound")->required();
    add_common(dec);
    dec->add_option("input", input, "hypergraph file")->required();

    auto* exact = app.add_subcommand("exact", "smallest width within --kmax");
    exact->add_option("--method", cfg.method, "search method");
    exact->add_option("--notion", cfg.notion, "hw or ghw");
    exact->add_option("--kmax", cfg.k_max, "largest width to try");
    add_common(exact);
    exact->add_option("input", input, "hypergraph file")->required();

    auto* val = app.add_subcommand("validate", "check a decomposition against a hypergraph");
    val->add_option("hypergraph", input, "hypergraph file")->required();
    val->add_option("decomposition", dec_path, "decomposition file")->required();

    auto* st = app.add_subcommand("stats", "structural properties as CSV");
    st->add_flag("--summary", cfg.summary, "aggregate percentages instead of per-instance rows");
    st->add_flag("--sample", cfg.sample, "sampled multi-intersections on huge inputs");
    st->add_option("--output", cfg.output, "write CSV here");
    st->add_option("inputs", inputs, "hypergraph files")->required();

    auto* pre = app.add_subcommand("preprocess", "simplify and split into blocks");
    pre->add_option("--notion", cfg.notion, "hw, ghw or fhw");
    pre->add_option("--emit-trace", cfg.emit_trace, "write the simplification trace JSON here");
    pre->add_option("--output-dir", cfg.output_dir, "write block .hg files here");
    pre->add_option("input", input, "hypergraph file")->required();

    auto* corp = app.add_subcommand("corpus", "run one method over many files");
    corp->add_option("--method", cfg.method, "search method");
    corp->add_option("--k", cfg.k, "width bound")->required();
    corp->add_option("--jobs", cfg.jobs, "files processed concurrently");
    corp->add_option("--timeout", cfg.timeout_seconds, "per-file timeout in seconds");
    corp->add_flag("--no-preprocess", cfg.no_preprocess, "skip simplification");
    corp->add_option("--m", cfg.m, "hybrid switch depth");
    corp->add_option("inputs", inputs, "hypergraph files")->required();

    CLI11_PARSE(app, argc, argv);

    if (cfg.workers < 1 || cfg.jobs < 1 || cfg.timeout_seconds < 0) {
        std::cerr << "workers and jobs must be >= 1, timeout >= 0\n";
        return kExitInput;
    }

    try {
        if (dec->parsed()) {
            return cmd_decompose(cfg, input);
        }
        if (exact->parsed()) {
            return cmd_exact(cfg, input);
        }
        if (val->parsed()) {
            return cmd_validate(input, dec_path);
        }
        if (st->parsed()) {
            return cmd_stats(cfg, inputs);
        }
        if (pre->parsed()) {
            return cmd_preprocess(cfg, input);
        }
        if (corp->parsed()) {
            return cmd_corpus(cfg, inputs);
        }
    } catch (const decompose::ResourceLimitError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
