#include "hgdecomp/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace hgdecomp::io {

namespace {

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    void advance() {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
    void skip_ws_and_comments() {
        while (!done()) {
            char c = peek();
            if (c == '%') {
                while (!done() && peek() != '\n') {
                    advance();
                }
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                return;
            }
        }
    }
    std::string read_name() {
        std::string out;
        while (!done() && is_name_char(peek())) {
            out.push_back(peek());
            advance();
        }
        return out;
    }
};

}  // namespace

HypergraphDocument parse_hypergraph(const std::string& text, const std::string& source_name) {
    Cursor cur{text};
    std::map<std::string, std::set<std::string>> edges;
    std::map<std::string, int> edge_lines;

    while (true) {
        cur.skip_ws_and_comments();
        if (cur.done()) {
            break;
        }
        int stmt_line = cur.line;
        int stmt_col = cur.col;
        std::string edge = cur.read_name();
        if (edge.empty()) {
            throw ParseError(cur.line, cur.col, "expected edge name");
        }
        if (edges.count(edge)) {
            throw ParseError(stmt_line, stmt_col, "duplicate edge name '" + edge + "'");
        }
        cur.skip_ws_and_comments();
        if (cur.done() || cur.peek() != '(') {
            throw ParseError(cur.line, cur.col, "expected '(' after edge name '" + edge + "'");
        }
        cur.advance();
        std::set<std::string> verts;
        while (true) {
            cur.skip_ws_and_comments();
            if (!cur.done() && cur.peek() == ')' && verts.empty()) {
                throw ParseError(cur.line, cur.col, "empty edge '" + edge + "'");
            }
            std::string v = cur.read_name();
            if (v.empty()) {
                throw ParseError(cur.line, cur.col, "expected vertex name in edge '" + edge + "'");
            }
            verts.insert(v);  // duplicate mentions collapse
            cur.skip_ws_and_comments();
            if (cur.done()) {
                throw ParseError(cur.line, cur.col, "unterminated edge '" + edge + "'");
            }
            if (cur.peek() == ',') {
                cur.advance();
                continue;
            }
            if (cur.peek() == ')') {
                cur.advance();
                break;
            }
            throw ParseError(cur.line, cur.col, "expected ',' or ')' in edge '" + edge + "'");
        }
        edges[edge] = std::move(verts);
        edge_lines[edge] = stmt_line;
        cur.skip_ws_and_comments();
        if (!cur.done() && (cur.peek() == ',' || cur.peek() == '.')) {
            cur.advance();
        }
    }
    if (edges.empty()) {
        throw ParseError(cur.line, cur.col, "empty hypergraph file");
    }
    HypergraphDocument doc;
    doc.hypergraph = core::Hypergraph(edges);
    doc.source_name = source_name;
    doc.line_count = cur.line;
    return doc;
}

std::string serialize_hypergraph(const core::Hypergraph& h) {
    std::ostringstream out;
    auto edges = h.edge_map();
    std::size_t i = 0;
    for (const auto& [name, verts] : edges) {
        out << name << "(";
        std::size_t j = 0;
        for (const auto& v : verts) {
            if (j++) {
                out << ",";
            }
            out << v;
        }
        out << ")" << (++i == edges.size() ? "." : ",") << "\n";
    }
    return out.str();
}

namespace {

using ojson = nlohmann::ordered_json;

void require_tree(const Decomposition& d) {
    if (!d.is_tree()) {
        throw std::invalid_argument("refusing to serialize: not a rooted tree");
    }
}

std::string decomposition_to_json(const Decomposition& d) {
    ojson doc;
    doc["notion"] = notion_name(d.notion);
    doc["width"] = format_rational(d.width());
    doc["root"] = d.root;
    doc["nodes"] = ojson::array();
    for (const auto& [id, node] : d.nodes) {
        ojson n;
        n["id"] = id;
        n["bag"] = ojson::array();
        for (const auto& v : node.bag) {
            n["bag"].push_back(v);
        }
        n["cover"] = ojson::object();
        for (const auto& [e, w] : node.cover.weights()) {
            n["cover"][e] = format_rational(w);
        }
        doc["nodes"].push_back(std::move(n));
    }
    auto edges = d.tree_edges;
    std::sort(edges.begin(), edges.end());
    doc["edges"] = ojson::array();
    for (const auto& [p, c] : edges) {
        doc["edges"].push_back(ojson::array({p, c}));
    }
    return doc.dump(2) + "\n";
}

std::string decomposition_to_gml(const Decomposition& d) {
    std::ostringstream out;
    out << "graph [\n";
    out << "  directed 1\n";
    out << "  notion \"" << notion_name(d.notion) << "\"\n";
    out << "  width \"" << format_rational(d.width()) << "\"\n";
    out << "  root " << d.root << "\n";
    for (const auto& [id, node] : d.nodes) {
        out << "  node [\n";
        out << "    id " << id << "\n";
        out << "    bag \"";
        std::size_t i = 0;
        for (const auto& v : node.bag) {
            if (i++) {
                out << " ";
            }
            out << v;
        }
        out << "\"\n";
        out << "    cover \"";
        i = 0;
        for (const auto& [e, w] : node.cover.weights()) {
            if (i++) {
                out << " ";
            }
            out << e << "=" << format_rational(w);
        }
        out << "\"\n";
        out << "  ]\n";
    }
    auto edges = d.tree_edges;
    std::sort(edges.begin(), edges.end());
    for (const auto& [p, c] : edges) {
        out << "  edge [\n";
        out << "    source " << p << "\n";
        out << "    target " << c << "\n";
        out << "  ]\n";
    }
    out << "]\n";
    return out.str();
}

Rational parse_weight(const std::string& text, const std::string& context) {
    auto r = parse_rational(text);
    if (!r) {
        throw ParseError(0, 0, "malformed weight '" + text + "' " + context);
    }
    if (*r < 0 || *r > 1) {
        throw ParseError(0, 0, "weight '" + text + "' out of range [0,1] " + context);
    }
    return *r;
}

void finish_decomposition(Decomposition& d, const std::string& width_text) {
    if (!d.is_tree()) {
        throw ParseError(0, 0, "decomposition edges do not form a rooted tree");
    }
    auto declared = parse_rational(width_text);
    if (!declared) {
        throw ParseError(0, 0, "malformed width '" + width_text + "'");
    }
    if (*declared != d.width()) {
        throw ParseError(0, 0, "declared width " + width_text + " does not match computed " +
                                   format_rational(d.width()));
    }
}

Decomposition decomposition_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, 0, std::string("bad JSON: ") + e.what());
    }
    Decomposition d;
    try {
        auto notion = notion_from_name(doc.value("notion", "td"));
        if (!notion) {
            throw ParseError(0, 0, "unknown notion '" + doc.value("notion", "") + "'");
        }
        d.notion = *notion;
        d.root = doc.at("root").get<int>();
        for (const auto& n : doc.at("nodes")) {
            DecompositionNode node;
            for (const auto& v : n.at("bag")) {
                node.bag.insert(v.get<std::string>());
            }
            for (const auto& [e, w] : n.at("cover").items()) {
                node.cover.set(e, parse_weight(w.get<std::string>(),
                                               "in cover of node " +
                                                   std::to_string(n.at("id").get<int>())));
            }
            d.nodes[n.at("id").get<int>()] = std::move(node);
        }
        for (const auto& e : doc.at("edges")) {
            d.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
        }
        finish_decomposition(d, doc.at("width").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, 0, std::string("bad decomposition document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, 0, e.what());
    }
    return d;
}

// Minimal GML tokenizer: names, quoted strings, integers, brackets.
struct GmlToken {
    enum Kind { Name, Str, Int, Open, Close, End } kind;
    std::string text;
    long value = 0;
};

std::vector<GmlToken> gml_tokens(const std::string& text) {
    std::vector<GmlToken> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '[') {
            out.push_back({GmlToken::Open, "[", 0});
            ++i;
        } else if (c == ']') {
            out.push_back({GmlToken::Close, "]", 0});
            ++i;
        } else if (c == '"') {
            std::size_t j = text.find('"', i + 1);
            if (j == std::string::npos) {
                throw ParseError(0, 0, "unterminated string in GML");
            }
            out.push_back({GmlToken::Str, text.substr(i + 1, j - i - 1), 0});
            i = j + 1;
        } else if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i + (c == '-' ? 1 : 0);
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
                ++j;
            }
            GmlToken t{GmlToken::Int, text.substr(i, j - i), 0};
            t.value = std::stol(t.text);
            out.push_back(std::move(t));
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && is_name_char(text[j])) {
                ++j;
            }
            out.push_back({GmlToken::Name, text.substr(i, j - i), 0});
            i = j;
        } else {
            throw ParseError(0, 0, std::string("unexpected character '") + c + "' in GML");
        }
    }
    out.push_back({GmlToken::End, "", 0});
    return out;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string word;
    while (in >> word) {
        out.push_back(word);
    }
    return out;
}

Decomposition decomposition_from_gml(const std::string& text) {
    auto toks = gml_tokens(text);
    std::size_t i = 0;
    auto expect = [&](GmlToken::Kind k, const std::string& what) {
        if (toks[i].kind != k) {
            throw ParseError(0, 0, "expected " + what + " in GML");
        }
        return toks[i++];
    };
    if (toks[i].kind != GmlToken::Name || toks[i].text != "graph") {
        throw ParseError(0, 0, "expected 'graph' at start of GML");
    }
    ++i;
    expect(GmlToken::Open, "'['");

    Decomposition d;
    std::string width_text = "0";
    bool saw_width = false;
    while (toks[i].kind != GmlToken::Close) {
        auto key = expect(GmlToken::Name, "attribute name").text;
        if (key == "directed") {
            expect(GmlToken::Int, "integer");
        } else if (key == "notion") {
            auto notion = notion_from_name(expect(GmlToken::Str, "string").text);
            if (!notion) {
                throw ParseError(0, 0, "unknown notion in GML");
            }
            d.notion = *notion;
        } else if (key == "width") {
            width_text = expect(GmlToken::Str, "string").text;
            saw_width = true;
        } else if (key == "root") {
            d.root = static_cast<int>(expect(GmlToken::Int, "integer").value);
        } else if (key == "node") {
            expect(GmlToken::Open, "'['");
            int id = 0;
            DecompositionNode node;
            while (toks[i].kind != GmlToken::Close) {
                auto attr = expect(GmlToken::Name, "node attribute").text;
                if (attr == "id") {
                    id = static_cast<int>(expect(GmlToken::Int, "integer").value);
                } else if (attr == "bag") {
                    for (const auto& v : split_ws(expect(GmlToken::Str, "string").text)) {
                        node.bag.insert(v);
                    }
                } else if (attr == "cover") {
                    for (const auto& entry : split_ws(expect(GmlToken::Str, "string").text)) {
                        auto eq = entry.find('=');
                        if (eq == std::string::npos) {
                            throw ParseError(0, 0, "malformed cover entry '" + entry + "'");
                        }
                        try {
                            node.cover.set(entry.substr(0, eq),
                                           parse_weight(entry.substr(eq + 1),
                                                        "in node " + std::to_string(id)));
                        } catch (const std::invalid_argument& e) {
                            throw ParseError(0, 0, e.what());
                        }
                    }
                } else {
                    ++i;  // tolerate unknown scalar attributes
                }
            }
            ++i;
            d.nodes[id] = std::move(node);
        } else if (key == "edge") {
            expect(GmlToken::Open, "'['");
            int src = 0;
            int dst = 0;
            while (toks[i].kind != GmlToken::Close) {
                auto attr = expect(GmlToken::Name, "edge attribute").text;
                if (attr == "source") {
                    src = static_cast<int>(expect(GmlToken::Int, "integer").value);
                } else if (attr == "target") {
                    dst = static_cast<int>(expect(GmlToken::Int, "integer").value);
                } else {
                    ++i;
                }
            }
            ++i;
            d.add_edge(src, dst);
        } else {
            ++i;
        }
    }
    if (saw_width) {
        finish_decomposition(d, width_text);
    } else if (!d.is_tree()) {
        throw ParseError(0, 0, "decomposition edges do not form a rooted tree");
    }
    return d;
}

}  // namespace

std::string serialize_decomposition(const Decomposition& d, DecompositionFormat format) {
    require_tree(d);
    return format == DecompositionFormat::Json ? decomposition_to_json(d)
                                               : decomposition_to_gml(d);
}

Decomposition parse_decomposition(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            continue;
        }
        if (c == '{') {
            return decomposition_from_json(text);
        }
        return decomposition_from_gml(text);
    }
    throw ParseError(0, 0, "empty decomposition document");
}

std::string report_to_json(const validate::ValidationReport& report) {
    ojson doc;
    doc["ok"] = report.ok;
    doc["width"] = format_rational(report.width);
    doc["violations"] = ojson::array();
    for (const auto& v : report.violations) {
        ojson item;
        item["condition"] = validate::condition_name(v.condition);
        item["nodes"] = v.node_ids;
        item["detail"] = v.detail;
        doc["violations"].push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

}  // namespace hgdecomp::io
