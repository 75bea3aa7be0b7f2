#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "isomat/graph.hpp"

namespace isomat {

/// On-disk description of a looped simple graph.
struct GraphDocument {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::size_t> loops;
    std::optional<std::string> name;
};

enum class GraphFormat { Json, Graph6, G6Loops };

inline std::optional<GraphFormat> parse_graph_format(const std::string& s) {
    if (s == "json") return GraphFormat::Json;
    if (s == "graph6" || s == "g6") return GraphFormat::Graph6;
    if (s == "g6loops") return GraphFormat::G6Loops;
    return std::nullopt;
}

namespace detail {
inline std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}
}  // namespace detail

inline LoopedSimpleGraph to_graph(const GraphDocument& doc) {
    LoopedSimpleGraph g(doc.n);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto [a, b] : doc.edges) {
        if (a >= doc.n || b >= doc.n)
            throw std::invalid_argument("edge endpoint out of range: [" + std::to_string(a) + "," +
                                        std::to_string(b) + "]");
        if (a == b) throw std::invalid_argument("self-loops belong in \"loops\", not \"edges\"");
        auto key = std::minmax(a, b);
        if (!seen.insert(key).second)
            throw std::invalid_argument("duplicate edge [" + std::to_string(key.first) + "," +
                                        std::to_string(key.second) + "]");
        g.set_edge(a, b, true);
    }
    std::set<std::size_t> loopset;
    for (std::size_t v : doc.loops) {
        if (v >= doc.n) throw std::invalid_argument("loop vertex out of range: " + std::to_string(v));
        if (!loopset.insert(v).second)
            throw std::invalid_argument("duplicate loop vertex: " + std::to_string(v));
        g.set_loop(v, true);
    }
    return g;
}

inline GraphDocument from_graph(const LoopedSimpleGraph& g, std::optional<std::string> name = {}) {
    GraphDocument doc;
    doc.n = g.order();
    doc.name = std::move(name);
    for (std::size_t v = 0; v < g.order(); ++v) {
        if (g.looped(v)) doc.loops.push_back(v);
        for (std::size_t w = v + 1; w < g.order(); ++w)
            if (g.adjacent(v, w)) doc.edges.emplace_back(v, w);
    }
    return doc;
}

inline GraphDocument parse_graph_document(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("JSON parse error at " + detail::line_column(text, e.byte) + ": " +
                                    e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("graph document must be a JSON object");
    if (!j.contains("n") || !j["n"].is_number_unsigned())
        throw std::invalid_argument("graph document needs a nonnegative integer \"n\"");
    GraphDocument doc;
    doc.n = j["n"].get<std::size_t>();
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw std::invalid_argument("\"edges\" must be an array of pairs");
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
                !e[1].is_number_unsigned())
                throw std::invalid_argument("each edge must be a pair of vertex indices");
            doc.edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
        }
    }
    if (j.contains("loops")) {
        if (!j["loops"].is_array()) throw std::invalid_argument("\"loops\" must be an array of vertices");
        for (const auto& l : j["loops"]) {
            if (!l.is_number_unsigned()) throw std::invalid_argument("each loop must be a vertex index");
            doc.loops.push_back(l.get<std::size_t>());
        }
    }
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw std::invalid_argument("\"name\" must be a string");
        doc.name = j["name"].get<std::string>();
    }
    return doc;
}

inline std::string emit_json(const GraphDocument& doc) {
    nlohmann::json j;
    j["n"] = doc.n;
    j["edges"] = nlohmann::json::array();
    auto edges = doc.edges;
    for (auto& [a, b] : edges)
        if (a > b) std::swap(a, b);
    std::sort(edges.begin(), edges.end());
    for (auto [a, b] : edges) j["edges"].push_back({a, b});
    auto loops = doc.loops;
    std::sort(loops.begin(), loops.end());
    j["loops"] = loops;
    if (doc.name) j["name"] = *doc.name;
    return j.dump();
}

/// Standard graph6 (loopless, n < 63). Pair bits run column-major over the
/// upper triangle: (0,1),(0,2),(1,2),(0,3),...
inline LoopedSimpleGraph parse_graph6(const std::string& text) {
    std::string s = text;
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    if (s.empty()) throw std::invalid_argument("empty graph6 string");
    if (s[0] == '~') throw std::invalid_argument("extended graph6 sizes (n >= 63) are not supported");
    if (s[0] < 63 || s[0] > 125) throw std::invalid_argument("bad graph6 size character");
    std::size_t n = static_cast<std::size_t>(s[0] - 63);
    std::size_t pairs = n * (n - 1) / 2;
    std::size_t want = (pairs + 5) / 6;
    if (s.size() != 1 + want)
        throw std::invalid_argument("graph6 body has wrong length (expected " + std::to_string(want) +
                                    " data characters)");
    LoopedSimpleGraph g(n);
    std::size_t k = 0;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i, ++k) {
            char c = s[1 + k / 6];
            if (c < 63 || c > 126) throw std::invalid_argument("bad graph6 data character");
            if ((c - 63) >> (5 - k % 6) & 1) g.set_edge(i, j, true);
        }
    return g;
}

inline std::string emit_graph6(const LoopedSimpleGraph& g) {
    std::size_t n = g.order();
    if (n >= 63) throw std::invalid_argument("graph6 output supports n < 63 only");
    if (g.loop_mask() != 0)
        throw std::invalid_argument("graph6 cannot encode loops; use g6loops");
    std::string out(1, static_cast<char>(63 + n));
    std::size_t pairs = n * (n - 1) / 2;
    std::string data((pairs + 5) / 6, 63);
    std::size_t k = 0;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i, ++k)
            if (g.adjacent(i, j)) data[k / 6] += 1 << (5 - k % 6);
    return out + data;
}

/// g6loops: "<graph6>;L=<bitstring>", the loop bits indexed by vertex.
inline LoopedSimpleGraph parse_g6loops(const std::string& text) {
    std::string s = text;
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    auto pos = s.find(";L=");
    if (pos == std::string::npos) throw std::invalid_argument("g6loops needs a \";L=<bits>\" suffix");
    LoopedSimpleGraph g = parse_graph6(s.substr(0, pos));
    std::string bits = s.substr(pos + 3);
    if (bits.size() != g.order())
        throw std::invalid_argument("loop bitstring length must equal the vertex count");
    for (std::size_t v = 0; v < bits.size(); ++v) {
        if (bits[v] != '0' && bits[v] != '1')
            throw std::invalid_argument("loop bitstring must consist of '0'/'1'");
        if (bits[v] == '1') g.set_loop(v, true);
    }
    return g;
}

inline std::string emit_g6loops(const LoopedSimpleGraph& g) {
    LoopedSimpleGraph bare = g;
    for (std::size_t v = 0; v < g.order(); ++v) bare.set_loop(v, false);
    std::string bits(g.order(), '0');
    for (std::size_t v = 0; v < g.order(); ++v)
        if (g.looped(v)) bits[v] = '1';
    return emit_graph6(bare) + ";L=" + bits;
}

inline LoopedSimpleGraph parse_graph(const std::string& text, GraphFormat fmt) {
    switch (fmt) {
        case GraphFormat::Json: return to_graph(parse_graph_document(text));
        case GraphFormat::Graph6: return parse_graph6(text);
        case GraphFormat::G6Loops: return parse_g6loops(text);
    }
    throw std::invalid_argument("unknown graph format");
}

}  // namespace isomat
