#include "hyper_ricci/io.hpp"

#include <json.hpp>

#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>

namespace hyper_ricci {

using nlohmann::json;

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : InvalidInput(line > 0 ? message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                            : message),
      line_(line),
      column_(column) {}

namespace {

std::pair<std::size_t, std::size_t> position_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

std::string shortest_decimal(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what, 0, 0); }

std::string vertex_key(const json& v, const std::string& where) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    fail(where, "vertex ids must be strings or integers");
}

std::vector<VertexIndex> vertex_list(const json& list, const std::unordered_map<std::string, VertexIndex>& index,
                                     const std::string& where) {
    if (!list.is_array() || list.empty()) fail(where, "expected a nonempty array of vertex ids");
    std::vector<VertexIndex> out;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string at = where + "/" + std::to_string(i);
        const std::string key = vertex_key(list[i], at);
        auto it = index.find(key);
        if (it == index.end()) fail(at, "unknown vertex '" + key + "'");
        out.push_back(it->second);
    }
    return out;
}

}  // namespace

HypergraphSystem parse_system_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, column] = position_of(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("malformed JSON", line, column);
    }
    if (!doc.is_object()) fail("/", "expected an object");
    if (!doc.contains("vertices")) fail("/", "missing \"vertices\"");
    if (!doc.contains("edges")) fail("/", "missing \"edges\"");
    const json& vertices = doc["vertices"];
    const json& edges = doc["edges"];
    if (!vertices.is_array()) fail("/vertices", "expected an array");
    if (!edges.is_array()) fail("/edges", "expected an array");

    std::vector<std::string> ids;
    std::unordered_map<std::string, VertexIndex> index;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const std::string at = "/vertices/" + std::to_string(i);
        ids.push_back(vertex_key(vertices[i], at));
        if (!index.emplace(ids.back(), i).second) fail(at, "duplicate vertex '" + ids.back() + "'");
    }

    std::vector<Edge> out_edges;
    std::vector<double> weights;
    std::vector<Rational> exact;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const std::string at = "/edges/" + std::to_string(e);
        const json& item = edges[e];
        if (!item.is_object()) fail(at, "expected an object");
        const bool undirected = item.contains("members");
        const bool directed = item.contains("tails") || item.contains("heads");
        if (undirected == directed) fail(at, "give either \"members\" or both \"tails\" and \"heads\"");
        if (undirected) {
            out_edges.push_back(Edge::undirected(vertex_list(item["members"], index, at + "/members")));
        } else {
            if (!item.contains("tails") || !item.contains("heads")) fail(at, "a hyperarc needs \"tails\" and \"heads\"");
            out_edges.push_back(Edge::directed(vertex_list(item["tails"], index, at + "/tails"),
                                               vertex_list(item["heads"], index, at + "/heads")));
        }
        Rational w(1);
        if (item.contains("weight")) {
            const json& wj = item["weight"];
            try {
                if (wj.is_string())
                    w = parse_rational(wj.get<std::string>());
                else if (wj.is_number_integer())
                    w = Rational(wj.get<long long>());
                else if (wj.is_number())
                    w = parse_rational(shortest_decimal(wj.get<double>()));
                else
                    fail(at + "/weight", "expected a number or a \"p/q\" string");
            } catch (const ParseError&) {
                throw;
            } catch (const std::invalid_argument& err) {
                fail(at + "/weight", err.what());
            }
        }
        if (w <= 0) fail(at + "/weight", "weight must be positive");
        weights.push_back(to_double(w));
        exact.push_back(w);
    }
    try {
        return HypergraphSystem(std::move(ids), std::move(out_edges), std::move(weights), std::move(exact));
    } catch (const ParseError&) {
        throw;
    } catch (const InvalidInput& err) {
        throw ParseError(err.what(), 0, 0);
    }
}

HypergraphSystem load_system_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system_json(buf.str());
}

std::string export_system_json(const HypergraphSystem& system) {
    json doc;
    doc["vertices"] = system.vertex_ids();
    doc["edges"] = json::array();
    auto id_list = [&](std::span<const VertexIndex> vs) {
        json out = json::array();
        for (VertexIndex v : vs) out.push_back(system.vertex_id(v));
        return out;
    };
    for (std::size_t e = 0; e < system.edge_count(); ++e) {
        const Edge& edge = system.edge(e);
        json item;
        if (edge.is_directed()) {
            item["tails"] = id_list(edge.tails());
            item["heads"] = id_list(edge.heads());
        } else {
            item["members"] = id_list(edge.members());
        }
        const Rational& w = system.exact_weights()[e];
        const double wd = system.weight(e);
        if (boost::multiprecision::denominator(w) == 1 && boost::multiprecision::abs(w) < Rational(1LL << 53))
            item["weight"] = static_cast<long long>(wd);
        else if (parse_rational(shortest_decimal(wd)) == w)
            item["weight"] = wd;
        else
            item["weight"] = to_string(w);
        doc["edges"].push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

HypergraphSystem complete_hypergraph(std::size_t n) {
    if (n < 2 || n > 16) throw InvalidInput("complete hypergraph needs 2 <= n <= 16");
    std::vector<std::string> ids;
    for (std::size_t i = 1; i <= n; ++i) ids.push_back("v" + std::to_string(i));
    std::vector<Edge> edges;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (std::popcount(mask) < 2) continue;
        std::vector<VertexIndex> members;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) members.push_back(i);
        edges.push_back(Edge::undirected(std::move(members)));
    }
    std::vector<double> weights(edges.size(), 1.0);
    return HypergraphSystem(std::move(ids), std::move(edges), std::move(weights));
}

}  // namespace hyper_ricci
