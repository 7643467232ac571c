#pragma once
#include <sstream>
#include <string>

#include <json.hpp>

#include "building.hpp"
#include "domain.hpp"
#include "error.hpp"
#include "laurent.hpp"
#include "quotient.hpp"
#include "scalar.hpp"

namespace btq {

using Json = nlohmann::json;

inline Json matrix_to_json(const LaurentMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back(m(i, j).str());
        rows.push_back(row);
    }
    return {{"q", m.modulus()}, {"d", m.dim()}, {"entries", rows}};
}

// {"q": prime, "d": int, "entries": [[literal, ...], ...]}
inline LaurentMatrix matrix_from_json(const Json& j) {
    try {
        require(j.is_object(), "matrix literal must be a JSON object");
        require(j.contains("q") && j["q"].is_number_integer(), "matrix literal needs integer q");
        require(j.contains("d") && j["d"].is_number_integer(), "matrix literal needs integer d");
        require(j.contains("entries") && j["entries"].is_array(), "matrix literal needs entries");
        const long long q = j["q"].get<long long>(), d = j["d"].get<long long>();
        require(q > 0 && q < (1 << 16), "q out of range");
        check_field(static_cast<std::uint64_t>(q));
        require(d >= 1 && d <= 8, "d must be in [1, 8]");
        const auto& e = j["entries"];
        require(static_cast<long long>(e.size()) == d, "entries must have d rows");
        LaurentMatrix m(static_cast<int>(d), static_cast<std::uint32_t>(q));
        for (int r = 0; r < d; ++r) {
            require(e[r].is_array() && static_cast<long long>(e[r].size()) == d, "each row must have d entries");
            for (int c = 0; c < d; ++c) {
                const auto& x = e[r][c];
                if (x.is_number_integer())
                    m(r, c) = LaurentPoly::constant(static_cast<std::uint32_t>(q), x.get<long long>() % q);
                else {
                    require(x.is_string(), "entries must be strings or integers");
                    m(r, c) = LaurentPoly::parse(x.get<std::string>(), static_cast<std::uint32_t>(q));
                }
            }
        }
        return m;
    } catch (const Json::exception& ex) {
        throw InvalidInput(std::string("malformed matrix literal: ") + ex.what());
    }
}

inline LaurentMatrix matrix_from_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& ex) {
        throw InvalidInput(std::string("matrix literal is not valid JSON: ") + ex.what());
    }
    return matrix_from_json(j);
}

inline Json vertex_to_json(const BuildingVertex& v) {
    Json j = matrix_to_json(v.basis);
    j["profile"] = v.profile;
    return j;
}

inline Json graph_to_json(const QuotientGraph& g) {
    Json nodes = Json::array(), edges = Json::array();
    for (const auto& n : g.nodes) nodes.push_back({{"label", n.label.values()}, {"stab_order", n.stab_order.str()}});
    for (const auto& e : g.edges) {
        Json x = {{"from", g.nodes[e.from].label.values()},
                  {"to", g.nodes[e.to].label.values()},
                  {"color", e.color},
                  {"edge_stab_order", e.edge_stab_order.str()},
                  {"ratio_from", e.ratio_from.str()},
                  {"ratio_to", e.ratio_to.str()}};
        if (e.type)
            x["type"] = *e.type;
        else
            x["type"] = "generic";
        edges.push_back(std::move(x));
    }
    return {{"d", g.d}, {"q", g.q}, {"max_n1", g.max_n1}, {"nodes", nodes}, {"edges", edges}};
}

// big integers travel as decimal strings
inline BigInt parse_big(const Json& j) {
    require(j.is_string(), "big integers must be decimal strings");
    return parse_bigint(j.get<std::string>());
}

inline QuotientGraph graph_from_json(const Json& j) {
    try {
        QuotientGraph g;
        g.d = j.at("d").get<int>();
        g.q = j.at("q").get<std::uint32_t>();
        g.max_n1 = j.at("max_n1").get<int>();
        check_field(g.q);
        for (const auto& n : j.at("nodes"))
            g.add_node({VertexLabel(n.at("label").get<std::vector<int>>()), parse_big(n.at("stab_order"))});
        for (const auto& e : j.at("edges")) {
            QuotientEdge x;
            x.from = g.at(VertexLabel(e.at("from").get<std::vector<int>>()));
            x.to = g.at(VertexLabel(e.at("to").get<std::vector<int>>()));
            x.color = e.at("color").get<int>();
            if (e.at("type").is_number_integer()) x.type = e.at("type").get<int>();
            x.edge_stab_order = parse_big(e.at("edge_stab_order"));
            x.ratio_from = parse_big(e.at("ratio_from"));
            x.ratio_to = parse_big(e.at("ratio_to"));
            g.add_edge(std::move(x));
        }
        return g;
    } catch (const Json::exception& ex) {
        throw InvalidInput(std::string("malformed quotient graph: ") + ex.what());
    }
}

inline std::string graph_to_dot(const QuotientGraph& g) {
    std::ostringstream os;
    os << "digraph quotient {\n";
    for (const auto& n : g.nodes) os << "  \"" << n.label.str() << "\";\n";
    for (const auto& e : g.edges) {
        os << "  \"" << g.nodes[e.from].label.str() << "\" -> \"" << g.nodes[e.to].label.str() << "\" [label=\""
           << (e.type ? std::to_string(*e.type) : std::string("generic")) << "/" << e.ratio_from.str() << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

inline std::string graph_to_text(const QuotientGraph& g) {
    std::ostringstream os;
    os << "d " << g.d << " q " << g.q << " max_n1 " << g.max_n1 << "\n";
    for (const auto& n : g.nodes) os << "node " << n.label.str() << " " << n.stab_order.str() << "\n";
    for (const auto& e : g.edges)
        os << "edge " << g.nodes[e.from].label.str() << " -> " << g.nodes[e.to].label.str() << " type "
           << (e.type ? std::to_string(*e.type) : std::string("generic")) << " w " << e.edge_stab_order.str() << " "
           << e.ratio_from.str() << " " << e.ratio_to.str() << "\n";
    return os.str();
}

} // namespace btq
