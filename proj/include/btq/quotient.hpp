#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "domain.hpp"
#include "error.hpp"
#include "gf.hpp"

namespace btq {

struct EdgeData {
    BigInt edge_stab_order;  // |Gamma_u cap Gamma_v|
    BigInt ratio_from;       // |Gamma_u| / |Gamma_u cap Gamma_v|
    BigInt ratio_to;         // |Gamma_v| / |Gamma_u cap Gamma_v|
};

// Edge type 1..12 of a color-1 edge u -> v for d = 3.
inline int classify_edge_d3(const VertexLabel& u, const VertexLabel& v) {
    if (u.dim() != 3 || v.dim() != 3) throw InvalidInput("edge types are defined for d = 3");
    const int a = u[0], b = u[1], c = v[0], e = v[1];
    auto is = [&](int x, int y) { return c == x && e == y; };
    if (a == 0 && is(1, 0)) return 1;
    if (a == 1 && b == 0 && is(1, 1)) return 2;
    if (a == 1 && b == 1 && is(0, 0)) return 3;
    if (b == 0 && a >= 1 && is(a + 1, 0)) return 4;
    if (b == 0 && a >= 2 && is(a, 1)) return 5;
    if (a == b && a >= 1 && is(a + 1, a)) return 6;
    if (a > b && b > 0) {
        if (b == a - 1 && is(a, a)) return 7;
        if (is(a + 1, b)) return 8;
        if (b == 1 && is(a - 1, 0)) return 9;
        if (b >= 2 && is(a - 1, b - 1)) return 10;
        if (b + 1 < a && is(a, b + 1)) return 11;
    }
    if (a == b && a >= 2 && is(a - 1, a - 1)) return 12;
    throw InvalidInput("not a color-1 edge of the quotient: " + u.str() + " -> " + v.str());
}

// closed forms for d = 3; n is the first entry of the source label
inline EdgeData edge_table_d3(int type, std::uint64_t q, int n) {
    const BigInt Q = q, c = (Q - 1) * (Q - 1);
    const BigInt t3 = Q * Q + Q + 1, r = Q + 1;
    auto p = [&](long long e) { return big_pow(q, e); };
    switch (type) {
    case 1: return {r * c * p(3), t3, Q * Q};
    case 2: return {c * p(4), r * Q, r * Q};
    case 3: return {r * c * p(3), Q * Q, t3};
    case 4: return {r * c * p(2 * n + 3), 1, Q * Q};
    case 5: return {c * p(2 * n + 2), r * Q, Q};
    case 6: return {c * p(2 * n + 3), r, Q * Q};
    case 7: return {c * p(2 * n + 2), Q, r * Q};
    case 8: return {c * p(2 * n + 3), 1, Q * Q};
    case 9: return {c * p(2 * n + 1), Q * Q, r};
    case 10: return {c * p(2 * n + 1), Q * Q, 1};
    case 11: return {c * p(2 * n + 2), Q, Q};
    case 12: return {r * c * p(2 * n + 1), Q * Q, 1};
    default: throw InvalidInput("edge type must be in 1..12");
    }
}

// |Gamma_u cap Gamma_v| by intersecting the enumerated stabilizers
inline BigInt edge_stabilizer_order_bruteforce(const VertexLabel& u, const VertexLabel& v, std::uint32_t q,
                                               std::size_t bound = kStabilizerEnumerationBound) {
    std::unordered_set<std::string> a;
    for (const auto& g : stabilizer_enumerate(u, q, bound)) a.insert(g.str());
    std::size_t n = 0;
    for (const auto& g : stabilizer_enumerate(v, q, bound)) n += a.count(g.str());
    return n;
}

inline BigInt edge_stabilizer_order(const VertexLabel& u, const VertexLabel& v, std::uint32_t q,
                                    std::size_t bound = kStabilizerEnumerationBound) {
    if (u.dim() != v.dim()) throw InvalidInput("labels of different dimension");
    if (u.dim() == 3) return edge_table_d3(classify_edge_d3(u, v), q, u[0]).edge_stab_order;
    if (stabilizer_contains(u, v)) return stabilizer_order(u, q);
    if (stabilizer_contains(v, u)) return stabilizer_order(v, q);
    const VertexLabel& small = stabilizer_order(u, q) <= stabilizer_order(v, q) ? u : v;
    const VertexLabel& other = &small == &u ? v : u;
    std::size_t n = 0;
    for (const auto& g : stabilizer_enumerate(small, q, bound)) n += stabilizer_member(g, other);
    return n;
}

struct QuotientNode {
    VertexLabel label;
    BigInt stab_order;
};

struct QuotientEdge {
    std::size_t from = 0, to = 0;
    int color = 1;
    std::optional<int> type;  // d = 3 only
    BigInt edge_stab_order, ratio_from, ratio_to;
};

// Color-1 edges of the quotient restricted to labels with n_1 <= max_n1.
class QuotientGraph {
  public:
    int d = 0;
    std::uint32_t q = 2;
    int max_n1 = 0;
    std::vector<QuotientNode> nodes;
    std::vector<QuotientEdge> edges;
    std::vector<std::vector<std::size_t>> out_edges, in_edges;

    std::optional<std::size_t> index_of(const VertexLabel& n) const {
        auto it = index_.find(n);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t at(const VertexLabel& n) const {
        auto i = index_of(n);
        if (!i) throw InvalidInput("label outside the truncation: " + n.str());
        return *i;
    }
    // all neighbors of this node lie inside the truncation
    bool interior(std::size_t i) const { return nodes[i].label[0] < max_n1; }

    void add_node(QuotientNode n) {
        index_.emplace(n.label, nodes.size());
        nodes.push_back(std::move(n));
        out_edges.emplace_back();
        in_edges.emplace_back();
    }
    void add_edge(QuotientEdge e) {
        invariant(e.from < nodes.size() && e.to < nodes.size(), "edge endpoint out of range");
        out_edges[e.from].push_back(edges.size());
        in_edges[e.to].push_back(edges.size());
        edges.push_back(std::move(e));
    }

  private:
    std::map<VertexLabel, std::size_t> index_;
};

inline QuotientGraph build_graph(int d, std::uint32_t q, int max_n1) {
    check_field(q);
    QuotientGraph g;
    g.d = d;
    g.q = q;
    g.max_n1 = max_n1;
    for (auto& n : enumerate_T(d, max_n1)) {
        auto s = stabilizer_order(n, q);
        g.add_node({std::move(n), std::move(s)});
    }
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const auto& u = g.nodes[i].label;
        for (const auto& v : neighbors_in_T(u, d - 1)) {
            auto j = g.index_of(v);
            if (!j) continue;
            QuotientEdge e;
            e.from = i;
            e.to = *j;
            e.edge_stab_order = edge_stabilizer_order(u, v, q);
            const auto& su = g.nodes[i].stab_order;
            const auto& sv = g.nodes[*j].stab_order;
            invariant(su % e.edge_stab_order == 0 && sv % e.edge_stab_order == 0,
                      "edge stabilizer order does not divide a vertex stabilizer order");
            e.ratio_from = su / e.edge_stab_order;
            e.ratio_to = sv / e.edge_stab_order;
            if (d == 3) {
                e.type = classify_edge_d3(u, v);
                auto row = edge_table_d3(*e.type, q, u[0]);
                invariant(row.ratio_from == e.ratio_from && row.ratio_to == e.ratio_to,
                          "edge ratio closed form disagrees with stabilizer orders at " + u.str());
            }
            g.add_edge(std::move(e));
        }
    }
    return g;
}

} // namespace btq
