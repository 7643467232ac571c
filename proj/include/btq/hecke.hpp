#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "data/eigen_d3_closed_forms.hpp"
#include "domain.hpp"
#include "error.hpp"
#include "expr.hpp"
#include "gf.hpp"
#include "quotient.hpp"
#include "scalar.hpp"

namespace btq {

// values on the nodes of a QuotientGraph; nullopt where undefined
template <class S>
struct DomainFunction {
    std::vector<std::optional<S>> values;

    const std::optional<S>& at(const QuotientGraph& g, const VertexLabel& n) const { return values[g.at(n)]; }
};

template <class S>
DomainFunction<S> zero_function(const QuotientGraph& g) {
    return {std::vector<std::optional<S>>(g.nodes.size(), S(0))};
}

inline void check_hecke_index(const QuotientGraph& g, int i) {
    if (i != 1 && i != g.d - 1) throw InvalidInput("Hecke operator index must be 1 or d-1");
}

// A_1 sums over out-edges weighted by ratio_from, A_{d-1} over in-edges weighted by ratio_to
template <class S>
DomainFunction<S> apply_hecke(const QuotientGraph& g, int i, const DomainFunction<S>& f) {
    check_hecke_index(g, i);
    if (f.values.size() != g.nodes.size()) throw InvalidInput("function does not match the graph");
    DomainFunction<S> out{std::vector<std::optional<S>>(g.nodes.size())};
    const bool forward = i == 1;
    for (std::size_t u = 0; u < g.nodes.size(); ++u) {
        if (!g.interior(u)) continue;
        S acc(0);
        bool ok = true;
        for (auto e : forward ? g.out_edges[u] : g.in_edges[u]) {
            const auto& ed = g.edges[e];
            const auto& fv = f.values[forward ? ed.to : ed.from];
            if (!fv) {
                ok = false;
                break;
            }
            acc += scalar_from<S>(Rational(forward ? ed.ratio_from : ed.ratio_to)) * *fv;
        }
        if (ok) out.values[u] = acc;
    }
    return out;
}

// both row sums equal the number of index-q sublattices at every interior node
inline std::size_t row_sum_check(const QuotientGraph& g) {
    const BigInt expect = (big_pow(g.q, g.d) - 1) / (g.q - 1);
    std::size_t n = 0;
    for (std::size_t u = 0; u < g.nodes.size(); ++u) {
        if (!g.interior(u)) continue;
        BigInt a = 0, b = 0;
        for (auto e : g.out_edges[u]) a += g.edges[e].ratio_from;
        for (auto e : g.in_edges[u]) b += g.edges[e].ratio_to;
        invariant(a == expect && b == expect, "Hecke row sum wrong at " + g.nodes[u].label.str());
        ++n;
    }
    return n;
}

// rationals p/s with |p| <= 9, 1 <= s <= 9 on nodes with n_1 <= support_max, zero elsewhere
inline DomainFunction<Rational> random_function(const QuotientGraph& g, std::uint64_t seed, int support_max) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    auto f = zero_function<Rational>(g);
    for (std::size_t u = 0; u < g.nodes.size(); ++u)
        if (g.nodes[u].label[0] <= support_max) f.values[u] = Rational(num(rng), den(rng));
    return f;
}

struct CheckReport {
    Rational max_abs = 0;
    std::size_t checked = 0;
};

// A_1 A_2 f - A_2 A_1 f on nodes where both sides are defined
inline CheckReport commutator_check(const QuotientGraph& g, const DomainFunction<Rational>& f) {
    if (g.d < 3) throw InvalidInput("commutator check needs d >= 3");
    auto x = apply_hecke(g, 1, apply_hecke(g, g.d - 1, f));
    auto y = apply_hecke(g, g.d - 1, apply_hecke(g, 1, f));
    CheckReport r;
    for (std::size_t u = 0; u < g.nodes.size(); ++u) {
        if (!x.values[u] || !y.values[u]) continue;
        r.max_abs = std::max(r.max_abs, abs_value(Rational(*x.values[u] - *y.values[u])));
        ++r.checked;
    }
    if (!r.checked) throw InvalidInput("truncation too small for the commutator check");
    return r;
}

// sum_u f(u) h(u) / |Gamma_u|, skipping nodes where either factor is zero
inline Rational weighted_inner(const QuotientGraph& g, const DomainFunction<Rational>& f,
                               const DomainFunction<Rational>& h) {
    Rational s = 0;
    for (std::size_t u = 0; u < g.nodes.size(); ++u) {
        const auto &a = f.values[u], &b = h.values[u];
        if ((a && *a == 0) || (b && *b == 0)) continue;
        if (!a || !b) throw InvalidInput("inner product touches an undefined value at " + g.nodes[u].label.str());
        s += *a * *b / Rational(g.nodes[u].stab_order);
    }
    return s;
}

// <A_1 f, h> and <f, A_{d-1} h>
inline std::pair<Rational, Rational> adjointness_check(const QuotientGraph& g, const DomainFunction<Rational>& f,
                                                       const DomainFunction<Rational>& h) {
    return {weighted_inner(g, apply_hecke(g, 1, f), h), weighted_inner(g, f, apply_hecke(g, g.d - 1, h))};
}

template <class S>
struct D3Eigenvector {
    QuotientGraph graph;
    DomainFunction<S> f;
    // first minus second recursion at nodes that have two
    std::vector<std::pair<VertexLabel, S>> second_residuals;
};

namespace detail {

struct Rule {
    int op;  // 1 or 2
    VertexLabel source;
};

inline VertexLabel lab(int a, int b) { return VertexLabel({a, b, 0}); }

// (first, second) recursion used to solve for f(a,b,0)
inline std::pair<std::optional<Rule>, std::optional<Rule>> d3_rules(int a, int b) {
    if (a == 0) return {};
    if (a == 1) return {Rule{b == 0 ? 1 : 2, lab(0, 0)}, std::nullopt};
    if (a == 2) {
        if (b == 0) return {Rule{1, lab(1, 0)}, std::nullopt};
        if (b == 1) return {Rule{2, lab(1, 0)}, std::nullopt};
        return {Rule{2, lab(1, 1)}, std::nullopt};
    }
    if (b == 0) return {Rule{1, lab(a - 1, 0)}, std::nullopt};
    if (b == a) return {Rule{2, lab(a - 1, a - 1)}, std::nullopt};
    if (b == 1) return {Rule{2, lab(a - 1, 0)}, Rule{1, lab(a - 1, 1)}};
    if (b == a - 1) return {Rule{1, lab(a - 1, a - 1)}, Rule{2, lab(a - 1, a - 2)}};
    return {Rule{2, lab(a - 1, b - 1)}, Rule{1, lab(a - 1, b)}};
}

// f(target) from lambda f(src) = sum over the operator's edges at src
template <class S>
S solve_from(const QuotientGraph& g, const DomainFunction<S>& f, const Rule& rule, std::size_t target,
             const S& lambda) {
    const std::size_t u = g.at(rule.source);
    const bool forward = rule.op == 1;
    S rhs = lambda * *f.values[u];
    std::optional<S> coeff;
    for (auto e : forward ? g.out_edges[u] : g.in_edges[u]) {
        const auto& ed = g.edges[e];
        std::size_t w = forward ? ed.to : ed.from;
        S c = scalar_from<S>(Rational(forward ? ed.ratio_from : ed.ratio_to));
        if (w == target) {
            coeff = c;
            continue;
        }
        invariant(f.values[w].has_value(), "eigenvector recursion used a value not yet computed");
        rhs -= c * *f.values[w];
    }
    invariant(coeff.has_value(), "eigenvector recursion source is not adjacent to its target");
    return rhs / *coeff;
}

} // namespace detail

// simultaneous eigenvector of A_1, A_2 on the d = 3 quotient, f(0,0,0) = 1
template <class S>
D3Eigenvector<S> eigenvector_d3(const S& l1, const S& l2, std::uint32_t q, int max_n1) {
    if (max_n1 < 0) throw InvalidInput("max_n1 must be non-negative");
    D3Eigenvector<S> r{build_graph(3, q, max_n1), {}, {}};
    const auto& g = r.graph;
    r.f.values.assign(g.nodes.size(), std::nullopt);
    r.f.values[g.at(detail::lab(0, 0))] = S(1);
    for (int s = 1; s <= 2 * max_n1; ++s)
        for (int b = s / 2; b >= 0; --b) {
            const int a = s - b;
            if (a > max_n1) continue;
            auto [first, second] = detail::d3_rules(a, b);
            const std::size_t v = g.at(detail::lab(a, b));
            const S& lf = first->op == 1 ? l1 : l2;
            r.f.values[v] = detail::solve_from(g, r.f, *first, v, lf);
            if (second) {
                const S& ls = second->op == 1 ? l1 : l2;
                r.second_residuals.emplace_back(g.nodes[v].label,
                                                *r.f.values[v] - detail::solve_from(g, r.f, *second, v, ls));
            }
        }
    return r;
}

// max over interior nodes of |A_1 f - l1 f| and |A_2 f - l2 f|
template <class S>
auto eigen_residual(const QuotientGraph& g, const DomainFunction<S>& f, const S& l1, const S& l2) {
    auto x = apply_hecke(g, 1, f), y = apply_hecke(g, g.d - 1, f);
    decltype(abs_value(l1)) m = 0;
    for (std::size_t u = 0; u < g.nodes.size(); ++u) {
        if (x.values[u]) m = std::max(m, decltype(m)(abs_value(S(*x.values[u] - l1 * *f.values[u]))));
        if (y.values[u]) m = std::max(m, decltype(m)(abs_value(S(*y.values[u] - l2 * *f.values[u]))));
    }
    return m;
}

struct ClosedFormCheck {
    VertexLabel label;
    Rational expected, computed;
    std::string reading_note;
    bool match() const { return expected == computed; }
};

inline Rational eval_closed_form(const data::ClosedFormEntry& e, const Rational& l1, const Rational& l2,
                                 std::uint32_t q) {
    Rational Q = q;
    std::map<std::string, Rational> vars{{"l1", l1}, {"l2", l2}, {"q", Q}, {"t", Q * Q + Q + 1}, {"r", Q + 1}};
    return RationalExpr::eval(e.numerator, vars) / RationalExpr::eval(e.denominator, vars);
}

// tabulated closed forms against the recursion
inline std::vector<ClosedFormCheck> closed_form_regression(const Rational& l1, const Rational& l2, std::uint32_t q) {
    auto ev = eigenvector_d3<Rational>(l1, l2, q, 5);
    std::vector<ClosedFormCheck> out;
    for (const auto& e : data::eigen_d3_closed_forms) {
        auto n = detail::lab(e.n1, e.n2);
        out.push_back({n, eval_closed_form(e, l1, l2, q), *ev.f.at(ev.graph, n), e.reading_note});
    }
    return out;
}

// f_0 = 1, f_1 = l/(q+1), f_{n+1} = l f_n - q f_{n-1}
template <class S>
std::vector<S> eigenvector_d2_recursion(const S& l, std::uint32_t q, int max_n) {
    check_field(q);
    if (max_n < 0) throw InvalidInput("max_n must be non-negative");
    std::vector<S> f{S(1)};
    const S Q = scalar_from<S>(Rational(q));
    if (max_n >= 1) f.push_back(l / (Q + S(1)));
    for (int n = 1; n < max_n; ++n) f.push_back(l * f[n] - Q * f[n - 1]);
    return f;
}

// f_n = C r1^n + D r2^n, r = (l +- sqrt(l^2 - 4q))/2, exact in Q(sqrt(l^2 - 4q))
inline std::vector<QuadExt> eigenvector_d2_closed_form(const Rational& l, std::uint32_t q, int max_n) {
    check_field(q);
    const Rational disc = l * l - 4 * Rational(q);
    if (disc == 0) throw InvalidInput("closed form needs l^2 != 4q");
    const QuadExt s = QuadExt::sqrt_of(disc), L(l, 0, disc);
    const QuadExt half(Rational(1, 2), 0, disc), one(1, 0, disc), r1 = (L + s) * half, r2 = (L - s) * half;
    const QuadExt qp1(Rational(q + 1), 0, disc);
    const QuadExt C = (L - qp1 * r2) / (qp1 * s), D = one - C;
    std::vector<QuadExt> f;
    QuadExt p1 = one, p2 = one;
    for (int n = 0; n <= max_n; ++n) {
        f.push_back(C * p1 + D * p2);
        p1 = p1 * r1;
        p2 = p2 * r2;
    }
    return f;
}

inline std::vector<Complex> eigenvector_d2_closed_form(const Complex& l, std::uint32_t q, int max_n) {
    check_field(q);
    const Complex Q{Real(q)}, one{Real(1)}, two{Real(2)};
    const Complex disc = l * l - Q * Real(4);
    if (abs(disc) < Real("1e-40")) throw InvalidInput("closed form needs l^2 != 4q");
    const Complex s = sqrt(disc);
    const Complex r1 = (l + s) / two, r2 = (l - s) / two;
    const Complex C = (l - (Q + one) * r2) / ((Q + one) * s), D = one - C;
    std::vector<Complex> f;
    Complex p1 = one, p2 = one;
    for (int n = 0; n <= max_n; ++n) {
        f.push_back(C * p1 + D * p2);
        p1 *= r1;
        p2 *= r2;
    }
    return f;
}

// cumulative sum over shells n_1 = 0..max_n1 of |f(u)|^2 / |Gamma_u|
template <class S>
auto l2_partial_norm(const QuotientGraph& g, const DomainFunction<S>& f) {
    using R = decltype(abs2(std::declval<S>()));
    std::vector<R> shell(g.max_n1 + 1, R(0));
    for (std::size_t u = 0; u < g.nodes.size(); ++u) {
        if (!f.values[u]) throw InvalidInput("L2 norm of a partially undefined function");
        const R w = [&] {
            if constexpr (std::is_same_v<R, Rational>)
                return R(abs2(*f.values[u]) / Rational(g.nodes[u].stab_order));
            else
                return R(abs2(*f.values[u]) / R(g.nodes[u].stab_order));
        }();
        shell[g.nodes[u].label[0]] += w;
    }
    for (std::size_t i = 1; i < shell.size(); ++i) shell[i] += shell[i - 1];
    return shell;
}

namespace detail {

inline void compositions(int d, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (d == 0) {
        out.push_back(cur);
        return;
    }
    for (int x = 1; x <= d; ++x) {
        cur.push_back(x);
        compositions(d - x, cur, out);
        cur.pop_back();
    }
}

struct CompositionTerm {
    Rational base;              // weight of the smallest label of this block type
    std::vector<long long> s;   // geometric ratios q^{-s_l}
};

inline std::vector<CompositionTerm> covolume_terms(int d, std::uint64_t q) {
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    compositions(d, cur, comps);
    std::vector<CompositionTerm> out;
    for (const auto& c : comps) {
        BigInt den = 1;
        long long cross = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            den *= gl_order(c[i], q);
            for (std::size_t j = i + 1; j < c.size(); ++j) cross += static_cast<long long>(c[i]) * c[j];
        }
        den *= big_pow(q, cross);
        CompositionTerm t{Rational(BigInt(q - 1), den), {}};
        long long pre = 0;
        for (std::size_t l = 0; l + 1 < c.size(); ++l) {
            pre += c[l];
            t.s.push_back(pre * (d - pre));
        }
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace detail

inline void check_covolume_args(int d, std::uint64_t q) {
    if (d < 2) throw InvalidInput("covolume needs d >= 2");
    if (d > 12) throw ResourceLimit("covolume supports d <= 12");
    check_field(q);
}

// sum over T of 1/|Gamma_n|; gl = true uses GL stabilizer orders
inline Rational covolume(int d, std::uint64_t q, bool gl = false) {
    check_covolume_args(d, q);
    Rational total = 0;
    for (const auto& t : detail::covolume_terms(d, q)) {
        Rational term = t.base;
        for (long long s : t.s) {
            Rational x(BigInt(1), big_pow(q, s));
            term *= x / (1 - x);
        }
        total += term;
    }
    return gl ? Rational(total / (q - 1)) : total;
}

inline Rational covolume_partial(int d, std::uint64_t q, int max_n1, bool gl = false) {
    check_covolume_args(d, q);
    Rational s = 0;
    for (const auto& n : enumerate_T(d, max_n1)) s += Rational(BigInt(1), stabilizer_order(n, q, gl));
    return s;
}

// upper bound for covolume - covolume_partial
inline Rational covolume_tail_bound(int d, std::uint64_t q, int max_n1, bool gl = false) {
    check_covolume_args(d, q);
    Rational total = 0;
    for (const auto& t : detail::covolume_terms(d, q)) {
        const int k = static_cast<int>(t.s.size());
        if (k == 0) continue;
        const long long smin = *std::min_element(t.s.begin(), t.s.end());
        const Rational x(BigInt(1), big_pow(q, smin));
        // sum_{n > N} C(n-1, k-1) x^n = (x/(1-x))^k - sum_{n=k}^{N} C(n-1, k-1) x^n
        Rational full = 1, head = 0;
        for (int i = 0; i < k; ++i) full *= x / (1 - x);
        BigInt binom = 1;  // C(n-1, k-1) at n = k
        Rational xn = 1;
        for (int i = 0; i < k; ++i) xn *= x;
        for (int n = k; n <= max_n1; ++n) {
            head += Rational(binom) * xn;
            binom = binom * n / (n - k + 1);
            xn *= x;
        }
        total += t.base * (full - head);
    }
    return gl ? Rational(total / (q - 1)) : total;
}

} // namespace btq
