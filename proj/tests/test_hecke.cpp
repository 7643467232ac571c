#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace btq;

namespace {

VertexLabel L(int a, int b) { return VertexLabel({a, b, 0}); }

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-40, 40), den(1, 12);
    return Rational(num(rng), den(rng));
}

// primitive cube root of unity and its powers, at full backend precision
const Complex& rho_pow(int k) {
    static const Complex one(Real(1)), rho(Real(-1) / 2, sqrt(Real(3)) / 2), rho2 = rho * rho;
    static const Complex* p[3] = {&one, &rho, &rho2};
    return *p[((k % 3) + 3) % 3];
}

template <class S>
DomainFunction<S> constant(const QuotientGraph& g, S c) {
    return {std::vector<std::optional<S>>(g.nodes.size(), c)};
}

} // namespace

TEST(Hecke, OperatorExamples) {
    const std::uint32_t q = 3;
    auto g = build_graph(3, q, 6);
    auto f = random_function(g, 4, 6);
    auto a1 = apply_hecke(g, 1, f);
    auto F = [&](int a, int b) { return *f.at(g, L(a, b)); };
    EXPECT_EQ(*a1.at(g, L(0, 0)), 13 * F(1, 0));
    EXPECT_EQ(*a1.at(g, L(3, 1)), F(4, 1) + 3 * F(3, 2) + 9 * F(2, 0));
    EXPECT_EQ(*a1.at(g, L(4, 2)), F(5, 2) + 3 * F(4, 3) + 9 * F(3, 1));
    EXPECT_FALSE(a1.at(g, L(6, 2)).has_value());
    EXPECT_THROW(apply_hecke(g, 0, f), InvalidInput);

    auto t = build_graph(2, q, 6);
    auto h = random_function(t, 5, 6);
    auto b = apply_hecke(t, 1, h);
    EXPECT_EQ(*b.values[0], 4 * *h.values[1]);
    for (int n = 1; n < 6; ++n) EXPECT_EQ(*b.values[n], 3 * *h.values[n - 1] + *h.values[n + 1]);
}

TEST(Hecke, UndefinedValuesPropagate) {
    auto g = build_graph(3, 2, 4);
    auto f = zero_function<Rational>(g);
    f.values[g.at(L(2, 0))].reset();
    auto a1 = apply_hecke(g, 1, f);
    EXPECT_FALSE(a1.at(g, L(1, 0)).has_value());
    EXPECT_TRUE(a1.at(g, L(2, 1)).has_value());
    EXPECT_TRUE(a1.at(g, L(0, 0)).has_value());
    const std::size_t hole = g.at(L(2, 0));
    for (std::size_t u = 0; u < g.nodes.size(); ++u) {
        if (!g.interior(u)) continue;
        bool touches = false;
        for (auto e : g.out_edges[u]) touches = touches || g.edges[e].to == hole;
        EXPECT_EQ(a1.values[u].has_value(), !touches) << g.nodes[u].label.str();
    }
}

TEST(Hecke, ConstantIsEigenfunction) {
    for (std::uint32_t q : {2u, 3u, 5u}) {
        auto g = build_graph(3, q, 8);
        Rational t3 = q * q + q + 1;
        for (int i : {1, 2}) {
            auto a = apply_hecke(g, i, constant<Rational>(g, 1));
            for (std::size_t u = 0; u < g.nodes.size(); ++u)
                if (g.interior(u)) EXPECT_EQ(*a.values[u], t3);
        }
    }
}

TEST(Hecke, CommutatorVanishes) {
    for (std::uint32_t q : {2u, 3u}) {
        auto g = build_graph(3, q, 8);
        for (std::uint64_t s = 0; s < 5; ++s) EXPECT_EQ(commutator_check(g, random_function(g, s, 8)).max_abs, 0);
        EXPECT_EQ(commutator_check(g, constant<Rational>(g, 1)).max_abs, 0);
    }
    EXPECT_THROW(commutator_check(build_graph(3, 2, 1), constant<Rational>(build_graph(3, 2, 1), 1)), InvalidInput);
    EXPECT_THROW(commutator_check(build_graph(2, 2, 4), constant<Rational>(build_graph(2, 2, 4), 1)), InvalidInput);
}

TEST(Hecke, Adjointness) {
    for (std::uint32_t q : {2u, 3u}) {
        auto g = build_graph(3, q, 8);
        for (std::uint64_t s = 0; s < 5; ++s) {
            auto [lhs, rhs] = adjointness_check(g, random_function(g, s, 6), random_function(g, s + 100, 6));
            EXPECT_EQ(lhs, rhs);
        }
    }
}

TEST(Hecke, EigenvectorExamples) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 10; ++i) {
        Rational l1 = random_rational(rng), l2 = random_rational(rng);
        for (std::uint32_t q : {2u, 3u, 7u}) {
            Rational Q = q, T3 = Q * Q + Q + 1, R = Q + 1;
            auto ev = eigenvector_d3<Rational>(l1, l2, q, 4);
            const auto& g = ev.graph;
            EXPECT_EQ(*ev.f.at(g, L(0, 0)), 1);
            EXPECT_EQ(*ev.f.at(g, L(1, 0)), l1 / T3);
            EXPECT_EQ(*ev.f.at(g, L(2, 1)), (l1 * l2 - Q * Q * T3) / (T3 * R));
            EXPECT_EQ(*ev.f.at(g, L(3, 2)), (l1 * l2 * l2 - Q * R * l1 * l1 - l2 * Q * Q) / (R * T3));
            for (const auto& [lab, r] : ev.second_residuals) EXPECT_EQ(r, 0) << lab.str();
            EXPECT_EQ(eigen_residual(g, ev.f, l1, l2), 0);
        }
    }
}

TEST(Hecke, ConstantAndColoringEigenvectors) {
    for (std::uint32_t q : {2u, 5u}) {
        Rational t3 = q * q + q + 1;
        auto ev = eigenvector_d3<Rational>(t3, t3, q, 10);
        for (const auto& v : ev.f.values) EXPECT_EQ(*v, 1);
        const Complex T = scalar_from<Complex>(t3);
        auto c = eigenvector_d3<Complex>(rho_pow(1) * T, rho_pow(2) * T, q, 20);
        for (std::size_t u = 0; u < c.graph.nodes.size(); ++u) {
            const auto& n = c.graph.nodes[u].label;
            EXPECT_LT(abs(*c.f.values[u] - rho_pow(n[0] + n[1])), Real("1e-9")) << n.str();
        }
    }
}

TEST(Hecke, ClosedFormTable) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 5; ++i) {
        auto checks = closed_form_regression(random_rational(rng), random_rational(rng), 2 + 3 * (i % 2));
        ASSERT_EQ(checks.size(), 21u);
        for (const auto& c : checks)
            if (c.label[0] <= 4) EXPECT_TRUE(c.match()) << c.label.str();
    }
}

TEST(Hecke, ExpressionEvaluator) {
    std::map<std::string, Rational> v{{"x", 2}, {"y", Rational(1, 3)}};
    EXPECT_EQ(RationalExpr::eval("x^3 - 3*x*y + (x+1)/y", v), Rational(8 - 2 + 9));
    EXPECT_EQ(RationalExpr::eval("-x^2", v), -4);
    EXPECT_EQ(RationalExpr::eval("2*(x+y)^2", v), Rational(98, 9));
    EXPECT_THROW(RationalExpr::eval("x + z", v), InvalidInput);
    EXPECT_THROW(RationalExpr::eval("x +", v), InvalidInput);
    EXPECT_THROW(RationalExpr::eval("1/(x-2)", v), InvalidInput);
}

TEST(Hecke, TreeRecursionAgainstClosedForm) {
    for (std::uint32_t q : {2u, 3u, 5u}) {
        for (Rational l : {Rational(q + 1), Rational(1, 2), Rational(-7, 3), Rational(10)}) {
            auto rec = eigenvector_d2_recursion<Rational>(l, q, 30);
            auto cf = eigenvector_d2_closed_form(l, q, 30);
            ASSERT_EQ(rec.size(), 31u);
            EXPECT_EQ(rec[0], 1);
            EXPECT_EQ(rec[1], l / (q + 1));
            for (int n = 0; n <= 30; ++n) {
                auto x = cf[n].to_rational();
                ASSERT_TRUE(x.has_value()) << n;
                EXPECT_EQ(*x, rec[n]) << n;
            }
            auto crec = eigenvector_d2_recursion<Complex>(scalar_from<Complex>(l), q, 30);
            auto ccf = eigenvector_d2_closed_form(scalar_from<Complex>(l), q, 30);
            for (int n = 0; n <= 30; ++n) EXPECT_LT(abs(crec[n] - ccf[n]), Real("1e-9"));
        }
        const Complex degenerate(2 * sqrt(Real(q)));
        EXPECT_THROW(eigenvector_d2_closed_form(degenerate, q, 5), InvalidInput);
        auto r = eigenvector_d2_recursion<Complex>(degenerate, q, 10);
        for (const auto& x : r) EXPECT_TRUE(std::isfinite(x.real().convert_to<double>()));
    }
}

TEST(Hecke, TreeEigenfunctionOnGraph) {
    // the d = 2 recursion is an A_1 eigenfunction of the quotient half-line
    const std::uint32_t q = 3;
    const Rational l(7, 2);
    auto g = build_graph(2, q, 12);
    auto rec = eigenvector_d2_recursion<Rational>(l, q, 12);
    DomainFunction<Rational> f{std::vector<std::optional<Rational>>(rec.begin(), rec.end())};
    auto a = apply_hecke(g, 1, f);
    for (int n = 0; n < 12; ++n) EXPECT_EQ(*a.values[n], l * rec[n]);
}

TEST(Hecke, QuadraticExtensionArithmetic) {
    QuadExt a(1, 2, 5), b(Rational(1, 2), -1, 5);
    auto p = a * b;
    EXPECT_EQ(p.a(), Rational(1, 2) - 10);
    EXPECT_EQ(p.b(), Rational(-1) + 1);
    EXPECT_EQ((p / b), a);
    EXPECT_THROW(a / QuadExt(0, 0, 5), InvalidInput);
    EXPECT_EQ(*QuadExt(1, 1, 4).to_rational(), 3);
    EXPECT_FALSE(QuadExt(1, 1, 2).to_rational().has_value());
    EXPECT_THROW(QuadExt(0, 1, 2) + QuadExt(0, 1, 3), InvalidInput);
}

TEST(Hecke, ScalarParsing) {
    EXPECT_EQ(parse_rational("3/2"), Rational(3, 2));
    EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
    EXPECT_EQ(parse_rational("010"), 10);
    EXPECT_THROW(parse_rational("1/0"), InvalidInput);
    EXPECT_THROW(parse_rational("abc"), InvalidInput);
    EXPECT_EQ(parse_complex("1.5+2i"), Complex(Real("1.5"), Real(2)));
    EXPECT_EQ(parse_complex("-2i"), Complex(Real(0), Real(-2)));
    EXPECT_EQ(parse_complex("-i"), Complex(Real(0), Real(-1)));
    EXPECT_EQ(parse_complex("3"), Complex(Real(3)));
    EXPECT_EQ(parse_complex("1e-3-4i"), Complex(Real("1e-3"), Real(-4)));
    EXPECT_EQ(parse_complex("0.1").real(), Real(1) / 10);
    EXPECT_THROW(parse_complex("xi"), InvalidInput);
}

TEST(Hecke, L2PartialNorms) {
    for (int d : {2, 3}) {
        auto g = build_graph(d, 2, 8);
        auto one = l2_partial_norm(g, constant<Rational>(g, 1));
        for (int n = 0; n <= 8; ++n) EXPECT_EQ(one[n], covolume_partial(d, 2, n));
        for (const auto& x : l2_partial_norm(g, constant<Rational>(g, 0))) EXPECT_EQ(x, 0);
    }
    const Complex seven(Real(7));
    auto c = eigenvector_d3<Complex>(rho_pow(1) * seven, rho_pow(2) * seven, 2, 8);
    auto nc = l2_partial_norm(c.graph, c.f);
    for (int n = 0; n <= 8; ++n) EXPECT_LT(abs(nc[n] - real_from(covolume_partial(3, 2, n))), Real("1e-30"));
    auto g = build_graph(3, 2, 4);
    auto f = constant<Rational>(g, 1);
    f.values[3].reset();
    EXPECT_THROW(l2_partial_norm(g, f), InvalidInput);
}

TEST(Hecke, CovolumeClosedForms) {
    EXPECT_EQ(covolume(2, 2), Rational(2, 3));
    for (std::uint64_t q : {2, 3, 5, 7, 11}) {
        Rational Q = q;
        EXPECT_EQ(covolume(2, q), 1 / ((Q - 1) * Q * (Q + 1)) + 1 / (Q * (Q - 1) * (Q - 1)));
        EXPECT_EQ(covolume(2, q, true), covolume(2, q) / (Q - 1));
    }
    // the single-block composition is the origin weight
    for (int d = 2; d <= 5; ++d)
        for (const auto& t : detail::covolume_terms(d, 3))
            if (t.s.empty()) EXPECT_EQ(t.base, Rational(BigInt(1), pgl_order(d, 3)));
    EXPECT_THROW(covolume(1, 2), InvalidInput);
    EXPECT_THROW(covolume(3, 6), InvalidInput);
}

TEST(Hecke, CovolumePartialSumsAndTail) {
    for (auto [d, q] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}}) {
        const Rational c = covolume(d, q);
        Rational prev_gap = c;
        for (int n = 0; n <= 12; ++n) {
            Rational gap = c - covolume_partial(d, q, n);
            EXPECT_GT(gap, 0);
            EXPECT_LT(gap, prev_gap);
            EXPECT_LE(gap, covolume_tail_bound(d, q, n)) << d << " " << q << " " << n;
            prev_gap = gap;
        }
    }
}
