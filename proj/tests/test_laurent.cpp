#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace btq;

namespace {

LaurentPoly P(const char* s, std::uint32_t q = 3) { return LaurentPoly::parse(s, q); }

LaurentPoly random_poly(std::mt19937_64& rng, std::uint32_t q, int lo, int hi) {
    std::uniform_int_distribution<std::uint32_t> c(0, q - 1);
    std::vector<std::uint32_t> v(hi - lo + 1);
    for (auto& x : v) x = c(rng);
    return LaurentPoly::from_coeffs(q, lo, v);
}

LaurentMatrix M(std::vector<std::vector<const char*>> rows, std::uint32_t q) {
    LaurentMatrix m(static_cast<int>(rows.size()), q);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = LaurentPoly::parse(rows[i][j], q);
    return m;
}

} // namespace

TEST(Laurent, ParseAndPrintCanonical) {
    EXPECT_EQ(P("t^3+2*t^1+1").str(), "t^3+2*t^1+1");
    EXPECT_EQ(P("1 + 2*t + t^3").str(), "t^3+2*t^1+1");
    EXPECT_EQ(P("t^-2").str(), "t^-2");
    EXPECT_EQ(P("-1").str(), "2");
    EXPECT_EQ(P("-1", 2).str(), "1");
    EXPECT_EQ(P("t - t").str(), "0");
    EXPECT_EQ(P("5*t^2", 5).str(), "0");
    EXPECT_EQ(P("t+t+t").str(), "0");
    EXPECT_EQ(P("2*t").str(), "2*t^1");
}

TEST(Laurent, RejectsMalformedLiterals) {
    for (const char* s : {"", "t^", "2*", "x", "1++t", "*t", "t^1.5", "t^t"})
        EXPECT_THROW(P(s), InvalidInput) << s;
    EXPECT_THROW(LaurentPoly::parse("t", 4), InvalidInput);
}

TEST(Laurent, RoundTripRandom) {
    std::mt19937_64 rng(7);
    for (std::uint32_t q : {2u, 3u, 7u})
        for (int i = 0; i < 200; ++i) {
            auto p = random_poly(rng, q, -5, 5);
            EXPECT_EQ(LaurentPoly::parse(p.str(), q), p) << p.str();
        }
}

TEST(Laurent, RingAxiomsRandom) {
    std::mt19937_64 rng(11);
    for (std::uint32_t q : {2u, 5u})
        for (int i = 0; i < 100; ++i) {
            auto a = random_poly(rng, q, -3, 4), b = random_poly(rng, q, -2, 2), c = random_poly(rng, q, 0, 3);
            EXPECT_EQ(a * (b + c), a * b + a * c);
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a * b, b * a);
            EXPECT_EQ(a - a, LaurentPoly(q));
            if (!a.is_zero() && !b.is_zero()) EXPECT_EQ((a * b).degree(), a.degree() + b.degree());
        }
}

TEST(Laurent, Valuation) {
    EXPECT_EQ(P("t^3+1").valuation(), -3);
    EXPECT_EQ(P("t^-2+t^-5").valuation(), 2);
    EXPECT_TRUE(P("1+t^-1").is_unit_in_O());
    EXPECT_FALSE(P("t").is_unit_in_O());
    EXPECT_FALSE(P("t^-1").is_unit_in_O());
    EXPECT_TRUE(P("t^-1").in_O());
    EXPECT_FALSE(P("t").in_O());
    EXPECT_TRUE(P("t^2+1").is_polynomial());
    EXPECT_FALSE(P("t+t^-1").is_polynomial());
}

TEST(Laurent, MonomialDivisionOnly) {
    EXPECT_EQ(P("2*t^3+t") / P("2*t"), P("t^2+2"));
    EXPECT_THROW(P("t^2") / P("t+1"), InvalidInput);
    EXPECT_THROW(P("t") / LaurentPoly(3), InvalidInput);
    EXPECT_THROW(P("t", 3) + P("t", 5), InvalidInput);
}

TEST(Laurent, TruncationSplitsPolynomial) {
    auto p = P("t^3+2*t+1+t^-2");
    EXPECT_EQ(p.above(0) + p.at_most(0), p);
    EXPECT_EQ(p.above(0).str(), "t^3+2*t^1");
    EXPECT_EQ(p.at_most(-1).str(), "t^-2");
}

TEST(Laurent, SeriesDivideLeavesNoHighTerms) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        auto num = random_poly(rng, 3, -4, 6), den = random_poly(rng, 3, -2, 3);
        if (den.is_zero()) continue;
        const int floor = -3;
        auto quo = series_divide(num, den, floor);
        auto rest = num - quo * den;
        EXPECT_TRUE(rest.is_zero() || rest.degree() <= floor) << num.str() << " / " << den.str();
    }
}

TEST(Laurent, DeterminantAndAdjugate) {
    auto a = M({{"t^2", "t+1", "0"}, {"0", "t", "1"}, {"t^-1", "0", "t"}}, 3);
    auto det = a.det();
    // cofactor expansion along row 0
    auto expect = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                  a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    EXPECT_EQ(det, expect);
    auto prod = a * a.adjugate();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_EQ(prod(i, j), i == j ? det : LaurentPoly(3));
    EXPECT_EQ(M({{"t^2", "t"}, {"0", "t^2"}}, 2).det().str(), "t^4");
}

TEST(Laurent, MatrixFormatting) {
    auto a = LaurentMatrix::diag_t({2, 1, 0}, 2);
    EXPECT_EQ(a.str(), "[[t^2,0,0],[0,t,0],[0,0,1]]");
    EXPECT_THROW(LaurentMatrix(9, 2), InvalidInput);
    EXPECT_THROW(LaurentMatrix(0, 2), InvalidInput);
}

TEST(Laurent, RandomGammaIsInGLdPolynomials) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto g = random_gamma(3, 2, 3, seed);
        EXPECT_TRUE(g.is_polynomial());
        EXPECT_LE(g.max_degree(), 3);
        auto det = g.det();
        ASSERT_FALSE(det.is_zero());
        EXPECT_EQ(det.degree(), 0);
        EXPECT_EQ(det.low_degree(), 0);
        EXPECT_EQ(g, random_gamma(3, 2, 3, seed));
    }
}

TEST(Laurent, RandomKIsInGLdO) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto k = random_k(3, 3, 8, seed);
        EXPECT_TRUE(k.in_O());
        EXPECT_TRUE(k.det().is_unit_in_O());
        EXPECT_EQ(k, random_k(3, 3, 8, seed));
    }
    EXPECT_THROW(random_k(3, 2, -1, 0), PrecisionError);
    EXPECT_THROW(random_k(3, 2, 5000, 0), PrecisionError);
}
