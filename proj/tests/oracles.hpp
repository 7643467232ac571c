#pragma once
// Brute-force reference computations used only by the tests.
#include <cstdint>
#include <set>
#include <vector>

#include <btq/btq.hpp>

namespace oracle {

using btq::BigInt;
using btq::LaurentMatrix;
using btq::LaurentPoly;

// determinant over Z/q by Leibniz expansion
inline long long int_det(const std::vector<long long>& a, int m, long long q) {
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i) perm[i] = i;
    long long s = 0;
    do {
        int inv = 0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) inv += perm[i] > perm[j];
        long long p = 1;
        for (int i = 0; i < m; ++i) p = p * a[i * m + perm[i]] % q;
        s = (s + (inv & 1 ? q - p : p)) % q;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return s;
}

// count of invertible m x m matrices over F_q
inline std::uint64_t gl_count(int m, long long q) {
    const int n = m * m;
    std::vector<long long> a(n, 0);
    std::uint64_t count = 0;
    for (;;) {
        count += int_det(a, m, q) != 0;
        int i = 0;
        while (i < n && ++a[i] == q) a[i++] = 0;
        if (i == n) break;
    }
    return count;
}

// number of k-dimensional subspaces of F_q^d, by collecting spans of k-tuples
inline std::size_t subspace_count(int d, int k, long long q) {
    long long total = 1;
    for (int i = 0; i < d; ++i) total *= q;
    auto encode = [&](const std::vector<long long>& v) {
        long long x = 0;
        for (int i = d - 1; i >= 0; --i) x = x * q + v[i];
        return x;
    };
    std::set<std::vector<bool>> spaces;
    std::vector<long long> pick(k, 0);
    for (;;) {
        // span of the picked vectors
        std::vector<bool> in(total, false);
        std::vector<long long> coef(k, 0);
        for (;;) {
            std::vector<long long> v(d, 0);
            for (int j = 0; j < k; ++j) {
                long long x = pick[j];
                for (int i = 0; i < d; ++i, x /= q) v[i] = (v[i] + coef[j] * (x % q)) % q;
            }
            in[encode(v)] = true;
            int j = 0;
            while (j < k && ++coef[j] == q) coef[j++] = 0;
            if (j == k) break;
        }
        long long size = std::count(in.begin(), in.end(), true);
        long long want = 1;
        for (int j = 0; j < k; ++j) want *= q;
        if (size == want) spaces.insert(in);
        int j = 0;
        while (j < k && ++pick[j] == total) pick[j++] = 0;
        if (j == k) break;
    }
    return spaces.size();
}

// A O^d == B O^d: det valuations agree and adj(A) B has entries of valuation >= v(det A)
inline bool same_lattice(const LaurentMatrix& a, const LaurentMatrix& b) {
    auto da = a.det(), db = b.det();
    if (da.is_zero() || db.is_zero() || da.valuation() != db.valuation()) return false;
    auto x = a.adjugate() * b;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (!x(i, j).is_zero() && x(i, j).valuation() < da.valuation()) return false;
    return true;
}

// |{gamma in GL_d(F_q[t]) : entries of degree <= bound, gamma L = L}| / (q-1), by brute force
inline std::uint64_t stabilizer_count_by_definition(const btq::VertexLabel& n, std::uint32_t q, int bound) {
    const int d = n.dim();
    const int slots = d * d * (bound + 1);
    std::vector<std::uint32_t> c(slots, 0);
    auto base = btq::label_vertex(n, q);
    const LaurentMatrix ln = btq::label_matrix(n, q);
    std::uint64_t count = 0;
    for (;;) {
        LaurentMatrix g(d, q);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                std::vector<std::uint32_t> v(c.begin() + (i * d + j) * (bound + 1),
                                             c.begin() + (i * d + j + 1) * (bound + 1));
                g(i, j) = LaurentPoly::from_coeffs(q, 0, v);
            }
        auto det = g.det();
        if (!det.is_zero() && det.degree() == 0 && det.low_degree() == 0)
            count += same_lattice(g * ln, ln);
        int s = 0;
        while (s < slots && ++c[s] == q) c[s++] = 0;
        if (s == slots) break;
    }
    (void)base;
    return count / (q - 1);
}

} // namespace oracle
