#pragma once
#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "laurent.hpp"

namespace btq {

// Homothety class of an O-lattice, stored as its canonical basis.
// basis is upper triangular, diagonal t^profile_i with min profile 0,
// entry (i, j) above the diagonal has only exponents > profile_i.
struct BuildingVertex {
    LaurentMatrix basis;
    std::vector<int> profile;

    int dim() const { return basis.dim(); }
    std::uint32_t modulus() const { return basis.modulus(); }
    std::string key() const { return std::to_string(basis.modulus()) + ":" + basis.str(); }
    bool operator==(const BuildingVertex& o) const { return basis == o.basis; }
    bool operator!=(const BuildingVertex& o) const { return !(*this == o); }
};

namespace detail {

inline void col_axpy(LaurentMatrix& a, int dst, const LaurentPoly& f, int src, int rows, int floor) {
    for (int r = 0; r < rows; ++r) {
        if (a(r, src).is_zero()) continue;
        a(r, dst) = (a(r, dst) - f * a(r, src)).above(floor);
    }
}

inline void col_swap(LaurentMatrix& a, int x, int y) {
    if (x == y) return;
    for (int r = 0; r < a.dim(); ++r) std::swap(a(r, x), a(r, y));
}

// exponent below which every term of a basis of L lies in (1/t)L
inline int safe_floor(const LaurentMatrix& m, const std::vector<LaurentPoly>& minors) {
    const auto& det = minors.back();
    auto adj = m.adjugate_from(minors);
    return det.degree() - adj.max_degree() - 1;
}

} // namespace detail

inline constexpr int kMaxPrecisionSpan = 20000;

inline BuildingVertex vertex_normal_form(const LaurentMatrix& m) {
    const int d = m.dim();
    if (d < 2) throw InvalidInput("vertex_normal_form needs d >= 2");
    const std::uint32_t q = m.modulus();
    auto minors = m.all_minors();
    if (minors.back().is_zero()) throw InvalidInput("singular matrix does not span a lattice");
    const int floor = detail::safe_floor(m, minors);
    if (m.max_degree() - floor > kMaxPrecisionSpan) throw PrecisionError("normal form precision span too large");

    LaurentMatrix a(d, q);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = m(i, j).above(floor);

    std::vector<int> diag(d);
    for (int i = d - 1; i >= 0; --i) {
        int best = -1;
        for (int c = 0; c <= i; ++c) {
            if (a(i, c).is_zero()) continue;
            if (best < 0 || a(i, c).degree() > a(i, best).degree()) best = c;
        }
        invariant(best >= 0, "normal form lost a pivot");
        detail::col_swap(a, best, i);
        for (int c = 0; c < i; ++c) {
            if (a(i, c).is_zero()) continue;
            auto f = series_divide(a(i, c), a(i, i), floor);
            detail::col_axpy(a, c, f, i, i + 1, floor);
            invariant(a(i, c).is_zero(), "normal form elimination did not clear entry");
        }
        const int e = a(i, i).degree();
        invariant(e > floor, "normal form pivot below safe floor");
        auto unit = series_divide(LaurentPoly::monomial(q, 1, e), a(i, i), floor);
        for (int r = 0; r <= i; ++r) a(r, i) = (a(r, i) * unit).above(floor);
        invariant(a(i, i) == LaurentPoly::monomial(q, 1, e), "normal form pivot not monic");
        diag[i] = e;
    }
    for (int j = 1; j < d; ++j)
        for (int i = j - 1; i >= 0; --i) {
            auto low = a(i, j).at_most(diag[i]);
            if (low.is_zero()) continue;
            detail::col_axpy(a, j, low.shifted(-diag[i]), i, i + 1, floor);
        }
    const int s = *std::min_element(diag.begin(), diag.end());
    BuildingVertex v{a.shifted(-s), {}};
    for (int x : diag) v.profile.push_back(x - s);
    return v;
}

// lattice spanned by diag(t^n_1, ..., t^n_d)
inline BuildingVertex vertex_of_label(const std::vector<int>& n, std::uint32_t q) {
    check_field(q);
    return vertex_normal_form(LaurentMatrix::diag_t(n, q));
}

// v(det basis) mod d
inline int vertex_color(const BuildingVertex& v) {
    const int d = v.dim();
    long long s = 0;
    for (int x : v.profile) s += x;
    return static_cast<int>(((-s) % d + d) % d);
}

inline std::size_t neighbor_count_bound_default() { return std::size_t{1} << 20; }

// Sublattices L with (1/t)L' < L < L' of index q^k, L' the lattice of v.
inline std::vector<BuildingVertex> neighbors(const BuildingVertex& v, int k,
                                             std::size_t bound = neighbor_count_bound_default()) {
    const int d = v.dim();
    const std::uint32_t q = v.modulus();
    if (k < 1 || k > d - 1) throw InvalidInput("neighbor degree must be in [1, d-1]");
    if (big_pow(q, d) > bound) throw ResourceLimit("q^d exceeds the neighbor enumeration bound");
    const int m = d - k;
    std::vector<BuildingVertex> out;
    for (int mask = 0; mask < (1 << d); ++mask) {
        if (__builtin_popcount(mask) != m) continue;
        std::vector<int> piv;
        for (int r = 0; r < d; ++r)
            if (mask >> r & 1) piv.push_back(r);
        std::vector<std::pair<int, int>> slots;  // (row, column) of free entries
        for (int c = 0; c < m; ++c)
            for (int r = piv[c] + 1; r < d; ++r)
                if (!(mask >> r & 1)) slots.emplace_back(r, c);
        std::vector<std::uint32_t> val(slots.size(), 0);
        for (;;) {
            LaurentMatrix n(d, q);
            for (int c = 0; c < m; ++c) n(piv[c], c) = LaurentPoly::constant(q, 1);
            for (std::size_t s = 0; s < slots.size(); ++s)
                n(slots[s].first, slots[s].second) = LaurentPoly::constant(q, val[s]);
            int c = m;
            for (int r = 0; r < d; ++r)
                if (!(mask >> r & 1)) n(r, c++) = LaurentPoly::monomial(q, 1, -1);
            out.push_back(vertex_normal_form(v.basis * n));
            std::size_t s = 0;
            while (s < val.size() && ++val[s] == q) val[s++] = 0;
            if (s == val.size()) break;
        }
    }
    return out;
}

// valuations of the elementary divisors of L_x relative to L_y, ascending
inline std::vector<int> relative_divisors(const BuildingVertex& x, const BuildingVertex& y) {
    const int d = x.dim();
    if (y.dim() != d || y.modulus() != x.modulus()) throw InvalidInput("vertices from different buildings");
    auto ym = y.basis.all_minors();
    const int vdet = ym.back().valuation();
    auto a = y.basis.adjugate_from(ym) * x.basis;
    auto am = a.all_minors();
    const int n = 1 << d;
    std::vector<int> delta(d + 1, 0);
    for (int k = 1; k <= d; ++k) {
        std::optional<int> best;
        for (int rm = 0; rm < n; ++rm) {
            if (__builtin_popcount(rm) != k) continue;
            for (int cm = 0; cm < n; ++cm) {
                if (__builtin_popcount(cm) != k) continue;
                const auto& p = am[static_cast<std::size_t>(rm) * n + cm];
                if (!p.is_zero() && (!best || p.valuation() < *best)) best = p.valuation();
            }
        }
        invariant(best.has_value(), "relative position of nonsingular lattices");
        delta[k] = *best - k * vdet;
    }
    std::vector<int> e(d);
    for (int k = 1; k <= d; ++k) e[k - 1] = delta[k] - delta[k - 1];
    std::sort(e.begin(), e.end());
    return e;
}

inline bool adjacent(const BuildingVertex& x, const BuildingVertex& y) {
    auto e = relative_divisors(x, y);
    int top = e.back() - e.front();
    return top == 1;
}

// CL_E(x, y): index exponent of L_x in L_y for representatives with (1/t)L_y < L_x < L_y
inline std::optional<int> edge_color(const BuildingVertex& x, const BuildingVertex& y) {
    auto e = relative_divisors(x, y);
    if (e.back() - e.front() != 1) return std::nullopt;
    return static_cast<int>(std::count(e.begin(), e.end(), e.front() + 1));
}

inline constexpr std::size_t kBfsVisitBound = 2000000;

namespace detail {

template <class Step>
std::optional<int> bfs(const BuildingVertex& x, const BuildingVertex& y, int radius, Step step) {
    if (x.dim() != y.dim() || x.modulus() != y.modulus()) throw InvalidInput("vertices from different buildings");
    if (radius < 0) throw InvalidInput("radius must be non-negative");
    const std::string target = y.key();
    std::unordered_map<std::string, int> seen{{x.key(), 0}};
    if (x.key() == target) return 0;
    std::deque<BuildingVertex> frontier{x};
    for (int r = 1; r <= radius && !frontier.empty(); ++r) {
        std::deque<BuildingVertex> next;
        for (const auto& v : frontier)
            for (auto& w : step(v)) {
                auto key = w.key();
                if (seen.count(key)) continue;
                if (key == target) return r;
                if (seen.size() >= kBfsVisitBound) throw ResourceLimit("BFS visited-vertex bound exceeded");
                seen.emplace(std::move(key), r);
                next.push_back(std::move(w));
            }
        frontier.swap(next);
    }
    return std::nullopt;
}

} // namespace detail

// undirected edge distance; nullopt when farther than radius
inline std::optional<int> bfs_distance(const BuildingVertex& x, const BuildingVertex& y, int radius) {
    return detail::bfs(x, y, radius, [](const BuildingVertex& v) {
        std::vector<BuildingVertex> all;
        for (int k = 1; k < v.dim(); ++k) {
            auto nb = neighbors(v, k);
            all.insert(all.end(), nb.begin(), nb.end());
        }
        return all;
    });
}

// directed distance along edges of color 1
inline std::optional<int> bfs_color1_distance(const BuildingVertex& x, const BuildingVertex& y, int radius) {
    return detail::bfs(x, y, radius, [](const BuildingVertex& v) { return neighbors(v, v.dim() - 1); });
}

struct PaperDistances {
    int dis_b;   // min_j max_i |n_i - m_i - j|
    int dis_b1;  // min_j sum_i |n_i - m_i - j|
};

inline PaperDistances paper_distance_formulas(const std::vector<int>& n, const std::vector<int>& m) {
    if (n.size() != m.size() || n.size() < 2) throw InvalidInput("labels must share a dimension >= 2");
    std::vector<int> diff(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) diff[i] = n[i] - m[i];
    auto [lo, hi] = std::minmax_element(diff.begin(), diff.end());
    PaperDistances r{1 << 30, 1 << 30};
    for (int j = *lo; j <= *hi; ++j) {
        int mx = 0, sum = 0;
        for (int x : diff) {
            mx = std::max(mx, std::abs(x - j));
            sum += std::abs(x - j);
        }
        r.dis_b = std::min(r.dis_b, mx);
        r.dis_b1 = std::min(r.dis_b1, sum);
    }
    return r;
}

} // namespace btq
