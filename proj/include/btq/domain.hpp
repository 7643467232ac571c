#pragma once
#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "building.hpp"
#include "error.hpp"
#include "gf.hpp"
#include "laurent.hpp"

namespace btq {

// n_1 >= n_2 >= ... >= n_d = 0, the vertex spanned by diag(t^n_i)
class VertexLabel {
  public:
    VertexLabel() = default;
    explicit VertexLabel(std::vector<int> n) : n_(std::move(n)) {
        if (n_.size() < 2) throw InvalidInput("label needs d >= 2");
        if (n_.back() != 0) throw InvalidInput("label must end with 0: " + str());
        for (std::size_t i = 0; i + 1 < n_.size(); ++i)
            if (n_[i] < n_[i + 1]) throw InvalidInput("label must be weakly decreasing: " + str());
    }
    // shift so the last entry is 0; the sequence must already be weakly decreasing
    static VertexLabel normalized(std::vector<int> n) {
        if (n.empty()) throw InvalidInput("empty label");
        int s = n.back();
        for (auto& x : n) x -= s;
        return VertexLabel(std::move(n));
    }
    static VertexLabel parse(const std::string& text) {
        std::vector<int> n;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t pos = 0;
                n.push_back(std::stoi(item, &pos));
                if (item.find_first_not_of(" ", pos) != std::string::npos) throw InvalidInput("");
            } catch (const std::exception&) {
                throw InvalidInput("bad label '" + text + "'");
            }
        }
        return VertexLabel(std::move(n));
    }

    int dim() const { return static_cast<int>(n_.size()); }
    int operator[](int i) const { return n_[i]; }
    const std::vector<int>& values() const { return n_; }
    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < n_.size(); ++i) s += (i ? "," : "") + std::to_string(n_[i]);
        return s;
    }
    auto operator<=>(const VertexLabel&) const = default;

  private:
    std::vector<int> n_;
};

struct DiffSeq {
    std::vector<int> m;  // m_i = n_i - n_{i+1}
    int support = 0;     // |m| = number of nonzero m_i
};

struct BlockSeq {
    std::vector<int> sizes;   // d_1..d_r
    std::vector<int> values;  // g_1 > ... > g_r = 0
};

inline DiffSeq diff_seq(const VertexLabel& n) {
    DiffSeq r;
    for (int i = 0; i + 1 < n.dim(); ++i) {
        r.m.push_back(n[i] - n[i + 1]);
        r.support += r.m.back() != 0;
    }
    return r;
}

inline BlockSeq block_seq(const VertexLabel& n) {
    BlockSeq b;
    for (int i = 0; i < n.dim(); ++i) {
        if (i == 0 || n[i] != n[i - 1]) {
            b.sizes.push_back(0);
            b.values.push_back(n[i]);
        }
        ++b.sizes.back();
    }
    return b;
}

inline LaurentMatrix label_matrix(const VertexLabel& n, std::uint32_t q) { return LaurentMatrix::diag_t(n.values(), q); }

inline BuildingVertex label_vertex(const VertexLabel& n, std::uint32_t q) { return vertex_of_label(n.values(), q); }

// all labels with n_1 <= max_n1, lexicographic
inline std::vector<VertexLabel> enumerate_T(int d, int max_n1) {
    if (d < 2) throw InvalidInput("enumerate_T needs d >= 2");
    if (max_n1 < 0) throw InvalidInput("enumerate_T needs max_n1 >= 0");
    std::vector<VertexLabel> out;
    std::vector<int> cur(d, 0);
    auto rec = [&](auto&& self, int i, int hi) -> void {
        if (i == d - 1) {
            cur[i] = 0;
            out.emplace_back(cur);
            return;
        }
        for (int x = 0; x <= hi; ++x) {
            cur[i] = x;
            self(self, i + 1, x);
        }
    };
    rec(rec, 0, max_n1);
    return out;
}

namespace detail {

inline void check_degree(const VertexLabel& n, int k) {
    if (k < 1 || k > n.dim() - 1) throw InvalidInput("neighbor degree must be in [1, d-1]");
}

// v in {0,-1}^d with k entries -1, -1s at the tail of each block
inline std::vector<VertexLabel> neighbors_in_T_by_shift(const VertexLabel& n, int k) {
    auto b = block_seq(n);
    const int r = static_cast<int>(b.sizes.size());
    std::vector<VertexLabel> out;
    std::vector<int> take(r, 0);
    auto rec = [&](auto&& self, int blk, int left) -> void {
        if (blk == r) {
            if (left) return;
            std::vector<int> m = n.values();
            int pos = 0;
            for (int l = 0; l < r; ++l) {
                for (int j = b.sizes[l] - take[l]; j < b.sizes[l]; ++j) m[pos + j] -= 1;
                pos += b.sizes[l];
            }
            out.push_back(VertexLabel::normalized(m));
            return;
        }
        for (int x = 0; x <= std::min(left, b.sizes[blk]); ++x) {
            take[blk] = x;
            self(self, blk + 1, left - x);
        }
    };
    rec(rec, 0, k);
    std::sort(out.begin(), out.end());
    return out;
}

// m' = m + c with c an alternating chain in {-1,0,1}^{d-1}
inline std::vector<VertexLabel> neighbors_in_T_by_chain(const VertexLabel& n, int k) {
    auto ds = diff_seq(n);
    const int len = static_cast<int>(ds.m.size());
    std::vector<VertexLabel> out;
    std::vector<int> c(len, -1);
    for (;;) {
        int last = 0;
        bool ok = true, any = false;
        for (int i = 0; i < len && ok; ++i) {
            if (c[i] == 0) continue;
            any = true;
            if (c[i] == last) ok = false;
            if (c[i] == -1 && ds.m[i] == 0) ok = false;
            last = c[i];
        }
        if (ok && any) {
            std::vector<int> v(len + 1, 0);
            for (int i = 0; i < len; ++i) v[i + 1] = v[i] - c[i];
            int top = *std::max_element(v.begin(), v.end());
            int deg = 0;
            for (int x : v) deg += x != top;
            if (deg == k) {
                std::vector<int> lab(len + 1, 0);
                for (int i = len - 1; i >= 0; --i) lab[i] = lab[i + 1] + ds.m[i] + c[i];
                out.emplace_back(lab);
            }
        }
        int i = 0;
        while (i < len && c[i] == 1) c[i++] = -1;
        if (i == len) break;
        ++c[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

// labels of the degree-k neighbors of L_n that lie in T
inline std::vector<VertexLabel> neighbors_in_T(const VertexLabel& n, int k) {
    detail::check_degree(n, k);
    auto a = detail::neighbors_in_T_by_shift(n, k);
    auto b = detail::neighbors_in_T_by_chain(n, k);
    invariant(a == b, "in-T neighbor enumerations disagree at " + n.str());
    if (k == 1) invariant(static_cast<int>(a.size()) == 1 + diff_seq(n).support, "in-T neighbor count law");
    return a;
}

// degree k -> the neighbor fixed by the whole stabilizer; k runs over suffix block sums
inline std::map<int, VertexLabel> friends(const VertexLabel& n) {
    auto b = block_seq(n);
    std::map<int, VertexLabel> out;
    const int d = n.dim();
    int s = 0;
    for (int l = static_cast<int>(b.sizes.size()) - 1; l > 0; --l) {
        s += b.sizes[l];
        std::vector<int> m = n.values();
        for (int i = 0; i < d - s; ++i) m[i] += 1;
        out.emplace(s, VertexLabel(m));
    }
    return out;
}

// |Gamma_n| in PGL_d(F_q[t]); gl = true gives the order in GL_d
inline BigInt stabilizer_order(const VertexLabel& n, std::uint64_t q, bool gl = false) {
    check_field(q);
    auto b = block_seq(n);
    BigInt r = 1;
    long long e = 0;
    for (std::size_t i = 0; i < b.sizes.size(); ++i) {
        r *= gl_order(b.sizes[i], q);
        for (std::size_t j = i + 1; j < b.sizes.size(); ++j)
            e += static_cast<long long>(b.sizes[i]) * b.sizes[j] * (b.values[i] - b.values[j] + 1);
    }
    r *= big_pow(q, e);
    return gl ? r : BigInt(r / (q - 1));
}

// Gamma_{n1} is contained in Gamma_{n2}
inline bool stabilizer_contains(const VertexLabel& n1, const VertexLabel& n2) {
    if (n1.dim() != n2.dim()) throw InvalidInput("labels of different dimension");
    if (block_seq(n1).sizes != block_seq(n2).sizes) return false;
    auto a = diff_seq(n1), b = diff_seq(n2);
    for (std::size_t i = 0; i < a.m.size(); ++i)
        if (a.m[i] > b.m[i]) return false;
    return true;
}

// gamma in GL_d(F_q[t]) with deg gamma_ij <= n_i - n_j (zero when negative)
inline bool stabilizer_member(const LaurentMatrix& g, const VertexLabel& n) {
    const int d = n.dim();
    if (g.dim() != d) return false;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const auto& x = g(i, j);
            if (x.is_zero()) continue;
            if (!x.is_polynomial() || x.degree() > n[i] - n[j]) return false;
        }
    auto det = g.det();
    return !det.is_zero() && det.degree() == 0 && det.low_degree() == 0;
}

inline constexpr std::size_t kStabilizerEnumerationBound = 1000000;

// Gamma_n modulo scalars, one representative per class: the first nonzero
// entry of row 0 has leading coefficient 1.
inline std::vector<LaurentMatrix> stabilizer_enumerate(const VertexLabel& n, std::uint32_t q,
                                                       std::size_t bound = kStabilizerEnumerationBound) {
    check_field(q);
    if (stabilizer_order(n, q) > bound) throw ResourceLimit("stabilizer order exceeds the enumeration bound");
    const int d = n.dim();
    struct Slot {
        int i, j, e;
    };
    std::vector<Slot> slots;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int e = 0; e <= n[i] - n[j]; ++e) slots.push_back({i, j, e});
    if (big_pow(q, static_cast<long long>(slots.size())) > BigInt(bound) * 64 * q)
        throw ResourceLimit("stabilizer enumeration space too large");
    auto b = block_seq(n);
    std::vector<int> block_start;
    for (int l = 0, p = 0; l < static_cast<int>(b.sizes.size()); p += b.sizes[l++]) block_start.push_back(p);

    // determinant over F_q of a constant block, by elimination
    auto block_det_nonzero = [&](const std::vector<std::uint32_t>& cst, int s, int sz) {
        std::vector<std::uint32_t> a(sz * sz);
        for (int i = 0; i < sz; ++i)
            for (int j = 0; j < sz; ++j) a[i * sz + j] = cst[(s + i) * d + s + j];
        for (int c = 0; c < sz; ++c) {
            int p = c;
            while (p < sz && !a[p * sz + c]) ++p;
            if (p == sz) return false;
            for (int j = 0; j < sz; ++j) std::swap(a[c * sz + j], a[p * sz + j]);
            auto iv = fq::inv(a[c * sz + c], q);
            for (int r = c + 1; r < sz; ++r) {
                auto f = fq::mul(a[r * sz + c], iv, q);
                if (!f) continue;
                for (int j = c; j < sz; ++j) a[r * sz + j] = fq::sub(a[r * sz + j], fq::mul(f, a[c * sz + j], q), q);
            }
        }
        return true;
    };

    std::vector<LaurentMatrix> out;
    std::vector<std::uint32_t> val(slots.size(), 0);
    std::vector<std::uint32_t> cst(d * d);
    for (;;) {
        std::fill(cst.begin(), cst.end(), 0);
        for (std::size_t s = 0; s < slots.size(); ++s)
            if (slots[s].e == 0) cst[slots[s].i * d + slots[s].j] = val[s];
        bool ok = true;
        for (std::size_t l = 0; l < b.sizes.size() && ok; ++l) ok = block_det_nonzero(cst, block_start[l], b.sizes[l]);
        if (ok) {
            LaurentMatrix g(d, q);
            for (std::size_t s = 0; s < slots.size(); ++s)
                if (val[s]) g(slots[s].i, slots[s].j) += LaurentPoly::monomial(q, val[s], slots[s].e);
            int j0 = 0;
            while (g(0, j0).is_zero()) ++j0;
            if (g(0, j0).lead() == 1) out.push_back(std::move(g));
        }
        std::size_t s = 0;
        while (s < val.size() && ++val[s] == q) val[s++] = 0;
        if (s == val.size()) break;
    }
    return out;
}

struct Orbit {
    std::vector<BuildingVertex> members;
    VertexLabel label;  // the in-T neighbor this orbit reduces to
};

struct ReduceResult {
    VertexLabel label;
    LaurentMatrix witness;  // gamma in GL_d(F_q[t]) with gamma * L = L_label
};

namespace detail {

// c != 0 with c^T a = 0 over F_q, or empty when a is invertible
inline std::vector<std::uint32_t> left_kernel(const std::vector<std::uint32_t>& a, int d, std::uint32_t q) {
    // row reduce a^T, tracking nothing; solve a^T c = 0
    std::vector<std::uint32_t> m(d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m[i * d + j] = a[j * d + i];
    std::vector<int> pivcol;
    int row = 0;
    for (int c = 0; c < d && row < d; ++c) {
        int p = row;
        while (p < d && !m[p * d + c]) ++p;
        if (p == d) continue;
        for (int j = 0; j < d; ++j) std::swap(m[row * d + j], m[p * d + j]);
        auto iv = fq::inv(m[row * d + c], q);
        for (int j = 0; j < d; ++j) m[row * d + j] = fq::mul(m[row * d + j], iv, q);
        for (int r = 0; r < d; ++r) {
            if (r == row || !m[r * d + c]) continue;
            auto f = m[r * d + c];
            for (int j = 0; j < d; ++j) m[r * d + j] = fq::sub(m[r * d + j], fq::mul(f, m[row * d + j], q), q);
        }
        pivcol.push_back(c);
        ++row;
    }
    if (row == d) return {};
    int free = 0;
    while (std::find(pivcol.begin(), pivcol.end(), free) != pivcol.end()) ++free;
    std::vector<std::uint32_t> c(d, 0);
    c[free] = 1;
    for (int r = 0; r < static_cast<int>(pivcol.size()); ++r) c[pivcol[r]] = fq::neg(m[r * d + free], q);
    return c;
}

} // namespace detail

// gamma with gamma * L_v = L_n, n in T, via row reduction of the basis over F_q[t]
inline ReduceResult reduce_to_T(const BuildingVertex& v) {
    const int d = v.dim();
    const std::uint32_t q = v.modulus();
    LaurentMatrix a = v.basis;
    LaurentMatrix g = LaurentMatrix::identity(d, q);
    auto row_degree = [&](int i) {
        int r = std::numeric_limits<int>::min();
        for (int j = 0; j < d; ++j)
            if (!a(i, j).is_zero()) r = std::max(r, a(i, j).degree());
        invariant(r != std::numeric_limits<int>::min(), "zero row while reducing into T");
        return r;
    };
    std::vector<int> rho(d);
    for (int iter = 0;; ++iter) {
        invariant(iter < 100000, "reduction into T did not terminate");
        for (int i = 0; i < d; ++i) rho[i] = row_degree(i);
        std::vector<std::uint32_t> lc(d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) lc[i * d + j] = a(i, j).coeff(rho[i]);
        auto c = detail::left_kernel(lc, d, q);
        if (c.empty()) break;
        int i0 = -1;
        for (int i = 0; i < d; ++i)
            if (c[i] && (i0 < 0 || rho[i] > rho[i0])) i0 = i;
        for (int j = 0; j < d; ++j) {
            LaurentPoly na = a(i0, j).scaled(c[i0]), ng = g(i0, j).scaled(c[i0]);
            for (int i = 0; i < d; ++i) {
                if (i == i0 || !c[i]) continue;
                na += a(i, j).scaled(c[i]).shifted(rho[i0] - rho[i]);
                ng += g(i, j).scaled(c[i]).shifted(rho[i0] - rho[i]);
            }
            a(i0, j) = na;
            g(i0, j) = ng;
        }
        invariant(row_degree(i0) < rho[i0], "row reduction potential did not drop");
    }
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return rho[x] > rho[y]; });
    LaurentMatrix w(d, q);
    std::vector<int> lab(d);
    for (int i = 0; i < d; ++i) {
        lab[i] = rho[order[i]] - rho[order[d - 1]];
        for (int j = 0; j < d; ++j) w(i, j) = g(order[i], j);
    }
    ReduceResult r{VertexLabel(lab), w};
    invariant(w.is_polynomial(), "reduction witness is not polynomial");
    invariant(vertex_normal_form(w * v.basis) == label_vertex(r.label, q), "reduction witness does not map into T");
    return r;
}

// orbits of Gamma_n on the degree-k neighbors of L_n
inline std::vector<Orbit> orbit_decomposition(const VertexLabel& n, std::uint32_t q, int k,
                                              std::size_t bound = kStabilizerEnumerationBound) {
    detail::check_degree(n, k);
    auto nb = neighbors(label_vertex(n, q), k);
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < nb.size(); ++i) idx.emplace(nb[i].key(), i);
    std::vector<std::size_t> parent(nb.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& g : stabilizer_enumerate(n, q, bound))
        for (std::size_t i = 0; i < nb.size(); ++i) {
            auto img = vertex_normal_form(g * nb[i].basis);
            auto it = idx.find(img.key());
            invariant(it != idx.end(), "stabilizer moved a neighbor off the neighbor set");
            parent[find(i)] = find(it->second);
        }
    std::map<std::size_t, std::size_t> root_to_orbit;
    std::vector<Orbit> out;
    for (std::size_t i = 0; i < nb.size(); ++i) {
        auto r = find(i);
        auto [it, fresh] = root_to_orbit.emplace(r, out.size());
        if (fresh) out.push_back(Orbit{{}, reduce_to_T(nb[i]).label});
        out[it->second].members.push_back(nb[i]);
    }
    return out;
}

} // namespace btq
