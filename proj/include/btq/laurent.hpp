#pragma once
#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "gf.hpp"

namespace btq {

// Finite Laurent polynomial in t over F_q. Valuation is -deg.
class LaurentPoly {
  public:
    explicit LaurentPoly(std::uint32_t q = 2) : q_(q) {}

    static LaurentPoly monomial(std::uint32_t q, long long c, int e) {
        LaurentPoly p(q);
        std::uint32_t v = fq::reduce(c, q);
        if (v) {
            p.lo_ = e;
            p.c_.push_back(v);
        }
        return p;
    }
    static LaurentPoly constant(std::uint32_t q, long long c) { return monomial(q, c, 0); }
    static LaurentPoly from_coeffs(std::uint32_t q, int lo, std::vector<std::uint32_t> c) {
        LaurentPoly p(q);
        p.lo_ = lo;
        p.c_ = std::move(c);
        p.trim();
        return p;
    }

    std::uint32_t modulus() const { return q_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const {
        if (is_zero()) throw InvalidInput("degree of zero polynomial");
        return lo_ + static_cast<int>(c_.size()) - 1;
    }
    int low_degree() const {
        if (is_zero()) throw InvalidInput("low degree of zero polynomial");
        return lo_;
    }
    int valuation() const { return -degree(); }
    std::uint32_t lead() const { return is_zero() ? 0 : c_.back(); }
    std::uint32_t coeff(int e) const {
        if (is_zero() || e < lo_ || e > degree()) return 0;
        return c_[e - lo_];
    }
    std::size_t term_count() const {
        return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](auto v) { return v != 0; }));
    }
    const std::vector<std::uint32_t>& raw() const { return c_; }

    // v(f) = 0 and no positive powers of t
    bool is_unit_in_O() const {
        if (is_zero()) throw InvalidInput("is_unit_in_O of zero");
        return degree() == 0;
    }
    bool in_O() const { return is_zero() || degree() <= 0; }
    bool is_polynomial() const { return is_zero() || lo_ >= 0; }

    LaurentPoly operator+(const LaurentPoly& o) const { return combine(o, false); }
    LaurentPoly operator-(const LaurentPoly& o) const { return combine(o, true); }
    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& v : r.c_) v = fq::neg(v, q_);
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }

    LaurentPoly operator*(const LaurentPoly& o) const {
        check(o);
        LaurentPoly r(q_);
        if (is_zero() || o.is_zero()) return r;
        std::vector<std::uint64_t> acc(c_.size() + o.c_.size() - 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (!c_[i]) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                acc[i + j] += static_cast<std::uint64_t>(c_[i]) * o.c_[j];
                if (acc[i + j] >= (1ull << 62)) acc[i + j] %= q_;
            }
        }
        r.lo_ = lo_ + o.lo_;
        r.c_.resize(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i) r.c_[i] = static_cast<std::uint32_t>(acc[i] % q_);
        r.trim();
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly scaled(std::uint32_t c) const {
        c %= q_;
        if (c == 0) return LaurentPoly(q_);
        LaurentPoly r = *this;
        for (auto& v : r.c_) v = fq::mul(v, c, q_);
        return r;
    }
    // multiply by t^k
    LaurentPoly shifted(int k) const {
        LaurentPoly r = *this;
        if (!r.is_zero()) r.lo_ += k;
        return r;
    }

    // exact division by a monomial; anything else is rejected
    LaurentPoly operator/(const LaurentPoly& o) const {
        check(o);
        if (o.is_zero()) throw InvalidInput("division by zero polynomial");
        if (o.term_count() != 1) throw InvalidInput("Laurent polynomial division only by monomials");
        return scaled(fq::inv(o.lead(), q_)).shifted(-o.degree());
    }

    // keep only the terms with exponent > floor
    LaurentPoly above(int floor) const {
        if (is_zero() || lo_ > floor) return *this;
        if (degree() <= floor) return LaurentPoly(q_);
        LaurentPoly r(q_);
        r.lo_ = floor + 1;
        r.c_.assign(c_.begin() + (floor + 1 - lo_), c_.end());
        r.trim();
        return r;
    }
    // keep only the terms with exponent <= ceil
    LaurentPoly at_most(int ceil) const {
        if (is_zero() || degree() <= ceil) return *this;
        if (lo_ > ceil) return LaurentPoly(q_);
        LaurentPoly r(q_);
        r.lo_ = lo_;
        r.c_.assign(c_.begin(), c_.begin() + (ceil - lo_ + 1));
        r.trim();
        return r;
    }

    bool operator==(const LaurentPoly& o) const { return q_ == o.q_ && lo_eq(o) && c_ == o.c_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    // canonical literal, descending exponents: "t^3+2*t^1+1", "0" for zero
    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int e = degree(); e >= lo_; --e) {
            std::uint32_t v = c_[e - lo_];
            if (!v) continue;
            if (!s.empty()) s += "+";
            if (e == 0)
                s += std::to_string(v);
            else {
                if (v != 1) s += std::to_string(v) + "*";
                s += e == 1 && v == 1 ? "t" : "t^" + std::to_string(e);
            }
        }
        return s;
    }

    // grammar: term (("+"|"-") term)*, term := coeff | coeff "*" "t^" int | "t^" int | "t"
    // also accepted: a leading sign and coeff "*" "t"
    static LaurentPoly parse(std::string_view text, std::uint32_t q) {
        check_field(q);
        std::string s;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
        if (s.empty()) throw InvalidInput("empty Laurent literal");
        std::size_t i = 0;
        LaurentPoly out(q);
        auto fail = [&](const char* why) {
            throw InvalidInput(std::string("bad Laurent literal '") + std::string(text) + "': " + why);
        };
        auto read_int = [&](bool allow_sign) -> long long {
            bool negv = false;
            if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) negv = s[i++] == '-';
            if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected integer");
            long long v = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                v = v * 10 + (s[i++] - '0');
                if (v > (1ll << 40)) fail("integer too large");
            }
            return negv ? -v : v;
        };
        bool first = true;
        while (i < s.size()) {
            long long sign = 1;
            if (s[i] == '+' || s[i] == '-') {
                sign = s[i] == '-' ? -1 : 1;
                ++i;
            } else if (!first) {
                fail("expected + or -");
            }
            first = false;
            long long c = 1;
            bool has_coeff = false;
            if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                c = read_int(false);
                has_coeff = true;
            }
            int e = 0;
            if (i < s.size() && (s[i] == '*' || s[i] == 't')) {
                if (s[i] == '*') {
                    if (!has_coeff) fail("'*' without coefficient");
                    ++i;
                }
                if (i >= s.size() || s[i] != 't') fail("expected t");
                ++i;
                e = 1;
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    long long ev = read_int(true);
                    if (ev > 100000 || ev < -100000) fail("exponent out of range");
                    e = static_cast<int>(ev);
                }
            } else if (!has_coeff) {
                fail("expected term");
            }
            out += monomial(q, sign * (c % static_cast<long long>(q)), e);
        }
        return out;
    }

  private:
    std::uint32_t q_;
    int lo_ = 0;
    std::vector<std::uint32_t> c_;

    bool lo_eq(const LaurentPoly& o) const { return is_zero() || lo_ == o.lo_; }
    void check(const LaurentPoly& o) const {
        if (o.q_ != q_) throw InvalidInput("mixing polynomials over different fields");
    }
    void trim() {
        std::size_t b = 0;
        while (b < c_.size() && c_[b] == 0) ++b;
        if (b == c_.size()) {
            c_.clear();
            lo_ = 0;
            return;
        }
        std::size_t e = c_.size();
        while (c_[e - 1] == 0) --e;
        c_ = std::vector<std::uint32_t>(c_.begin() + b, c_.begin() + e);
        lo_ += static_cast<int>(b);
    }
    LaurentPoly combine(const LaurentPoly& o, bool subtract) const {
        check(o);
        if (o.is_zero()) return *this;
        if (is_zero()) return subtract ? -o : o;
        int lo = std::min(lo_, o.lo_);
        int hi = std::max(degree(), o.degree());
        std::vector<std::uint32_t> c(hi - lo + 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) c[lo_ - lo + i] = c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            auto& slot = c[o.lo_ - lo + i];
            slot = subtract ? fq::sub(slot, o.c_[i], q_) : fq::add(slot, o.c_[i], q_);
        }
        return from_coeffs(q_, lo, std::move(c));
    }
};

// Q with exponents <= deg(num) - deg(den) such that num - Q*den has no term above floor.
inline LaurentPoly series_divide(const LaurentPoly& num, const LaurentPoly& den, int floor) {
    std::uint32_t q = den.modulus();
    if (den.is_zero()) throw InvalidInput("series division by zero");
    if (num.is_zero() || num.degree() <= floor) return LaurentPoly(q);
    int top = num.degree(), dd = den.degree();
    int len = top - floor;
    std::vector<std::uint32_t> r(len);
    for (int k = 0; k < len; ++k) r[k] = num.coeff(floor + 1 + k);
    std::vector<std::uint32_t> quo(len, 0);
    std::uint32_t il = fq::inv(den.lead(), q);
    const auto& dc = den.raw();
    int dlo = den.low_degree();
    for (int k = len - 1; k >= 0; --k) {
        if (!r[k]) continue;
        std::uint32_t c = fq::mul(r[k], il, q);
        int s = floor + 1 + k - dd;
        quo[k] = c;
        for (std::size_t j = 0; j < dc.size(); ++j) {
            int idx = s + dlo + static_cast<int>(j) - floor - 1;
            if (idx < 0) continue;
            r[idx] = fq::sub(r[idx], fq::mul(c, dc[j], q), q);
        }
    }
    return LaurentPoly::from_coeffs(q, floor + 1 - dd, std::move(quo));
}

// Square d x d matrix of Laurent polynomials over F_q.
class LaurentMatrix {
  public:
    LaurentMatrix() = default;
    LaurentMatrix(int d, std::uint32_t q) : d_(d), q_(q), a_(static_cast<std::size_t>(d) * d, LaurentPoly(q)) {
        if (d < 1 || d > 8) throw InvalidInput("matrix dimension must be in [1, 8]");
    }

    static LaurentMatrix identity(int d, std::uint32_t q) {
        LaurentMatrix m(d, q);
        for (int i = 0; i < d; ++i) m(i, i) = LaurentPoly::constant(q, 1);
        return m;
    }
    // diag(t^e_1, ..., t^e_d)
    static LaurentMatrix diag_t(const std::vector<int>& e, std::uint32_t q) {
        LaurentMatrix m(static_cast<int>(e.size()), q);
        for (int i = 0; i < m.d_; ++i) m(i, i) = LaurentPoly::monomial(q, 1, e[i]);
        return m;
    }

    int dim() const { return d_; }
    std::uint32_t modulus() const { return q_; }
    LaurentPoly& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * d_ + j]; }
    const LaurentPoly& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * d_ + j]; }

    LaurentMatrix operator*(const LaurentMatrix& o) const {
        if (o.d_ != d_ || o.q_ != q_) throw InvalidInput("matrix shape or field mismatch");
        LaurentMatrix r(d_, q_);
        for (int i = 0; i < d_; ++i)
            for (int k = 0; k < d_; ++k) {
                const auto& x = (*this)(i, k);
                if (x.is_zero()) continue;
                for (int j = 0; j < d_; ++j)
                    if (!o(k, j).is_zero()) r(i, j) += x * o(k, j);
            }
        return r;
    }
    LaurentMatrix shifted(int k) const {
        LaurentMatrix r = *this;
        for (auto& x : r.a_) x = x.shifted(k);
        return r;
    }
    bool operator==(const LaurentMatrix& o) const { return d_ == o.d_ && q_ == o.q_ && a_ == o.a_; }
    bool operator!=(const LaurentMatrix& o) const { return !(*this == o); }

    // every minor, indexed by (row mask, column mask) with equal popcounts
    std::vector<LaurentPoly> all_minors() const {
        const int n = 1 << d_;
        std::vector<LaurentPoly> m(static_cast<std::size_t>(n) * n, LaurentPoly(q_));
        m[0] = LaurentPoly::constant(q_, 1);
        for (int rm = 1; rm < n; ++rm) {
            int k = __builtin_popcount(rm);
            int last = 31 - __builtin_clz(rm);
            int rest = rm & ~(1 << last);
            for (int cm = 1; cm < n; ++cm) {
                if (__builtin_popcount(cm) != k) continue;
                LaurentPoly acc(q_);
                int p = 0;
                for (int c = 0; c < d_; ++c) {
                    if (!(cm >> c & 1)) continue;
                    const auto& x = (*this)(last, c);
                    if (!x.is_zero()) {
                        auto term = x * m[static_cast<std::size_t>(rest) * n + (cm & ~(1 << c))];
                        // sign of expanding along the last row at sorted position p
                        if ((k - 1 + p) & 1)
                            acc -= term;
                        else
                            acc += term;
                    }
                    ++p;
                }
                m[static_cast<std::size_t>(rm) * n + cm] = acc;
            }
        }
        return m;
    }

    LaurentPoly det() const {
        return all_minors().back();
    }

    // adj(A) with A * adj(A) = det(A) I
    LaurentMatrix adjugate() const {
        auto m = all_minors();
        return adjugate_from(m);
    }
    LaurentMatrix adjugate_from(const std::vector<LaurentPoly>& m) const {
        int n = 1 << d_, full = n - 1;
        LaurentMatrix r(d_, q_);
        if (d_ == 1) {
            r(0, 0) = LaurentPoly::constant(q_, 1);
            return r;
        }
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) {
                auto x = m[static_cast<std::size_t>(full & ~(1 << j)) * n + (full & ~(1 << i))];
                r(i, j) = (i + j) & 1 ? -x : x;
            }
        return r;
    }

    bool is_polynomial() const {
        return std::all_of(a_.begin(), a_.end(), [](const LaurentPoly& x) { return x.is_polynomial(); });
    }
    bool in_O() const {
        return std::all_of(a_.begin(), a_.end(), [](const LaurentPoly& x) { return x.in_O(); });
    }
    int max_degree() const {
        int m = std::numeric_limits<int>::min();
        for (const auto& x : a_)
            if (!x.is_zero()) m = std::max(m, x.degree());
        return m;
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < d_; ++i) {
            s += i ? ",[" : "[";
            for (int j = 0; j < d_; ++j) s += (j ? "," : "") + (*this)(i, j).str();
            s += "]";
        }
        return s + "]";
    }

  private:
    int d_ = 0;
    std::uint32_t q_ = 2;
    std::vector<LaurentPoly> a_;
};

// Random element of GL_d(F_q[t]) with entry degrees <= deg_bound.
// Built by a walk of elementary row operations from a random GL_d(F_q) matrix.
inline LaurentMatrix random_gamma(int d, std::uint32_t q, int deg_bound, std::uint64_t seed) {
    check_field(q);
    if (d < 2) throw InvalidInput("random_gamma needs d >= 2");
    if (deg_bound < 0) throw InvalidInput("random_gamma needs deg_bound >= 0");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> coef(0, q - 1);
    LaurentMatrix g(d, q);
    for (;;) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) g(i, j) = LaurentPoly::constant(q, coef(rng));
        if (!g.det().is_zero()) break;
    }
    std::uniform_int_distribution<int> pick(0, d - 1);
    const int steps = 4 * d * (deg_bound + 1);
    for (int s = 0; s < steps; ++s) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        std::vector<std::uint32_t> c(deg_bound + 1);
        for (auto& x : c) x = coef(rng);
        auto p = LaurentPoly::from_coeffs(q, 0, c);
        if (p.is_zero()) continue;
        LaurentMatrix h = g;
        bool ok = true;
        for (int k = 0; k < d && ok; ++k) {
            h(i, k) = g(i, k) + p * g(j, k);
            ok = h(i, k).is_zero() || h(i, k).degree() <= deg_bound;
        }
        if (ok) g = h;
    }
    return g;
}

// Random element of GL_d(O), O = F_q[[1/t]], truncated to exponents in [-precision, 0].
inline LaurentMatrix random_k(int d, std::uint32_t q, int precision, std::uint64_t seed) {
    check_field(q);
    if (d < 2) throw InvalidInput("random_k needs d >= 2");
    if (precision < 0) throw PrecisionError("random_k needs a non-negative precision");
    if (precision > 4096) throw PrecisionError("random_k precision above 4096");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> coef(0, q - 1);
    LaurentMatrix k(d, q);
    for (;;) {
        LaurentMatrix residue(d, q);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                std::vector<std::uint32_t> c(precision + 1);
                for (auto& x : c) x = coef(rng);
                k(i, j) = LaurentPoly::from_coeffs(q, -precision, c);
                residue(i, j) = LaurentPoly::constant(q, c.back());
            }
        if (!residue.det().is_zero()) return k;
    }
}

} // namespace btq
