#pragma once
#include <cstdint>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace btq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

constexpr bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

// field sizes are kept below 2^16 so products fit comfortably in 64 bits
inline void check_field(std::uint64_t q) {
    if (!is_prime(q) || q >= (1u << 16))
        throw InvalidInput("q must be a prime below 65536, got " + std::to_string(q));
}

namespace fq {

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
    std::uint32_t s = a + b;
    return s >= q ? s - q : s;
}
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
    return a >= b ? a - b : a + q - b;
}
inline std::uint32_t neg(std::uint32_t a, std::uint32_t q) { return a == 0 ? 0 : q - a; }
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % q);
}
inline std::uint32_t pow(std::uint32_t a, std::uint64_t e, std::uint32_t q) {
    std::uint64_t r = 1 % q, b = a % q;
    while (e) {
        if (e & 1) r = r * b % q;
        b = b * b % q;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}
inline std::uint32_t inv(std::uint32_t a, std::uint32_t q) {
    if (a % q == 0) throw InvalidInput("division by zero in F_q");
    return pow(a, q - 2, q);
}
inline std::uint32_t reduce(long long v, std::uint32_t q) {
    long long r = v % static_cast<long long>(q);
    return static_cast<std::uint32_t>(r < 0 ? r + q : r);
}

} // namespace fq

class FqElem {
  public:
    FqElem() = default;
    FqElem(long long v, std::uint32_t q) : v_(0), q_(q) {
        check_field(q);
        v_ = fq::reduce(v, q);
    }

    std::uint32_t value() const { return v_; }
    std::uint32_t modulus() const { return q_; }
    bool is_zero() const { return v_ == 0; }

    FqElem operator+(const FqElem& o) const { return make(fq::add(v_, same(o).v_, q_)); }
    FqElem operator-(const FqElem& o) const { return make(fq::sub(v_, same(o).v_, q_)); }
    FqElem operator*(const FqElem& o) const { return make(fq::mul(v_, same(o).v_, q_)); }
    FqElem operator/(const FqElem& o) const { return *this * o.inverse(); }
    FqElem operator-() const { return make(fq::neg(v_, q_)); }
    FqElem inverse() const { return make(fq::inv(v_, q_)); }
    bool operator==(const FqElem& o) const { return q_ == o.q_ && v_ == o.v_; }

  private:
    std::uint32_t v_ = 0;
    std::uint32_t q_ = 2;

    FqElem make(std::uint32_t v) const {
        FqElem r;
        r.v_ = v;
        r.q_ = q_;
        return r;
    }
    const FqElem& same(const FqElem& o) const {
        if (o.q_ != q_) throw InvalidInput("mixing elements of different fields");
        return o;
    }
};

inline std::ostream& operator<<(std::ostream& os, const FqElem& a) { return os << a.value(); }

inline BigInt big_pow(std::uint64_t base, long long e) {
    if (e < 0) throw InvalidInput("negative exponent in big_pow");
    BigInt r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// |GL_m(F_q)| = prod_{i<m} (q^m - q^i)
inline BigInt gl_order(int m, std::uint64_t q) {
    if (m < 1) throw InvalidInput("gl_order needs m >= 1");
    check_field(q);
    BigInt qm = big_pow(q, m), r = 1;
    for (int i = 0; i < m; ++i) r *= qm - big_pow(q, i);
    return r;
}

inline BigInt pgl_order(int d, std::uint64_t q) {
    if (d < 2) throw InvalidInput("pgl_order needs d >= 2");
    return gl_order(d, q) / (q - 1);
}

// number of k-dimensional subspaces of F_q^d
inline BigInt gaussian_binomial(int d, int k, std::uint64_t q) {
    if (d < 0 || k < 0 || k > d) throw InvalidInput("gaussian_binomial needs 0 <= k <= d");
    check_field(q);
    BigInt num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= big_pow(q, d - i) - 1;
        den *= big_pow(q, i + 1) - 1;
    }
    return num / den;
}

inline std::string to_string(const BigInt& x) { return x.str(); }
inline std::string to_string(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

} // namespace btq
