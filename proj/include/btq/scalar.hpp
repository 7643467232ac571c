#pragma once
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"
#include "gf.hpp"

namespace btq {

// complex backend with 50 significant digits; the d = 3 recursion loses about one digit per shell
using Real = boost::multiprecision::cpp_bin_float_50;
using Complex = boost::multiprecision::cpp_complex_50;

inline Real real_from(const Rational& r) { return Real(numerator(r)) / Real(denominator(r)); }

// a + b*sqrt(D) over Q, D fixed per computation
class QuadExt {
  public:
    QuadExt() = default;
    QuadExt(Rational a, Rational b, Rational disc) : a_(std::move(a)), b_(std::move(b)), D_(std::move(disc)) {}
    static QuadExt sqrt_of(const Rational& disc) { return QuadExt(0, 1, disc); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& disc() const { return D_; }

    QuadExt operator+(const QuadExt& o) const { return {a_ + o.a_, b_ + o.b_, pick(o)}; }
    QuadExt operator-(const QuadExt& o) const { return {a_ - o.a_, b_ - o.b_, pick(o)}; }
    QuadExt operator-() const { return {-a_, -b_, D_}; }
    QuadExt operator*(const QuadExt& o) const {
        const Rational& D = pick(o);
        return {a_ * o.a_ + b_ * o.b_ * D, a_ * o.b_ + b_ * o.a_, D};
    }
    QuadExt operator/(const QuadExt& o) const {
        const Rational& D = pick(o);
        Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * D;
        if (norm == 0) throw InvalidInput("division by a zero divisor in Q(sqrt D)");
        QuadExt conj(o.a_ / norm, -o.b_ / norm, D);
        return *this * conj;
    }
    QuadExt operator+(const Rational& r) const { return {a_ + r, b_, D_}; }
    QuadExt operator*(const Rational& r) const { return {a_ * r, b_ * r, D_}; }
    bool operator==(const QuadExt& o) const { return a_ == o.a_ && b_ == o.b_; }

    // exact value when it is rational
    std::optional<Rational> to_rational() const {
        if (b_ == 0) return a_;
        auto root = rational_sqrt(D_);
        if (!root) return std::nullopt;
        return a_ + b_ * *root;
    }
    double to_double() const {
        return a_.convert_to<double>() + b_.convert_to<double>() * std::sqrt(D_.convert_to<double>());
    }

    static std::optional<Rational> rational_sqrt(const Rational& x) {
        if (x < 0) return std::nullopt;
        BigInt n = numerator(x), d = denominator(x);
        BigInt sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
        if (sn * sn != n || sd * sd != d) return std::nullopt;
        return Rational(sn, sd);
    }

  private:
    Rational a_ = 0, b_ = 0, D_ = 0;

    const Rational& pick(const QuadExt& o) const {
        if (b_ != 0 && o.b_ != 0 && D_ != o.D_) throw InvalidInput("mixing different quadratic extensions");
        return b_ != 0 ? D_ : o.D_;
    }
};

inline std::ostream& operator<<(std::ostream& os, const QuadExt& x) {
    return os << to_string(x.a()) << " + " << to_string(x.b()) << "*sqrt(" << to_string(x.disc()) << ")";
}

template <class S>
S scalar_from(const Rational& r);
template <>
inline Rational scalar_from<Rational>(const Rational& r) {
    return r;
}
template <>
inline Complex scalar_from<Complex>(const Rational& r) {
    return Complex(real_from(r));
}

// |x|^2
inline Rational abs2(const Rational& x) { return x * x; }
inline Real abs2(const Complex& x) { return norm(x); }
inline Rational abs_value(const Rational& x) { return x < 0 ? Rational(-x) : x; }
inline Real abs_value(const Complex& x) { return abs(x); }

inline std::string scalar_str(const Rational& x) { return to_string(x); }
inline std::string scalar_str(const Complex& x) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", x.real().convert_to<double>(), x.imag().convert_to<double>());
    return buf;
}

// decimal integer with optional sign; no base prefixes
inline BigInt parse_bigint(const std::string& s) {
    std::size_t i = 0;
    bool negv = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) negv = s[i++] == '-';
    if (i == s.size() || s.size() - i > 4000) throw InvalidInput("bad integer literal '" + s + "'");
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw InvalidInput("bad integer literal '" + s + "'");
        v = v * 10 + (s[i] - '0');
    }
    return negv ? BigInt(-v) : v;
}

// "3/2", "-1", "0.5"
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt d = parse_bigint(s.substr(slash + 1));
        if (d == 0) throw InvalidInput("zero denominator in '" + s + "'");
        return Rational(parse_bigint(s.substr(0, slash))) / Rational(d);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(parse_bigint(s));
    std::string frac = s.substr(dot + 1);
    if (frac.empty() || frac[0] == '+' || frac[0] == '-') throw InvalidInput("bad rational literal '" + s + "'");
    std::string whole = s.substr(0, dot);
    bool negv = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    Rational w(parse_bigint(whole));
    Rational f = Rational(parse_bigint(frac)) / Rational(big_pow(10, static_cast<long long>(frac.size())));
    return negv ? Rational(w - f) : Rational(w + f);
}

// "1.5+2i", "-2i", "3"
inline bool is_complex_literal(const std::string& s) { return !s.empty() && s.back() == 'i'; }

inline Complex parse_complex(const std::string& s) {
    if (!is_complex_literal(s)) return Complex(real_from(parse_rational(s)));
    std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;)
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    // components keep full precision: "0.1" is read as 1/10, not its double
    auto num = [&](const std::string& x) -> Real {
        if (x.empty() || x == "+") return 1;
        if (x == "-") return -1;
        try {
            std::size_t pos = 0;
            (void)std::stod(x, &pos);
            if (pos != x.size()) throw InvalidInput("");
            return Real(x[0] == '+' ? x.substr(1) : x);
        } catch (const std::exception&) {
            throw InvalidInput("bad complex literal '" + s + "'");
        }
    };
    if (split == std::string::npos) return Complex(Real(0), num(body));
    return Complex(num(body.substr(0, split)), num(body.substr(split)));
}

} // namespace btq
