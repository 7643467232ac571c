#pragma once
#include <cctype>
#include <map>
#include <string>
#include <string_view>

#include "error.hpp"
#include "gf.hpp"

namespace btq {

// Rational arithmetic expressions: + - * / ^ (integer exponent), parentheses,
// identifiers bound in vars, non-negative integer literals.
class RationalExpr {
  public:
    static Rational eval(std::string_view text, const std::map<std::string, Rational>& vars) {
        RationalExpr p(text, vars);
        Rational v = p.sum();
        p.skip();
        if (p.i_ != p.s_.size()) p.fail("trailing input");
        return v;
    }

  private:
    std::string_view s_;
    const std::map<std::string, Rational>& vars_;
    std::size_t i_ = 0;

    RationalExpr(std::string_view s, const std::map<std::string, Rational>& v) : s_(s), vars_(v) {}

    [[noreturn]] void fail(const std::string& why) const {
        throw InvalidInput("expression '" + std::string(s_) + "': " + why);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    Rational sum() {
        Rational v = product();
        for (;;) {
            if (eat('+'))
                v += product();
            else if (eat('-'))
                v -= product();
            else
                return v;
        }
    }
    Rational product() {
        Rational v = unary();
        for (;;) {
            if (eat('*'))
                v *= unary();
            else if (eat('/')) {
                Rational d = unary();
                if (d == 0) fail("division by zero");
                v /= d;
            } else
                return v;
        }
    }
    Rational unary() {
        if (eat('-')) return -unary();
        return power();
    }
    Rational power() {
        Rational b = atom();
        if (!eat('^')) return b;
        skip();
        bool negv = eat('-');
        skip();
        long long e = integer();
        Rational r = 1;
        for (long long k = 0; k < e; ++k) r *= b;
        if (negv) {
            if (r == 0) fail("zero to a negative power");
            r = 1 / r;
        }
        return r;
    }
    long long integer() {
        if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected integer");
        long long v = 0;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            v = v * 10 + (s_[i_++] - '0');
            if (v > 1000000000) fail("integer too large");
        }
        return v;
    }
    Rational atom() {
        skip();
        if (eat('(')) {
            Rational v = sum();
            if (!eat(')')) fail("missing )");
            return v;
        }
        if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) return Rational(integer());
        std::size_t b = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        if (b == i_) fail("unexpected character");
        auto it = vars_.find(std::string(s_.substr(b, i_ - b)));
        if (it == vars_.end()) fail("unknown identifier " + std::string(s_.substr(b, i_ - b)));
        return it->second;
    }
};

} // namespace btq
