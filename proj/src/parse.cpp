#include "cw/parse.hpp"

#include <cctype>
#include <string>

namespace cw {

namespace {

constexpr unsigned kMaxExponent = 65535;

class Parser {
public:
    Parser(std::string_view text, const Vars& vars) : s_(text), vars_(vars) {}

    MultiPoly run() {
        skip();
        if (pos_ == s_.size()) fail("empty expression");
        MultiPoly p = expr();
        skip();
        if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MultiPoly expr() {
        MultiPoly acc = term();
        for (;;) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else return acc;
        }
    }

    MultiPoly term() {
        MultiPoly acc = unary();
        while (accept('*')) acc *= unary();
        skip();
        if (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(' || s_[pos_] == '_'))
            fail("implicit multiplication is not allowed; use '*'");
        return acc;
    }

    MultiPoly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    MultiPoly power() {
        MultiPoly base = primary();
        if (accept('^')) {
            skip();
            if (pos_ < s_.size() && s_[pos_] == '-') fail("negative exponent");
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail("expected non-negative integer exponent");
            BigInt e = number();
            if (e > kMaxExponent) fail("exponent too large");
            return base.pow(static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }

    BigInt number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return BigInt(std::string(s_.substr(start, pos_ - start)), 10);
    }

    MultiPoly primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt num = number();
            skip();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                skip();
                if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    fail("expected denominator after '/'");
                std::size_t at = pos_;
                BigInt den = number();
                if (den == 0) throw ParseError("zero denominator", at);
                return MultiPoly::constant(vars_, make_rat(num, den));
            }
            return MultiPoly::constant(vars_, BigRat(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            for (const auto& v : vars_)
                if (v == name) return MultiPoly::variable(vars_, name);
            throw ParseError("undeclared variable '" + name + "'", start);
        }
        if (c == '(') {
            ++pos_;
            MultiPoly inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    const Vars& vars_;
    std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, const Vars& vars) { return Parser(text, vars).run(); }

}  // namespace cw
