#include "cw/bigrat.hpp"

#include "cw/errors.hpp"

#include <cctype>

namespace cw {

BigRat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("zero denominator");
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

BigInt parse_integer(std::string_view text) {
    if (text.empty()) throw DomainError("empty integer literal");
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+') i = 1;
    if (i == text.size()) throw DomainError("malformed integer literal '" + std::string(text) + "'");
    for (std::size_t k = i; k < text.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(text[k])))
            throw DomainError("malformed integer literal '" + std::string(text) + "'");
    BigInt v(std::string(text.substr(i)), 10);
    return text[0] == '-' ? BigInt(-v) : v;
}

BigRat parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return BigRat(parse_integer(text));
    return make_rat(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

std::string to_string(const BigInt& v) { return v.get_str(10); }

std::string to_string(const BigRat& v) {
    if (v.get_den() == 1) return v.get_num().get_str(10);
    return v.get_num().get_str(10) + "/" + v.get_den().get_str(10);
}

std::size_t bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

BigInt pow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

BigRat pow(const BigRat& base, unsigned long exp) {
    return make_rat(pow(BigInt(base.get_num()), exp), pow(BigInt(base.get_den()), exp));
}

LogFloat log2_abs(const BigInt& v) {
    if (v == 0) throw DomainError("log2 of zero");
    BigInt a = abs(v);
    std::size_t bits = bit_length(a);
    constexpr std::size_t keep = 160;
    if (bits <= keep) {
        LogFloat f(a.get_str(10));
        return boost::multiprecision::log2(f);
    }
    std::size_t shift = bits - keep;
    BigInt top = a >> static_cast<mp_bitcnt_t>(shift);
    // Truncation error is below 2^-159 relative, far under the mantissa.
    LogFloat f(top.get_str(10));
    return boost::multiprecision::log2(f) + LogFloat(shift);
}

LogFloat log2_e() {
    static const LogFloat value = LogFloat(1) / boost::multiprecision::log(LogFloat(2));
    return value;
}

std::string to_decimal(const LogFloat& v, int digits) {
    return v.str(digits, std::ios_base::fixed);
}

BigInt common_denominator(const std::vector<BigRat>& values) {
    BigInt d = 1;
    for (const auto& v : values) d = lcm(d, BigInt(v.get_den()));
    return d;
}

BigInt numerator_gcd(const std::vector<BigRat>& values) {
    BigInt g = 0;
    for (const auto& v : values) g = gcd(g, BigInt(v.get_num()));
    return g;
}

}  // namespace cw
