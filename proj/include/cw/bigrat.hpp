#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cw {

using BigInt = mpz_class;
// Always kept canonical: gcd(num, den) = 1 and den > 0.
using BigRat = mpq_class;

// 128-bit mantissa binary float used for logarithmic bounds.
using LogFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>>;

BigRat make_rat(const BigInt& num, const BigInt& den);
BigRat parse_rational(std::string_view text);  // "12", "-3/4"
std::string to_string(const BigInt& v);
std::string to_string(const BigRat& v);
BigInt parse_integer(std::string_view text);

std::size_t bit_length(const BigInt& v);  // 0 for 0
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);
BigInt pow(const BigInt& base, unsigned long exp);
BigRat pow(const BigRat& base, unsigned long exp);

// log2|v| for v != 0, accurate to the full LogFloat precision.
LogFloat log2_abs(const BigInt& v);
LogFloat log2_e();
std::string to_decimal(const LogFloat& v, int digits = 30);

// Lowest common denominator and gcd of numerators of a coefficient list.
BigInt common_denominator(const std::vector<BigRat>& values);
BigInt numerator_gcd(const std::vector<BigRat>& values);

}  // namespace cw
