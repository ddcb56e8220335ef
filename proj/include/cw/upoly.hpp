#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cw/bigrat.hpp"
#include "cw/multipoly.hpp"

namespace cw {

// Dense univariate polynomial over Q; c[k] is the coefficient of T^k and the
// vector never ends in a zero.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<BigRat> coeffs);
    static QPoly constant(const BigRat& c);
    static QPoly monomial(unsigned degree, const BigRat& c = 1);
    static QPoly from_integers(const std::vector<BigInt>& coeffs);

    const std::vector<BigRat>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const BigRat& lc() const;
    BigRat coeff(unsigned k) const { return k < c_.size() ? c_[k] : BigRat(0); }

    QPoly operator-() const;
    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const BigRat& s);
    bool operator==(const QPoly& o) const { return c_ == o.c_; }
    bool operator!=(const QPoly& o) const { return c_ != o.c_; }

    std::pair<QPoly, QPoly> divmod(const QPoly& d) const;
    QPoly operator/(const QPoly& d) const { return divmod(d).first; }
    QPoly operator%(const QPoly& d) const { return divmod(d).second; }
    QPoly divide_exact(const QPoly& d) const;

    QPoly derivative() const;
    QPoly monic() const;
    BigRat evaluate(const BigRat& x) const;
    QPoly compose(const QPoly& inner) const;
    QPoly pow(unsigned n) const;

    // Integer primitive part with positive leading coefficient.
    std::vector<BigInt> primitive_integer() const;
    BigRat content() const;  // this = content * primitive_integer

    MultiPoly to_multipoly(const Vars& vars, const std::string& var) const;
    static QPoly from_multipoly(const MultiPoly& p, const std::string& var);
    std::string to_string(const std::string& var = "T") const;

private:
    void trim();
    std::vector<BigRat> c_;
};

QPoly gcd(const QPoly& a, const QPoly& b);  // monic, gcd(0,0) = 0
// Returns (g, s, t) with s*a + t*b = g monic.
struct QXgcd {
    QPoly g, s, t;
};
QXgcd xgcd(const QPoly& a, const QPoly& b);
BigRat resultant(const QPoly& a, const QPoly& b);
BigRat discriminant(const QPoly& f);  // (-1)^{n(n-1)/2} Res(f, f') / lc

// Yun decomposition: f = lc * prod_i s_i^i with s_i monic, squarefree and
// pairwise coprime. Entry i-1 holds s_i (possibly 1).
std::vector<QPoly> squarefree_decomposition(const QPoly& f);
QPoly squarefree_part(const QPoly& f);  // monic

// Integer polynomial helpers (coefficient vectors, index = degree).
using ZVec = std::vector<BigInt>;
void trim(ZVec& v);
ZVec zmul(const ZVec& a, const ZVec& b);
BigInt zdiscriminant(const ZVec& f);
std::string zvec_to_string(const ZVec& f, const std::string& var = "T");

// Arithmetic in F_p[T] for 2 <= p < 2^63. Coefficients are reduced residues.
namespace modp {

using Poly = std::vector<std::uint64_t>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

void trim(Poly& f);
Poly reduce(const ZVec& f, std::uint64_t p);
Poly add(const Poly& a, const Poly& b, std::uint64_t p);
Poly sub(const Poly& a, const Poly& b, std::uint64_t p);
Poly mul(const Poly& a, const Poly& b, std::uint64_t p);
Poly scale(const Poly& a, std::uint64_t s, std::uint64_t p);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, std::uint64_t p);
Poly rem(const Poly& a, const Poly& b, std::uint64_t p);
Poly monic(const Poly& a, std::uint64_t p);
Poly gcd(Poly a, Poly b, std::uint64_t p);
// s with s*a == 1 mod m (requires gcd 1).
Poly inverse_mod(const Poly& a, const Poly& m, std::uint64_t p);
Poly derivative(const Poly& a, std::uint64_t p);
Poly powmod(const Poly& base, const BigInt& e, const Poly& m, std::uint64_t p);
bool is_squarefree(const Poly& f, std::uint64_t p);
// Product of the distinct monic irreducible factors of f (f nonzero).
Poly radical(const Poly& f, std::uint64_t p);
// Complete factorization of a monic squarefree polynomial into monic
// irreducibles, sorted by (degree, coefficients). Deterministic for a seed.
std::vector<Poly> factor_squarefree(const Poly& f, std::uint64_t p, std::uint64_t seed);

}  // namespace modp

}  // namespace cw
