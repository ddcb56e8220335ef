#pragma once

#include <cstdint>
#include <vector>

#include "cw/bigrat.hpp"
#include "cw/multipoly.hpp"
#include "cw/upoly.hpp"

namespace cw {

template <class T>
using Matrix = std::vector<std::vector<T>>;

inline BigInt exact_quotient(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}
inline BigRat exact_quotient(const BigRat& a, const BigRat& b) { return a / b; }
inline MultiPoly exact_quotient(const MultiPoly& a, const MultiPoly& b) { return a.divide_exact(b); }

inline bool is_zero_elem(const BigInt& a) { return a == 0; }
inline bool is_zero_elem(const BigRat& a) { return a == 0; }
inline bool is_zero_elem(const MultiPoly& a) { return a.is_zero(); }

// Fraction-free Bareiss determinant. `one` and `zero` are the ring's
// constants (needed for polynomial rings whose variable list is not implied).
template <class T>
T bareiss_determinant(Matrix<T> a, const T& one, const T& zero) {
    std::size_t n = a.size();
    if (n == 0) return one;
    T prev = one;
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (is_zero_elem(a[k][k])) {
            std::size_t r = k + 1;
            while (r < n && is_zero_elem(a[r][k])) ++r;
            if (r == n) return zero;
            std::swap(a[k], a[r]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                T v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = exact_quotient(v, prev);
            }
        }
        prev = a[k][k];
    }
    T det = a[n - 1][n - 1];
    if (negate) det = zero - det;
    return det;
}

enum class SolveStatus { Unique, Inconsistent, Underdetermined };

struct SolveResult {
    SolveStatus status = SolveStatus::Inconsistent;
    std::vector<BigRat> x;  // set when Unique
    std::size_t rank_mod_p = 0;
};

// Exact solution of A x = b over Q for an integer matrix A (rows x cols).
// Rank is detected modulo word-size primes; a unique solution is obtained by
// p-adic (Dixon) lifting on a maximal independent row subset and verified
// exactly against every row before being returned.
SolveResult exact_solve(const Matrix<BigInt>& A, const std::vector<BigInt>& b);

// Rational reconstruction of u mod m with |num|, den <= bound.
bool rational_reconstruct(const BigInt& u, const BigInt& m, const BigInt& bound, BigRat& out);

// Characteristic polynomial det(T I - A) of a square rational matrix.
QPoly characteristic_polynomial(const Matrix<BigRat>& A);

// Word-size primes just below 2^62, in decreasing order.
std::uint64_t large_prime(std::size_t index);

}  // namespace cw
