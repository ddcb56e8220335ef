#include "cw/linalg.hpp"

#include <mutex>

#include "cw/errors.hpp"
#include "cw/factor_int.hpp"

namespace cw {

std::uint64_t large_prime(std::size_t index) {
    static std::vector<std::uint64_t> primes;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    std::uint64_t candidate = primes.empty() ? (std::uint64_t(1) << 62) - 1 : primes.back() - 2;
    while (primes.size() <= index) {
        if (candidate % 2 == 0) --candidate;
        if (is_prime(BigInt(static_cast<unsigned long>(candidate)))) primes.push_back(candidate);
        candidate -= 2;
    }
    return primes[index];
}

bool rational_reconstruct(const BigInt& u, const BigInt& m, const BigInt& bound, BigRat& out) {
    BigInt r0 = m, r1, s0 = 0, s1 = 1;
    mpz_fdiv_r(r1.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
    while (r1 > bound) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1, s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (s1 == 0 || abs(s1) > bound) return false;
    if (gcd(r1, s1) != 1) return false;
    out = make_rat(r1, s1);
    return true;
}

namespace {

using modp::mulmod;

std::uint64_t to_residue(const BigInt& v, std::uint64_t p) {
    BigInt r, P = static_cast<unsigned long>(p);
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), P.get_mpz_t());
    return r.get_ui();
}

struct RowBasis {
    std::uint64_t p;
    std::vector<std::vector<std::uint64_t>> rows;  // reduced, pivot normalized to 1
    std::vector<std::size_t> pivots;

    // Returns true when the row is independent of the basis (and adds it).
    bool insert(std::vector<std::uint64_t> v) {
        for (std::size_t k = 0; k < rows.size(); ++k) {
            std::uint64_t c = v[pivots[k]];
            if (!c) continue;
            const auto& b = rows[k];
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (!b[j]) continue;
                std::uint64_t t = mulmod(c, b[j], p);
                v[j] = v[j] >= t ? v[j] - t : v[j] + (p - t);
            }
        }
        std::size_t piv = 0;
        while (piv < v.size() && v[piv] == 0) ++piv;
        if (piv == v.size()) return false;
        std::uint64_t inv = modp::invmod(v[piv], p);
        for (auto& x : v) x = mulmod(x, inv, p);
        // Keep the basis fully reduced in the new pivot column.
        for (auto& b : rows) {
            std::uint64_t c = b[piv];
            if (!c) continue;
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (!v[j]) continue;
                std::uint64_t t = mulmod(c, v[j], p);
                b[j] = b[j] >= t ? b[j] - t : b[j] + (p - t);
            }
        }
        rows.push_back(std::move(v));
        pivots.push_back(piv);
        return true;
    }
};

// Inverse of a square matrix modulo p via Gauss-Jordan; throws if singular.
std::vector<std::vector<std::uint64_t>> inverse_mod_p(const Matrix<BigInt>& B, std::uint64_t p) {
    std::size_t n = B.size();
    std::vector<std::vector<std::uint64_t>> a(n, std::vector<std::uint64_t>(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = to_residue(B[i][j], p);
        a[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t r = c;
        while (r < n && a[r][c] == 0) ++r;
        if (r == n) throw InternalError("selected rows are singular modulo p");
        std::swap(a[r], a[c]);
        std::uint64_t inv = modp::invmod(a[c][c], p);
        for (auto& x : a[c]) x = mulmod(x, inv, p);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            std::uint64_t f = a[i][c];
            for (std::size_t j = c; j < 2 * n; ++j) {
                if (!a[c][j]) continue;
                std::uint64_t t = mulmod(f, a[c][j], p);
                a[i][j] = a[i][j] >= t ? a[i][j] - t : a[i][j] + (p - t);
            }
        }
    }
    std::vector<std::vector<std::uint64_t>> inv(n, std::vector<std::uint64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

bool satisfies(const Matrix<BigInt>& A, const std::vector<BigInt>& b, const std::vector<BigRat>& x) {
    // Clear denominators once: A (D x) = D b.
    BigInt D = common_denominator(x);
    std::vector<BigInt> y(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y[j] = x[j].get_num() * (D / x[j].get_den());
    for (std::size_t i = 0; i < A.size(); ++i) {
        BigInt s = 0;
        for (std::size_t j = 0; j < y.size(); ++j)
            if (A[i][j] != 0 && y[j] != 0) s += A[i][j] * y[j];
        if (s != D * b[i]) return false;
    }
    return true;
}

std::vector<BigRat> dixon(const Matrix<BigInt>& B, const std::vector<BigInt>& c, std::uint64_t p) {
    std::size_t n = B.size();
    auto Binv = inverse_mod_p(B, p);
    // Hadamard-type bound on numerators and denominator of the solution.
    LogFloat logH = 0;
    for (std::size_t i = 0; i < n; ++i) {
        BigInt s = c[i] * c[i];
        for (const auto& v : B[i]) s += v * v;
        if (s > 0) logH += log2_abs(s) / 2;
    }
    BigInt P = static_cast<unsigned long>(p), pk = 1;
    std::vector<BigInt> r = c, X(n, BigInt(0));
    std::vector<std::uint64_t> rr(n), y(n);
    std::size_t next_try = 1;
    for (std::size_t iter = 1;; ++iter) {
        for (std::size_t i = 0; i < n; ++i) rr[i] = to_residue(r[i], p);
        for (std::size_t i = 0; i < n; ++i) {
            unsigned __int128 acc = 0;
            for (std::size_t j = 0; j < n; ++j) {
                acc += static_cast<unsigned __int128>(Binv[i][j]) * rr[j] % p;
            }
            y[i] = static_cast<std::uint64_t>(acc % p);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (y[i]) X[i] += pk * static_cast<unsigned long>(y[i]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            BigInt s = r[i];
            for (std::size_t j = 0; j < n; ++j)
                if (y[j] && B[i][j] != 0) s -= B[i][j] * static_cast<unsigned long>(y[j]);
            mpz_divexact(r[i].get_mpz_t(), s.get_mpz_t(), P.get_mpz_t());
        }
        pk *= P;
        bool last = LogFloat(iter) * 62 > 2 * logH + 64;
        if (iter >= next_try || last) {
            next_try = iter * 2;
            BigInt bound;
            BigInt half = pk / 2;
            mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
            std::vector<BigRat> x(n);
            BigInt d = 1;
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) {
                BigRat v;
                BigInt u = X[i] * d % pk;
                if (!rational_reconstruct(u, pk, bound, v)) {
                    ok = false;
                    break;
                }
                x[i] = v / d;
                d *= v.get_den();
            }
            if (ok && satisfies(B, c, x)) return x;
            if (last) throw InternalError("p-adic lifting failed to reconstruct a solution");
        }
    }
}

}  // namespace

SolveResult exact_solve(const Matrix<BigInt>& A, const std::vector<BigInt>& b) {
    SolveResult out;
    std::size_t rows = A.size();
    std::size_t cols = rows ? A[0].size() : 0;
    if (b.size() != rows) throw DomainError("exact_solve: dimension mismatch");
    if (cols == 0) {
        bool zero = true;
        for (const auto& v : b) zero = zero && v == 0;
        out.status = zero ? SolveStatus::Unique : SolveStatus::Inconsistent;
        return out;
    }
    for (std::size_t attempt = 0; attempt < 3; ++attempt) {
        std::uint64_t p = large_prime(attempt);
        RowBasis basis{p, {}, {}};
        std::vector<std::size_t> chosen;
        for (std::size_t i = 0; i < rows && chosen.size() < cols; ++i) {
            std::vector<std::uint64_t> v(cols);
            for (std::size_t j = 0; j < cols; ++j) v[j] = to_residue(A[i][j], p);
            if (basis.insert(std::move(v))) chosen.push_back(i);
        }
        out.rank_mod_p = chosen.size();
        if (chosen.size() < cols) continue;
        Matrix<BigInt> B;
        std::vector<BigInt> c;
        for (auto i : chosen) {
            B.push_back(A[i]);
            c.push_back(b[i]);
        }
        std::vector<BigRat> x = dixon(B, c, p);
        if (satisfies(A, b, x)) {
            out.status = SolveStatus::Unique;
            out.x = std::move(x);
        } else {
            out.status = SolveStatus::Inconsistent;
        }
        return out;
    }
    // Column rank deficient modulo three primes: decide consistency mod p.
    std::uint64_t p = large_prime(0);
    RowBasis plain{p, {}, {}}, aug{p, {}, {}};
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<std::uint64_t> v(cols + 1);
        for (std::size_t j = 0; j < cols; ++j) v[j] = to_residue(A[i][j], p);
        v[cols] = to_residue(b[i], p);
        aug.insert(v);
        v.pop_back();
        plain.insert(std::move(v));
    }
    out.rank_mod_p = plain.rows.size();
    out.status = aug.rows.size() > plain.rows.size() ? SolveStatus::Inconsistent : SolveStatus::Underdetermined;
    return out;
}

QPoly characteristic_polynomial(const Matrix<BigRat>& A0) {
    // Hessenberg reduction followed by the standard recurrence.
    std::size_t n = A0.size();
    Matrix<BigRat> H = A0;
    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t i = m;
        while (i < n && H[i][m - 1] == 0) ++i;
        if (i == n) continue;
        if (i != m) {
            std::swap(H[i], H[m]);
            for (auto& row : H) std::swap(row[i], row[m]);
        }
        const BigRat t = H[m][m - 1];
        for (std::size_t r = m + 1; r < n; ++r) {
            if (H[r][m - 1] == 0) continue;
            BigRat u = H[r][m - 1] / t;
            for (std::size_t j = 0; j < n; ++j) H[r][j] -= u * H[m][j];
            for (std::size_t j = 0; j < n; ++j) H[j][m] += u * H[j][r];
        }
    }
    std::vector<QPoly> p(n + 1);
    p[0] = QPoly::constant(1);
    QPoly T = QPoly::monomial(1);
    for (std::size_t m = 1; m <= n; ++m) {
        p[m] = (T - QPoly::constant(H[m - 1][m - 1])) * p[m - 1];
        BigRat t = 1;
        for (std::size_t i = 1; i < m; ++i) {
            t *= H[m - i][m - i - 1];
            BigRat coef = t * H[m - i - 1][m - 1];
            p[m] = p[m] - p[m - i - 1] * coef;
        }
    }
    return p[n];
}

}  // namespace cw
