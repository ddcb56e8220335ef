#include "cw/factor_upoly.hpp"

#include <algorithm>

#include "cw/errors.hpp"

namespace cw {

namespace {

const std::uint64_t kPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
                                 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163,
                                 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251,
                                 257, 263, 269, 271, 277, 281, 283, 293, 307, 311, 313, 317, 331, 337, 347, 349,
                                 353, 359, 367, 373, 379, 383, 389, 397, 401, 409, 419, 421, 431, 433, 439, 443,
                                 449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509, 521, 523, 541};

BigInt symmetric_mod(const BigInt& v, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    if (2 * r > m) r -= m;
    return r;
}

ZVec to_zvec(const modp::Poly& f) {
    ZVec v;
    for (auto c : f) v.emplace_back(static_cast<unsigned long>(c));
    return v;
}

ZVec mod_vec(const ZVec& f, const BigInt& m) {
    ZVec v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) mpz_fdiv_r(v[i].get_mpz_t(), f[i].get_mpz_t(), m.get_mpz_t());
    trim(v);
    return v;
}

ZVec zsub(const ZVec& a, const ZVec& b) {
    ZVec v(std::max(a.size(), b.size()), BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i) v[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) v[i] -= b[i];
    trim(v);
    return v;
}

ZVec primitive(const ZVec& f) {
    BigInt g = 0;
    for (const auto& c : f) g = gcd(g, c);
    ZVec v = f;
    if (g == 0) return v;
    if (f.back() < 0) g = -g;
    for (auto& c : v) c /= g;
    return v;
}

// Exact division test over Z: returns true and the quotient when b | a.
bool zdivides(const ZVec& b, const ZVec& a, ZVec& quotient) {
    if (b.size() > a.size()) return false;
    ZVec r = a;
    ZVec q(a.size() - b.size() + 1, BigInt(0));
    std::size_t db = b.size() - 1;
    for (std::size_t k = a.size(); k-- > db;) {
        if (r[k] == 0) continue;
        if (!mpz_divisible_p(r[k].get_mpz_t(), b.back().get_mpz_t())) return false;
        BigInt f = r[k] / b.back();
        q[k - db] = f;
        for (std::size_t i = 0; i <= db; ++i) r[k - db + i] -= f * b[i];
    }
    for (const auto& c : r)
        if (c != 0) return false;
    trim(q);
    quotient = std::move(q);
    return true;
}

// Linear multifactor Hensel lifting of monic modular factors of lc^{-1} f
// from p to p^k.
std::vector<ZVec> hensel_lift(const ZVec& f, const std::vector<modp::Poly>& factors, std::uint64_t p, unsigned k) {
    std::size_t r = factors.size();
    std::vector<ZVec> lifted;
    for (const auto& g : factors) lifted.push_back(to_zvec(g));
    // Partial-fraction cofactors: sum_i s_i * prod_{j != i} g_j == 1 mod p.
    modp::Poly full = {1};
    for (const auto& g : factors) full = modp::mul(full, g, p);
    std::vector<modp::Poly> s(r), cof(r);
    for (std::size_t i = 0; i < r; ++i) {
        cof[i] = modp::divmod(full, factors[i], p).first;
        s[i] = modp::inverse_mod(cof[i], factors[i], p);
    }
    BigInt P = static_cast<unsigned long>(p), pk = P;
    for (unsigned step = 1; step < k; ++step) {
        BigInt next = pk * P;
        BigInt lcinv;
        mpz_invert(lcinv.get_mpz_t(), f.back().get_mpz_t(), next.get_mpz_t());
        ZVec target = f;
        for (auto& c : target) c *= lcinv;
        target = mod_vec(target, next);
        ZVec prod = {BigInt(1)};
        for (const auto& g : lifted) prod = mod_vec(zmul(prod, g), next);
        ZVec err = mod_vec(zsub(target, prod), next);
        for (auto& c : err) {
            if (!mpz_divisible_p(c.get_mpz_t(), pk.get_mpz_t())) throw InternalError("Hensel lifting lost congruence");
            c /= pk;
        }
        modp::Poly e = modp::reduce(err, p);
        if (!e.empty()) {
            for (std::size_t i = 0; i < r; ++i) {
                modp::Poly delta = modp::rem(modp::mul(e, s[i], p), factors[i], p);
                ZVec d = to_zvec(delta);
                for (auto& c : d) c *= pk;
                ZVec sum(std::max(lifted[i].size(), d.size()), BigInt(0));
                for (std::size_t t = 0; t < lifted[i].size(); ++t) sum[t] += lifted[i][t];
                for (std::size_t t = 0; t < d.size(); ++t) sum[t] += d[t];
                lifted[i] = sum;
            }
        }
        pk = next;
    }
    return lifted;
}

bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
    std::size_t s = idx.size();
    for (std::size_t i = s; i-- > 0;) {
        if (idx[i] < n - s + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<ZVec> factor_squarefree_Z(const ZVec& f0, const FactorOptions& options) {
    ZVec f = primitive(f0);
    int n = static_cast<int>(f.size()) - 1;
    if (n <= 0) return {};
    if (n == 1) return {f};
    if (static_cast<unsigned>(n) > options.max_degree)
        throw FactorizationCutoff("degree " + std::to_string(n) + " exceeds guard");
    for (const auto& c : f)
        if (bit_length(c) > options.max_coefficient_bits) throw FactorizationCutoff("coefficient size guard");

    // Pick the good prime (p does not divide lc, f squarefree mod p) with the
    // fewest modular factors among the first few candidates.
    std::uint64_t best_p = 0;
    std::vector<modp::Poly> best;
    int tried = 0;
    for (std::uint64_t p : kPrimes) {
        if (mpz_divisible_ui_p(f.back().get_mpz_t(), p)) continue;
        modp::Poly fp = modp::reduce(f, p);
        if (!modp::is_squarefree(fp, p)) continue;
        auto facs = modp::factor_squarefree(fp, p, options.seed ^ p);
        if (best_p == 0 || facs.size() < best.size()) {
            best_p = p;
            best = std::move(facs);
        }
        if (best.size() == 1 || ++tried >= 5) break;
    }
    if (best_p == 0) throw FactorizationCutoff("no good prime found");
    if (best.size() == 1) return {f};
    if (best.size() > options.max_recombination_factors)
        throw FactorizationCutoff(std::to_string(best.size()) + " modular factors exceed recombination guard");

    // Coefficients of lc * (any monic factor) are bounded by |lc| 2^n ||f||_2.
    BigInt norm2 = 0;
    for (const auto& c : f) norm2 += c * c;
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
    root += 1;
    BigInt bound = abs(f.back()) * (BigInt(1) << n) * root;
    BigInt P = static_cast<unsigned long>(best_p), M = P;
    unsigned k = 1;
    while (M <= 2 * bound) {
        M *= P;
        ++k;
    }
    std::vector<ZVec> lifted = hensel_lift(f, best, best_p, k);

    std::vector<ZVec> result;
    std::vector<ZVec> pool = lifted;
    ZVec rest = f;
    for (std::size_t s = 1; 2 * s <= pool.size();) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        do {
            ZVec cand = {rest.back()};
            for (auto i : idx) cand = mod_vec(zmul(cand, pool[i]), M);
            for (auto& c : cand) c = symmetric_mod(c, M);
            trim(cand);
            cand = primitive(cand);
            ZVec q;
            if (zdivides(cand, rest, q)) {
                result.push_back(cand);
                rest = primitive(q);
                std::vector<ZVec> remaining;
                for (std::size_t i = 0; i < pool.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) remaining.push_back(pool[i]);
                pool = std::move(remaining);
                found = true;
                break;
            }
        } while (next_subset(idx, pool.size()));
        if (!found) ++s;
    }
    result.push_back(rest);
    return result;
}

QFactorization factor_univariate_Q(const QPoly& f, const FactorOptions& options) {
    if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
    QFactorization out;
    out.content = f.lc();
    auto sqf = squarefree_decomposition(f);
    for (std::size_t i = 0; i < sqf.size(); ++i) {
        if (sqf[i].degree() <= 0) continue;
        for (const auto& g : factor_squarefree_Z(sqf[i].primitive_integer(), options))
            out.factors.push_back({QPoly::from_integers(g).monic(), static_cast<unsigned>(i + 1)});
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const QFactor& a, const QFactor& b) {
        if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
        const auto& x = a.factor.coeffs();
        const auto& y = b.factor.coeffs();
        for (std::size_t i = x.size(); i-- > 0;)
            if (x[i] != y[i]) return x[i] < y[i];
        return a.multiplicity < b.multiplicity;
    });
    return out;
}

bool is_irreducible_Q(const QPoly& f, const FactorOptions& options) {
    if (f.degree() <= 0) return false;
    auto fac = factor_univariate_Q(f, options);
    return fac.factors.size() == 1 && fac.factors[0].multiplicity == 1;
}

}  // namespace cw
