#include "cw/factor_int.hpp"

#include <algorithm>
#include <map>

#include "cw/errors.hpp"

namespace cw {

namespace {

constexpr unsigned kTrialLimit = 1'000'000;
const unsigned kMrBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

const std::vector<unsigned>& small_primes() {
    static const std::vector<unsigned> primes = [] {
        std::vector<bool> composite(kTrialLimit + 1, false);
        std::vector<unsigned> out;
        for (unsigned i = 2; i <= kTrialLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (unsigned long long j = 1ull * i * i; j <= kTrialLimit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

const BigInt& mr_bound() {
    static const BigInt bound("3317044064679887385961981", 10);
    return bound;
}

bool miller_rabin(const BigInt& n, unsigned base) {
    BigInt d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++s;
    }
    BigInt a = base, x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
BigInt pollard_brent(const BigInt& n, unsigned long c, std::uint64_t& budget) {
    BigInt y = 2, x, ys, q = 1, g = 1;
    auto f = [&](const BigInt& v) { return BigInt((v * v + c) % n); };
    std::uint64_t r = 1;
    const std::uint64_t m = 128;
    do {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) y = f(y);
        std::uint64_t k = 0;
        do {
            ys = y;
            std::uint64_t lim = std::min(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                y = f(y);
                q = q * abs(BigInt(x - y)) % n;
            }
            g = gcd(q, n);
            k += m;
            if (budget <= lim) {
                budget = 0;
                return 0;
            }
            budget -= lim;
        } while (k < r && g == 1);
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd(abs(BigInt(x - ys)), n);
        } while (g == 1);
    }
    return g == n ? BigInt(0) : g;
}

void split(const BigInt& n, std::map<BigInt, unsigned>& out, std::map<BigInt, bool>& cert,
           const FactorLimits& limits, std::uint64_t& budget) {
    if (n == 1) return;
    bool certified = true;
    if (is_prime(n, &certified)) {
        ++out[n];
        cert[n] = certified;
        return;
    }
    if (mpz_sizeinbase(n.get_mpz_t(), 10) > limits.max_digits)
        throw FactorizationCutoff("composite cofactor with " + std::to_string(mpz_sizeinbase(n.get_mpz_t(), 10)) +
                                  " digits");
    BigInt root;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
        split(root, out, cert, limits, budget);
        split(root, out, cert, limits, budget);
        return;
    }
    for (unsigned long c = 1;; ++c) {
        BigInt d = pollard_brent(n, c, budget);
        if (budget == 0) throw FactorizationCutoff("Pollard rho iteration budget exhausted");
        if (d != 0) {
            split(d, out, cert, limits, budget);
            split(BigInt(n / d), out, cert, limits, budget);
            return;
        }
    }
}

}  // namespace

bool is_prime(const BigInt& n, bool* certified) {
    if (certified) *certified = true;
    if (n < 2) return false;
    for (unsigned p : kMrBases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < mr_bound()) {
        for (unsigned b : kMrBases)
            if (!miller_rabin(n, b)) return false;
        return true;
    }
    int r = mpz_probab_prime_p(n.get_mpz_t(), 30);
    if (certified) *certified = (r == 2);
    return r > 0;
}

BigInt PrimeFactorization::product() const {
    BigInt p = sign;
    for (const auto& f : factors) p *= pow(f.prime, f.exponent);
    return p;
}

bool PrimeFactorization::all_certified() const {
    return std::all_of(factors.begin(), factors.end(), [](const PrimePower& f) { return f.certified; });
}

PrimeFactorization factor_integer(const BigInt& n0, const FactorLimits& limits) {
    if (n0 == 0) throw DomainError("factor_integer: zero has no factorization");
    PrimeFactorization result;
    result.sign = n0 < 0 ? -1 : 1;
    BigInt n = abs(n0);
    std::map<BigInt, unsigned> found;
    std::map<BigInt, bool> cert;
    for (unsigned p : small_primes()) {
        if (BigInt(p) * p > n) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            }
            found[BigInt(p)] = e;
        }
    }
    if (n > 1) {
        std::uint64_t budget = limits.rho_iterations;
        split(n, found, cert, limits, budget);
    }
    for (const auto& [p, e] : found) {
        auto it = cert.find(p);
        result.factors.push_back({p, e, it == cert.end() ? true : it->second});
    }
    return result;
}

}  // namespace cw
