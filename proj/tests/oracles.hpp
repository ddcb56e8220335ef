#pragma once

#include <map>
#include <vector>

#include "cw/bigrat.hpp"

namespace cwtest {

using cw::BigInt;
using cw::BigRat;

// Exponent of p in the nonzero rational q.
inline long valuation(BigRat q, long p) {
    long v = 0;
    BigInt n = q.get_num(), d = q.get_den();
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    while (d % p == 0) {
        d /= p;
        --v;
    }
    return v;
}

inline void collect_primes(BigInt n, std::map<long, bool>& out) {
    n = abs(n);
    for (long p = 2; n > 1 && p * p <= n; ++p)
        while (n % p == 0) {
            out[p] = true;
            n /= p;
        }
    if (n > 1) out[n.get_si()] = true;
}

// H(x) = prod over all places v of max_i |x_i|_v, with |.|_p = p^{-ord_p}.
inline BigRat product_formula_height(const std::vector<BigRat>& x) {
    std::map<long, bool> primes;
    BigRat arch = 0;
    for (const auto& c : x) {
        if (c == 0) continue;
        collect_primes(c.get_num(), primes);
        collect_primes(c.get_den(), primes);
        arch = std::max(arch, BigRat(abs(c)));
    }
    BigRat h = arch;
    for (const auto& [p, unused] : primes) {
        long best = 0;
        bool first = true;
        for (const auto& c : x) {
            if (c == 0) continue;
            long v = valuation(c, p);
            if (first || v < best) best = v;
            first = false;
        }
        // max |x_i|_p = p^{-min ord_p}
        BigRat pk(cw::pow(BigInt(p), static_cast<unsigned long>(best < 0 ? -best : best)));
        h *= best <= 0 ? pk : BigRat(1) / pk;
    }
    return h;
}

}  // namespace cwtest
