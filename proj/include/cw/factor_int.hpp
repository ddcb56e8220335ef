#pragma once

#include <cstdint>
#include <vector>

#include "cw/bigrat.hpp"

namespace cw {

struct PrimePower {
    BigInt prime;
    unsigned exponent = 0;
    // False when the prime exceeds the range where deterministic
    // Miller-Rabin is proven and only a strong probable-prime test passed.
    bool certified = true;
};

struct PrimeFactorization {
    int sign = 1;
    std::vector<PrimePower> factors;  // primes strictly increasing

    BigInt product() const;
    bool all_certified() const;
};

struct FactorLimits {
    // Inputs whose unfactored part exceeds this many decimal digits after
    // trial division and rho raise FactorizationCutoff.
    unsigned max_digits = 80;
    std::uint64_t rho_iterations = 20'000'000;
};

// Deterministic Miller-Rabin with the first 13 prime bases (proven below
// 3.3e24); above that a BPSW probable-prime test is used and reported.
bool is_prime(const BigInt& n, bool* certified = nullptr);

PrimeFactorization factor_integer(const BigInt& n, const FactorLimits& limits = {});

}  // namespace cw
