#pragma once

#include <cstdint>
#include <vector>

#include "cw/upoly.hpp"

namespace cw {

struct QFactor {
    QPoly factor;  // monic, irreducible over Q
    unsigned multiplicity = 1;
};

struct QFactorization {
    BigRat content;  // leading coefficient of the input
    std::vector<QFactor> factors;  // sorted by (degree, coefficients)
};

struct FactorOptions {
    unsigned max_degree = 200;
    std::size_t max_coefficient_bits = 20000;
    unsigned max_recombination_factors = 24;
    std::uint64_t seed = 0x5eed;
};

// Squarefree decomposition, modular factorization at a good prime, Hensel
// lifting and Zassenhaus recombination. Throws FactorizationCutoff when the
// guards in `options` are exceeded.
QFactorization factor_univariate_Q(const QPoly& f, const FactorOptions& options = {});

// Irreducible factors of a squarefree primitive integer polynomial, each
// primitive with positive leading coefficient.
std::vector<ZVec> factor_squarefree_Z(const ZVec& f, const FactorOptions& options = {});

bool is_irreducible_Q(const QPoly& f, const FactorOptions& options = {});

}  // namespace cw
