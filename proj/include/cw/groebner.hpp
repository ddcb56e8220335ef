#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cw/linalg.hpp"
#include "cw/multipoly.hpp"

namespace cw {

enum class OrderKind { Grevlex, Lex, Block };

// Block orders compare the first `split` variables by grevlex and break ties
// with grevlex on the remaining ones, so the leading block is eliminated.
struct MonomialOrder {
    OrderKind kind = OrderKind::Grevlex;
    std::size_t split = 0;

    static MonomialOrder grevlex() { return {OrderKind::Grevlex, 0}; }
    static MonomialOrder lex() { return {OrderKind::Lex, 0}; }
    static MonomialOrder block(std::size_t split) { return {OrderKind::Block, split}; }

    // Positive when a > b; `nvars` is the ring size.
    int compare(const Monomial& a, const Monomial& b, std::size_t nvars) const;
    std::string name() const;
};

struct GroebnerOptions {
    std::size_t max_spairs = 100000;
    std::size_t max_coefficient_bits = 200000;
    bool verify = true;  // post-hoc Buchberger criterion on the result
    bool stop_on_unit = false;  // return {1} as soon as a constant appears
};

struct IdealBasis {
    Vars vars;
    MonomialOrder order;
    std::vector<MultiPoly> generators;  // monic, sorted by leading monomial
    bool reduced = false;
    std::size_t spairs_processed = 0;

    bool is_unit() const;
    Monomial leading_monomial(std::size_t i) const;
};

IdealBasis buchberger(const std::vector<MultiPoly>& gens, const MonomialOrder& order,
                      const GroebnerOptions& options = {});

MultiPoly normal_form(const MultiPoly& p, const IdealBasis& basis);
bool ideal_contains(const IdealBasis& basis, const MultiPoly& p);

// Generators of I intersected with Q[remaining variables]; the result ring
// lists the remaining variables in their original relative order.
IdealBasis eliminate(const std::vector<MultiPoly>& gens, const std::vector<std::string>& drop_vars,
                     const GroebnerOptions& options = {});

// (I : h^infinity) via an auxiliary variable w and the relation w h - 1.
IdealBasis saturate(const std::vector<MultiPoly>& gens, const MultiPoly& h, const GroebnerOptions& options = {});

bool has_common_zero(const std::vector<MultiPoly>& gens, const GroebnerOptions& options = {});

struct UnitCertificate {
    bool found = false;  // false: the generators share a zero (proper ideal)
    std::vector<MultiPoly> cofactors;  // integer coefficients
    BigInt A;  // sum cofactors[s] * gens[s] == A, A > 0
    std::size_t spairs_processed = 0;
    int max_cofactor_degree = -1;
};

// Extended Buchberger with cofactor tracking; the identity is re-verified by
// exact expansion before returning.
UnitCertificate unit_ideal_certificate(const std::vector<MultiPoly>& gens, const GroebnerOptions& options = {});

// Certificate for <base, h> when <base> is zero-dimensional: h is inverted in
// Q[vars]/<base> through its multiplication matrix and the remainder is
// expressed in the base generators. Cofactors are ordered (base..., h).
// Throws DomainError when <base> is not zero-dimensional.
UnitCertificate unit_certificate_by_inverse(const std::vector<MultiPoly>& base, const MultiPoly& h,
                                           const GroebnerOptions& options = {});

// Standard monomials of a zero-dimensional ideal, ascending in the basis
// order. Throws DomainError if the ideal is not zero-dimensional.
std::vector<Monomial> standard_monomials(const IdealBasis& basis);
std::size_t quotient_dimension(const IdealBasis& basis);

// Matrix of multiplication by f on Q[vars]/I in the standard-monomial basis:
// column j holds the coordinates of NF(f * b_j).
Matrix<BigRat> multiplication_matrix(const IdealBasis& basis, const MultiPoly& f, const std::vector<Monomial>& monos);

// Coordinates of NF(p) in the standard-monomial basis.
std::vector<BigRat> quotient_coordinates(const IdealBasis& basis, const MultiPoly& p, const std::vector<Monomial>& monos);

}  // namespace cw
