#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cw/bigrat.hpp"
#include "cw/monomial.hpp"

namespace cw {

using Vars = std::vector<std::string>;

struct Term {
    Monomial mono;
    BigRat coef;
};

// Sparse polynomial with rational coefficients over a named variable list.
// Terms are stored in descending graded-lex order (variables ranked in the
// order they were declared) with no zero coefficients.
//
// Binary operations between polynomials over different variable lists embed
// both operands into the union list: the left operand's variables first,
// then any new names from the right operand in their declared order.
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(Vars vars);
    MultiPoly(Vars vars, std::vector<Term> terms);  // combines and sorts

    static MultiPoly constant(Vars vars, const BigRat& c);
    static MultiPoly variable(Vars vars, const std::string& name);
    static MultiPoly monomial(Vars vars, const Monomial& m, const BigRat& c);

    const Vars& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    BigRat constant_term() const;
    // Leading term for the graded-lex order; throws on zero.
    const Term& leading() const;

    int var_index(const std::string& name) const;  // -1 when absent
    int require_var(const std::string& name) const;

    int total_degree() const;  // -1 for zero
    int degree_in(const std::string& var) const;  // -1 for zero
    int degree_in(std::size_t idx) const;
    bool is_homogeneous() const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const BigRat& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const BigRat& c) { return a *= c; }
    friend MultiPoly operator*(const BigRat& c, MultiPoly a) { return a *= c; }
    MultiPoly pow(unsigned n) const;

    // Equality is semantic: operands are embedded into a common ring first.
    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    // Quotient q with *this == q * d; throws DomainError otherwise.
    MultiPoly divide_exact(const MultiPoly& d) const;
    // Generic multivariate division by a single divisor in graded-lex order.
    std::pair<MultiPoly, MultiPoly> divide(const MultiPoly& d) const;

    BigRat evaluate(const std::vector<BigRat>& point) const;
    // Replaces each named variable by a polynomial. Variables not mentioned
    // are kept. The result lives over `target` (which must contain every
    // surviving variable and every variable of the replacements).
    MultiPoly substitute(const std::map<std::string, MultiPoly>& repl, const Vars& target) const;
    MultiPoly substitute(const std::map<std::string, MultiPoly>& repl) const;
    MultiPoly evaluate_partial(const std::map<std::string, BigRat>& values) const;

    MultiPoly derivative(const std::string& var) const;
    // coefficients_in(v)[d] is the coefficient of v^d, over the same ring.
    std::vector<MultiPoly> coefficients_in(const std::string& var) const;
    MultiPoly leading_coefficient_in(const std::string& var) const;

    // Same polynomial over another variable list containing all used names.
    MultiPoly embed(const Vars& target) const;
    // Removes variables that do not occur.
    MultiPoly shrink() const;
    // Renames variables positionally; sizes must match.
    MultiPoly rename(const Vars& names) const;

    // Smallest positive integer making all coefficients integral.
    BigInt denominator_lcm() const;
    // Positive rational c such that this / c has coprime integer coefficients
    // with positive leading coefficient.
    BigRat content() const;
    MultiPoly primitive_part() const;
    MultiPoly monic() const;  // leading coefficient 1 (graded-lex)
    bool has_integer_coefficients() const;

    // Canonical text: graded-lex descending, explicit '*', e.g. "x^2*y - 3/2*z^3".
    std::string to_string() const;

private:
    void normalize();
    MultiPoly aligned(const Vars& target) const;

    Vars vars_;
    std::vector<Term> terms_;
};

Vars union_vars(const Vars& a, const Vars& b);
std::pair<MultiPoly, MultiPoly> unify(const MultiPoly& a, const MultiPoly& b);

// gcd in Q[vars] by recursive primitive remainder sequences; result is
// primitive with positive leading coefficient.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

// Sets X_i = 1 in a form over three variables. Chart index is 1-based; the
// result is over the two remaining variables in their original order.
MultiPoly dehomogenize(const MultiPoly& f, int chart);
// Inverse of dehomogenize for a given degree.
MultiPoly homogenize(const MultiPoly& f, const Vars& target, const std::string& hvar, int degree);

}  // namespace cw
