#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cw/groebner.hpp"
#include "cw/multipoly.hpp"

namespace cw {

// Homogeneous coordinates X1, X2, X3 are always named x, y, z.
const Vars& plane_vars();

// Parses a form in x, y, z; x1, x2, x3 are accepted as aliases.
MultiPoly parse_plane_form(const std::string& text);

struct ChartIndices {
    int i, j, k;  // 1-based, j < k
};
ChartIndices chart_indices(int i);

struct PlaneCurve {
    MultiPoly F;  // primitive, integer coefficients
    int N = 0;

    // Normalizes to the primitive integer representative with positive
    // leading coefficient. Throws DomainError for non-forms.
    static PlaneCurve make(const MultiPoly& F);
    // Affine equation on the chart X_i = 1, over the two remaining variables.
    MultiPoly chart_equation(int i) const;
};

bool is_nonsingular(const PlaneCurve& C, const GroebnerOptions& options = {});

// Necessary test for irreducibility over Q: some restriction to a line
// (x, y, z) = P + t Q with small integer P, Q is irreducible of degree N.
// Returns false when no tried line gives an irreducible section.
bool line_section_irreducible(const PlaneCurve& C, std::uint64_t seed, int tries = 8);

int plane_genus(int degree);

struct PlaneMorphism {
    PlaneCurve source;  // C-bar, degree N-bar
    PlaneCurve target;  // C, degree N
    std::array<MultiPoly, 3> phi;
    int M = 0;
    int m = 0;  // M * N-bar / N
};

// Riemann-Hurwitz equality for smooth plane curves:
// N-bar(N-bar - 3) == m N (N - 3).
bool genus_equality(int N, int Nbar, int m);
bool is_unramified(const PlaneMorphism& phi);

// Checks every morphism invariant and throws ValidationError on failure.
PlaneMorphism validate_morphism(const PlaneCurve& source, const PlaneCurve& target,
                                const std::array<MultiPoly, 3>& forms, const GroebnerOptions& options = {});

struct HypothesisCheck {
    std::string name;
    std::string status;  // "pass", "fail", "skipped"
    std::string detail;
};

// All hypotheses required by the construction, each evaluated independently so that
// one failure does not hide the others.
std::vector<HypothesisCheck> check_hypotheses(const MultiPoly& F, const MultiPoly& Fbar,
                                              const std::array<MultiPoly, 3>& forms,
                                              const GroebnerOptions& options = {});

// Source coordinate change attached to chart i (1-based indices).
struct CoordinateChange {
    int i = 3;
    BigInt s = 0;
    BigInt r = 0;
    std::array<std::array<BigInt, 3>, 3> matrix;  // Y = matrix * X
    std::array<std::array<BigInt, 3>, 3> inverse;  // X = inverse * Y

    // Y_i = X_k + s X_j + r X_i, Y_j = X_i, Y_k = X_j. Unimodular, so the
    // line X_k + s X_j + r X_i = 0 becomes Y_i = 0.
    static CoordinateChange make(int i, const BigInt& s, const BigInt& r = 0);
    // G o chi^{-1}: the polynomial in Y-coordinates (named x, y, z again).
    MultiPoly pull(const MultiPoly& G) const;
    // G o chi.
    MultiPoly push(const MultiPoly& G) const;
};

// Transformed source curve F-bar o chi^{-1} and forms phi o chi^{-1}.
PlaneMorphism apply_change(const CoordinateChange& chi, const PlaneMorphism& phi);

}  // namespace cw
