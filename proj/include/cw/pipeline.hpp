#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cw/factor_int.hpp"
#include "cw/geometry.hpp"
#include "cw/groebner.hpp"
#include "cw/heights.hpp"
#include "cw/resultant.hpp"
#include "cw/upoly.hpp"

namespace cw {

// The morphism restricted to chart i: source and target both use X_i = 1 and
// the coordinates (X_j, X_k), named after the plane variables.
struct ChartData {
    int i = 3, j = 1, k = 2;
    std::string xj, xk;
    MultiPoly source_chart;  // Fbar(X_i = 1)
    MultiPoly target_chart;  // F_i
    MultiPoly phi_i, phi_j, phi_k;  // forms with X_i = 1
};
ChartData chart_data(const PlaneMorphism& phi, int i);

// rho is admissible for the line condition iff b(1, -rho) != 0 where b is
// Fbar restricted to X_i = 0 (no point of V(X_i) has z_k + rho z_j = 0).
bool rho_avoids_line_points(const PlaneMorphism& phi, int i, const BigInt& rho);

// G(X, U) = Res_V(E, Fbar_1) with Fbar_1 = Fbar at (X_j, X_k) = (V, U - rho V),
// X_i = 1, and E = F with X_j -> X phi_i, X_k -> phi_k, X_i -> phi_i.
struct EliminationRelation {
    MultiPoly G;  // over {X, U}
    int deg_X = 0;
    int deg_U = 0;
    QPoly g0;  // leading U-coefficient, in X
    bool vanishes_on_source = false;  // G(phi_j/phi_i, u) reduces to 0
};
EliminationRelation elimination_relation(const PlaneMorphism& phi, int i, const BigInt& rho);

// Squarefree polynomial in X = x_j whose roots are the x_j-coordinates of the
// images of source points with X_i = 0 that land in chart i: the places where
// u = x_k + rho x_j can have poles over the target chart.
QPoly pole_locus(const PlaneMorphism& phi, int i);

// Candidate integralizers: 1, then gcd(g0, poles^k) for k = 1..max_power,
// then gcd(g0, rad(g0)^k) for k = 1, 2, ... ending with monic(g0). Every
// entry divides monic(g0); duplicates are dropped.
std::vector<QPoly> integralizer_ladder(const QPoly& g0, const QPoly& poles, int max_power);

struct MinimalPolynomialResult {
    bool ok = false;
    std::string failure;
    QPoly f;  // integralizer actually used
    std::size_t rung = 0;  // index into the ladder
    int degree_cap = 0;  // p_l searched with degree <= l * degree_cap
    MultiPoly P;  // over {xj, xk, U}, monic in U
    int deg_U = 0;
    int max_coeff_degree = 0;
    std::size_t unknowns = 0;
    std::size_t equations = 0;
    bool verified = false;
};

// Monic P of U-degree m with P(phi_j/phi_i, phi_k/phi_i, u f(phi_j/phi_i)) = 0
// on the source, u = x_k + rho x_j, found by solving for the coefficients of
// p_l over the standard monomials of the target chart. An underdetermined
// system means u has degree < m (rho rejected); an inconsistent one moves to
// the next integralizer.
MinimalPolynomialResult minimal_polynomial_chart(const PlaneMorphism& phi, int i, const BigInt& rho,
                                                 const std::vector<QPoly>& ladder);

// Independent check: substitutes the forms into P and reduces modulo the
// source chart equation.
bool verify_minimal_polynomial(const PlaneMorphism& phi, int i, const BigInt& rho, const QPoly& f,
                               const MultiPoly& P);

// U-discriminant as a polynomial in (xj, xk).
MultiPoly chart_discriminant(const MultiPoly& P);

// Whether source points on the line X_k + s X_j + r X_i = 0 map into chart i
// at a zero of D (or onto `avoid`, when given). For fixed r every line passes
// through q_r = (X_i, X_j, X_k) = (1, 0, -r), which is reported separately
// because no choice of s can move it.
struct LineCheck {
    bool pencil_meets = false;  // some point other than q_r is bad
    bool base_point_bad = false;  // q_r lies on the source and is bad
};
LineCheck line_meets_bad_set(const PlaneMorphism& phi, int i, const BigInt& s, const BigInt& r, const MultiPoly& D,
                             const std::optional<std::array<BigInt, 3>>& avoid);

struct PipelineOptions {
    std::string mode = "uniform";  // or "per-point"
    unsigned jobs = 1;
    std::uint64_t seed = 20240917;
    long window_slack = 0;
    std::optional<long> rho_window;  // overrides the computed window
    std::optional<long> s_window;
    std::optional<long> tau_window;
    GroebnerOptions groebner;
    FactorLimits factor;
};

struct CandidateLog {
    std::string kind;  // "rho", "s", "tau"
    BigInt value;
    std::string verdict;
};

struct DegreeCheck {
    std::string name;
    long value = 0;
    long bound = 0;
    bool strict = false;  // value < bound rather than <=
    bool holds() const { return strict ? value < bound : value <= bound; }
};

struct ChartResult {
    int i = 3, j = 1, k = 2;
    std::string xj, xk;
    BigInt rho, s, r, tau;  // r = 0 unless the pencil base point e_i is bad
    long rho_window = 0, s_window = 0, tau_window = 0;
    EliminationRelation relation;
    EliminationRelation relation_twisted;
    MinimalPolynomialResult P;
    MinimalPolynomialResult Pi;
    MultiPoly D, Sigma, F_i;
    BigInt a, b, c;
    UnitCertificate certificate;
    bool identity_verified = false;
    std::vector<DegreeCheck> degree_checks;
    std::vector<CandidateLog> candidates;
    std::vector<std::string> warnings;
};

struct PrimeEntry {
    BigInt prime;
    std::vector<int> charts;  // charts whose A_i it divides
    bool certified = true;
};

struct FinalBound {
    LogFloat log2;
    std::optional<BigInt> prime_power_part;  // (prod p)^(m-1), when small
};

struct StructuralBound {
    BigInt exponent_coefficient;  // m^3 M^7 N^30 Nbar^13
    LogFloat bracket_log2;  // 6 N^2 Nbar log2 H(F) + Nbar log2 H(Phi) + M log2 H(Fbar)
    LogFloat E_log2;  // coefficient * bracket
    long omega = 1;
};

struct RamificationReport {
    int N = 0, Nbar = 0, M = 0, m = 0;
    HeightValue H_F, H_Fbar, H_Phi;
    std::string mode;
    std::optional<std::array<BigInt, 3>> point;  // per-point mode
    std::vector<ChartResult> charts;
    std::vector<PrimeEntry> S;
    bool S_complete = true;
    BigInt unfactored = 1;  // product of cofactors that could not be factored
    FinalBound final_bound;
    StructuralBound structural;
};

LogFloat final_bound_log2(const std::vector<BigInt>& S, int m);
FinalBound final_bound(const std::vector<BigInt>& S, int m);

// log2 of ((e^3 (M + Nbar))^{M Nbar} (H(P) H(Phi))^{Nbar} H(Fbar)^M)^{40 M^3 Nbar^3}, d = 1.
LogFloat fiber_bound_log2(const HeightValue& H_P, const HeightValue& H_Phi, const HeightValue& H_Fbar, int M,
                           int Nbar);

StructuralBound structural_bound(const HeightValue& H_F, const HeightValue& H_Phi,
                                          const HeightValue& H_Fbar, int N, int Nbar, int M, int m,
                                          long omega = 1);

// Prime divisors of |A_1 A_2 A_3| with provenance.
std::vector<PrimeEntry> ramified_prime_set(const std::vector<BigInt>& A, const FactorLimits& limits,
                                           bool* complete, BigInt* unfactored);

ChartResult run_chart(const PlaneMorphism& phi, int i, const PipelineOptions& options,
                      const std::optional<std::array<BigInt, 3>>& point);

RamificationReport run_pipeline(const PlaneMorphism& phi, const PipelineOptions& options,
                                const std::optional<std::array<BigInt, 3>>& point = std::nullopt);

}  // namespace cw
