#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cw/factor_int.hpp"
#include "cw/factor_upoly.hpp"
#include "cw/geometry.hpp"
#include "cw/groebner.hpp"
#include "cw/heights.hpp"
#include "cw/pipeline.hpp"
#include "cw/upoly.hpp"

namespace cw {

// Projective point with coprime integer coordinates; the first nonzero
// coordinate is positive.
struct RationalPoint {
    std::array<BigInt, 3> a;

    // Normalizes and checks F(a) = 0 (DomainError with the residue otherwise).
    static RationalPoint make(const std::array<BigInt, 3>& coords, const PlaneCurve& C);
    std::string to_string() const;
    bool has_zero_coordinate() const;
};

struct FieldRamification {
    std::vector<BigInt> ramified;  // p | disc and p does not divide the index
    std::vector<BigInt> undetermined;  // p | disc, index not certified
};

// Whether Dedekind's criterion certifies that p does not divide the index
// [O_K : Z[theta]] for the monic integer polynomial g.
bool dedekind_p_maximal(const ZVec& g, std::uint64_t p);

// Primes dividing disc(g) for a monic irreducible integer g, split into
// certified-ramified and undetermined (Dedekind inconclusive or p >= 2^63).
FieldRamification ramified_primes_of_field(const ZVec& g, const FactorLimits& limits = {});

// Monic integer polynomial a^n g(T / a) with the least such a > 0.
ZVec monic_integer_form(const QPoly& g, BigInt* scale = nullptr);

struct FiberComponent {
    ZVec g;  // chosen generating polynomial (monic, integer)
    int degree = 0;
    BigInt disc_g;
    std::vector<BigInt> ramified;
    std::vector<BigInt> undetermined;
    std::optional<BigInt> field_discriminant;  // set when every prime is decided
    std::vector<ZVec> generators_tried;  // all generating polynomials used for the decision
    // Source point coordinates as polynomials in a root theta of factor_q.
    QPoly factor_q;  // the rational factor of the fiber polynomial
    std::array<QPoly, 3> source_point;
};

struct FiberOptions {
    GroebnerOptions groebner;
    FactorLimits factor;
    FactorOptions factor_poly;
    int max_shift = 3;  // source chart X3 + a X1 + b X2 with |a|, |b| <= max_shift
};

struct FiberResult {
    int chart = 3;  // target chart with p_i != 0
    BigInt shift_a, shift_b;  // source chart is X3 + a X1 + b X2 != 0
    BigInt c;  // primitive element gamma = s + c t
    QPoly fiber_polynomial;  // characteristic polynomial of gamma, degree m
    std::vector<FiberComponent> components;  // ordered by (degree, g)
    int degree_sum = 0;
};

FiberResult fiber_components(const PlaneMorphism& phi, const RationalPoint& P, const FiberOptions& options = {});

// Same multiset of fields: degrees, discriminant classes modulo squares and
// splitting patterns modulo several good primes.
bool fibers_consistent(const FiberResult& a, const FiberResult& b, int primes = 8);

enum class Verdict { Pass, Fail, Inconclusive };
std::string verdict_name(Verdict v);

// Everything verification needs from a pipeline report.
struct VerificationContext {
    std::vector<BigInt> S;
    bool S_complete = true;
    BigInt unfactored = 1;
    int m = 0, M = 0, Nbar = 0;
    HeightValue H_F, H_Fbar, H_Phi;

    static VerificationContext from_report(const RamificationReport& report);
    // (prod S * unfactored)^(m-1) e^(2 m^2), recomputed from S.
    LogFloat final_bound_log2() const;
};

struct ComponentCheck {
    FiberComponent component;
    std::vector<BigInt> missing;  // certified ramified primes outside S
    std::vector<BigInt> unresolved;  // undetermined primes outside S
    LogFloat disc_log2;
    bool disc_is_proxy = false;  // |disc g| used because the index is uncertified
    bool final_bound_holds = false;
    bool fiber_bound_holds = false;
    Verdict verdict = Verdict::Pass;
};

struct PointVerification {
    RationalPoint point;
    HeightValue H_P;
    bool zero_coordinate = false;
    bool height_shortcut = false;  // H(P) < 2 H(F), recorded for zero-coordinate points
    LogFloat fiber_log2;
    LogFloat final_log2;
    FiberResult fiber;
    std::vector<ComponentCheck> components;
    Verdict verdict = Verdict::Pass;
};

// A bound holds iff lhs + 2^-20 <= bound in log2.
bool bound_holds(const LogFloat& lhs_log2, const LogFloat& bound_log2);

PointVerification verify_point(const PlaneMorphism& phi, const VerificationContext& ctx, const RationalPoint& P,
                               const FiberOptions& options = {});

Verdict aggregate(const std::vector<PointVerification>& points);

// Points of C with max |a_i| <= bound, normalized and sorted.
std::vector<RationalPoint> scan_points(const PlaneCurve& C, long bound);

}  // namespace cw
