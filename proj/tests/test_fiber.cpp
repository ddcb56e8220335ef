#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cw/errors.hpp"
#include "cw/factor_int.hpp"
#include "cw/fiber.hpp"
#include "support.hpp"

using namespace cw;

namespace {

const char* kCubic = "y^2*z - x^3 + x*z^2";
const char* kPhi[3] = {"6*x^2*y*z + 2*x*y^3 + 2*y*z^3", "-8*x^4 - x^2*z^2 + 5*x*y^2*z + y^4 + z^4", "8*y^3*z"};

PlaneMorphism doubling() {
    PlaneCurve C = PlaneCurve::make(parse_plane_form(kCubic));
    return validate_morphism(C, C, {parse_plane_form(kPhi[0]), parse_plane_form(kPhi[1]), parse_plane_form(kPhi[2])});
}

// Same morphism with the target coordinates y and z exchanged.
PlaneMorphism doubling_swapped_target() {
    PlaneCurve C = PlaneCurve::make(parse_plane_form(kCubic));
    PlaneCurve T = PlaneCurve::make(parse_plane_form("z^2*y - x^3 + x*y^2"));
    return validate_morphism(C, T, {parse_plane_form(kPhi[0]), parse_plane_form(kPhi[2]), parse_plane_form(kPhi[1])});
}

std::vector<BigInt> primes_of(const BigInt& n) {
    std::vector<BigInt> out;
    for (const auto& f : factor_integer(n).factors) out.push_back(f.prime);
    return out;
}

bool contains(const std::vector<BigInt>& v, const BigInt& p) { return std::find(v.begin(), v.end(), p) != v.end(); }

VerificationContext context(const PlaneMorphism& phi, std::vector<BigInt> S) {
    VerificationContext ctx;
    ctx.S = std::move(S);
    ctx.m = phi.m;
    ctx.M = phi.M;
    ctx.Nbar = phi.source.N;
    ctx.H_F = height_poly(phi.target.F);
    ctx.H_Fbar = height_poly(phi.source.F);
    ctx.H_Phi = height_forms({phi.phi[0], phi.phi[1], phi.phi[2]});
    return ctx;
}

}  // namespace

TEST_CASE("ramified primes of quadratic fields") {
    auto a = ramified_primes_of_field({1, 0, 1});
    CHECK(a.ramified == std::vector<BigInt>{2});
    CHECK(a.undetermined.empty());
    auto b = ramified_primes_of_field({-1, -1, 1});
    CHECK(b.ramified == std::vector<BigInt>{5});
    CHECK(b.undetermined.empty());
    auto c = ramified_primes_of_field({-5, 0, 1});
    CHECK(c.ramified == std::vector<BigInt>{5});
    CHECK(c.undetermined == std::vector<BigInt>{2});
    CHECK(dedekind_p_maximal({1, 0, 1}, 2));
    CHECK_FALSE(dedekind_p_maximal({-5, 0, 1}, 2));
}

TEST_CASE("quadratic-field discriminant oracle") {
    // disc Q(sqrt d) = d if d = 1 mod 4, else 4d, for squarefree d.
    for (long d = -60; d <= 60; ++d) {
        if (d == 0 || d == 1) continue;
        bool squarefree = true;
        for (long k = 2; k * k <= std::labs(d); ++k)
            if (d % (k * k) == 0) squarefree = false;
        if (!squarefree) continue;
        long mod4 = ((d % 4) + 4) % 4;
        BigInt field_disc = mod4 == 1 ? BigInt(d) : BigInt(4 * d);
        std::vector<BigInt> truth = primes_of(field_disc);
        FieldRamification r = ramified_primes_of_field({BigInt(-d), 0, 1});
        CAPTURE(d);
        for (const auto& p : r.ramified) CHECK(contains(truth, p));
        for (const auto& p : truth) CHECK((contains(r.ramified, p) || contains(r.undetermined, p)));
        if (mod4 == 1) {
            FieldRamification s = ramified_primes_of_field({BigInt((d - 1) / 4) * -1, -1, 1});
            CHECK(s.ramified == truth);
            CHECK(s.undetermined.empty());
        }
    }
}

TEST_CASE("fiber over (0:0:1) is two copies of Q(i)") {
    PlaneMorphism phi = doubling();
    RationalPoint P = RationalPoint::make({0, 0, 1}, phi.target);
    FiberResult f = fiber_components(phi, P);
    CHECK(f.degree_sum == 4);
    REQUIRE(f.components.size() == 2);
    for (const auto& c : f.components) {
        CHECK(c.degree == 2);
        REQUIRE(c.field_discriminant.has_value());
        CHECK(*c.field_discriminant == -4);
        CHECK(c.ramified == std::vector<BigInt>{2});
        CHECK(c.undetermined.empty());
    }
}

TEST_CASE("fiber invariants over small points") {
    PlaneMorphism phi = doubling();
    auto points = scan_points(phi.target, 3);
    CHECK(points.size() >= 4);
    for (const auto& P : points) {
        CAPTURE(P.to_string());
        FiberResult f = fiber_components(phi, P);
        int sum = 0;
        for (const auto& c : f.components) {
            sum += c.degree;
            CHECK(c.disc_g != 0);
            for (const auto& p : c.ramified) CHECK(c.disc_g % p == 0);
            CHECK(c.degree == static_cast<int>(c.g.size()) - 1);
            CHECK(c.g.back() == 1);
        }
        CHECK(sum == phi.m);
    }
}

TEST_CASE("fibers agree across target charts") {
    PlaneMorphism a = doubling(), b = doubling_swapped_target();
    // (1:0:1) on the original target is (1:1:0) after the swap, so chart 1 is used instead of chart 3.
    FiberResult fa = fiber_components(a, RationalPoint::make({1, 0, 1}, a.target));
    FiberResult fb = fiber_components(b, RationalPoint::make({1, 1, 0}, b.target));
    CHECK(fa.chart == 3);
    CHECK(fb.chart == 1);
    CHECK(fibers_consistent(fa, fb));
    // A different fiber must not be reported as consistent.
    FiberResult fc = fiber_components(a, RationalPoint::make({0, 0, 1}, a.target));
    CHECK_FALSE(fibers_consistent(fa, fc));
}

TEST_CASE("verdicts: PASS, tampered FAIL, INCONCLUSIVE") {
    PlaneMorphism phi = doubling();
    RationalPoint P = RationalPoint::make({0, 0, 1}, phi.target);
    PointVerification ok = verify_point(phi, context(phi, {2, 3, 5}), P);
    CHECK(ok.verdict == Verdict::Pass);
    CHECK(ok.zero_coordinate);
    CHECK(ok.height_shortcut);
    for (const auto& c : ok.components) {
        CHECK(c.fiber_bound_holds);
        CHECK(c.final_bound_holds);
        CHECK_FALSE(c.disc_is_proxy);
    }

    PointVerification tampered = verify_point(phi, context(phi, {3, 5}), P);
    CHECK(tampered.verdict == Verdict::Fail);
    CHECK(tampered.components[0].missing == std::vector<BigInt>{2});

    // (1:0:-1) has a quartic component whose 2-part is undetermined.
    RationalPoint Q = RationalPoint::make({-1, 0, 1}, phi.target);
    CHECK(Q.a == std::array<BigInt, 3>{1, 0, -1});
    PointVerification inc = verify_point(phi, context(phi, {3}), Q);
    CHECK(inc.verdict == Verdict::Inconclusive);
    CHECK(aggregate({ok, inc}) == Verdict::Inconclusive);
    CHECK(aggregate({ok, tampered, inc}) == Verdict::Fail);
}

TEST_CASE("points off the curve are rejected with the residue") {
    PlaneMorphism phi = doubling();
    try {
        RationalPoint::make({1, 1, 1}, phi.target);
        FAIL("accepted a point off the curve");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("not on the curve: F = -1") != std::string::npos);
    }
    CHECK_THROWS_AS(RationalPoint::make({0, 0, 0}, phi.target), DomainError);
}

TEST_CASE("bound guard") {
    CHECK(bound_holds(LogFloat(2), LogFloat(3)));
    CHECK_FALSE(bound_holds(LogFloat(3), LogFloat(3)));
    CHECK(bound_holds(LogFloat(3), LogFloat(3) + pow(LogFloat(2), -19)));
}
