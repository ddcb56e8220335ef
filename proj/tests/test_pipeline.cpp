#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cw/errors.hpp"
#include "cw/pipeline.hpp"
#include "cw/report.hpp"
#include "support.hpp"

using namespace cw;

namespace {

PlaneMorphism doubling() {
    PlaneCurve C = PlaneCurve::make(parse_plane_form("y^2*z - x^3 + x*z^2"));
    return validate_morphism(C, C,
                             {parse_plane_form("6*x^2*y*z + 2*x*y^3 + 2*y*z^3"),
                              parse_plane_form("-8*x^4 - x^2*z^2 + 5*x*y^2*z + y^4 + z^4"),
                              parse_plane_form("8*y^3*z")});
}

PlaneMorphism isogeny() {
    return validate_morphism(PlaneCurve::make(parse_plane_form("y^2*z - x^3 - z^3")),
                             PlaneCurve::make(parse_plane_form("y^2*z - x^3 + 27*z^3")),
                             {parse_plane_form("x*y^2 + 3*x*z^2"), parse_plane_form("y^3 - 9*y*z^2"),
                              parse_plane_form("y^2*z - z^3")});
}

// The isogeny pipeline is shared by several cases.
const RamificationReport& isogeny_report() {
    static const RamificationReport rep = [] {
        PipelineOptions opt;
        opt.jobs = 3;
        return run_pipeline(isogeny(), opt);
    }();
    return rep;
}

}  // namespace

TEST_CASE("elimination relation respects the degree bounds on the doubling chart 3") {
    PlaneMorphism phi = doubling();
    EliminationRelation r = elimination_relation(phi, 3, 0);
    CHECK(r.vanishes_on_source);
    CHECK(r.deg_X <= 9);
    CHECK(r.deg_U <= 72);
    CHECK_FALSE(r.g0.is_zero());
}

TEST_CASE("integralizer ladder rungs divide monic g0") {
    cwtest::Rng rng(61);
    for (int it = 0; it < 30; ++it) {
        std::vector<BigInt> c(static_cast<std::size_t>(cwtest::uniform(rng, 2, 6)));
        for (auto& v : c) v = cwtest::uniform(rng, -4, 4);
        c.back() = cwtest::uniform(rng, 1, 3);
        QPoly base = QPoly::from_integers(c);
        QPoly g0 = base * base * QPoly::from_integers({1, 1});
        QPoly poles = QPoly::from_integers({1, 1});
        auto ladder = integralizer_ladder(g0, poles, 3);
        REQUIRE_FALSE(ladder.empty());
        CHECK(ladder.front() == QPoly::constant(1));
        CHECK(ladder.back() == g0.monic());
        for (std::size_t k = 0; k < ladder.size(); ++k) {
            CHECK((g0 % ladder[k]).is_zero());
            for (std::size_t l = 0; l < k; ++l) CHECK(ladder[k] != ladder[l]);
        }
    }
}

TEST_CASE("isogeny pipeline: certificates, minimal polynomials and degree bounds") {
    const RamificationReport& rep = isogeny_report();
    PlaneMorphism phi = isogeny();
    REQUIRE(rep.charts.size() == 3);
    CHECK(rep.m == 3);
    for (const auto& c : rep.charts) {
        CAPTURE(c.i);
        CHECK(c.identity_verified);
        CHECK(c.certificate.A > 0);
        CHECK(verify_minimal_polynomial(phi, c.i, c.rho, c.P.f, c.P.P));
        PlaneMorphism psi = apply_change(CoordinateChange::make(c.i, c.s, c.r), phi);
        CHECK(verify_minimal_polynomial(psi, c.i, c.tau, c.Pi.f, c.Pi.P));
        CHECK(c.relation.deg_X <= 9);
        CHECK(c.relation.deg_U <= 54);
        for (const auto& d : c.degree_checks) CHECK_MESSAGE(d.holds(), d.name << " " << d.value << " vs " << d.bound);

        // Recompute the identity from scratch.
        const unsigned long ex = 2UL * rep.m - 1;
        MultiPoly sum = c.certificate.cofactors[0] * (c.D * BigRat(pow(c.a, ex))) +
                        c.certificate.cofactors[1] * (c.Sigma * BigRat(pow(c.b, ex))) +
                        c.certificate.cofactors[2] * (c.F_i * BigRat(c.c));
        CHECK(sum == MultiPoly::constant(sum.vars(), BigRat(c.certificate.A)));
    }
    std::vector<BigInt> primes;
    for (const auto& e : rep.S) primes.push_back(e.prime);
    // Every prime dividing some A_i is in S, and nothing else.
    for (const auto& c : rep.charts) {
        BigInt rest = c.certificate.A;
        for (const auto& p : primes)
            while (rest % p == 0) rest /= p;
        CHECK(rest == 1);
    }
    CHECK(rep.S_complete);
}

TEST_CASE("pipeline output does not depend on the number of jobs") {
    PipelineOptions one;
    one.jobs = 1;
    RamificationReport seq = run_pipeline(isogeny(), one);
    CHECK(canonical_dump(run_json(seq)) == canonical_dump(run_json(isogeny_report())));
}

TEST_CASE("a one-pair budget fails with ResourceError") {
    PipelineOptions opt;
    opt.groebner.max_spairs = 1;
    CHECK_THROWS_AS(run_pipeline(isogeny(), opt), ResourceError);
}

TEST_CASE("tiny windows fail with WindowExhausted") {
    PipelineOptions opt;
    opt.tau_window = 0;
    opt.s_window = 0;
    // On doubling chart 2 the pencil with r = 0 cannot work, and r = 0 is all a zero window allows.
    CHECK_THROWS_AS(run_chart(doubling(), 2, opt, std::nullopt), WindowExhausted);
}
