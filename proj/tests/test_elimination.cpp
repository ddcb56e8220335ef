#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cw/errors.hpp"
#include "cw/groebner.hpp"
#include "cw/parse.hpp"
#include "cw/resultant.hpp"
#include "cw/upoly.hpp"
#include "support.hpp"

using namespace cw;
using cwtest::Rng;

namespace {

MultiPoly with_positive_degree(Rng& rng, const Vars& v, const std::string& var, int max_degree, int terms) {
    for (;;) {
        MultiPoly p = cwtest::random_poly(rng, v, max_degree, terms);
        if (p.degree_in(var) > 0) return p;
    }
}

}  // namespace

TEST_CASE("resultant methods agree with evaluation/interpolation") {
    Rng rng(101);
    int instances = 0;
    for (int it = 0; it < 60; ++it) {
        Vars v = it % 2 ? Vars{"x", "y"} : Vars{"x", "y", "z"};
        MultiPoly f = with_positive_degree(rng, v, "x", 4, 5);
        MultiPoly g = with_positive_degree(rng, v, "x", 4, 5);
        MultiPoly oracle = resultant_interpolation(f, g, "x");
        CHECK(resultant(f, g, "x") == oracle);
        CHECK(resultant_subresultant(f, g, "x") == oracle);
        CHECK(resultant_bareiss(f, g, "x") == oracle);
        ++instances;
    }
    CHECK(instances >= 50);
}

TEST_CASE("resultant specializes with the remaining variables") {
    Rng rng(7);
    Vars v = {"x", "y"};
    for (int it = 0; it < 30; ++it) {
        MultiPoly f = cwtest::random_monic_in_first(rng, v, 3, 3, 5);
        MultiPoly g = cwtest::random_monic_in_first(rng, v, 2, 3, 5);
        MultiPoly r = resultant(f, g, "x");
        BigRat y0 = cwtest::uniform(rng, -6, 6);
        QPoly fs = QPoly::from_multipoly(f.evaluate_partial({{"y", y0}}).shrink().embed({"x"}), "x");
        QPoly gs = QPoly::from_multipoly(g.evaluate_partial({{"y", y0}}).shrink().embed({"x"}), "x");
        CHECK(r.evaluate_partial({{"y", y0}}).constant_term() == cw::resultant(fs, gs));
    }
}

TEST_CASE("discriminant of the cubic and of a quadratic") {
    Vars v = {"x", "a", "b"};
    MultiPoly cubic = parse_poly("x^3 + a*x + b", v);
    CHECK(discriminant(cubic, "x") == parse_poly("-4*a^3 - 27*b^2", v));
    CHECK(discriminant(parse_poly("x^2 + 1", {"x"}), "x") == MultiPoly::constant({"x"}, -4));
}

TEST_CASE("Groebner elimination agrees with the resultant") {
    Rng rng(202);
    int instances = 0;
    Vars v = {"x", "y"};
    for (int it = 0; it < 24; ++it) {
        // Monic in x, so the projection of V(f, g) is exactly V(Res_x).
        MultiPoly f = cwtest::random_monic_in_first(rng, v, 2, 3, 4);
        MultiPoly g = cwtest::random_monic_in_first(rng, v, 2, 3, 4);
        MultiPoly res = resultant(f, g, "x");
        IdealBasis e = eliminate({f, g}, {"x"});
        if (res.is_zero()) {
            CHECK(e.generators.empty());
            continue;
        }
        REQUIRE(e.generators.size() == 1);
        QPoly h = QPoly::from_multipoly(e.generators[0].embed({"y"}), "y");
        QPoly r = QPoly::from_multipoly(res.embed({"y"}), "y");
        CHECK((r % h).is_zero());
        CHECK(squarefree_part(r) == squarefree_part(h));
        IdealBasis full = buchberger({f, g}, MonomialOrder::grevlex());
        CHECK(ideal_contains(full, res.embed(v)));
        ++instances;
    }
    CHECK(instances >= 20);
}

TEST_CASE("normal form and ideal membership") {
    Vars v = {"x", "y"};
    MultiPoly f = parse_poly("x^2 + y^2 - 5", v), g = parse_poly("x*y - 2", v);
    IdealBasis b = buchberger({f, g}, MonomialOrder::lex());
    CHECK(ideal_contains(b, f * parse_poly("x - 3*y", v) + g * parse_poly("y^3", v)));
    CHECK_FALSE(ideal_contains(b, parse_poly("x + y", v)));
    CHECK(quotient_dimension(b) == 4);
}

TEST_CASE("common zeros and unit certificates") {
    Vars v = {"x", "y"};
    CHECK_FALSE(has_common_zero({parse_poly("x", v), parse_poly("x - 1", v)}));
    CHECK(has_common_zero({parse_poly("x^2 + 1", v), parse_poly("y", v)}));

    std::vector<MultiPoly> gens = {parse_poly("x^2 + y^2 - 5", v), parse_poly("x*y - 2", v), parse_poly("x + y - 7", v)};
    UnitCertificate c = unit_ideal_certificate(gens);
    REQUIRE(c.found);
    MultiPoly sum(v);
    for (std::size_t s = 0; s < gens.size(); ++s) sum += c.cofactors[s] * gens[s];
    CHECK(sum == MultiPoly::constant(v, BigRat(c.A)));
    for (const auto& q : c.cofactors) CHECK(q.has_integer_coefficients());

    UnitCertificate d = unit_certificate_by_inverse({gens[0], gens[1]}, gens[2]);
    REQUIRE(d.found);
    MultiPoly sum2(v);
    for (std::size_t s = 0; s < gens.size(); ++s) sum2 += d.cofactors[s] * gens[s];
    CHECK(sum2 == MultiPoly::constant(v, BigRat(d.A)));

    // x + y - 3 vanishes at (1, 2), a common zero of the base.
    CHECK_FALSE(unit_certificate_by_inverse({gens[0], gens[1]}, parse_poly("x + y - 3", v)).found);
    CHECK_THROWS_AS(unit_certificate_by_inverse({gens[1]}, gens[2]), DomainError);
}

TEST_CASE("certificate by inverse on random zero-dimensional systems") {
    Rng rng(303);
    Vars v = {"x", "y"};
    int done = 0;
    for (int it = 0; it < 30 && done < 15; ++it) {
        MultiPoly f = cwtest::random_monic_in_first(rng, v, 2, 2, 4);
        MultiPoly g = cwtest::random_monic_in_first(rng, {"y", "x"}, 2, 2, 4).embed(v);
        MultiPoly h = cwtest::random_poly(rng, v, 2, 4);
        if (h.is_zero()) continue;
        UnitCertificate c = unit_certificate_by_inverse({f, g}, h);
        CHECK(c.found == !has_common_zero({f, g, h}));
        if (!c.found) continue;
        MultiPoly sum = c.cofactors[0] * f + c.cofactors[1] * g + c.cofactors[2] * h;
        CHECK(sum == MultiPoly::constant(sum.vars(), BigRat(c.A)));
        ++done;
    }
    CHECK(done >= 5);
}

TEST_CASE("budgets raise ResourceError instead of truncating") {
    Vars v = {"x", "y", "z"};
    GroebnerOptions tiny;
    tiny.max_spairs = 1;
    std::vector<MultiPoly> gens = {parse_poly("x*y + z^2 + 1", v), parse_poly("y*z + x^2 + 2", v), parse_poly("x*z + y^2 + 3", v)};
    CHECK_THROWS_AS(buchberger(gens, MonomialOrder::grevlex(), tiny), ResourceError);
}
