#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "cw/heights.hpp"
#include "cw/parse.hpp"
#include "cw/pipeline.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace cw;
using cwtest::Rng;

TEST_CASE("point heights match the product formula") {
    Rng rng(41);
    int checked = 0;
    for (int it = 0; it < 150; ++it) {
        std::size_t n = static_cast<std::size_t>(cwtest::uniform(rng, 1, 4));
        std::vector<BigRat> x;
        for (std::size_t k = 0; k < n; ++k)
            x.push_back(make_rat(cwtest::uniform(rng, -500, 500), cwtest::uniform(rng, 1, 300)));
        if (std::all_of(x.begin(), x.end(), [](const BigRat& c) { return c == 0; })) continue;
        if (n == 1) x.insert(x.begin(), BigRat(1));  // affine x -> (1 : x)
        HeightValue h = height_point(x);
        CHECK(BigRat(h.exact) == cwtest::product_formula_height(x));
        // Projective invariance.
        std::vector<BigRat> scaled;
        BigRat lambda = make_rat(cwtest::uniform(rng, 1, 50), cwtest::uniform(rng, 1, 50));
        for (const auto& c : x) scaled.push_back(c * lambda);
        CHECK(height_point(scaled).exact == h.exact);
        ++checked;
    }
    CHECK(checked >= 100);
}

TEST_CASE("rational and polynomial heights") {
    CHECK(height_rational(make_rat(3, 4)).exact == 4);
    CHECK(height_rational(make_rat(-7, 2)).exact == 7);
    Vars v = {"x", "y", "z"};
    CHECK(height_poly(parse_poly("y^2*z - x^3 + x*z^2", v)).exact == 1);
    CHECK(height_poly(parse_poly("1/2*x - 3/4*y", v)).exact == 3);
    MultiPoly a = parse_poly("6*x^2*y*z + 2*x*y^3 + 2*y*z^3", v);
    MultiPoly b = parse_poly("-8*x^4 - x^2*z^2 + 5*x*y^2*z + y^4 + z^4", v);
    MultiPoly c = parse_poly("8*y^3*z", v);
    CHECK(height_forms({a, b, c}).exact == 8);
    HeightValue h = make_height(1024);
    CHECK(h.log2 == LogFloat(10));
}

TEST_CASE("fiber bound matches the displayed formula") {
    const int M = 4, Nbar = 3;
    HeightValue one = make_height(1);
    LogFloat expected = LogFloat(40 * 64 * 27) * LogFloat(12) * (3 * log2_e() + log2(LogFloat(7)));
    LogFloat got = fiber_bound_log2(one, one, one, M, Nbar);
    CHECK(abs(got - expected) < pow(LogFloat(2), -90) * expected);

    // Doubling H(P) adds 40 M^3 Nbar^3 * Nbar in log2.
    LogFloat doubled = fiber_bound_log2(make_height(2), one, one, M, Nbar);
    CHECK(abs(doubled - got - LogFloat(40 * 64 * 27 * 3)) < pow(LogFloat(2), -80));
}

TEST_CASE("final S-based bound") {
    LogFloat got = final_bound_log2({2, 3}, 4);
    LogFloat expected = 3 * log2(LogFloat(6)) + 32 * log2_e();
    CHECK(abs(got - expected) < pow(LogFloat(2), -100));
    FinalBound fb = final_bound({2, 3}, 4);
    REQUIRE(fb.prime_power_part.has_value());
    CHECK(*fb.prime_power_part == 216);
}
