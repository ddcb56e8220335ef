#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cw/errors.hpp"
#include "cw/geometry.hpp"
#include "cw/pipeline.hpp"
#include "support.hpp"

using namespace cw;

namespace {

const char* kCubic = "y^2*z - x^3 + x*z^2";
const char* kPhi[3] = {"6*x^2*y*z + 2*x*y^3 + 2*y*z^3", "-8*x^4 - x^2*z^2 + 5*x*y^2*z + y^4 + z^4", "8*y^3*z"};

std::array<MultiPoly, 3> doubling_forms() {
    return {parse_plane_form(kPhi[0]), parse_plane_form(kPhi[1]), parse_plane_form(kPhi[2])};
}

const HypothesisCheck& find(const std::vector<HypothesisCheck>& v, const std::string& name) {
    for (const auto& h : v)
        if (h.name == name) return h;
    throw DomainError("missing hypothesis " + name);
}

}  // namespace

TEST_CASE("doubling morphism is valid and unramified") {
    PlaneCurve C = PlaneCurve::make(parse_plane_form(kCubic));
    CHECK(is_nonsingular(C));
    PlaneMorphism phi = validate_morphism(C, C, doubling_forms());
    CHECK(phi.M == 4);
    CHECK(phi.m == 4);
    CHECK(is_unramified(phi));
    CHECK(line_section_irreducible(C, 1));
    auto checks = check_hypotheses(C.F, C.F, doubling_forms());
    for (const auto& h : checks) CHECK_MESSAGE(h.status == "pass", h.name << ": " << h.detail);
}

TEST_CASE("composition lies in the source ideal on every chart") {
    PlaneCurve C = PlaneCurve::make(parse_plane_form(kCubic));
    auto forms = doubling_forms();
    const Vars& v = plane_vars();
    MultiPoly comp = C.F.substitute({{"x", forms[0]}, {"y", forms[1]}, {"z", forms[2]}}, v);
    for (int i = 1; i <= 3; ++i) {
        MultiPoly chart = dehomogenize(comp, i);
        IdealBasis b = buchberger({C.chart_equation(i)}, MonomialOrder::grevlex());
        CHECK(normal_form(chart, b).is_zero());
    }
}

TEST_CASE("hypothesis failures are reported individually") {
    auto cusp = check_hypotheses(parse_plane_form("y^2*z - x^3"), parse_plane_form(kCubic), doubling_forms());
    CHECK(find(cusp, "target_nonsingular").status == "fail");

    PlaneCurve fermat = PlaneCurve::make(parse_plane_form("x^3 + y^3 + z^3"));
    std::array<MultiPoly, 3> squares = {parse_plane_form("x^2"), parse_plane_form("y^2"), parse_plane_form("z^2")};
    CHECK_THROWS_AS(validate_morphism(fermat, fermat, squares), ValidationError);

    std::array<MultiPoly, 3> unequal = {parse_plane_form("x^2"), parse_plane_form("y^2"), parse_plane_form("z^3")};
    auto bad = check_hypotheses(fermat.F, fermat.F, unequal);
    CHECK(find(bad, "forms_homogeneous_equal_degree").status == "fail");

    std::array<MultiPoly, 3> cubes = {parse_plane_form("x^3"), parse_plane_form("y^3"), parse_plane_form("z^3")};
    auto ramified = check_hypotheses(fermat.F, parse_plane_form("x^4 + y^4 + z^4"), cubes);
    const HypothesisCheck& u = find(ramified, "unramified");
    CHECK(u.status == "fail");
    CHECK(u.detail.find("genus condition") != std::string::npos);
    CHECK(u.detail.find("4 != 0") != std::string::npos);
}

TEST_CASE("genus equality") {
    CHECK(genus_equality(3, 3, 4));
    CHECK_FALSE(genus_equality(3, 4, 4));
    CHECK(genus_equality(4, 4, 1));
    CHECK(plane_genus(4) == 3);
}

TEST_CASE("coordinate changes are unimodular and invertible") {
    cwtest::Rng rng(9);
    const Vars& v = plane_vars();
    for (int it = 0; it < 40; ++it) {
        int i = static_cast<int>(cwtest::uniform(rng, 1, 3));
        CoordinateChange chi = CoordinateChange::make(i, cwtest::uniform(rng, -5, 5), cwtest::uniform(rng, -5, 5));
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                BigInt acc = 0;
                for (int k = 0; k < 3; ++k) acc += chi.matrix[r][k] * chi.inverse[k][c];
                CHECK(acc == (r == c ? 1 : 0));
            }
        MultiPoly G = cwtest::random_poly(rng, v, 4, 6);
        CHECK(chi.push(chi.pull(G)) == G);
        // The line X_k + s X_j + r X_i = 0 becomes Y_i = 0.
        ChartIndices ix = chart_indices(i);
        MultiPoly line = MultiPoly::variable(v, v[ix.k - 1]) + MultiPoly::variable(v, v[ix.j - 1]) * BigRat(chi.s) +
                         MultiPoly::variable(v, v[ix.i - 1]) * BigRat(chi.r);
        CHECK(chi.pull(line) == MultiPoly::variable(v, v[ix.i - 1]));
    }
    PlaneCurve C = PlaneCurve::make(parse_plane_form(kCubic));
    PlaneMorphism phi = validate_morphism(C, C, doubling_forms());
    PlaneMorphism psi = apply_change(CoordinateChange::make(3, 1, 0), phi);
    CHECK(is_nonsingular(psi.source));
    CHECK(psi.m == 4);
}

TEST_CASE("line condition on the Fermat cubic excludes rho = 1 in chart 3") {
    PlaneMorphism phi;
    phi.source = PlaneCurve::make(parse_plane_form("x^3 + y^3 + z^3"));
    phi.target = phi.source;
    CHECK(rho_avoids_line_points(phi, 3, 0));
    CHECK_FALSE(rho_avoids_line_points(phi, 3, 1));
    CHECK(rho_avoids_line_points(phi, 3, -1));
    CHECK(rho_avoids_line_points(phi, 3, 2));
}
