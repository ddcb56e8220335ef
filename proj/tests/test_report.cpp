#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cw/errors.hpp"
#include "cw/report.hpp"

using namespace cw;

namespace {

std::string fixture(const std::string& name) { return std::string(CW_FIXTURE_DIR) + "/" + name; }

Json minimal_problem() {
    return Json::parse(R"({
      "F": "y^2*z - x^3 + 27*z^3",
      "Fbar": "y^2*z - x^3 - z^3",
      "phi": ["x*y^2 + 3*x*z^2", "y^3 - 9*y*z^2", "y^2*z - z^3"]
    })");
}

}  // namespace

TEST_CASE("sha256 test vector") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("fixtures parse and hash stably") {
    for (const char* name : {"doubling.json", "isogeny.json"}) {
        Problem p = load_problem(fixture(name));
        CHECK(problem_hash(p).size() == 64);
        Problem q = parse_problem(canonical_input(p));
        CHECK(problem_hash(q) == problem_hash(p));
        CHECK(q.F == p.F);
        for (int l = 0; l < 3; ++l) CHECK(q.phi[l] == p.phi[l]);
    }
    Problem d = load_problem(fixture("doubling.json"));
    CHECK(d.points.size() == 4);
    CHECK(d.absolutely_irreducible.value_or(false));
}

TEST_CASE("hash ignores spelling but not content") {
    Json a = minimal_problem();
    Json b = a;
    b["F"] = "x3^2*0 + x2^2*x3 - x1^3 + 27*x3^3";
    b["points"] = Json::array({Json::array({3, 0, 1})});
    CHECK(problem_hash(parse_problem(a)) == problem_hash(parse_problem(b)));
    Json c = a;
    c["F"] = "y^2*z - x^3 + 26*z^3";
    CHECK(problem_hash(parse_problem(a)) != problem_hash(parse_problem(c)));
}

TEST_CASE("malformed problems are rejected") {
    Json a = minimal_problem();
    a["phi"] = Json::array({"x", "y"});
    CHECK_THROWS_AS(parse_problem(a), DomainError);
    Json b = minimal_problem();
    b["F"] = "y^2*z - x^^3";
    CHECK_THROWS_AS(parse_problem(b), ParseError);
    Json c = minimal_problem();
    c["colour"] = "red";
    CHECK_THROWS_AS(parse_problem(c), DomainError);
    Json d = minimal_problem();
    d["points"] = Json::array({Json::array({"1", "2x", "3"})});
    CHECK_THROWS_AS(parse_problem(d), DomainError);
    Json e = minimal_problem();
    e["config"] = {{"mode", "sometimes"}};
    CHECK_THROWS_AS(parse_problem(e), DomainError);
}

TEST_CASE("integers travel as decimal strings") {
    BigInt big("123456789012345678901234567890");
    CHECK(int_json(big) == Json("123456789012345678901234567890"));
    CHECK(json_int(int_json(big)) == big);
    CHECK(json_int(Json(-42)) == -42);
    CHECK_THROWS_AS(json_int(Json(1.5)), DomainError);
}

TEST_CASE("config overrides and command-line precedence") {
    Json a = minimal_problem();
    a["config"] = {{"mode", "per-point"}, {"seed", "7"}, {"max_spairs", 500}, {"tau_window", 4}};
    Problem p = parse_problem(a);
    PipelineOptions o = effective_options(p, {});
    CHECK(o.mode == "per-point");
    CHECK(o.seed == 7);
    CHECK(o.groebner.max_spairs == 500);
    CHECK(o.tau_window.value_or(-1) == 4);
    RunOverrides cli;
    cli.mode = "uniform";
    cli.seed = 9;
    PipelineOptions o2 = effective_options(p, cli);
    CHECK(o2.mode == "uniform");
    CHECK(o2.seed == 9);
}

TEST_CASE("verification context is read back from the report") {
    Json report = {{"format", kReportFormat},
                   {"geometry", {{"m", "4"}, {"M", "4"}, {"Nbar", "3"}}},
                   {"heights",
                    {{"H_F", {{"exact", "1"}}}, {"H_Fbar", {{"exact", "1"}}}, {"H_Phi", {{"exact", "8"}}}}},
                   {"runs",
                    Json::array({{{"point", nullptr},
                                  {"S", Json::array({{{"prime", "3"}}, {{"prime", "2"}}})},
                                  {"S_complete", true},
                                  {"unfactored", "1"}}})}};
    VerificationContext ctx = context_from_report(report, std::nullopt);
    CHECK(ctx.S == std::vector<BigInt>{2, 3});
    CHECK(ctx.m == 4);
    CHECK(ctx.H_Phi.exact == 8);
    CHECK(abs(ctx.final_bound_log2() - final_bound_log2({2, 3}, 4)) < pow(LogFloat(2), -100));

    Json per_point = report;
    per_point["runs"][0]["point"] = Json::array({"0", "0", "1"});
    CHECK_NOTHROW(context_from_report(per_point, std::array<BigInt, 3>{0, 0, 1}));
    CHECK_THROWS_AS(context_from_report(per_point, std::array<BigInt, 3>{1, 0, 1}), DomainError);

    Json broken = report;
    broken["format"] = "something-else";
    CHECK_THROWS_AS(context_from_report(broken, std::nullopt), DomainError);
}
