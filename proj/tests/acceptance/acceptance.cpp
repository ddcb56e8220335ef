// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
//
// Pinned tolerances: bound inequalities are checked on log2 values as
// lhs + 2^-20 <= bound; certificate identities and oracle comparisons are
// exact (zero tolerance); runtime limit for criterion 1 is 600 s.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "cw/errors.hpp"
#include "cw/fiber.hpp"
#include "cw/groebner.hpp"
#include "cw/parse.hpp"
#include "cw/report.hpp"
#include "cw/resultant.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace cw;

namespace {

constexpr double kRuntimeLimitSeconds = 600.0;

std::string fixture(const std::string& name) { return std::string(CW_FIXTURE_DIR) + "/" + name; }

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
    void require(bool cond, const std::string& why) {
        if (!cond) {
            if (!ok) detail << "; ";
            else detail.str("");
            ok = false;
            detail << why;
        }
    }
};

int failures = 0;

void report_line(int n, const std::string& title, Outcome& o) {
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << n << ": " << title << " | " << o.detail.str()
              << std::endl;
}

// Runs `body` and records any exception as a failure of the criterion.
void criterion(int n, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome o;
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    report_line(n, title, o);
}

struct Run {
    Problem problem;
    PlaneMorphism phi;
    Json report;  // includes the "verification" block when points were verified
    std::vector<PointVerification> points;
    double seconds = 0;
};

Run run_fixture(const std::string& name, unsigned jobs, bool verify) {
    auto t0 = std::chrono::steady_clock::now();
    Run r;
    r.problem = load_problem(fixture(name));
    RunOverrides o;
    o.jobs = jobs;
    PipelineOptions opt = effective_options(r.problem, o);
    auto checks = check_hypotheses(r.problem.F, r.problem.Fbar, r.problem.phi, opt.groebner);
    if (!hypotheses_pass(checks)) throw ValidationError(name + ": hypotheses fail");
    r.phi = validate_morphism(PlaneCurve::make(r.problem.Fbar), PlaneCurve::make(r.problem.F), r.problem.phi,
                              opt.groebner);
    r.report = build_report(r.problem, r.phi, checks, opt, {run_pipeline(r.phi, opt)});
    if (verify) {
        Json pts = Json::array();
        for (const auto& a : r.problem.points) {
            RationalPoint P = RationalPoint::make(a, r.phi.target);
            VerificationContext ctx = context_from_report(r.report, P.a);
            r.points.push_back(verify_point(r.phi, ctx, P));
            pts.push_back(verification_json(r.points.back()));
        }
        r.report["verification"] = {{"points", pts}, {"verdict", verdict_name(aggregate(r.points))}};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<BigInt> report_S(const Json& report) {
    std::vector<BigInt> S;
    for (const auto& e : report.at("runs")[0].at("S")) S.push_back(json_int(e.at("prime")));
    return S;
}

bool in(const std::vector<BigInt>& v, const BigInt& x) { return std::find(v.begin(), v.end(), x) != v.end(); }

// Displayed bound with d = 1, evaluated here independently of the library:
// 40 M^3 Nbar^3 (M Nbar log2(e^3 (M + Nbar)) + Nbar log2(H(P) H(Phi)) + M log2 H(Fbar)).
LogFloat independent_fiber_bound(const BigInt& HP, const BigInt& HPhi, const BigInt& HFbar, long M, long Nbar) {
    LogFloat l2e = 1 / log(LogFloat(2));
    auto lg = [](const BigInt& v) { return log2(LogFloat(v.get_str())); };
    LogFloat inner = LogFloat(M * Nbar) * (3 * l2e + log2(LogFloat(M + Nbar))) + LogFloat(Nbar) * (lg(HP) + lg(HPhi)) +
                     LogFloat(M) * lg(HFbar);
    return LogFloat(40 * M * M * M * Nbar * Nbar * Nbar) * inner;
}

LogFloat independent_final_bound(const std::vector<BigInt>& S, long m) {
    LogFloat l2e = 1 / log(LogFloat(2));
    LogFloat sum = 0;
    for (const auto& p : S) sum += log2(LogFloat(p.get_str()));
    return LogFloat(m - 1) * sum + LogFloat(2 * m * m) * l2e;
}

const LogFloat kGuard = pow(LogFloat(2), -20);

BigInt disc_datum(const Json& comp) {
    return comp.at("field_discriminant").is_null() ? json_int(comp.at("disc_g")) : json_int(comp.at("field_discriminant"));
}

void check_certificates(const Json& report, const std::string& label, Outcome& o, int* charts) {
    const Vars& v = plane_vars();
    long m = json_int(report.at("geometry").at("m")).get_si();
    for (const auto& c : report.at("runs")[0].at("charts")) {
        std::string tag = label + " chart " + c.at("chart").get<std::string>();
        MultiPoly D = parse_poly(c.at("D").get<std::string>(), v);
        MultiPoly Sigma = parse_poly(c.at("Sigma").get<std::string>(), v);
        MultiPoly Fi = parse_poly(c.at("F_i").get<std::string>(), v);
        BigInt a = json_int(c.at("a")), b = json_int(c.at("b")), cc = json_int(c.at("c"));
        const Json& cert = c.at("certificate");
        std::vector<MultiPoly> cof;
        for (const auto& s : cert.at("cofactors")) cof.push_back(parse_poly(s.get<std::string>(), v));
        o.require(cof.size() == 3, tag + ": expected three cofactors");
        if (cof.size() != 3) continue;
        BigInt A = json_int(cert.at("A"));
        unsigned long ex = 2UL * static_cast<unsigned long>(m) - 1;
        MultiPoly lhs = cof[0] * (D * BigRat(pow(a, ex))) + cof[1] * (Sigma * BigRat(pow(b, ex))) + cof[2] * (Fi * BigRat(cc));
        o.require(A != 0 && lhs == MultiPoly::constant(v, BigRat(A)), tag + ": identity does not expand to A");
        ++*charts;
    }
}

void check_degree_bounds(const Run& r, const std::string& label, Outcome& o, int* checked) {
    const Json& g = r.report.at("geometry");
    long N = json_int(g.at("N")).get_si(), Nbar = json_int(g.at("Nbar")).get_si(), M = json_int(g.at("M")).get_si(),
         m = json_int(g.at("m")).get_si();
    long p_bound = 11 * M * N * N * N * N * Nbar * Nbar;
    for (const auto& c : r.report.at("runs")[0].at("charts")) {
        std::string tag = label + " chart " + c.at("chart").get<std::string>();
        for (const char* rel : {"relation", "relation_twisted"}) {
            long dx = json_int(c.at(rel).at("deg_X")).get_si(), du = json_int(c.at(rel).at("deg_U")).get_si();
            o.require(dx <= N * Nbar, tag + " " + rel + ": deg_X " + std::to_string(dx) + " > N Nbar");
            o.require(du <= 2 * M * N * Nbar, tag + " " + rel + ": deg_U " + std::to_string(du) + " > 2 M N Nbar");
            ++*checked;
        }
        for (const char* key : {"P", "Pi"}) {
            const Json& P = c.at(key);
            Vars vars = P.at("variables").get<Vars>();
            MultiPoly poly = parse_poly(P.at("polynomial").get<std::string>(), vars);
            o.require(poly.degree_in("U") == m, tag + " " + key + ": deg_U != m");
            int u = poly.var_index("U");
            long max_coeff = 0;
            for (const auto& t : poly.terms()) max_coeff = std::max<long>(max_coeff, t.mono.deg - t.mono[u]);
            o.require(max_coeff < p_bound, tag + " " + key + ": coefficient degree " + std::to_string(max_coeff) +
                                               " >= 11 M N^4 Nbar^2");
            ++*checked;
        }
        for (const auto& d : c.at("degree_checks"))
            o.require(d.at("holds").get<bool>(), tag + ": reported degree check " + d.at("name").get<std::string>());
    }
}

}  // namespace

int main() {
    std::cout << "tolerances: log2 guard 2^-20 on bound inequalities; exact equality elsewhere; runtime limit "
              << kRuntimeLimitSeconds << " s" << std::endl;

    Run dbl, dbl2, iso;
    std::string setup_error;
    try {
        dbl = run_fixture("doubling.json", 3, true);
        iso = run_fixture("isogeny.json", 3, true);
    } catch (const std::exception& e) {
        setup_error = e.what();
    }

    criterion(1, "end-to-end soundness on the doubling fixture", [&](Outcome& o) {
        o.require(setup_error.empty(), "setup failed: " + setup_error);
        if (!setup_error.empty()) return;
        std::vector<BigInt> S = report_S(dbl.report);
        o.require(in(S, 2), "2 is not in S");
        o.require(dbl.points.size() >= 3, "fewer than three points verified");
        bool saw_origin = false;
        for (const auto& pt : dbl.report.at("verification").at("points")) {
            for (const auto& comp : pt.at("components"))
                for (const auto& p : comp.at("ramified"))
                    o.require(in(S, json_int(p)), "certified ramified prime " + p.get<std::string>() + " not in S");
            o.require(pt.at("verdict") != "FAIL", "verdict FAIL at a fixture point");
            if (pt.at("point") == Json::array({"0", "0", "1"})) {
                saw_origin = true;
                const Json& comps = pt.at("components");
                o.require(comps.size() == 2, "(0:0:1) does not have two components");
                for (const auto& comp : comps) {
                    // The only quadratic field of discriminant -4 is Q(i).
                    o.require(comp.at("degree") == "2", "(0:0:1) component of degree != 2");
                    o.require(comp.at("field_discriminant") == "-4", "(0:0:1) component is not Q(i)");
                    o.require(comp.at("ramified") == Json::array({"2"}), "(0:0:1) ramified set is not {2}");
                }
            }
        }
        o.require(saw_origin, "(0:0:1) was not verified");
        o.require(dbl.seconds <= kRuntimeLimitSeconds, "runtime " + std::to_string(dbl.seconds) + " s");
        if (o.ok) {
            o.detail << "S = {";
            for (std::size_t k = 0; k < S.size(); ++k) o.detail << (k ? "," : "") << S[k].get_str();
            o.detail << "}; " << dbl.points.size() << " points verified, none FAIL; (0:0:1) -> 2 x Q(i), "
                     << "ramified {2}; pipeline+verify " << static_cast<long>(dbl.seconds) << " s";
        }
    });

    auto each_component = [&](const std::function<void(const Run&, const Json&, const Json&)>& f) {
        for (const Run* r : {&dbl, &iso})
            for (const auto& pt : r->report.at("verification").at("points"))
                for (const auto& comp : pt.at("components")) f(*r, pt, comp);
    };

    criterion(2, "fiber discriminant bound with d = 1 (log2, guard 2^-20)", [&](Outcome& o) {
        o.require(setup_error.empty(), "setup failed");
        if (!setup_error.empty()) return;
        int n = 0;
        LogFloat worst = -1;
        each_component([&](const Run& r, const Json& pt, const Json& comp) {
            const Json& h = r.report.at("heights");
            const Json& g = r.report.at("geometry");
            LogFloat bound = independent_fiber_bound(json_int(pt.at("H_P").at("exact")), json_int(h.at("H_Phi").at("exact")),
                                                     json_int(h.at("H_Fbar").at("exact")), json_int(g.at("M")).get_si(),
                                                     json_int(g.at("Nbar")).get_si());
            LogFloat reported = LogFloat(pt.at("fiber_bound_log2").get<std::string>());
            o.require(abs(reported - bound) <= pow(LogFloat(2), -40) * bound, "reported fiber bound differs from formula");
            LogFloat lhs = log2(abs(LogFloat(disc_datum(comp).get_str())));
            o.require(lhs + kGuard <= bound, "log2|disc| exceeds the fiber bound");
            worst = std::max(worst, lhs - bound);
            ++n;
        });
        o.require(n > 0, "no components");
        if (o.ok) o.detail << n << " components on both fixtures; max(log2|disc| - bound) = " << to_decimal(worst, 8);
    });

    criterion(3, "final S-based bound (prod S)^(m-1) e^(2m^2) (log2, guard 2^-20)", [&](Outcome& o) {
        o.require(setup_error.empty(), "setup failed");
        if (!setup_error.empty()) return;
        int n = 0;
        each_component([&](const Run& r, const Json&, const Json& comp) {
            long m = json_int(r.report.at("geometry").at("m")).get_si();
            LogFloat bound = independent_final_bound(report_S(r.report), m);
            LogFloat reported = LogFloat(r.report.at("runs")[0].at("bounds").at("final_log2").get<std::string>());
            o.require(abs(reported - bound) <= pow(LogFloat(2), -60) * bound, "reported final bound differs from formula");
            LogFloat lhs = log2(abs(LogFloat(disc_datum(comp).get_str())));
            o.require(lhs + kGuard <= bound, "log2|disc| exceeds the final bound");
            ++n;
        });
        if (o.ok)
            o.detail << n << " components; doubling final bound log2 = "
                     << dbl.report.at("runs")[0].at("bounds").at("final_log2").get<std::string>().substr(0, 12);
    });

    criterion(4, "certificate identities re-expand to A_i (zero tolerance)", [&](Outcome& o) {
        o.require(setup_error.empty(), "setup failed");
        if (!setup_error.empty()) return;
        int charts = 0;
        check_certificates(dbl.report, "doubling", o, &charts);
        check_certificates(iso.report, "isogeny", o, &charts);
        o.require(charts == 6, "expected six charts");
        if (o.ok) o.detail << charts << " charts re-expanded from report text";
    });

    criterion(5, "degree bounds: relation deg_X <= N Nbar, deg_U <= 2 M N Nbar; deg_U P = m, deg p_l < 11 M N^4 Nbar^2",
              [&](Outcome& o) {
                  o.require(setup_error.empty(), "setup failed");
                  if (!setup_error.empty()) return;
                  int n = 0;
                  check_degree_bounds(dbl, "doubling", o, &n);
                  check_degree_bounds(iso, "isogeny", o, &n);
                  if (o.ok) o.detail << n << " bound checks on both fixtures";
              });

    criterion(6, "oracle equivalence suites", [&](Outcome& o) {
        cwtest::Rng rng(20240917);
        int res = 0, gb = 0, heights = 0, minpolys = 0;
        for (int it = 0; it < 50; ++it) {
            Vars v = it % 2 ? Vars{"x", "y"} : Vars{"x", "y", "z"};
            MultiPoly f, g;
            do f = cwtest::random_poly(rng, v, 4, 5);
            while (f.degree_in("x") <= 0);
            do g = cwtest::random_poly(rng, v, 4, 5);
            while (g.degree_in("x") <= 0);
            o.require(resultant(f, g, "x") == resultant_interpolation(f, g, "x"), "resultant differs from interpolation");
            ++res;
        }
        Vars v2 = {"x", "y"};
        while (gb < 20) {
            MultiPoly f = cwtest::random_monic_in_first(rng, v2, 2, 3, 4);
            MultiPoly g = cwtest::random_monic_in_first(rng, v2, 2, 3, 4);
            MultiPoly r = resultant(f, g, "x");
            if (r.is_zero()) continue;
            IdealBasis e = eliminate({f, g}, {"x"});
            bool ok = e.generators.size() == 1;
            if (ok) {
                QPoly h = QPoly::from_multipoly(e.generators[0].embed({"y"}), "y");
                QPoly rr = QPoly::from_multipoly(r.embed({"y"}), "y");
                ok = (rr % h).is_zero() && squarefree_part(rr) == squarefree_part(h);
            }
            o.require(ok, "elimination ideal disagrees with the resultant");
            ++gb;
        }
        while (heights < 100) {
            std::vector<BigRat> x;
            for (int k = 0; k < 3; ++k)
                x.push_back(make_rat(cwtest::uniform(rng, -999, 999), cwtest::uniform(rng, 1, 999)));
            if (x[0] == 0 && x[1] == 0 && x[2] == 0) continue;
            o.require(BigRat(height_point(x).exact) == cwtest::product_formula_height(x), "height differs from product formula");
            ++heights;
        }
        if (setup_error.empty()) {
            for (const Run* r : {&dbl, &iso}) {
                for (const auto& c : r->report.at("runs")[0].at("charts")) {
                    int i = static_cast<int>(json_int(c.at("chart")).get_si());
                    BigInt rho = json_int(c.at("rho")), s = json_int(c.at("s")), rr = json_int(c.at("r")),
                           tau = json_int(c.at("tau"));
                    Vars pv = c.at("P").at("variables").get<Vars>();
                    MultiPoly P = parse_poly(c.at("P").at("polynomial").get<std::string>(), pv);
                    QPoly f = QPoly::from_multipoly(parse_poly(c.at("P").at("integralizer").get<std::string>(), {"X"}), "X");
                    o.require(verify_minimal_polynomial(r->phi, i, rho, f, P), "P does not vanish modulo the curve");
                    PlaneMorphism psi = apply_change(CoordinateChange::make(i, s, rr), r->phi);
                    MultiPoly Pi = parse_poly(c.at("Pi").at("polynomial").get<std::string>(), pv);
                    QPoly g = QPoly::from_multipoly(parse_poly(c.at("Pi").at("integralizer").get<std::string>(), {"X"}), "X");
                    o.require(verify_minimal_polynomial(psi, i, tau, g, Pi), "Pi does not vanish modulo the curve");
                    minpolys += 2;
                }
            }
        } else {
            o.require(false, "setup failed: minimal polynomials not checked");
        }
        if (o.ok)
            o.detail << res << " resultants, " << gb << " eliminations, " << heights << " heights, " << minpolys
                     << " minimal polynomials by normal form";
    });

    criterion(7, "negative controls: tampered S gives FAIL; ramified (3, 4, 3) input rejected by the genus condition",
              [&](Outcome& o) {
                  o.require(setup_error.empty(), "setup failed");
                  if (!setup_error.empty()) return;
                  Json tampered = dbl.report;
                  Json& S = tampered["runs"][0]["S"];
                  Json kept = Json::array();
                  for (const auto& e : S)
                      if (e.at("prime") != "2") kept.push_back(e);
                  o.require(kept.size() + 1 == S.size(), "2 was not in the reported S");
                  S = kept;
                  RationalPoint P = RationalPoint::make({0, 0, 1}, dbl.phi.target);
                  PointVerification v = verify_point(dbl.phi, context_from_report(tampered, P.a), P);
                  o.require(v.verdict == Verdict::Fail, "tampered S did not produce FAIL");
                  bool cited = false;
                  for (const auto& c : v.components) cited = cited || in(c.missing, 2);
                  o.require(cited, "FAIL does not cite prime 2");

                  Problem bad = load_problem(fixture("ramified_fermat.json"));
                  auto checks = check_hypotheses(bad.F, bad.Fbar, bad.phi);
                  o.require(!hypotheses_pass(checks), "ramified input accepted");
                  std::string detail;
                  for (const auto& h : checks)
                      if (h.name == "unramified") {
                          o.require(h.status == "fail", "unramified check did not fail");
                          detail = h.detail;
                      }
                  o.require(detail.find("genus condition") != std::string::npos, "rejection does not cite the genus condition");
                  if (o.ok) o.detail << "tampered S -> FAIL citing 2; ramified input -> " << detail;
              });

    criterion(8, "determinism: repeated pipeline + verify reports are byte-identical", [&](Outcome& o) {
        o.require(setup_error.empty(), "setup failed");
        if (!setup_error.empty()) return;
        dbl2 = run_fixture("doubling.json", 1, true);
        std::string a = canonical_dump(dbl.report), b = canonical_dump(dbl2.report);
        o.require(a == b, "reports differ between runs (jobs 3 vs jobs 1)");
        if (o.ok) o.detail << "doubling report " << a.size() << " bytes, sha256 " << sha256_hex(a).substr(0, 16);
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL") << std::endl;
    return failures == 0 ? 0 : 1;
}
