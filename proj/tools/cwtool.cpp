// Command-line front end: check -> pipeline -> verify, plus debug utilities.
//
// Exit codes:
//   0  success (check: all hypotheses hold; verify: every point PASS)
//   1  invalid input, a failed hypothesis or a point off the curve
//   2  verify: some point FAIL
//   3  verify: no FAIL but some point INCONCLUSIVE
//   4  resource budget or search window exhausted
//   5  report does not belong to the problem (hash mismatch)
//   6  internal consistency failure

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "cw/errors.hpp"
#include "cw/fiber.hpp"
#include "cw/groebner.hpp"
#include "cw/parse.hpp"
#include "cw/report.hpp"
#include "cw/resultant.hpp"

namespace {

using namespace cw;

enum Exit { kOk = 0, kInvalid = 1, kFail = 2, kInconclusive = 3, kResource = 4, kHashMismatch = 5, kInternal = 6 };

struct HashMismatch : Error {
    using Error::Error;
};

void emit(const Json& j, const std::string& path) {
    std::string text = canonical_dump(j);
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write " + path);
    out << text;
}

int report_error(const std::string& kind, const std::string& message, int code) {
    Json err = {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
    std::cerr << err.dump() << "\n";
    return code;
}

Vars split_vars(const std::string& list) {
    Vars out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    if (out.empty()) throw DomainError("empty variable list");
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// Fails with exit code 1 and the hypothesis list when something does not hold.
PlaneMorphism checked_morphism(const Problem& p, const PipelineOptions& opt, std::vector<HypothesisCheck>* checks) {
    *checks = check_hypotheses(p.F, p.Fbar, p.phi, opt.groebner);
    if (!hypotheses_pass(*checks)) {
        std::string failed;
        for (const auto& h : *checks)
            if (h.status != "pass") failed += (failed.empty() ? "" : "; ") + h.name + " (" + h.status + "): " + h.detail;
        throw ValidationError("hypotheses not satisfied: " + failed);
    }
    return validate_morphism(PlaneCurve::make(p.Fbar), PlaneCurve::make(p.F), p.phi, opt.groebner);
}

std::vector<RationalPoint> problem_points(const Problem& p, const PlaneCurve& C) {
    std::vector<RationalPoint> out;
    for (const auto& a : p.points) out.push_back(RationalPoint::make(a, C));
    return out;
}

int cmd_check(const std::string& problem_path, const std::string& out_path, const RunOverrides& o) {
    Problem p = load_problem(problem_path);
    PipelineOptions opt = effective_options(p, o);
    auto checks = check_hypotheses(p.F, p.Fbar, p.phi, opt.groebner);
    bool ok = hypotheses_pass(checks);
    Json j = {{"problem_hash", problem_hash(p)}, {"hypotheses", hypotheses_json(checks)}, {"ok", ok}};
    if (ok) {
        PlaneMorphism phi = validate_morphism(PlaneCurve::make(p.Fbar), PlaneCurve::make(p.F), p.phi, opt.groebner);
        j["geometry"] = {{"N", int_json(phi.target.N)},
                         {"Nbar", int_json(phi.source.N)},
                         {"M", int_json(phi.M)},
                         {"m", int_json(phi.m)},
                         {"genus_C", int_json(plane_genus(phi.target.N))},
                         {"genus_Cbar", int_json(plane_genus(phi.source.N))}};
        Json points = Json::array();
        for (const auto& a : p.points) {
            Json entry = {{"point", Json::array({int_json(a[0]), int_json(a[1]), int_json(a[2])})}};
            try {
                RationalPoint::make(a, phi.target);
                entry["on_curve"] = true;
            } catch (const DomainError& e) {
                entry["on_curve"] = false;
                entry["detail"] = e.what();
                ok = false;
            }
            points.push_back(entry);
        }
        j["points"] = points;
        j["ok"] = ok;
    }
    emit(j, out_path);
    return ok ? kOk : kInvalid;
}

int cmd_pipeline(const std::string& problem_path, const std::string& out_path, const RunOverrides& o, bool timing) {
    auto t0 = std::chrono::steady_clock::now();
    Problem p = load_problem(problem_path);
    PipelineOptions opt = effective_options(p, o);
    std::vector<HypothesisCheck> checks;
    PlaneMorphism phi = checked_morphism(p, opt, &checks);
    std::vector<RamificationReport> runs;
    if (opt.mode == "per-point") {
        auto points = problem_points(p, phi.target);
        if (points.empty()) throw DomainError("per-point mode needs at least one point in the problem");
        for (const auto& P : points) runs.push_back(run_pipeline(phi, opt, P.a));
    } else {
        runs.push_back(run_pipeline(phi, opt));
    }
    Json report = build_report(p, phi, checks, opt, runs);
    if (timing) report["timing"] = {{"pipeline_seconds", fixed3(seconds_since(t0))}};
    emit(report, out_path);
    return kOk;
}

int cmd_verify(const std::string& problem_path, const std::string& report_path, const std::string& out_path,
               const RunOverrides& o, bool timing) {
    auto t0 = std::chrono::steady_clock::now();
    Problem p = load_problem(problem_path);
    Json report = load_json(report_path);
    std::string expected = problem_hash(p);
    if (!report.contains("problem_hash") || report.at("problem_hash") != expected)
        throw HashMismatch("report problem_hash does not match the problem (expected " + expected + ")");
    report.erase("verification");
    report.erase("timing");
    PipelineOptions opt = effective_options(p, o);
    PlaneMorphism phi = validate_morphism(PlaneCurve::make(p.Fbar), PlaneCurve::make(p.F), p.phi, opt.groebner);
    auto points = problem_points(p, phi.target);
    if (points.empty()) throw DomainError("the problem lists no points to verify");

    FiberOptions fopt;
    fopt.groebner = opt.groebner;
    fopt.factor = opt.factor;
    fopt.factor_poly.seed = opt.seed;
    std::vector<VerificationContext> contexts;
    for (const auto& P : points) contexts.push_back(context_from_report(report, P.a));

    std::vector<PointVerification> results(points.size());
    unsigned jobs = std::max(1u, opt.jobs);
    for (std::size_t base = 0; base < points.size(); base += jobs) {
        std::vector<std::future<PointVerification>> futures;
        for (std::size_t k = base; k < std::min(points.size(), base + jobs); ++k)
            futures.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async,
                                         [&, k] { return verify_point(phi, contexts[k], points[k], fopt); }));
        for (std::size_t f = 0; f < futures.size(); ++f) results[base + f] = futures[f].get();
    }
    Json pts = Json::array();
    for (const auto& r : results) pts.push_back(verification_json(r));
    Verdict v = aggregate(results);
    report["verification"] = {{"points", pts}, {"verdict", verdict_name(v)}};
    if (timing) report["timing"] = {{"verify_seconds", fixed3(seconds_since(t0))}};
    emit(report, out_path);
    switch (v) {
        case Verdict::Pass: return kOk;
        case Verdict::Fail: return kFail;
        case Verdict::Inconclusive: return kInconclusive;
    }
    return kInternal;
}

int cmd_heights(const std::string& problem_path, const std::string& out_path) {
    Problem p = load_problem(problem_path);
    PlaneCurve C = PlaneCurve::make(p.F), Cbar = PlaneCurve::make(p.Fbar);
    HeightValue hF = height_poly(C.F), hFbar = height_poly(Cbar.F), hPhi = height_forms({p.phi[0], p.phi[1], p.phi[2]});
    int M = p.phi[0].total_degree();
    Json pts = Json::array();
    for (const auto& a : p.points) {
        HeightValue hP = height_point(std::vector<BigInt>(a.begin(), a.end()));
        pts.push_back({{"point", Json::array({int_json(a[0]), int_json(a[1]), int_json(a[2])})},
                       {"H_P", height_json(hP)},
                       {"fiber_bound_log2", to_decimal(fiber_bound_log2(hP, hPhi, hFbar, M, Cbar.N))}});
    }
    emit({{"H_F", height_json(hF)}, {"H_Fbar", height_json(hFbar)}, {"H_Phi", height_json(hPhi)}, {"points", pts}},
         out_path);
    return kOk;
}

int cmd_resultant(const std::string& vars, const std::string& f, const std::string& g, const std::string& var,
                  const std::string& method) {
    Vars v = split_vars(vars);
    MultiPoly a = parse_poly(f, v), b = parse_poly(g, v);
    MultiPoly r;
    if (method == "default") r = resultant(a, b, var);
    else if (method == "bareiss") r = resultant_bareiss(a, b, var);
    else if (method == "subresultant") r = resultant_subresultant(a, b, var);
    else if (method == "interpolation") r = resultant_interpolation(a, b, var);
    else throw DomainError("unknown method '" + method + "'");
    emit({{"resultant", r.to_string()}, {"variable", var}, {"method", method}}, "");
    return kOk;
}

int cmd_groebner(const std::string& vars, const std::vector<std::string>& polys, const std::string& order,
                 const std::vector<std::string>& eliminate_vars, std::size_t budget) {
    Vars v = split_vars(vars);
    std::vector<MultiPoly> gens;
    for (const auto& s : polys) gens.push_back(parse_poly(s, v));
    GroebnerOptions opt;
    opt.max_spairs = budget;
    IdealBasis basis;
    if (!eliminate_vars.empty()) {
        basis = eliminate(gens, eliminate_vars, opt);
    } else {
        MonomialOrder o = MonomialOrder::grevlex();
        if (order == "lex") o = MonomialOrder::lex();
        else if (order != "grevlex") throw DomainError("order must be grevlex or lex");
        basis = buchberger(gens, o, opt);
    }
    Json out = Json::array();
    for (const auto& g : basis.generators) out.push_back(g.to_string());
    emit({{"variables", basis.vars},
          {"order", basis.order.name()},
          {"basis", out},
          {"spairs", int_json(BigInt(std::to_string(basis.spairs_processed)))}},
         "");
    return kOk;
}

int cmd_scan(const std::string& problem_path, long bound) {
    Problem p = load_problem(problem_path);
    Json pts = Json::array();
    for (const auto& P : scan_points(PlaneCurve::make(p.F), bound))
        pts.push_back(Json::array({int_json(P.a[0]), int_json(P.a[1]), int_json(P.a[2])}));
    emit({{"bound", int_json(bound)}, {"points", pts}}, "");
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Effective Chevalley-Weil toolkit for unramified morphisms of plane curves over Q"};
    app.require_subcommand(1);

    std::string problem, report, out, mode, vars = "x,y,z", f, g, var, method = "default", order = "grevlex";
    std::vector<std::string> polys, elim;
    std::size_t budget = 0;
    std::uint64_t seed = 0;
    long slack = 0, bound = 3;
    unsigned jobs = 1;
    bool timing = false;

    std::vector<CLI::Option*> seed_opts, slack_opts;
    auto add_run_flags = [&](CLI::App* c) {
        c->add_option("--mode", mode, "uniform or per-point")->check(CLI::IsMember({"uniform", "per-point"}));
        c->add_option("--jobs", jobs, "worker threads; results do not depend on it")->check(CLI::PositiveNumber);
        c->add_option("--budget", budget, "maximum S-pairs per Groebner run");
        seed_opts.push_back(c->add_option("--seed", seed, "seed for randomized subroutines"));
        slack_opts.push_back(c->add_option("--window-slack", slack, "added to every default search window"));
    };

    auto* check = app.add_subcommand("check", "validate the hypotheses of a problem");
    check->add_option("problem", problem, "problem JSON")->required();
    check->add_option("-o,--output", out, "output path (default stdout)");
    add_run_flags(check);

    auto* pipeline = app.add_subcommand("pipeline", "compute certificates, the prime set S and bounds");
    pipeline->add_option("problem", problem, "problem JSON")->required();
    pipeline->add_option("-o,--output", out, "report path (default stdout)");
    pipeline->add_flag("--timing", timing, "record wall-clock time in the report");
    add_run_flags(pipeline);

    auto* verify = app.add_subcommand("verify", "compute fibers over the problem's points and check them against S");
    verify->add_option("problem", problem, "problem JSON")->required();
    verify->add_option("report", report, "report from pipeline")->required();
    verify->add_option("-o,--output", out, "output path (default stdout)");
    verify->add_flag("--timing", timing, "record wall-clock time in the output");
    add_run_flags(verify);

    auto* heights = app.add_subcommand("heights", "heights of F, Fbar, Phi and the problem's points");
    heights->add_option("problem", problem, "problem JSON")->required();
    heights->add_option("-o,--output", out, "output path (default stdout)");

    auto* res = app.add_subcommand("resultant", "resultant of two polynomials");
    res->add_option("--vars", vars, "comma-separated variables");
    res->add_option("--f", f, "first polynomial")->required();
    res->add_option("--g", g, "second polynomial")->required();
    res->add_option("--var", var, "variable to eliminate")->required();
    res->add_option("--method", method, "default, bareiss, subresultant or interpolation");

    auto* gb = app.add_subcommand("groebner", "reduced Groebner basis");
    gb->add_option("--vars", vars, "comma-separated variables");
    gb->add_option("--poly", polys, "generator (repeatable)")->required();
    gb->add_option("--order", order, "grevlex or lex");
    gb->add_option("--eliminate", elim, "variables to eliminate (repeatable)");
    gb->add_option("--budget", budget, "maximum S-pairs");

    auto* scan = app.add_subcommand("scan-points", "rational points of C with coordinates bounded by --bound");
    scan->add_option("problem", problem, "problem JSON")->required();
    scan->add_option("--bound", bound, "coordinate bound")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    RunOverrides o;
    o.jobs = jobs;
    if (!mode.empty()) o.mode = mode;
    if (budget > 0) o.max_spairs = budget;
    auto given = [](const std::vector<CLI::Option*>& opts) {
        return std::any_of(opts.begin(), opts.end(), [](CLI::Option* opt) { return opt->count() > 0; });
    };
    if (given(seed_opts)) o.seed = seed;
    if (given(slack_opts)) o.window_slack = slack;

    try {
        if (app.got_subcommand(check)) return cmd_check(problem, out, o);
        if (app.got_subcommand(pipeline)) return cmd_pipeline(problem, out, o, timing);
        if (app.got_subcommand(verify)) return cmd_verify(problem, report, out, o, timing);
        if (app.got_subcommand(heights)) return cmd_heights(problem, out);
        if (app.got_subcommand(res)) return cmd_resultant(vars, f, g, var, method);
        if (app.got_subcommand(gb)) return cmd_groebner(vars, polys, order, elim, budget > 0 ? budget : 100000);
        if (app.got_subcommand(scan)) return cmd_scan(problem, bound);
    } catch (const HashMismatch& e) {
        return report_error("HashMismatch", e.what(), kHashMismatch);
    } catch (const ParseError& e) {
        return report_error("ParseError", e.what(), kInvalid);
    } catch (const ValidationError& e) {
        return report_error("ValidationError", e.what(), kInvalid);
    } catch (const DomainError& e) {
        return report_error("DomainError", e.what(), kInvalid);
    } catch (const FactorizationCutoff& e) {
        return report_error("FactorizationCutoff", e.what(), kResource);
    } catch (const ResourceError& e) {
        return report_error("ResourceError", e.what(), kResource);
    } catch (const WindowExhausted& e) {
        return report_error("WindowExhausted", e.what(), kResource);
    } catch (const InternalError& e) {
        return report_error("InternalError", e.what(), kInternal);
    } catch (const std::exception& e) {
        return report_error("InternalError", e.what(), kInternal);
    }
    return kInvalid;
}
