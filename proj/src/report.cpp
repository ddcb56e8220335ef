#include "cw/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cw/errors.hpp"

namespace cw {

namespace {

const std::vector<std::string> kConfigKeys = {"mode",       "rho_window", "s_window",         "tau_window",
                                              "window_slack", "max_spairs", "max_coefficient_bits", "seed",
                                              "factor_max_digits"};

std::string require_string(const Json& j, const std::string& key) {
    if (!j.contains(key)) throw DomainError("problem: missing key '" + key + "'");
    if (!j.at(key).is_string()) throw DomainError("problem: '" + key + "' must be a string");
    return j.at(key).get<std::string>();
}

long json_long(const Json& j, const std::string& what) {
    BigInt v = json_int(j);
    if (!v.fits_slong_p()) throw DomainError(what + " is out of range");
    return v.get_si();
}

std::uint64_t json_u64(const Json& j, const std::string& what) {
    BigInt v = json_int(j);
    if (v < 0 || v > BigInt("18446744073709551615")) throw DomainError(what + " is out of range");
    return std::stoull(v.get_str());
}

Json strings(const std::vector<BigInt>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(int_json(x));
    return out;
}

Json poly_list(const std::vector<MultiPoly>& v) {
    Json out = Json::array();
    for (const auto& p : v) out.push_back(p.to_string());
    return out;
}

Json log_json(const LogFloat& v) { return to_decimal(v, 30); }

Json point_json(const std::array<BigInt, 3>& a) { return Json::array({int_json(a[0]), int_json(a[1]), int_json(a[2])}); }

Json relation_json(const EliminationRelation& r) {
    return {{"deg_X", int_json(r.deg_X)},
            {"deg_U", int_json(r.deg_U)},
            {"leading_coefficient", r.g0.to_string("X")},
            {"vanishes_on_source", r.vanishes_on_source}};
}

Json minpoly_json(const MinimalPolynomialResult& r) {
    return {{"integralizer", r.f.to_string("X")},
            {"ladder_rung", int_json(BigInt(static_cast<unsigned long>(r.rung)))},
            {"degree_cap", int_json(r.degree_cap)},
            {"polynomial", r.P.to_string()},
            {"variables", r.P.vars()},
            {"deg_U", int_json(r.deg_U)},
            {"max_coefficient_degree", int_json(r.max_coeff_degree)},
            {"unknowns", int_json(BigInt(static_cast<unsigned long>(r.unknowns)))},
            {"equations", int_json(BigInt(static_cast<unsigned long>(r.equations)))},
            {"verified", r.verified}};
}

}  // namespace

Json int_json(const BigInt& v) { return v.get_str(); }

BigInt json_int(const Json& j) {
    if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<unsigned long long>()));
    if (j.is_string()) {
        try {
            return parse_integer(j.get<std::string>());
        } catch (const Error& e) {
            throw DomainError(std::string("malformed integer: ") + e.what());
        }
    }
    throw DomainError("expected an integer or a decimal string, got " + j.dump());
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw DomainError(path + ": invalid JSON: " + e.what());
    }
}

Problem parse_problem(const Json& j) {
    if (!j.is_object()) throw DomainError("problem: top level must be an object");
    static const std::vector<std::string> known = {"F", "Fbar", "phi", "points", "attestations", "config", "name",
                                                   "description"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw DomainError("problem: unknown key '" + it.key() + "'");

    Problem p;
    p.F_text = require_string(j, "F");
    p.Fbar_text = require_string(j, "Fbar");
    if (!j.contains("phi") || !j.at("phi").is_array() || j.at("phi").size() != 3)
        throw DomainError("problem: 'phi' must be an array of three strings");
    for (int l = 0; l < 3; ++l) {
        if (!j.at("phi")[l].is_string()) throw DomainError("problem: 'phi' must be an array of three strings");
        p.phi_text[l] = j.at("phi")[l].get<std::string>();
    }
    p.F = parse_plane_form(p.F_text);
    p.Fbar = parse_plane_form(p.Fbar_text);
    for (int l = 0; l < 3; ++l) p.phi[l] = parse_plane_form(p.phi_text[l]);

    if (j.contains("points")) {
        if (!j.at("points").is_array()) throw DomainError("problem: 'points' must be an array");
        for (const auto& q : j.at("points")) {
            if (!q.is_array() || q.size() != 3) throw DomainError("problem: each point must have three coordinates");
            std::array<BigInt, 3> a;
            for (int l = 0; l < 3; ++l) a[l] = json_int(q[l]);
            if (a[0] == 0 && a[1] == 0 && a[2] == 0) throw DomainError("problem: point (0:0:0) is not projective");
            p.points.push_back(a);
        }
    }
    if (j.contains("attestations")) {
        const Json& at = j.at("attestations");
        if (!at.is_object()) throw DomainError("problem: 'attestations' must be an object");
        for (auto it = at.begin(); it != at.end(); ++it) {
            if (it.key() != "absolutely_irreducible")
                throw DomainError("problem: unknown attestation '" + it.key() + "'");
            if (!it.value().is_boolean()) throw DomainError("problem: attestation values must be booleans");
            p.absolutely_irreducible = it.value().get<bool>();
        }
    }
    if (j.contains("config")) {
        const Json& c = j.at("config");
        if (!c.is_object()) throw DomainError("problem: 'config' must be an object");
        for (auto it = c.begin(); it != c.end(); ++it)
            if (std::find(kConfigKeys.begin(), kConfigKeys.end(), it.key()) == kConfigKeys.end())
                throw DomainError("problem: unknown config key '" + it.key() + "'");
        ProblemConfig& cfg = p.config;
        if (c.contains("mode")) {
            if (!c.at("mode").is_string()) throw DomainError("config.mode must be a string");
            cfg.mode = c.at("mode").get<std::string>();
            if (*cfg.mode != "uniform" && *cfg.mode != "per-point")
                throw DomainError("config.mode must be 'uniform' or 'per-point'");
        }
        if (c.contains("rho_window")) cfg.rho_window = json_long(c.at("rho_window"), "config.rho_window");
        if (c.contains("s_window")) cfg.s_window = json_long(c.at("s_window"), "config.s_window");
        if (c.contains("tau_window")) cfg.tau_window = json_long(c.at("tau_window"), "config.tau_window");
        if (c.contains("window_slack")) cfg.window_slack = json_long(c.at("window_slack"), "config.window_slack");
        if (c.contains("max_spairs")) cfg.max_spairs = json_u64(c.at("max_spairs"), "config.max_spairs");
        if (c.contains("max_coefficient_bits"))
            cfg.max_coefficient_bits = json_u64(c.at("max_coefficient_bits"), "config.max_coefficient_bits");
        if (c.contains("seed")) cfg.seed = json_u64(c.at("seed"), "config.seed");
        if (c.contains("factor_max_digits"))
            cfg.factor_max_digits = static_cast<unsigned>(json_u64(c.at("factor_max_digits"), "config.factor_max_digits"));
    }
    return p;
}

Problem load_problem(const std::string& path) { return parse_problem(load_json(path)); }

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw InternalError("SHA-256 computation failed");
    std::string out;
    char buf[3];
    for (unsigned int k = 0; k < len; ++k) {
        std::snprintf(buf, sizeof buf, "%02x", digest[k]);
        out += buf;
    }
    return out;
}

Json canonical_input(const Problem& p) {
    return {{"F", p.F.to_string()},
            {"Fbar", p.Fbar.to_string()},
            {"phi", Json::array({p.phi[0].to_string(), p.phi[1].to_string(), p.phi[2].to_string()})}};
}

std::string problem_hash(const Problem& p) { return sha256_hex(canonical_input(p).dump()); }

PipelineOptions effective_options(const Problem& p, const RunOverrides& o) {
    PipelineOptions opt;
    const ProblemConfig& c = p.config;
    opt.mode = o.mode.value_or(c.mode.value_or(opt.mode));
    if (opt.mode != "uniform" && opt.mode != "per-point") throw DomainError("mode must be 'uniform' or 'per-point'");
    opt.jobs = std::max(1u, o.jobs);
    opt.seed = o.seed.value_or(c.seed.value_or(opt.seed));
    opt.window_slack = o.window_slack.value_or(c.window_slack.value_or(opt.window_slack));
    opt.rho_window = c.rho_window;
    opt.s_window = c.s_window;
    opt.tau_window = c.tau_window;
    opt.groebner.max_spairs = o.max_spairs.value_or(c.max_spairs.value_or(opt.groebner.max_spairs));
    opt.groebner.max_coefficient_bits = c.max_coefficient_bits.value_or(opt.groebner.max_coefficient_bits);
    if (c.factor_max_digits) opt.factor.max_digits = *c.factor_max_digits;
    return opt;
}

Json hypotheses_json(const std::vector<HypothesisCheck>& checks) {
    Json out = Json::array();
    for (const auto& h : checks) out.push_back({{"name", h.name}, {"status", h.status}, {"detail", h.detail}});
    return out;
}

bool hypotheses_pass(const std::vector<HypothesisCheck>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const HypothesisCheck& h) { return h.status == "pass"; });
}

Json height_json(const HeightValue& h) { return {{"exact", int_json(h.exact)}, {"log2", log_json(h.log2)}}; }

HeightValue height_from_json(const Json& j) {
    BigInt v = json_int(j.at("exact"));
    if (v < 1) throw DomainError("height must be a positive integer");
    return make_height(v);
}

Json chart_json(const ChartResult& c) {
    Json checks = Json::array();
    for (const auto& d : c.degree_checks)
        checks.push_back({{"name", d.name},
                          {"value", int_json(d.value)},
                          {"bound", int_json(d.bound)},
                          {"strict", d.strict},
                          {"holds", d.holds()}});
    Json cands = Json::array();
    for (const auto& e : c.candidates)
        cands.push_back({{"kind", e.kind}, {"value", int_json(e.value)}, {"verdict", e.verdict}});
    return {{"chart", int_json(c.i)},
            {"j", int_json(c.j)},
            {"k", int_json(c.k)},
            {"coordinates", Json::array({c.xj, c.xk})},
            {"rho", int_json(c.rho)},
            {"s", int_json(c.s)},
            {"r", int_json(c.r)},
            {"tau", int_json(c.tau)},
            {"windows", {{"rho", int_json(c.rho_window)}, {"s", int_json(c.s_window)}, {"tau", int_json(c.tau_window)}}},
            {"relation", relation_json(c.relation)},
            {"relation_twisted", relation_json(c.relation_twisted)},
            {"P", minpoly_json(c.P)},
            {"Pi", minpoly_json(c.Pi)},
            {"D", c.D.to_string()},
            {"Sigma", c.Sigma.to_string()},
            {"F_i", c.F_i.to_string()},
            {"a", int_json(c.a)},
            {"b", int_json(c.b)},
            {"c", int_json(c.c)},
            {"certificate",
             {{"cofactors", poly_list(c.certificate.cofactors)},
              {"A", int_json(c.certificate.A)},
              {"A_bits", int_json(BigInt(static_cast<unsigned long>(bit_length(c.certificate.A))))},
              {"identity_verified", c.identity_verified}}},
            {"degree_checks", checks},
            {"candidates", cands},
            {"warnings", c.warnings}};
}

Json run_json(const RamificationReport& r) {
    Json charts = Json::array();
    for (const auto& c : r.charts) charts.push_back(chart_json(c));
    Json S = Json::array();
    for (const auto& e : r.S) {
        Json ch = Json::array();
        for (int i : e.charts) ch.push_back(int_json(i));
        S.push_back({{"prime", int_json(e.prime)}, {"charts", ch}, {"certified", e.certified}});
    }
    Json bounds = {
        {"final_log2", log_json(r.final_bound.log2)},
        {"prime_power_part", r.final_bound.prime_power_part ? int_json(*r.final_bound.prime_power_part) : Json(nullptr)},
        {"structural",
         {{"exponent_coefficient", int_json(r.structural.exponent_coefficient)},
          {"bracket_log2", log_json(r.structural.bracket_log2)},
          {"E_log2", log_json(r.structural.E_log2)},
          {"omega", int_json(r.structural.omega)}}}};
    return {{"point", r.point ? point_json(*r.point) : Json(nullptr)},
            {"charts", charts},
            {"S", S},
            {"S_complete", r.S_complete},
            {"unfactored", int_json(r.unfactored)},
            {"bounds", bounds}};
}

Json build_report(const Problem& p, const PlaneMorphism& phi, const std::vector<HypothesisCheck>& checks,
                  const PipelineOptions& options, const std::vector<RamificationReport>& runs) {
    Json runs_json = Json::array();
    for (const auto& r : runs) runs_json.push_back(run_json(r));
    auto opt_long = [](const std::optional<long>& v) { return v ? int_json(*v) : Json(nullptr); };
    Json config = {{"mode", options.mode},
                   {"seed", int_json(BigInt(std::to_string(options.seed)))},
                   {"window_slack", int_json(options.window_slack)},
                   {"rho_window", opt_long(options.rho_window)},
                   {"s_window", opt_long(options.s_window)},
                   {"tau_window", opt_long(options.tau_window)},
                   {"max_spairs", int_json(BigInt(std::to_string(options.groebner.max_spairs)))},
                   {"max_coefficient_bits", int_json(BigInt(std::to_string(options.groebner.max_coefficient_bits)))},
                   {"factor_max_digits", int_json(options.factor.max_digits)}};
    Json geometry = {{"N", int_json(phi.target.N)},
                     {"Nbar", int_json(phi.source.N)},
                     {"M", int_json(phi.M)},
                     {"m", int_json(phi.m)},
                     {"genus_C", int_json(plane_genus(phi.target.N))},
                     {"genus_Cbar", int_json(plane_genus(phi.source.N))},
                     {"unramified", is_unramified(phi)},
                     {"hypotheses", hypotheses_json(checks)},
                     {"absolutely_irreducible",
                      {{"attested", p.absolutely_irreducible ? Json(*p.absolutely_irreducible) : Json(nullptr)},
                       {"basis", "nonsingular plane curves are absolutely irreducible"}}}};
    const RamificationReport& first = runs.at(0);
    Json heights = {{"H_F", height_json(first.H_F)},
                    {"H_Fbar", height_json(first.H_Fbar)},
                    {"H_Phi", height_json(first.H_Phi)}};
    return {{"format", kReportFormat},
            {"problem_hash", problem_hash(p)},
            {"input", canonical_input(p)},
            {"config", config},
            {"geometry", geometry},
            {"heights", heights},
            {"runs", runs_json}};
}

VerificationContext context_from_report(const Json& report, const std::optional<std::array<BigInt, 3>>& point) {
    try {
        if (report.at("format") != kReportFormat) throw DomainError("unsupported report format");
        const Json& runs = report.at("runs");
        const Json* run = nullptr;
        for (const auto& r : runs) {
            if (r.at("point").is_null()) {
                run = &r;
                break;
            }
            if (!point) continue;
            std::array<BigInt, 3> q;
            for (int l = 0; l < 3; ++l) q[l] = json_int(r.at("point")[l]);
            if (q == *point) {
                run = &r;
                break;
            }
        }
        if (!run)
            throw DomainError("report has no run for point " +
                              (point ? "(" + to_string((*point)[0]) + ":" + to_string((*point)[1]) + ":" +
                                           to_string((*point)[2]) + ")"
                                     : std::string("(uniform)")));
        VerificationContext ctx;
        for (const auto& e : run->at("S")) ctx.S.push_back(json_int(e.at("prime")));
        std::sort(ctx.S.begin(), ctx.S.end());
        ctx.S_complete = run->at("S_complete").get<bool>();
        ctx.unfactored = json_int(run->at("unfactored"));
        const Json& g = report.at("geometry");
        ctx.m = static_cast<int>(json_long(g.at("m"), "m"));
        ctx.M = static_cast<int>(json_long(g.at("M"), "M"));
        ctx.Nbar = static_cast<int>(json_long(g.at("Nbar"), "Nbar"));
        const Json& h = report.at("heights");
        ctx.H_F = height_from_json(h.at("H_F"));
        ctx.H_Fbar = height_from_json(h.at("H_Fbar"));
        ctx.H_Phi = height_from_json(h.at("H_Phi"));
        return ctx;
    } catch (const Json::exception& e) {
        throw DomainError(std::string("malformed report: ") + e.what());
    }
}

Json verification_json(const PointVerification& v) {
    Json comps = Json::array();
    for (const auto& cc : v.components) {
        const FiberComponent& f = cc.component;
        Json tried = Json::array();
        for (const auto& g : f.generators_tried) tried.push_back(zvec_to_string(g));
        Json source = Json::array();
        for (const auto& q : f.source_point) source.push_back(q.to_string("theta"));
        comps.push_back({{"g", zvec_to_string(f.g)},
                         {"degree", int_json(f.degree)},
                         {"disc_g", int_json(f.disc_g)},
                         {"ramified", strings(f.ramified)},
                         {"undetermined", strings(f.undetermined)},
                         {"field_discriminant", f.field_discriminant ? int_json(*f.field_discriminant) : Json(nullptr)},
                         {"generators_tried", tried},
                         {"factor", f.factor_q.to_string("T")},
                         {"source_point", source},
                         {"missing_from_S", strings(cc.missing)},
                         {"unresolved", strings(cc.unresolved)},
                         {"disc_log2", log_json(cc.disc_log2)},
                         {"disc_is_proxy", cc.disc_is_proxy},
                         {"final_bound_holds", cc.final_bound_holds},
                         {"fiber_bound_holds", cc.fiber_bound_holds},
                         {"verdict", verdict_name(cc.verdict)}});
    }
    return {{"point", point_json(v.point.a)},
            {"H_P", height_json(v.H_P)},
            {"zero_coordinate", v.zero_coordinate},
            {"height_shortcut", v.height_shortcut},
            {"fiber_bound_log2", log_json(v.fiber_log2)},
            {"final_bound_log2", log_json(v.final_log2)},
            {"fiber",
             {{"chart", int_json(v.fiber.chart)},
              {"shift_a", int_json(v.fiber.shift_a)},
              {"shift_b", int_json(v.fiber.shift_b)},
              {"c", int_json(v.fiber.c)},
              {"polynomial", v.fiber.fiber_polynomial.to_string("T")},
              {"degree_sum", int_json(v.fiber.degree_sum)}}},
            {"components", comps},
            {"verdict", verdict_name(v.verdict)}};
}

}  // namespace cw
