#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cw/fiber.hpp"
#include "cw/geometry.hpp"
#include "cw/pipeline.hpp"

namespace cw {

using Json = nlohmann::json;

inline constexpr const char* kReportFormat = "cw-report/1";

// Overrides read from the "config" object of a problem file. Unset fields
// keep the PipelineOptions defaults.
struct ProblemConfig {
    std::optional<std::string> mode;
    std::optional<long> rho_window, s_window, tau_window;
    std::optional<long> window_slack;
    std::optional<std::size_t> max_spairs;
    std::optional<std::size_t> max_coefficient_bits;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> factor_max_digits;
};

struct Problem {
    std::string F_text, Fbar_text;
    std::array<std::string, 3> phi_text;
    MultiPoly F, Fbar;
    std::array<MultiPoly, 3> phi;
    std::vector<std::array<BigInt, 3>> points;  // as given, not yet normalized
    std::optional<bool> absolutely_irreducible;
    ProblemConfig config;
};

// Throws ParseError for polynomial syntax and DomainError for structural
// problems (missing keys, wrong types, malformed integers).
Problem parse_problem(const Json& j);
Problem load_problem(const std::string& path);
Json load_json(const std::string& path);

// Sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const Json& j);
std::string sha256_hex(const std::string& data);

// {"F", "Fbar", "phi"} with each form in canonical text.
Json canonical_input(const Problem& p);
// SHA-256 of the compact dump of canonical_input.
std::string problem_hash(const Problem& p);

// Command-line flags override the problem's config block.
struct RunOverrides {
    std::optional<std::string> mode;
    std::optional<std::size_t> max_spairs;
    std::optional<std::uint64_t> seed;
    std::optional<long> window_slack;
    unsigned jobs = 1;
};
PipelineOptions effective_options(const Problem& p, const RunOverrides& o);

Json hypotheses_json(const std::vector<HypothesisCheck>& checks);
bool hypotheses_pass(const std::vector<HypothesisCheck>& checks);

Json height_json(const HeightValue& h);
HeightValue height_from_json(const Json& j);
Json chart_json(const ChartResult& c);
Json run_json(const RamificationReport& r);

// Full pipeline report. `jobs` is deliberately not recorded.
Json build_report(const Problem& p, const PlaneMorphism& phi, const std::vector<HypothesisCheck>& checks,
                  const PipelineOptions& options, const std::vector<RamificationReport>& runs);

// Verification context for `point` read back from report JSON: the run whose
// point matches in per-point mode, the single uniform run otherwise.
VerificationContext context_from_report(const Json& report, const std::optional<std::array<BigInt, 3>>& point);

Json verification_json(const PointVerification& v);

// Integer as a JSON decimal string; plain JSON integers are accepted on input.
Json int_json(const BigInt& v);
BigInt json_int(const Json& j);

}  // namespace cw
