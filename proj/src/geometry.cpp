#include "cw/geometry.hpp"

#include <map>
#include <random>

#include "cw/errors.hpp"
#include "cw/factor_upoly.hpp"
#include "cw/parse.hpp"
#include "cw/upoly.hpp"

namespace cw {

const Vars& plane_vars() {
    static const Vars v = {"x", "y", "z"};
    return v;
}

MultiPoly parse_plane_form(const std::string& text) {
    static const Vars with_aliases = {"x", "y", "z", "x1", "x2", "x3"};
    MultiPoly p = parse_poly(text, with_aliases);
    const Vars& v = plane_vars();
    std::map<std::string, MultiPoly> repl = {{"x1", MultiPoly::variable(v, "x")},
                                             {"x2", MultiPoly::variable(v, "y")},
                                             {"x3", MultiPoly::variable(v, "z")}};
    for (const auto& name : v) repl[name] = MultiPoly::variable(v, name);
    return p.substitute(repl, v);
}

ChartIndices chart_indices(int i) {
    switch (i) {
        case 1:
            return {1, 2, 3};
        case 2:
            return {2, 1, 3};
        case 3:
            return {3, 1, 2};
        default:
            throw DomainError("chart index must be 1, 2 or 3");
    }
}

PlaneCurve PlaneCurve::make(const MultiPoly& F0) {
    MultiPoly F = F0.embed(plane_vars());
    if (F.is_zero() || F.is_constant()) throw DomainError("curve equation must be a nonconstant form");
    if (!F.is_homogeneous()) throw DomainError("curve equation is not homogeneous");
    PlaneCurve c;
    c.F = F.primitive_part();
    c.N = F.total_degree();
    return c;
}

MultiPoly PlaneCurve::chart_equation(int i) const { return dehomogenize(F, i); }

namespace {

std::vector<MultiPoly> partials(const MultiPoly& F) {
    std::vector<MultiPoly> out;
    for (const auto& v : plane_vars()) out.push_back(F.derivative(v));
    return out;
}

MultiPoly compose_forms(const MultiPoly& G, const std::array<MultiPoly, 3>& forms) {
    const Vars& v = plane_vars();
    std::map<std::string, MultiPoly> repl;
    for (int l = 0; l < 3; ++l) repl[v[l]] = forms[l].embed(v);
    return G.embed(v).substitute(repl, v);
}

bool divisible(const MultiPoly& a, const MultiPoly& b) { return a.divide(b).second.is_zero(); }

bool has_base_point(const PlaneCurve& source, const std::array<MultiPoly, 3>& forms, const GroebnerOptions& options) {
    for (int i = 1; i <= 3; ++i) {
        std::vector<MultiPoly> sys = {source.chart_equation(i)};
        for (const auto& f : forms) sys.push_back(dehomogenize(f.embed(plane_vars()), i));
        if (has_common_zero(sys, options)) return true;
    }
    return false;
}

MultiPoly linear_substitute(const MultiPoly& G, const std::array<std::array<BigInt, 3>, 3>& A) {
    const Vars& v = plane_vars();
    std::map<std::string, MultiPoly> repl;
    for (int r = 0; r < 3; ++r) {
        MultiPoly e(v);
        for (int c = 0; c < 3; ++c)
            if (A[r][c] != 0) e += MultiPoly::variable(v, v[c]) * BigRat(A[r][c]);
        repl[v[r]] = e;
    }
    return G.embed(v).substitute(repl, v);
}

}  // namespace

bool is_nonsingular(const PlaneCurve& C, const GroebnerOptions& options) {
    auto grad = partials(C.F);
    for (int i = 1; i <= 3; ++i) {
        std::vector<MultiPoly> sys = {C.chart_equation(i)};
        for (const auto& g : grad) sys.push_back(dehomogenize(g, i));
        if (has_common_zero(sys, options)) return false;
    }
    return true;
}

bool line_section_irreducible(const PlaneCurve& C, std::uint64_t seed, int tries) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-3, 3);
    const Vars& v = plane_vars();
    Vars tv = {"t"};
    for (int attempt = 0; attempt < tries; ++attempt) {
        std::map<std::string, MultiPoly> repl;
        for (const auto& name : v) {
            MultiPoly line = MultiPoly::constant(tv, dist(rng)) + MultiPoly::variable(tv, "t") * BigRat(dist(rng));
            repl[name] = line;
        }
        QPoly section = QPoly::from_multipoly(C.F.substitute(repl, tv), "t");
        if (section.degree() != C.N) continue;
        if (is_irreducible_Q(section)) return true;
    }
    return false;
}

int plane_genus(int degree) { return (degree - 1) * (degree - 2) / 2; }

bool genus_equality(int N, int Nbar, int m) { return Nbar * (Nbar - 3) == m * N * (N - 3); }

bool is_unramified(const PlaneMorphism& phi) { return genus_equality(phi.target.N, phi.source.N, phi.m); }

PlaneMorphism validate_morphism(const PlaneCurve& source, const PlaneCurve& target,
                                const std::array<MultiPoly, 3>& forms0, const GroebnerOptions& options) {
    std::array<MultiPoly, 3> forms;
    for (int l = 0; l < 3; ++l) {
        forms[l] = forms0[l].embed(plane_vars());
        if (forms[l].is_zero()) throw ValidationError("form phi" + std::to_string(l + 1) + " is zero");
        if (!forms[l].is_homogeneous())
            throw ValidationError("form phi" + std::to_string(l + 1) + " is not homogeneous");
    }
    int M = forms[0].total_degree();
    if (forms[1].total_degree() != M || forms[2].total_degree() != M)
        throw ValidationError("forms have distinct degrees " + std::to_string(forms[0].total_degree()) + ", " +
                              std::to_string(forms[1].total_degree()) + ", " + std::to_string(forms[2].total_degree()));
    if (M < 1) throw ValidationError("forms must have degree at least 1");
    MultiPoly g = gcd(gcd(forms[0], forms[1]), forms[2]);
    if (!g.is_constant()) throw ValidationError("forms are not relatively prime: common factor " + g.to_string());
    if (!divisible(compose_forms(target.F, forms), source.F))
        throw ValidationError("F(phi1, phi2, phi3) is not divisible by Fbar: the forms do not map the source into the target");
    if (has_base_point(source, forms, options))
        throw ValidationError("forms do not define a morphism everywhere (common zero on the source); adjust by multiples of Fbar");
    if ((M * source.N) % target.N != 0)
        throw ValidationError("mapping degree M*Nbar/N = " + std::to_string(M * source.N) + "/" +
                              std::to_string(target.N) + " is not an integer");
    PlaneMorphism out;
    out.source = source;
    out.target = target;
    out.phi = forms;
    out.M = M;
    out.m = M * source.N / target.N;
    return out;
}

std::vector<HypothesisCheck> check_hypotheses(const MultiPoly& F0, const MultiPoly& Fbar0,
                                              const std::array<MultiPoly, 3>& forms,
                                              const GroebnerOptions& options) {
    std::vector<HypothesisCheck> out;
    auto record = [&](const std::string& name, bool ok, const std::string& detail) {
        out.push_back({name, ok ? "pass" : "fail", detail});
    };
    auto skip = [&](const std::string& name, const std::string& why) { out.push_back({name, "skipped", why}); };

    std::optional<PlaneCurve> C, Cbar;
    try {
        C = PlaneCurve::make(F0);
        record("target_is_form", true, "N = " + std::to_string(C->N));
    } catch (const Error& e) {
        record("target_is_form", false, e.what());
    }
    try {
        Cbar = PlaneCurve::make(Fbar0);
        record("source_is_form", true, "Nbar = " + std::to_string(Cbar->N));
    } catch (const Error& e) {
        record("source_is_form", false, e.what());
    }
    if (C) record("target_nonsingular", is_nonsingular(*C, options), "F and its gradient have no common projective zero");
    else skip("target_nonsingular", "target equation invalid");
    if (Cbar)
        record("source_nonsingular", is_nonsingular(*Cbar, options),
               "Fbar and its gradient have no common projective zero");
    else skip("source_nonsingular", "source equation invalid");

    int M = -1;
    bool equal_degrees = true, homogeneous = true;
    for (const auto& f : forms) {
        MultiPoly e = f.embed(plane_vars());
        if (e.is_zero() || !e.is_homogeneous()) homogeneous = false;
        int d = e.total_degree();
        if (M < 0) M = d;
        else if (d != M) equal_degrees = false;
    }
    record("forms_homogeneous_equal_degree", homogeneous && equal_degrees && M >= 1,
           "degrees " + std::to_string(forms[0].total_degree()) + ", " + std::to_string(forms[1].total_degree()) +
               ", " + std::to_string(forms[2].total_degree()));
    if (C && Cbar && homogeneous && equal_degrees && M >= 1) {
        try {
            PlaneMorphism phi = validate_morphism(*Cbar, *C, forms, options);
            record("morphism_valid", true, "relatively prime, base-point free, maps Cbar into C; M = " +
                                               std::to_string(phi.M) + ", m = " + std::to_string(phi.m));
        } catch (const ValidationError& e) {
            record("morphism_valid", false, e.what());
        }
    } else {
        skip("morphism_valid", "requires valid curve equations and forms of equal degree");
    }
    if (C && Cbar && M >= 1) {
        int N = C->N, Nbar = Cbar->N;
        bool integral = (M * Nbar) % N == 0;
        if (!integral) {
            record("mapping_degree", false, "M*Nbar/N is not an integer");
            skip("degree_greater_than_one", "mapping degree undefined");
            skip("unramified", "mapping degree undefined");
        } else {
            int m = M * Nbar / N;
            record("mapping_degree", true, "m = M*Nbar/N = " + std::to_string(m));
            record("degree_greater_than_one", m > 1, "m = " + std::to_string(m));
            record("positive_genus", N >= 3 && Nbar >= N,
                   "requires Nbar >= N >= 3; genus(C) = " + std::to_string(plane_genus(N)) +
                       ", genus(Cbar) = " + std::to_string(plane_genus(Nbar)));
            int lhs = Nbar * (Nbar - 3), rhs = m * N * (N - 3);
            record("unramified", lhs == rhs,
                   "Riemann-Hurwitz genus condition Nbar(Nbar-3) = m N(N-3): " + std::to_string(lhs) +
                       (lhs == rhs ? " = " : " != ") + std::to_string(rhs));
        }
    } else {
        skip("mapping_degree", "requires valid curve equations and forms");
        skip("degree_greater_than_one", "requires valid curve equations and forms");
        skip("positive_genus", "requires valid curve equations");
        skip("unramified", "requires valid curve equations and forms");
    }
    return out;
}

CoordinateChange CoordinateChange::make(int i, const BigInt& s, const BigInt& r) {
    ChartIndices c = chart_indices(i);
    int I = c.i - 1, J = c.j - 1, K = c.k - 1;
    CoordinateChange chi;
    chi.i = i;
    chi.s = s;
    chi.r = r;
    for (auto& row : chi.matrix) row.fill(0);
    for (auto& row : chi.inverse) row.fill(0);
    chi.matrix[J][I] = 1;
    chi.matrix[K][J] = 1;
    chi.matrix[I][K] = 1;
    chi.matrix[I][J] = s;
    chi.matrix[I][I] = r;
    chi.inverse[I][J] = 1;
    chi.inverse[J][K] = 1;
    chi.inverse[K][I] = 1;
    chi.inverse[K][K] = -s;
    chi.inverse[K][J] = -r;
    return chi;
}

MultiPoly CoordinateChange::pull(const MultiPoly& G) const { return linear_substitute(G, inverse); }

MultiPoly CoordinateChange::push(const MultiPoly& G) const { return linear_substitute(G, matrix); }

PlaneMorphism apply_change(const CoordinateChange& chi, const PlaneMorphism& phi) {
    PlaneMorphism out = phi;
    out.source = PlaneCurve::make(chi.pull(phi.source.F));
    for (int l = 0; l < 3; ++l) out.phi[l] = chi.pull(phi.phi[l]);
    if (!divisible(compose_forms(out.target.F, out.phi), out.source.F))
        throw InternalError("transformed morphism no longer maps into the target");
    return out;
}

}  // namespace cw
