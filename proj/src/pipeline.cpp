#include "cw/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <map>
#include <unordered_map>

#include "cw/errors.hpp"
#include "cw/linalg.hpp"

namespace cw {

namespace {

// Progress lines on stderr when CW_TRACE is set in the environment.
void trace(const std::string& line) {
    static const bool on = std::getenv("CW_TRACE") != nullptr;
    if (on) std::fprintf(stderr, "[cw] %s\n", line.c_str());
}

// g with every factor shared with h removed.
QPoly strip_common(QPoly g, const QPoly& h) {
    if (h.is_zero()) return QPoly::constant(1);
    while (g.degree() > 0) {
        QPoly c = gcd(g, h);
        if (c.degree() <= 0) break;
        g = g.divide_exact(c);
    }
    return g;
}

MultiPoly substitute_plane(const MultiPoly& G, const std::map<std::string, MultiPoly>& repl, const Vars& ring) {
    return G.embed(plane_vars()).substitute(repl, ring);
}

// phi_i^{D} * p(phi_j/phi_i, phi_k/phi_i) for a polynomial p in (xj, xk), and
// U -> `uval`, reduced modulo the source chart ideal at every multiplication.
class SourceReducer {
public:
    explicit SourceReducer(const ChartData& cd) : cd_(cd) {
        basis_ = buchberger({cd.source_chart}, MonomialOrder::grevlex());
    }
    MultiPoly nf(const MultiPoly& p) const { return normal_form(p, basis_); }
    const IdealBasis& basis() const { return basis_; }

    const MultiPoly& power(int which, int e) {
        auto& cache = which == 0 ? pj_ : which == 1 ? pk_ : pi_;
        const MultiPoly& base = which == 0 ? cd_.phi_j : which == 1 ? cd_.phi_k : cd_.phi_i;
        if (cache.empty()) cache.push_back(MultiPoly::constant(base.vars(), 1));
        while (static_cast<int>(cache.size()) <= e) cache.push_back(nf(cache.back() * base));
        return cache[e];
    }

private:
    const ChartData& cd_;
    IdealBasis basis_;
    std::vector<MultiPoly> pj_, pk_, pi_;
};

// f(X) homogenized and evaluated at (phi_j, phi_i): phi_i^{deg f} f(phi_j/phi_i).
MultiPoly homogenized_integralizer(const QPoly& f, SourceReducer& red) {
    int df = f.degree();
    MultiPoly out;
    for (int c = 0; c <= df; ++c) {
        if (f.coeff(c) == 0) continue;
        MultiPoly term = red.nf(red.power(0, c) * red.power(2, df - c)) * f.coeff(c);
        out = out.is_zero() ? term : out + term;
    }
    return red.nf(out);
}

MultiPoly primitive_element(const ChartData& cd, const BigInt& rho) {
    Vars v = cd.source_chart.vars();
    return MultiPoly::variable(v, cd.xk) + MultiPoly::variable(v, cd.xj) * BigRat(rho);
}

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_cmp(a, b, 0, kMaxVars) < 0; }
};

}  // namespace

ChartData chart_data(const PlaneMorphism& phi, int i) {
    ChartIndices ix = chart_indices(i);
    const Vars& v = plane_vars();
    ChartData cd;
    cd.i = ix.i;
    cd.j = ix.j;
    cd.k = ix.k;
    cd.xj = v[ix.j - 1];
    cd.xk = v[ix.k - 1];
    cd.source_chart = dehomogenize(phi.source.F, i);
    cd.target_chart = dehomogenize(phi.target.F, i);
    Vars chart_vars = {cd.xj, cd.xk};
    cd.source_chart = cd.source_chart.embed(chart_vars);
    cd.target_chart = cd.target_chart.embed(chart_vars);
    cd.phi_i = dehomogenize(phi.phi[ix.i - 1], i).embed(chart_vars);
    cd.phi_j = dehomogenize(phi.phi[ix.j - 1], i).embed(chart_vars);
    cd.phi_k = dehomogenize(phi.phi[ix.k - 1], i).embed(chart_vars);
    return cd;
}

bool rho_avoids_line_points(const PlaneMorphism& phi, int i, const BigInt& rho) {
    ChartIndices ix = chart_indices(i);
    std::vector<BigRat> pt(3);
    pt[ix.i - 1] = 0;
    pt[ix.j - 1] = 1;
    pt[ix.k - 1] = BigRat(-rho);
    return phi.source.F.embed(plane_vars()).evaluate(pt) != 0;
}

EliminationRelation elimination_relation(const PlaneMorphism& phi, int i, const BigInt& rho) {
    ChartIndices ix = chart_indices(i);
    const Vars& v = plane_vars();
    Vars ring = {"X", "U", "V"};
    MultiPoly X = MultiPoly::variable(ring, "X"), U = MultiPoly::variable(ring, "U"),
              V = MultiPoly::variable(ring, "V");
    std::map<std::string, MultiPoly> src = {{v[ix.i - 1], MultiPoly::constant(ring, 1)},
                                            {v[ix.j - 1], V},
                                            {v[ix.k - 1], U - V * BigRat(rho)}};
    std::array<MultiPoly, 3> ph;
    for (int l = 0; l < 3; ++l) ph[l] = substitute_plane(phi.phi[l], src, ring);
    MultiPoly Fbar1 = substitute_plane(phi.source.F, src, ring);
    std::map<std::string, MultiPoly> tgt = {{v[ix.j - 1], X * ph[ix.i - 1]},
                                            {v[ix.k - 1], ph[ix.k - 1]},
                                            {v[ix.i - 1], ph[ix.i - 1]}};
    MultiPoly E = substitute_plane(phi.target.F, tgt, ring);
    MultiPoly G = resultant_interpolation(E, Fbar1, "V");
    if (G.is_zero())
        throw DomainError("elimination resultant vanishes identically: irreducibility hypotheses are violated");
    EliminationRelation out;
    out.G = G.embed({"X", "U"}).primitive_part();
    out.deg_X = out.G.degree_in("X");
    out.deg_U = out.G.degree_in("U");
    out.g0 = QPoly::from_multipoly(out.G.leading_coefficient_in("U").embed({"X"}), "X");

    // G(phi_j/phi_i, u) * phi_i^{deg_X} must vanish on the source chart.
    ChartData cd = chart_data(phi, i);
    SourceReducer red(cd);
    MultiPoly u = primitive_element(cd, rho);
    std::vector<MultiPoly> xpow;
    for (int a = 0; a <= out.deg_X; ++a) xpow.push_back(red.nf(red.power(0, a) * red.power(2, out.deg_X - a)));
    std::vector<MultiPoly> by_u(out.deg_U + 1, MultiPoly(cd.source_chart.vars()));
    for (const auto& t : out.G.terms()) by_u[t.mono[1]] += xpow[t.mono[0]] * t.coef;
    // Horner in u.
    MultiPoly acc(cd.source_chart.vars());
    for (int r = out.deg_U; r >= 0; --r) acc = red.nf(acc * u + by_u[r]);
    out.vanishes_on_source = acc.is_zero();
    return out;
}

QPoly pole_locus(const PlaneMorphism& phi, int i) {
    ChartIndices ix = chart_indices(i);
    const Vars& v = plane_vars();
    Vars tv = {"T", "X"};
    MultiPoly T = MultiPoly::variable(tv, "T"), X = MultiPoly::variable(tv, "X");
    std::map<std::string, MultiPoly> line = {{v[ix.i - 1], MultiPoly(tv)},
                                             {v[ix.j - 1], MultiPoly::constant(tv, 1)},
                                             {v[ix.k - 1], T}};
    QPoly b = QPoly::from_multipoly(substitute_plane(phi.source.F, line, tv), "T");
    MultiPoly pi = substitute_plane(phi.phi[ix.i - 1], line, tv);
    MultiPoly pj = substitute_plane(phi.phi[ix.j - 1], line, tv);
    QPoly out = QPoly::constant(1);
    // Points sent outside the target chart do not matter.
    QPoly finite = strip_common(b, QPoly::from_multipoly(pi, "T"));
    if (finite.degree() > 0) {
        MultiPoly rel = X * pi - pj;
        MultiPoly bt = finite.to_multipoly(tv, "T");
        QPoly r;
        if (rel.degree_in("T") <= 0)
            r = QPoly::from_multipoly(rel, "X").pow(finite.degree());
        else
            r = QPoly::from_multipoly(resultant_interpolation(bt, rel, "T"), "X");
        out = out * r;
    }
    // The point with X_i = X_j = 0 is on the source iff b drops degree.
    if (b.degree() < phi.source.N) {
        std::vector<BigRat> q(3, BigRat(0));
        q[ix.k - 1] = 1;
        BigRat qi = phi.phi[ix.i - 1].embed(v).evaluate(q), qj = phi.phi[ix.j - 1].embed(v).evaluate(q);
        if (qi != 0) out = out * QPoly({-qj / qi, BigRat(1)});
    }
    return out.degree() > 0 ? squarefree_part(out) : QPoly::constant(1);
}

std::vector<QPoly> integralizer_ladder(const QPoly& g0, const QPoly& poles, int max_power) {
    std::vector<QPoly> out = {QPoly::constant(1)};
    if (g0.degree() <= 0) return out;
    QPoly full = g0.monic();
    auto add = [&](const QPoly& q) {
        if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    };
    if (poles.degree() > 0) {
        QPoly power = poles;
        for (int k = 1; k <= max_power; ++k, power = power * poles) add(gcd(full, power));
    }
    QPoly rad = squarefree_part(full);
    QPoly power = rad;
    while (true) {
        QPoly step = gcd(full, power);
        add(step);
        if (step == full) break;
        power = power * rad;
    }
    return out;
}

MinimalPolynomialResult minimal_polynomial_chart(const PlaneMorphism& phi, int i, const BigInt& rho,
                                                 const std::vector<QPoly>& ladder) {
    ChartData cd = chart_data(phi, i);
    SourceReducer red(cd);
    const int m = phi.m;
    const Vars src_vars = cd.source_chart.vars();
    const Vars p_vars = {cd.xj, cd.xk, "U"};
    IdealBasis target_basis = buchberger({cd.target_chart}, MonomialOrder::grevlex());
    Monomial lm_target = target_basis.leading_monomial(0);
    MultiPoly u = primitive_element(cd, rho);

    MinimalPolynomialResult res;
    for (std::size_t rung = 0; rung < ladder.size(); ++rung) {
        const QPoly& f = ladder[rung];
        const int df = f.degree();
        const int e = phi.source.N + df;
        const int Dx = m * e;
        MultiPoly fh = homogenized_integralizer(f, red);
        MultiPoly base = red.nf(u * fh);
        // W[l] = (u fh)^{m-l}
        std::vector<MultiPoly> W(m + 1);
        W[m] = MultiPoly::constant(src_vars, 1);
        for (int l = m - 1; l >= 0; --l) W[l] = red.nf(W[l + 1] * base);

        struct Unknown {
            int l;
            Monomial mono;  // in (xj, xk)
        };
        std::vector<Unknown> unknowns;
        std::vector<MultiPoly> columns;
        std::map<std::pair<int, int>, MultiPoly> jk_cache;
        for (int l = 1; l <= m; ++l) {
            for (int d = 0; d <= l * e; ++d) {
                MultiPoly R = red.nf(red.power(2, Dx - d - (m - l) * df) * W[l]);
                for (int a = d; a >= 0; --a) {
                    int b = d - a;
                    Monomial mono;
                    mono.set(0, a);
                    mono.set(1, b);
                    if (lm_target.divides(mono)) continue;
                    auto key = std::make_pair(a, b);
                    auto it = jk_cache.find(key);
                    if (it == jk_cache.end())
                        it = jk_cache.emplace(key, red.nf(red.power(0, a) * red.power(1, b))).first;
                    columns.push_back(red.nf(it->second * R));
                    unknowns.push_back({l, mono});
                }
            }
        }
        MultiPoly rhs = -red.nf(red.power(2, Dx - m * df) * W[0]);

        std::map<Monomial, std::size_t, MonomialLess> rows;
        auto collect = [&](const MultiPoly& p) {
            for (const auto& t : p.terms()) rows.emplace(t.mono, 0);
        };
        for (const auto& c : columns) collect(c);
        collect(rhs);
        std::size_t r = 0;
        for (auto& kv : rows) kv.second = r++;
        std::vector<std::vector<BigRat>> Aq(rows.size(), std::vector<BigRat>(columns.size(), BigRat(0)));
        std::vector<BigRat> bq(rows.size(), BigRat(0));
        for (std::size_t c = 0; c < columns.size(); ++c)
            for (const auto& t : columns[c].terms()) Aq[rows[t.mono]][c] = t.coef;
        for (const auto& t : rhs.terms()) bq[rows[t.mono]] = t.coef;
        Matrix<BigInt> A(rows.size(), std::vector<BigInt>(columns.size()));
        std::vector<BigInt> b(rows.size());
        for (std::size_t row = 0; row < rows.size(); ++row) {
            std::vector<BigRat> all = Aq[row];
            all.push_back(bq[row]);
            BigInt den = common_denominator(all);
            for (std::size_t c = 0; c < columns.size(); ++c)
                A[row][c] = Aq[row][c].get_num() * (den / Aq[row][c].get_den());
            b[row] = bq[row].get_num() * (den / bq[row].get_den());
        }
        res.unknowns = unknowns.size();
        res.equations = rows.size();
        trace("chart " + std::to_string(i) + " rho " + to_string(rho) + " integralizer " + f.to_string("X") +
              ": solving " + std::to_string(rows.size()) + " x " + std::to_string(unknowns.size()));
        SolveResult sol = exact_solve(A, b);
        trace(std::string("  status ") + (sol.status == SolveStatus::Unique ? "unique" :
                                          sol.status == SolveStatus::Inconsistent ? "inconsistent" : "underdetermined"));
        if (sol.status == SolveStatus::Inconsistent) {
            res.failure = "no integral relation of degree m within the degree cap for integralizer " +
                          f.to_string("X");
            continue;
        }
        if (sol.status == SolveStatus::Underdetermined) {
            res.failure = "primitive element has degree < m over the target function field";
            res.ok = false;
            return res;
        }
        std::vector<Term> terms;
        Monomial lead;
        lead.set(2, m);
        terms.push_back({lead, BigRat(1)});
        for (std::size_t c = 0; c < unknowns.size(); ++c) {
            if (sol.x[c] == 0) continue;
            Monomial mono = unknowns[c].mono;
            mono.set(2, m - unknowns[c].l);
            terms.push_back({mono, sol.x[c]});
        }
        res.P = MultiPoly(p_vars, std::move(terms));
        res.f = f;
        res.rung = rung;
        res.degree_cap = e;
        res.deg_U = res.P.degree_in("U");
        res.max_coeff_degree = 0;
        for (const auto& c : res.P.coefficients_in("U"))
            if (!c.is_zero()) res.max_coeff_degree = std::max(res.max_coeff_degree, c.total_degree());
        res.verified = verify_minimal_polynomial(phi, i, rho, f, res.P);
        if (!res.verified) throw InternalError("minimal polynomial failed substitution check");
        res.ok = true;
        res.failure.clear();
        return res;
    }
    return res;
}

bool verify_minimal_polynomial(const PlaneMorphism& phi, int i, const BigInt& rho, const QPoly& f,
                               const MultiPoly& P0) {
    ChartData cd = chart_data(phi, i);
    SourceReducer red(cd);
    MultiPoly P = P0.embed({cd.xj, cd.xk, "U"});
    const int df = f.degree();
    int Dmax = 0, rmax = 0;
    for (const auto& t : P.terms()) {
        Dmax = std::max(Dmax, static_cast<int>(t.mono[0] + t.mono[1] + t.mono[2] * df));
        rmax = std::max(rmax, static_cast<int>(t.mono[2]));
    }
    MultiPoly base = red.nf(primitive_element(cd, rho) * homogenized_integralizer(f, red));
    std::vector<MultiPoly> bpow = {MultiPoly::constant(cd.source_chart.vars(), 1)};
    for (int r = 1; r <= rmax; ++r) bpow.push_back(red.nf(bpow.back() * base));
    MultiPoly acc(cd.source_chart.vars());
    for (const auto& t : P.terms()) {
        int a = t.mono[0], b = t.mono[1], r = t.mono[2];
        MultiPoly term = red.nf(red.power(0, a) * red.power(1, b));
        term = red.nf(term * red.power(2, Dmax - a - b - r * df));
        acc += red.nf(term * bpow[r]) * t.coef;
    }
    return red.nf(acc).is_zero();
}

MultiPoly chart_discriminant(const MultiPoly& P) {
    MultiPoly D = discriminant(P, "U");
    Vars rest;
    for (const auto& v : P.vars())
        if (v != "U") rest.push_back(v);
    return D.embed(rest);
}

LineCheck line_meets_bad_set(const PlaneMorphism& phi, int i, const BigInt& s, const BigInt& r, const MultiPoly& D0,
                             const std::optional<std::array<BigInt, 3>>& avoid) {
    LineCheck out;
    ChartIndices ix = chart_indices(i);
    const Vars& v = plane_vars();
    Vars tv = {"T"};
    MultiPoly T = MultiPoly::variable(tv, "T");
    std::map<std::string, MultiPoly> line = {{v[ix.i - 1], T},
                                             {v[ix.j - 1], MultiPoly::constant(tv, 1)},
                                             {v[ix.k - 1], MultiPoly::constant(tv, BigRat(-s)) - T * BigRat(r)}};
    QPoly Fl = QPoly::from_multipoly(substitute_plane(phi.source.F, line, tv), "T");
    if (Fl.is_zero()) {
        out.pencil_meets = true;
        return out;
    }
    std::array<QPoly, 3> ph;
    for (int l = 0; l < 3; ++l) ph[l] = QPoly::from_multipoly(substitute_plane(phi.phi[l], line, tv), "T");
    const QPoly& pi = ph[ix.i - 1];
    const QPoly& pj = ph[ix.j - 1];
    const QPoly& pk = ph[ix.k - 1];

    MultiPoly D = D0;
    if (!D.is_zero()) {
        int degD = D.total_degree();
        std::vector<QPoly> pjp = {QPoly::constant(1)}, pkp = {QPoly::constant(1)}, pip = {QPoly::constant(1)};
        for (int e = 1; e <= degD; ++e) {
            pjp.push_back(pjp.back() * pj);
            pkp.push_back(pkp.back() * pk);
            pip.push_back(pip.back() * pi);
        }
        QPoly Dh;
        for (const auto& t : D.terms()) {
            int a = t.mono[0], b = t.mono[1];
            Dh = Dh + pjp[a] * pkp[b] * pip[degD - a - b] * t.coef;
        }
        QPoly g = Dh.is_zero() ? Fl : gcd(Fl, Dh);
        if (strip_common(g, pi).degree() > 0) out.pencil_meets = true;
    }
    std::vector<BigRat> q(3, BigRat(0));
    q[ix.i - 1] = 1;
    q[ix.k - 1] = BigRat(-r);
    bool q_on_curve = phi.source.F.embed(v).evaluate(q) == 0;
    std::array<BigRat, 3> phq;
    for (int l = 0; l < 3; ++l) phq[l] = phi.phi[l].embed(v).evaluate(q);
    if (q_on_curve && phq[ix.i - 1] != 0 && !D.is_zero()) {
        BigRat zj = phq[ix.j - 1] / phq[ix.i - 1], zk = phq[ix.k - 1] / phq[ix.i - 1];
        if (D.evaluate({zj, zk}) == 0) out.base_point_bad = true;
    }
    if (avoid && (*avoid)[ix.i - 1] != 0) {
        BigRat ai((*avoid)[ix.i - 1]), aj((*avoid)[ix.j - 1]), ak((*avoid)[ix.k - 1]);
        QPoly e1 = pj * ai - pi * aj, e2 = pk * ai - pi * ak;
        QPoly g = gcd(gcd(Fl, e1), e2);
        if (g.is_zero()) g = Fl;
        if (strip_common(g, pi).degree() > 0) out.pencil_meets = true;
        if (q_on_curve && phq[ix.i - 1] != 0 && phq[ix.j - 1] * ai == phq[ix.i - 1] * aj &&
            phq[ix.k - 1] * ai == phq[ix.i - 1] * ak)
            out.base_point_bad = true;
    }
    return out;
}

}  // namespace cw

namespace cw {

namespace {

// 0, 1, -1, 2, -2, ... up to |value| <= window.
std::vector<BigInt> scan_order(long window) {
    std::vector<BigInt> out;
    if (window < 0) return out;
    out.push_back(0);
    for (long v = 1; v <= window; ++v) {
        out.push_back(v);
        out.push_back(-v);
    }
    return out;
}

long ipow(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

std::string join_log(const std::vector<CandidateLog>& logs, const std::string& kind) {
    std::string out;
    for (const auto& l : logs) {
        if (l.kind != kind) continue;
        if (!out.empty()) out += "; ";
        out += kind + " = " + to_string(l.value) + ": " + l.verdict;
    }
    return out;
}

bool vanishes_on_curve(const MultiPoly& p, const MultiPoly& curve) {
    IdealBasis b = buchberger({curve}, MonomialOrder::grevlex());
    return normal_form(p.embed(curve.vars()), b).is_zero();
}

}  // namespace

namespace {

void log_candidate(ChartResult& out, CandidateLog entry) {
    trace("chart " + std::to_string(out.i) + " " + entry.kind + " = " + to_string(entry.value) + ": " + entry.verdict);
    out.candidates.push_back(std::move(entry));
}

}  // namespace

ChartResult run_chart(const PlaneMorphism& phi, int i, const PipelineOptions& options,
                      const std::optional<std::array<BigInt, 3>>& point) {
    const int N = phi.target.N, Nbar = phi.source.N, M = phi.M, m = phi.m;
    ChartData cd = chart_data(phi, i);
    ChartResult out;
    out.i = cd.i;
    out.j = cd.j;
    out.k = cd.k;
    out.xj = cd.xj;
    out.xk = cd.xk;
    out.F_i = cd.target_chart;

    const long default_rho = Nbar + (m * m) / 2;
    const long default_s = 11L * m * m * Nbar * Nbar * ipow(N, 5) * M;
    const long default_tau = 22L * m * m * m * M * Nbar * Nbar * ipow(N, 5) - 1;
    out.rho_window = options.rho_window.value_or(default_rho + options.window_slack);
    out.s_window = options.s_window.value_or(default_s + options.window_slack);
    out.tau_window = options.tau_window.value_or(default_tau + options.window_slack);

    // rho: line condition, degree-m minimal polynomial, D nonzero on C.
    bool found = false;
    for (const auto& rho : scan_order(out.rho_window)) {
        if (!rho_avoids_line_points(phi, i, rho)) {
            log_candidate(out, {"rho", rho, "excluded: b(1, -rho) = 0"});
            continue;
        }
        EliminationRelation L;
        try {
            L = elimination_relation(phi, i, rho);
        } catch (const DomainError& e) {
            log_candidate(out, {"rho", rho, e.what()});
            continue;
        }
        if (!L.vanishes_on_source) throw InternalError("elimination relation does not vanish on the source");
        MinimalPolynomialResult R = minimal_polynomial_chart(phi, i, rho, integralizer_ladder(L.g0, pole_locus(phi, i), Nbar));
        if (!R.ok) {
            log_candidate(out, {"rho", rho, R.failure});
            continue;
        }
        if (R.deg_U != m) {
            log_candidate(out, {"rho", rho, "minimal polynomial has U-degree " + std::to_string(R.deg_U)});
            continue;
        }
        MultiPoly D = chart_discriminant(R.P);
        if (D.is_zero() || vanishes_on_curve(D, cd.target_chart)) {
            log_candidate(out, {"rho", rho, "discriminant vanishes on the target chart"});
            continue;
        }
        log_candidate(out, {"rho", rho, "accepted"});
        out.rho = rho;
        out.relation = std::move(L);
        out.P = std::move(R);
        out.D = std::move(D);
        found = true;
        break;
    }
    if (!found)
        throw WindowExhausted("chart " + std::to_string(i) + ": no admissible rho with |rho| <= " +
                              std::to_string(out.rho_window) + " (" + join_log(out.candidates, "rho") + ")");

    std::optional<std::array<BigInt, 3>> avoid;
    if (point && (*point)[i - 1] != 0) avoid = point;
    // The standard pencil has r = 0. When its base point e_i is bad no s
    // can help, so the pencil is moved to X_k + s X_j + r X_i = 0.
    found = false;
    for (const auto& r : scan_order(out.s_window)) {
        for (const auto& s : scan_order(out.s_window)) {
            LineCheck lc = line_meets_bad_set(phi, i, s, r, out.D, avoid);
            if (lc.base_point_bad) {
                log_candidate(out, {"r", r, "base point (1, 0, -r) of the pencil maps into the bad set"});
                break;
            }
            if (lc.pencil_meets) {
                log_candidate(out, {"s", s, "line meets the preimage of the bad set"});
                continue;
            }
            log_candidate(out, {"s", s, "accepted"});
            out.s = s;
            out.r = r;
            if (r != 0)
                out.warnings.push_back("the coordinate point e_" + std::to_string(i) +
                                       " maps into the bad set; pencil moved to r = " + to_string(r));
            found = true;
            break;
        }
        if (found) break;
    }
    if (!found)
        throw WindowExhausted("chart " + std::to_string(i) + ": no admissible s with |s| <= " +
                              std::to_string(out.s_window));

    PlaneMorphism psi = apply_change(CoordinateChange::make(i, out.s, out.r), phi);
    out.a = out.P.P.denominator_lcm();
    out.c = out.F_i.denominator_lcm();
    const unsigned long ex = 2UL * m - 1;
    std::vector<MultiPoly> gens;
    found = false;
    for (const auto& tau : scan_order(out.tau_window)) {
        if (!rho_avoids_line_points(psi, i, tau)) {
            log_candidate(out, {"tau", tau, "excluded: b(1, -tau) = 0 on the transformed curve"});
            continue;
        }
        EliminationRelation L;
        try {
            L = elimination_relation(psi, i, tau);
        } catch (const DomainError& e) {
            log_candidate(out, {"tau", tau, e.what()});
            continue;
        }
        if (!L.vanishes_on_source) throw InternalError("elimination relation does not vanish on the transformed source");
        MinimalPolynomialResult R = minimal_polynomial_chart(psi, i, tau, integralizer_ladder(L.g0, pole_locus(psi, i), Nbar));
        if (!R.ok || R.deg_U != m) {
            log_candidate(out, {"tau", tau, R.ok ? "minimal polynomial degree below m" : R.failure});
            continue;
        }
        MultiPoly Sigma = chart_discriminant(R.P);
        if (Sigma.is_zero() || vanishes_on_curve(Sigma, cd.target_chart)) {
            log_candidate(out, {"tau", tau, "discriminant vanishes on the target chart"});
            continue;
        }
        // Inverting Sigma modulo <D, F_i> keeps A far smaller than a tracked
        // Buchberger run on all three generators; a singular inverse means a
        // common zero.
        BigInt bb = R.P.denominator_lcm();
        gens = {out.D * BigRat(pow(out.a, ex)), Sigma * BigRat(pow(bb, ex)), cd.target_chart * BigRat(out.c)};
        for (const auto& g : gens)
            if (!g.has_integer_coefficients())
                throw InternalError("certificate generator with non-integer coefficients");
        UnitCertificate cert;
        try {
            cert = unit_certificate_by_inverse({gens[0], gens[2]}, gens[1], options.groebner);
            if (cert.found) std::swap(cert.cofactors[1], cert.cofactors[2]);
        } catch (const DomainError&) {
            if (!has_common_zero(gens, options.groebner)) cert = unit_ideal_certificate(gens, options.groebner);
        }
        if (!cert.found) {
            log_candidate(out, {"tau", tau, "D, Sigma and F_i share a zero"});
            continue;
        }
        log_candidate(out, {"tau", tau, "accepted"});
        out.tau = tau;
        out.b = bb;
        out.relation_twisted = std::move(L);
        out.Pi = std::move(R);
        out.Sigma = std::move(Sigma);
        out.certificate = std::move(cert);
        found = true;
        break;
    }
    if (!found)
        throw WindowExhausted("chart " + std::to_string(i) + ": no admissible tau with |tau| <= " +
                              std::to_string(out.tau_window) + " (" + join_log(out.candidates, "tau") + ")");

    MultiPoly identity(gens[0].vars());
    for (std::size_t s = 0; s < gens.size(); ++s) identity += out.certificate.cofactors[s] * gens[s];
    out.identity_verified = identity == MultiPoly::constant(identity.vars(), BigRat(out.certificate.A));
    if (!out.identity_verified) throw InternalError("certificate identity failed");

    const long p_bound = 11L * M * ipow(N, 4) * Nbar * Nbar;
    out.degree_checks = {
        {"relation_deg_X", out.relation.deg_X, static_cast<long>(N) * Nbar, false},
        {"relation_deg_U", out.relation.deg_U, 2L * M * N * Nbar, false},
        {"relation_twisted_deg_X", out.relation_twisted.deg_X, static_cast<long>(N) * Nbar, false},
        {"relation_twisted_deg_U", out.relation_twisted.deg_U, 2L * M * N * Nbar, false},
        {"P_deg_U", out.P.deg_U, m, false},
        {"Pi_deg_U", out.Pi.deg_U, m, false},
        {"P_coefficient_degree", out.P.max_coeff_degree, p_bound, true},
        {"Pi_coefficient_degree", out.Pi.max_coeff_degree, p_bound, true},
        {"D_degree", out.D.total_degree(), (2L * m - 1) * p_bound, true},
        {"Sigma_degree", out.Sigma.total_degree(), (2L * m - 1) * p_bound, false},
        {"integralizer_degree", out.P.f.degree(), Nbar, false},
        {"twisted_integralizer_degree", out.Pi.f.degree(), Nbar, false},
    };
    if (abs(out.rho) > default_rho) out.warnings.push_back("outside-default-window: |rho| > Nbar + m^2/2");
    if (abs(out.s) > default_s) out.warnings.push_back("outside-default-window: |s| > 11 m^2 Nbar^2 N^5 M");
    if (abs(out.tau) > default_tau) out.warnings.push_back("outside-default-window: |tau| >= 22 m^3 M Nbar^2 N^5");
    for (const auto& d : out.degree_checks)
        if (!d.holds()) out.warnings.push_back("degree bound violated: " + d.name);
    return out;
}

LogFloat final_bound_log2(const std::vector<BigInt>& S, int m) {
    LogFloat sum = 0;
    for (const auto& p : S) sum += log2_abs(p);
    return sum * (m - 1) + log2_e() * (2 * m * m);
}

FinalBound final_bound(const std::vector<BigInt>& S, int m) {
    FinalBound out;
    out.log2 = final_bound_log2(S, m);
    BigInt prod = 1;
    for (const auto& p : S) prod *= p;
    if (bit_length(prod) * static_cast<std::size_t>(m - 1) < 65536) out.prime_power_part = pow(prod, m - 1);
    return out;
}

LogFloat fiber_bound_log2(const HeightValue& H_P, const HeightValue& H_Phi, const HeightValue& H_Fbar, int M,
                           int Nbar) {
    LogFloat inner = LogFloat(M * Nbar) * (log2_e() * 3 + log2_abs(BigInt(M + Nbar))) +
                     LogFloat(Nbar) * (H_P.log2 + H_Phi.log2) + LogFloat(M) * H_Fbar.log2;
    return LogFloat(40L * M * M * M * Nbar * Nbar * Nbar) * inner;
}

StructuralBound structural_bound(const HeightValue& H_F, const HeightValue& H_Phi,
                                          const HeightValue& H_Fbar, int N, int Nbar, int M, int m, long omega) {
    StructuralBound out;
    out.omega = omega;
    out.exponent_coefficient = pow(BigInt(m), 3) * pow(BigInt(M), 7) * pow(BigInt(N), 30) * pow(BigInt(Nbar), 13);
    out.bracket_log2 = LogFloat(6L * N * N * Nbar) * H_F.log2 + LogFloat(Nbar) * H_Phi.log2 +
                       LogFloat(M) * H_Fbar.log2;
    out.E_log2 = LogFloat(out.exponent_coefficient.get_str()) * out.bracket_log2;
    return out;
}

std::vector<PrimeEntry> ramified_prime_set(const std::vector<BigInt>& A, const FactorLimits& limits,
                                           bool* complete, BigInt* unfactored) {
    std::map<BigInt, PrimeEntry> acc;
    if (complete) *complete = true;
    if (unfactored) *unfactored = 1;
    for (std::size_t idx = 0; idx < A.size(); ++idx) {
        if (A[idx] == 0) throw DomainError("certificate constant is zero");
        try {
            PrimeFactorization pf = factor_integer(abs(A[idx]), limits);
            for (const auto& pp : pf.factors) {
                auto& e = acc[pp.prime];
                e.prime = pp.prime;
                e.charts.push_back(static_cast<int>(idx) + 1);
                e.certified = e.certified && pp.certified;
            }
        } catch (const FactorizationCutoff&) {
            if (complete) *complete = false;
            if (unfactored) *unfactored *= abs(A[idx]);
        }
    }
    std::vector<PrimeEntry> out;
    for (auto& kv : acc) out.push_back(std::move(kv.second));
    return out;
}

RamificationReport run_pipeline(const PlaneMorphism& phi, const PipelineOptions& options,
                                const std::optional<std::array<BigInt, 3>>& point) {
    RamificationReport rep;
    rep.N = phi.target.N;
    rep.Nbar = phi.source.N;
    rep.M = phi.M;
    rep.m = phi.m;
    rep.mode = point ? "per-point" : "uniform";
    rep.point = point;
    rep.H_F = height_poly(phi.target.F);
    rep.H_Fbar = height_poly(phi.source.F);
    rep.H_Phi = height_forms({phi.phi[0], phi.phi[1], phi.phi[2]});

    rep.charts.resize(3);
    unsigned jobs = std::max(1u, std::min(options.jobs, 3u));
    if (jobs == 1) {
        for (int i = 1; i <= 3; ++i) rep.charts[i - 1] = run_chart(phi, i, options, point);
    } else {
        std::vector<std::future<ChartResult>> futures;
        for (int i = 1; i <= 3; ++i) {
            futures.push_back(std::async(std::launch::async, [&, i] { return run_chart(phi, i, options, point); }));
            if (futures.size() == jobs || i == 3) {
                std::size_t base = i - futures.size();
                for (std::size_t f = 0; f < futures.size(); ++f) rep.charts[base + f] = futures[f].get();
                futures.clear();
            }
        }
    }
    std::vector<BigInt> A;
    for (const auto& c : rep.charts) A.push_back(c.certificate.A);
    rep.S = ramified_prime_set(A, options.factor, &rep.S_complete, &rep.unfactored);
    std::vector<BigInt> primes;
    for (const auto& e : rep.S) primes.push_back(e.prime);
    rep.final_bound = final_bound(primes, rep.m);
    rep.structural = structural_bound(rep.H_F, rep.H_Phi, rep.H_Fbar, rep.N, rep.Nbar, rep.M, rep.m);
    return rep;
}

}  // namespace cw
