#include "cw/fiber.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

#include "cw/errors.hpp"
#include "cw/linalg.hpp"

namespace cw {

RationalPoint RationalPoint::make(const std::array<BigInt, 3>& coords, const PlaneCurve& C) {
    BigInt g = gcd(gcd(coords[0], coords[1]), coords[2]);
    if (g == 0) throw DomainError("the point (0:0:0) is not projective");
    RationalPoint P;
    for (int l = 0; l < 3; ++l) P.a[l] = coords[l] / g;
    for (int l = 0; l < 3; ++l) {
        if (P.a[l] == 0) continue;
        if (P.a[l] < 0)
            for (auto& v : P.a) v = -v;
        break;
    }
    BigRat residue = C.F.embed(plane_vars()).evaluate({BigRat(P.a[0]), BigRat(P.a[1]), BigRat(P.a[2])});
    if (residue != 0)
        throw DomainError("point " + P.to_string() + " is not on the curve: F = " + cw::to_string(residue));
    return P;
}

std::string RationalPoint::to_string() const {
    return "(" + cw::to_string(a[0]) + ":" + cw::to_string(a[1]) + ":" + cw::to_string(a[2]) + ")";
}

bool RationalPoint::has_zero_coordinate() const { return a[0] == 0 || a[1] == 0 || a[2] == 0; }

namespace {

const BigInt kWordPrimeLimit = BigInt(1) << 63;

BigInt abs_value(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

bool squarefree_q(const QPoly& f) { return f.degree() <= 0 || gcd(f, f.derivative()).degree() == 0; }

std::vector<BigRat> solve_rational(const Matrix<BigRat>& A, const std::vector<BigRat>& b) {
    Matrix<BigInt> Ai(A.size(), std::vector<BigInt>(A.empty() ? 0 : A[0].size()));
    std::vector<BigInt> bi(A.size());
    for (std::size_t r = 0; r < A.size(); ++r) {
        BigInt den = b[r].get_den();
        for (const auto& v : A[r]) den = lcm(den, BigInt(v.get_den()));
        for (std::size_t c = 0; c < A[r].size(); ++c) Ai[r][c] = BigInt(A[r][c] * BigRat(den));
        bi[r] = BigInt(b[r] * BigRat(den));
    }
    SolveResult s = exact_solve(Ai, bi);
    if (s.status != SolveStatus::Unique) throw InternalError("power basis of the fiber algebra is singular");
    return s.x;
}

std::vector<BigRat> mat_vec(const Matrix<BigRat>& M, const std::vector<BigRat>& v) {
    std::vector<BigRat> out(M.size(), BigRat(0));
    for (std::size_t r = 0; r < M.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c)
            if (M[r][c] != 0 && v[c] != 0) out[r] += M[r][c] * v[c];
    return out;
}

// Characteristic polynomial of multiplication by r on Q[T]/g.
QPoly char_poly_in_field(const QPoly& r, const QPoly& g) {
    const int n = g.degree();
    Matrix<BigRat> M(n, std::vector<BigRat>(n, BigRat(0)));
    QPoly col = r % g;
    for (int k = 0; k < n; ++k) {
        for (int row = 0; row < n; ++row) M[row][k] = col.coeff(row);
        col = (col * QPoly::monomial(1)) % g;
    }
    return characteristic_polynomial(M);
}

int valuation(BigInt v, const BigInt& p) {
    int e = 0;
    if (v == 0) return 0;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    return e;
}

bool zvec_less(const ZVec& a, const ZVec& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t k = a.size(); k-- > 0;)
        if (a[k] != b[k]) return a[k] < b[k];
    return false;
}

std::vector<std::size_t> splitting_pattern(const ZVec& g, std::uint64_t p) {
    modp::Poly f = modp::monic(modp::reduce(g, p), p);
    std::vector<std::size_t> out;
    for (const auto& h : modp::factor_squarefree(f, p, 1)) out.push_back(h.size() - 1);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

bool dedekind_p_maximal(const ZVec& g, std::uint64_t p) {
    modp::Poly gb = modp::reduce(g, p);
    if (gb.empty()) return false;
    modp::Poly t = modp::radical(gb, p);
    auto [z, rem] = modp::divmod(modp::monic(gb, p), t, p);
    if (!rem.empty()) throw InternalError("radical does not divide the polynomial");
    ZVec tl(t.begin(), t.end()), zl(z.begin(), z.end());
    ZVec tz = zmul(tl, zl);
    ZVec F(std::max(tz.size(), g.size()), BigInt(0));
    BigInt P = static_cast<unsigned long>(p);
    for (std::size_t k = 0; k < F.size(); ++k) {
        BigInt v = (k < tz.size() ? tz[k] : BigInt(0)) - (k < g.size() ? g[k] : BigInt(0));
        if (v % P != 0) throw InternalError("Dedekind lift is not congruent to g");
        F[k] = v / P;
    }
    modp::Poly Fb = modp::reduce(F, p);
    modp::Poly u = modp::gcd(modp::gcd(Fb, t, p), z, p);
    return u.size() <= 1;
}

FieldRamification ramified_primes_of_field(const ZVec& g, const FactorLimits& limits) {
    BigInt d = zdiscriminant(g);
    if (d == 0) throw DomainError("polynomial " + zvec_to_string(g) + " has zero discriminant");
    FieldRamification out;
    for (const auto& pp : factor_integer(abs_value(d), limits).factors) {
        if (pp.prime >= kWordPrimeLimit) {
            out.undetermined.push_back(pp.prime);
            continue;
        }
        std::uint64_t p = pp.prime.get_ui();
        if (modp::is_squarefree(modp::monic(modp::reduce(g, p), p), p)) continue;
        if (dedekind_p_maximal(g, p))
            out.ramified.push_back(pp.prime);
        else
            out.undetermined.push_back(pp.prime);
    }
    return out;
}

ZVec monic_integer_form(const QPoly& g0, BigInt* scale) {
    if (g0.degree() < 1) throw DomainError("monic_integer_form needs positive degree");
    QPoly g = g0.monic();
    const int n = g.degree();
    BigInt dens = 1;
    for (int k = 0; k < n; ++k) dens = lcm(dens, BigInt(g.coeff(k).get_den()));
    BigInt a = dens;
    try {
        a = 1;
        for (const auto& pp : factor_integer(dens).factors) {
            int need = 0;
            for (int k = 0; k < n; ++k) {
                int v = valuation(BigInt(g.coeff(k).get_den()), pp.prime);
                need = std::max(need, (v + (n - k) - 1) / (n - k));
            }
            a *= pow(pp.prime, need);
        }
    } catch (const FactorizationCutoff&) {
        a = dens;
    }
    ZVec out(n + 1);
    for (int k = 0; k <= n; ++k) {
        BigRat c = g.coeff(k) * BigRat(pow(a, n - k));
        if (c.get_den() != 1) throw InternalError("monic integer form is not integral");
        out[k] = c.get_num();
    }
    if (scale) *scale = a;
    return out;
}

namespace {

FiberComponent analyse_component(const QPoly& g, const QPoly& hx, const QPoly& hy, const BigInt& sa,
                                 const BigInt& sb, const FiberOptions& options) {
    FiberComponent comp;
    comp.factor_q = g;
    comp.degree = g.degree();
    QPoly qx = hx % g, qy = hy % g;
    comp.source_point = {qx, qy, QPoly::constant(1) - qx * BigRat(sa) - qy * BigRat(sb)};
    if (comp.degree == 1) {
        comp.g = {BigInt(0), BigInt(1)};
        comp.disc_g = 1;
        comp.field_discriminant = BigInt(1);
        comp.generators_tried = {comp.g};
        return comp;
    }
    // Several generators of the same field: a prime is unramified as soon as
    // one discriminant avoids it, and decided as soon as Dedekind certifies it.
    QPoly theta = QPoly::monomial(1);
    std::vector<QPoly> elements = {theta, qx, qy, qx + qy, qx - qy, qx + qy * BigRat(2), qx * BigRat(2) + qy,
                                   theta + qx, theta + qy};
    std::vector<ZVec> gens;
    std::vector<BigInt> discs;
    for (const auto& r : elements) {
        QPoly chi = char_poly_in_field(r, g);
        if (!squarefree_q(chi)) continue;
        ZVec h = monic_integer_form(chi);
        if (std::find(gens.begin(), gens.end(), h) != gens.end()) continue;
        gens.push_back(h);
        discs.push_back(zdiscriminant(h));
    }
    std::size_t best = 0;
    for (std::size_t t = 1; t < gens.size(); ++t)
        if (abs_value(discs[t]) < abs_value(discs[best])) best = t;
    comp.g = gens[best];
    comp.disc_g = discs[best];
    comp.generators_tried = gens;

    BigInt field = comp.disc_g < 0 ? BigInt(-1) : BigInt(1);
    for (const auto& pp : factor_integer(abs_value(comp.disc_g), options.factor).factors) {
        const BigInt& p = pp.prime;
        bool avoided = false;
        for (const auto& d : discs)
            if (d % p != 0) avoided = true;
        if (avoided) continue;
        bool decided = false;
        if (p < kWordPrimeLimit) {
            for (std::size_t t = 0; t < gens.size() && !decided; ++t) {
                if (!dedekind_p_maximal(gens[t], p.get_ui())) continue;
                decided = true;
                field *= pow(p, valuation(discs[t], p));
            }
        }
        (decided ? comp.ramified : comp.undetermined).push_back(p);
    }
    if (comp.undetermined.empty()) comp.field_discriminant = field;
    return comp;
}

}  // namespace

FiberResult fiber_components(const PlaneMorphism& phi, const RationalPoint& P, const FiberOptions& options) {
    const Vars& v = plane_vars();
    FiberResult out;
    out.chart = P.a[2] != 0 ? 3 : (P.a[0] != 0 ? 1 : 2);
    ChartIndices ix = chart_indices(out.chart);
    const BigRat pI(P.a[ix.i - 1]), pJ(P.a[ix.j - 1]), pK(P.a[ix.k - 1]);
    MultiPoly X = MultiPoly::variable(v, "x"), Y = MultiPoly::variable(v, "y"), Z = MultiPoly::variable(v, "z");

    // Source chart X3 + a X1 + b X2 != 0 containing the whole fiber.
    std::vector<std::pair<long, long>> shifts;
    for (long h = 0; h <= options.max_shift; ++h)
        for (long a = -h; a <= h; ++a)
            for (long b = -h; b <= h; ++b)
                if (std::max(std::labs(a), std::labs(b)) == h) shifts.push_back({a, b});
    std::stable_sort(shifts.begin(), shifts.end(), [](const auto& l, const auto& r) {
        long hl = std::max(std::labs(l.first), std::labs(l.second));
        long hr = std::max(std::labs(r.first), std::labs(r.second));
        if (hl != hr) return hl < hr;
        return std::labs(l.first) + std::labs(l.second) < std::labs(r.first) + std::labs(r.second);
    });
    IdealBasis J;
    std::vector<Monomial> monos;
    bool found = false;
    for (const auto& [a, b] : shifts) {
        std::map<std::string, MultiPoly> sub = {{"z", Z - X * BigRat(a) - Y * BigRat(b)}};
        auto chart = [&](const MultiPoly& G) { return dehomogenize(G.embed(v).substitute(sub, v), 3); };
        std::array<MultiPoly, 3> ph = {chart(phi.phi[0]), chart(phi.phi[1]), chart(phi.phi[2])};
        const MultiPoly& fI = ph[ix.i - 1];
        std::vector<MultiPoly> gens = {chart(phi.source.F), fI * pJ - ph[ix.j - 1] * pI, fI * pK - ph[ix.k - 1] * pI};
        J = buchberger(gens, MonomialOrder::grevlex(), options.groebner);
        try {
            monos = standard_monomials(J);
        } catch (const DomainError&) {
            continue;
        }
        if (static_cast<int>(monos.size()) != phi.m) continue;
        out.shift_a = a;
        out.shift_b = b;
        found = true;
        break;
    }
    if (!found)
        throw WindowExhausted("no source chart X3 + a X1 + b X2 with |a|, |b| <= " +
                              std::to_string(options.max_shift) + " contains the fiber over " + P.to_string());

    const Vars& qv = J.vars;
    MultiPoly s = MultiPoly::variable(qv, qv[0]), t = MultiPoly::variable(qv, qv[1]);
    Matrix<BigRat> Ms = multiplication_matrix(J, s, monos), Mt = multiplication_matrix(J, t, monos);
    const std::size_t m = monos.size();
    Matrix<BigRat> Mg;
    QPoly chi;
    const long c_limit = static_cast<long>(m * m);
    for (long c = 0;; ++c) {
        if (c > c_limit)
            throw WindowExhausted("no primitive element s + c t with c <= " + std::to_string(c_limit) +
                                  " for the fiber over " + P.to_string());
        Mg = Ms;
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t k = 0; k < m; ++k) Mg[r][k] += Mt[r][k] * BigRat(c);
        chi = characteristic_polynomial(Mg);
        if (squarefree_q(chi)) {
            out.c = c;
            break;
        }
    }
    out.fiber_polynomial = chi;

    // Coordinates s, t as polynomials in gamma through the power basis.
    std::vector<BigRat> col = quotient_coordinates(J, MultiPoly::constant(qv, 1), monos);
    Matrix<BigRat> V(m, std::vector<BigRat>(m));
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t r = 0; r < m; ++r) V[r][k] = col[r];
        col = mat_vec(Mg, col);
    }
    QPoly hs(solve_rational(V, quotient_coordinates(J, s, monos)));
    QPoly ht(solve_rational(V, quotient_coordinates(J, t, monos)));

    QFactorization fac = factor_univariate_Q(chi, options.factor_poly);
    for (const auto& f : fac.factors) {
        if (f.multiplicity != 1) throw InternalError("fiber polynomial is not squarefree");
        out.components.push_back(analyse_component(f.factor, hs, ht, out.shift_a, out.shift_b, options));
        out.degree_sum += f.factor.degree();
    }
    std::stable_sort(out.components.begin(), out.components.end(), [](const FiberComponent& a, const FiberComponent& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return zvec_less(a.g, b.g);
    });
    return out;
}

bool fibers_consistent(const FiberResult& a, const FiberResult& b, int primes) {
    if (a.components.size() != b.components.size()) return false;
    std::vector<bool> used(b.components.size(), false);
    for (const auto& ca : a.components) {
        bool matched = false;
        for (std::size_t k = 0; k < b.components.size() && !matched; ++k) {
            const auto& cb = b.components[k];
            if (used[k] || ca.degree != cb.degree) continue;
            BigInt prod = ca.disc_g * cb.disc_g;
            if (prod < 0 || mpz_perfect_square_p(prod.get_mpz_t()) == 0) continue;
            bool same = true;
            int checked = 0;
            for (std::uint64_t p = 3; checked < primes && p < 2000; p += 2) {
                if (!is_prime(BigInt(static_cast<unsigned long>(p)))) continue;
                if (ca.disc_g % p == 0 || cb.disc_g % p == 0) continue;
                ++checked;
                if (splitting_pattern(ca.g, p) != splitting_pattern(cb.g, p)) {
                    same = false;
                    break;
                }
            }
            if (same) {
                used[k] = true;
                matched = true;
            }
        }
        if (!matched) return false;
    }
    return true;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

VerificationContext VerificationContext::from_report(const RamificationReport& report) {
    VerificationContext ctx;
    for (const auto& e : report.S) ctx.S.push_back(e.prime);
    ctx.S_complete = report.S_complete;
    ctx.unfactored = report.unfactored;
    ctx.m = report.m;
    ctx.M = report.M;
    ctx.Nbar = report.Nbar;
    ctx.H_F = report.H_F;
    ctx.H_Fbar = report.H_Fbar;
    ctx.H_Phi = report.H_Phi;
    return ctx;
}

LogFloat VerificationContext::final_bound_log2() const {
    std::vector<BigInt> all = S;
    if (unfactored > 1) all.push_back(unfactored);
    return cw::final_bound_log2(all, m);
}

bool bound_holds(const LogFloat& lhs_log2, const LogFloat& bound_log2) {
    return lhs_log2 + pow(LogFloat(2), -20) <= bound_log2;
}

PointVerification verify_point(const PlaneMorphism& phi, const VerificationContext& ctx, const RationalPoint& P,
                               const FiberOptions& options) {
    PointVerification out;
    out.point = P;
    out.H_P = height_point(std::vector<BigInt>(P.a.begin(), P.a.end()));
    out.zero_coordinate = P.has_zero_coordinate();
    out.height_shortcut = out.H_P.exact < 2 * ctx.H_F.exact;
    out.fiber_log2 = fiber_bound_log2(out.H_P, ctx.H_Phi, ctx.H_Fbar, ctx.M, ctx.Nbar);
    out.final_log2 = ctx.final_bound_log2();
    out.fiber = fiber_components(phi, P, options);
    if (out.fiber.degree_sum != ctx.m)
        throw InternalError("fiber over " + P.to_string() + " has degree " + std::to_string(out.fiber.degree_sum) +
                            ", expected " + std::to_string(ctx.m));
    auto in_S = [&](const BigInt& p) { return std::find(ctx.S.begin(), ctx.S.end(), p) != ctx.S.end(); };
    auto maybe_in_S = [&](const BigInt& p) { return !ctx.S_complete && ctx.unfactored % p == 0; };
    out.verdict = Verdict::Pass;
    for (const auto& comp : out.fiber.components) {
        ComponentCheck cc;
        cc.component = comp;
        for (const auto& p : comp.ramified) {
            if (in_S(p)) continue;
            (maybe_in_S(p) ? cc.unresolved : cc.missing).push_back(p);
        }
        for (const auto& p : comp.undetermined)
            if (!in_S(p)) cc.unresolved.push_back(p);
        cc.disc_is_proxy = !comp.field_discriminant.has_value();
        const BigInt& d = cc.disc_is_proxy ? comp.disc_g : *comp.field_discriminant;
        cc.disc_log2 = log2_abs(d);
        cc.final_bound_holds = bound_holds(cc.disc_log2, out.final_log2);
        cc.fiber_bound_holds = bound_holds(cc.disc_log2, out.fiber_log2);
        bool bounds = cc.final_bound_holds && cc.fiber_bound_holds;
        if (!cc.missing.empty() || (!bounds && !cc.disc_is_proxy))
            cc.verdict = Verdict::Fail;
        else if (!bounds || !cc.unresolved.empty())
            cc.verdict = Verdict::Inconclusive;
        else
            cc.verdict = Verdict::Pass;
        if (cc.verdict == Verdict::Fail)
            out.verdict = Verdict::Fail;
        else if (cc.verdict == Verdict::Inconclusive && out.verdict == Verdict::Pass)
            out.verdict = Verdict::Inconclusive;
        out.components.push_back(std::move(cc));
    }
    return out;
}

Verdict aggregate(const std::vector<PointVerification>& points) {
    Verdict v = Verdict::Pass;
    for (const auto& p : points) {
        if (p.verdict == Verdict::Fail) return Verdict::Fail;
        if (p.verdict == Verdict::Inconclusive) v = Verdict::Inconclusive;
    }
    return v;
}

std::vector<RationalPoint> scan_points(const PlaneCurve& C, long bound) {
    std::vector<RationalPoint> out;
    MultiPoly F = C.F.embed(plane_vars());
    for (long a = -bound; a <= bound; ++a)
        for (long b = -bound; b <= bound; ++b)
            for (long c = -bound; c <= bound; ++c) {
                std::array<long, 3> q = {a, b, c};
                long first = a != 0 ? a : (b != 0 ? b : c);
                if (first <= 0) continue;
                if (std::gcd(std::gcd(std::labs(a), std::labs(b)), std::labs(c)) != 1) continue;
                if (F.evaluate({BigRat(q[0]), BigRat(q[1]), BigRat(q[2])}) != 0) continue;
                out.push_back(RationalPoint{{BigInt(a), BigInt(b), BigInt(c)}});
            }
    std::sort(out.begin(), out.end(), [](const RationalPoint& l, const RationalPoint& r) {
        BigInt hl = 0, hr = 0;
        for (int k = 0; k < 3; ++k) {
            hl = std::max(hl, abs_value(l.a[k]));
            hr = std::max(hr, abs_value(r.a[k]));
        }
        if (hl != hr) return hl < hr;
        return l.a < r.a;
    });
    return out;
}

}  // namespace cw
