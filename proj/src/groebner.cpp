#include "cw/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cw/errors.hpp"

namespace cw {

int MonomialOrder::compare(const Monomial& a, const Monomial& b, std::size_t nvars) const {
    switch (kind) {
        case OrderKind::Lex:
            return lex_cmp(a, b, 0, nvars);
        case OrderKind::Block: {
            int c = grevlex_cmp(a, b, 0, split);
            return c ? c : grevlex_cmp(a, b, split, nvars);
        }
        case OrderKind::Grevlex:
        default:
            return grevlex_cmp(a, b, 0, nvars);
    }
}

std::string MonomialOrder::name() const {
    switch (kind) {
        case OrderKind::Lex:
            return "lex";
        case OrderKind::Block:
            return "block(" + std::to_string(split) + ")";
        default:
            return "grevlex";
    }
}

bool IdealBasis::is_unit() const { return generators.size() == 1 && generators[0].is_constant() && !generators[0].is_zero(); }

namespace {

struct GTerm {
    Monomial m;
    BigInt c;
};
using GPoly = std::vector<GTerm>;

class Engine {
public:
    Engine(Vars vars, MonomialOrder order, const GroebnerOptions& options, bool track, std::size_t ngens)
        : vars_(std::move(vars)), n_(vars_.size()), order_(order), options_(options), track_(track), ngens_(ngens) {}

    int cmp(const Monomial& a, const Monomial& b) const { return order_.compare(a, b, n_); }

    GPoly from_multipoly(const MultiPoly& p, BigRat* scale) const {
        BigInt den = p.denominator_lcm();
        GPoly g;
        g.reserve(p.size());
        for (const auto& t : p.terms()) g.push_back({t.mono, BigInt(t.coef.get_num() * (den / t.coef.get_den()))});
        std::sort(g.begin(), g.end(), [this](const GTerm& a, const GTerm& b) { return cmp(a.m, b.m) > 0; });
        BigRat s = BigRat(den);
        BigInt c = content(g);
        if (c != 1 && c != 0) {
            for (auto& t : g) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
            s /= c;
        }
        if (scale) *scale = s;
        return g;
    }

    MultiPoly to_multipoly(const GPoly& g, const BigRat& factor = 1) const {
        std::vector<Term> t;
        t.reserve(g.size());
        for (const auto& x : g) t.push_back({x.m, BigRat(x.c) * factor});
        return MultiPoly(vars_, std::move(t));
    }

    static BigInt content(const GPoly& g) {
        BigInt c = 0;
        for (const auto& t : g) {
            c = gcd(c, t.c);
            if (c == 1) break;
        }
        if (!g.empty() && g.front().c < 0) c = -c;
        return c;
    }

    // p <- a*p - b*m*g, all sorted by the engine order.
    GPoly combine(const GPoly& p, const BigInt& a, const Monomial& m, const BigInt& b, const GPoly& g) const {
        GPoly out;
        out.reserve(p.size() + g.size());
        std::size_t i = 0, j = 0;
        while (i < p.size() || j < g.size()) {
            int c;
            Monomial gm;
            if (j < g.size()) gm = g[j].m * m;
            if (i == p.size()) c = -1;
            else if (j == g.size()) c = 1;
            else c = cmp(p[i].m, gm);
            if (c > 0) {
                out.push_back({p[i].m, a == 1 ? p[i].c : BigInt(p[i].c * a)});
                ++i;
            } else if (c < 0) {
                out.push_back({gm, BigInt(-g[j].c * b)});
                ++j;
            } else {
                BigInt v = p[i].c * a - g[j].c * b;
                if (v != 0) out.push_back({gm, std::move(v)});
                ++i;
                ++j;
            }
        }
        return out;
    }

    std::vector<MultiPoly> combine_cof(const std::vector<MultiPoly>& p, const BigInt& a, const Monomial& m,
                                       const BigInt& b, const std::vector<MultiPoly>& g) const {
        std::vector<MultiPoly> out(p.size());
        MultiPoly mono = MultiPoly::monomial(vars_, m, BigRat(b));
        for (std::size_t s = 0; s < p.size(); ++s) {
            MultiPoly x = p[s];
            if (a != 1) x *= BigRat(a);
            if (!g[s].is_zero()) x -= mono * g[s];
            out[s] = std::move(x);
        }
        return out;
    }

    void check_bits(const GPoly& p) const {
        for (const auto& t : p)
            if (bit_length(t.c) > options_.max_coefficient_bits)
                throw ResourceError("Groebner coefficient-bit budget exceeded (" +
                                    std::to_string(options_.max_coefficient_bits) + " bits)");
    }

    const GPoly* find_reducer(const Monomial& m, const std::vector<std::size_t>& pool, std::size_t* which) const {
        for (auto k : pool) {
            if (polys_[k].front().m.divides(m)) {
                if (which) *which = k;
                return &polys_[k];
            }
        }
        return nullptr;
    }

    // Full reduction of p by the polynomials indexed by pool. Multiplies the
    // scale by the same factors applied to p so that p_out / scale is the
    // normal form of p_in / scale_in.
    GPoly reduce(GPoly p, const std::vector<std::size_t>& pool, BigRat* scale, std::vector<MultiPoly>* cof) const {
        std::size_t idx = 0, steps = 0;
        while (idx < p.size()) {
            std::size_t k = 0;
            const GPoly* g = find_reducer(p[idx].m, pool, &k);
            if (!g) {
                ++idx;
                continue;
            }
            const BigInt& lg = g->front().c;
            BigInt d = gcd(lg, p[idx].c);
            BigInt a = lg / d, b = p[idx].c / d;
            if (a < 0) {
                a = -a;
                b = -b;
            }
            Monomial q = g->front().m.quotient_of(p[idx].m);
            if (cof) *cof = combine_cof(*cof, a, q, b, cofs_[k]);
            p = combine(p, a, q, b, *g);
            if (scale && a != 1) *scale *= a;
            if (++steps % 8 == 0) normalize(p, scale, cof);
        }
        normalize(p, scale, cof);
        return p;
    }

    void normalize(GPoly& p, BigRat* scale, std::vector<MultiPoly>* cof) const {
        if (p.empty()) return;
        BigInt c = content(p);
        if (c == 1) return;
        for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
        if (scale) *scale /= c;
        if (cof)
            for (auto& x : *cof) x *= BigRat(1, 1) / BigRat(c);
    }

    GPoly spoly(std::size_t i, std::size_t j, std::vector<MultiPoly>* cof) const {
        const GPoly& f = polys_[i];
        const GPoly& g = polys_[j];
        Monomial L = f.front().m.lcm(g.front().m);
        BigInt d = gcd(f.front().c, g.front().c);
        BigInt a = g.front().c / d, b = f.front().c / d;
        Monomial mf = f.front().m.quotient_of(L), mg = g.front().m.quotient_of(L);
        GPoly left;
        left.reserve(f.size());
        for (const auto& t : f) left.push_back({t.m * mf, t.c * a});
        if (cof) {
            MultiPoly mono = MultiPoly::monomial(vars_, mf, BigRat(a));
            cof->assign(ngens_, MultiPoly(vars_));
            for (std::size_t s = 0; s < ngens_; ++s)
                if (!cofs_[i][s].is_zero()) (*cof)[s] = mono * cofs_[i][s];
            *cof = combine_cof(*cof, BigInt(1), mg, b, cofs_[j]);
        }
        return combine(left, BigInt(1), mg, b, g);
    }

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
        std::size_t seq;
    };

    // Gebauer-Moeller update when adding polys_[h].
    void update(std::size_t h) {
        const Monomial& lh = polys_[h].front().m;
        std::vector<Pair> C;
        for (auto g : active_) C.push_back({g, h, lh.lcm(polys_[g].front().m), 0});
        std::vector<Pair> D;
        for (std::size_t a = 0; a < C.size(); ++a) {
            const Monomial& lg = polys_[C[a].i].front().m;
            bool keep = lh.coprime(lg);
            if (!keep) {
                keep = true;
                for (std::size_t b = 0; b < C.size() && keep; ++b)
                    if (b > a && C[b].lcm.divides(C[a].lcm)) keep = false;
                for (const auto& d : D)
                    if (keep && d.lcm.divides(C[a].lcm)) keep = false;
            }
            if (keep) D.push_back(C[a]);
        }
        std::vector<Pair> E;
        for (const auto& d : D)
            if (!lh.coprime(polys_[d.i].front().m)) E.push_back(d);
        std::vector<Pair> B;
        for (const auto& p : pairs_) {
            bool drop = lh.divides(p.lcm) && lh.lcm(polys_[p.i].front().m) != p.lcm &&
                        lh.lcm(polys_[p.j].front().m) != p.lcm;
            if (!drop) B.push_back(p);
        }
        for (auto& e : E) {
            e.seq = seq_++;
            B.push_back(e);
        }
        pairs_ = std::move(B);
        std::vector<std::size_t> keep;
        for (auto g : active_)
            if (!lh.divides(polys_[g].front().m)) keep.push_back(g);
        keep.push_back(h);
        active_ = std::move(keep);
    }

    std::size_t add(GPoly p, std::vector<MultiPoly> cof) {
        check_bits(p);
        polys_.push_back(std::move(p));
        cofs_.push_back(std::move(cof));
        return polys_.size() - 1;
    }

    // Runs Buchberger; returns the index of a constant element if one appears
    // and stop_on_unit (or cofactor tracking) requests an early exit.
    std::optional<std::size_t> run(const std::vector<MultiPoly>& gens) {
        for (std::size_t s = 0; s < gens.size(); ++s) {
            if (gens[s].is_zero()) continue;
            BigRat scale;
            GPoly p = from_multipoly(gens[s], &scale);
            std::vector<MultiPoly> cof;
            if (track_) {
                cof.assign(ngens_, MultiPoly(vars_));
                cof[s] = MultiPoly::constant(vars_, scale);
            }
            p = reduce(std::move(p), active_, nullptr, track_ ? &cof : nullptr);
            if (p.empty()) continue;
            std::size_t h = add(std::move(p), std::move(cof));
            if (polys_[h].front().m.deg == 0 && (options_.stop_on_unit || track_)) return h;
            update(h);
        }
        while (!pairs_.empty()) {
            auto best = std::min_element(pairs_.begin(), pairs_.end(), [](const Pair& a, const Pair& b) {
                if (a.lcm.deg != b.lcm.deg) return a.lcm.deg < b.lcm.deg;
                return a.seq < b.seq;
            });
            Pair pr = *best;
            pairs_.erase(best);
            if (++processed_ > options_.max_spairs)
                throw ResourceError("Groebner S-pair budget exhausted (" + std::to_string(options_.max_spairs) + ")");
            std::vector<MultiPoly> cof;
            GPoly s = spoly(pr.i, pr.j, track_ ? &cof : nullptr);
            s = reduce(std::move(s), active_, nullptr, track_ ? &cof : nullptr);
            if (s.empty()) continue;
            std::size_t h = add(std::move(s), std::move(cof));
            if (polys_[h].front().m.deg == 0 && (options_.stop_on_unit || track_)) return h;
            update(h);
        }
        return std::nullopt;
    }

    // Minimal, tail-reduced basis with rational monic leading coefficients.
    std::vector<MultiPoly> reduced_basis() {
        for (auto k : active_)
            if (polys_[k].front().m.deg == 0) return {MultiPoly::constant(vars_, 1)};
        std::vector<std::size_t> minimal;
        for (auto k : active_) {
            bool redundant = false;
            for (auto o : active_) {
                if (o == k) continue;
                const Monomial& lo = polys_[o].front().m;
                const Monomial& lk = polys_[k].front().m;
                if (lo.divides(lk) && (lo != lk || o < k)) {
                    redundant = true;
                    break;
                }
            }
            if (!redundant) minimal.push_back(k);
        }
        for (auto k : minimal) {
            std::vector<std::size_t> others;
            for (auto o : minimal)
                if (o != k) others.push_back(o);
            GPoly head = {polys_[k].front()};
            GPoly tail(polys_[k].begin() + 1, polys_[k].end());
            BigRat scale = 1;
            tail = reduce(std::move(tail), others, &scale, nullptr);
            // tail/scale is NF of the original tail; rebuild lc*x^a + NF.
            std::vector<Term> t;
            t.push_back({head[0].m, BigRat(head[0].c)});
            for (const auto& x : tail) t.push_back({x.m, BigRat(x.c) / scale});
            BigRat lc = t[0].coef;
            for (auto& x : t) x.coef /= lc;
            final_.push_back(MultiPoly(vars_, std::move(t)));
            final_lm_.push_back(head[0].m);
        }
        // Sort ascending by leading monomial in the engine order.
        std::vector<std::size_t> idx(final_.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [this](std::size_t a, std::size_t b) { return cmp(final_lm_[a], final_lm_[b]) < 0; });
        std::vector<MultiPoly> out;
        for (auto i : idx) out.push_back(final_[i]);
        return out;
    }

    // Reduces p by the active basis while tracking p itself as input `slot`:
    // afterwards remainder == sum_s cof[s] * input_s with input_slot = p.
    GPoly reduce_tracked(const MultiPoly& p, std::size_t slot, std::vector<MultiPoly>* cof) const {
        BigRat scale;
        GPoly g = from_multipoly(p, &scale);
        cof->assign(ngens_, MultiPoly(vars_));
        (*cof)[slot] = MultiPoly::constant(vars_, scale);
        return reduce(std::move(g), active_, nullptr, cof);
    }

    const std::vector<MultiPoly>& cofactors(std::size_t k) const { return cofs_[k]; }
    const GPoly& poly(std::size_t k) const { return polys_[k]; }
    std::size_t processed() const { return processed_; }

    // Loads an already computed basis for normal forms / verification.
    void load(const std::vector<MultiPoly>& basis) {
        for (const auto& b : basis) {
            GPoly g = from_multipoly(b, nullptr);
            if (g.empty()) continue;
            polys_.push_back(std::move(g));
            cofs_.emplace_back();
            active_.push_back(polys_.size() - 1);
        }
    }
    const std::vector<std::size_t>& active() const { return active_; }

    bool criterion_holds() const {
        for (std::size_t a = 0; a < active_.size(); ++a)
            for (std::size_t b = a + 1; b < active_.size(); ++b) {
                std::size_t i = active_[a], j = active_[b];
                if (polys_[i].front().m.coprime(polys_[j].front().m)) continue;
                GPoly s = spoly(i, j, nullptr);
                if (!reduce(std::move(s), active_, nullptr, nullptr).empty()) return false;
            }
        return true;
    }

private:
    Vars vars_;
    std::size_t n_;
    MonomialOrder order_;
    GroebnerOptions options_;
    bool track_;
    std::size_t ngens_;
    std::vector<GPoly> polys_;
    std::vector<std::vector<MultiPoly>> cofs_;
    std::vector<std::size_t> active_;
    std::vector<Pair> pairs_;
    std::size_t seq_ = 0;
    std::size_t processed_ = 0;
    std::vector<MultiPoly> final_;
    std::vector<Monomial> final_lm_;
};

Vars common_ring(const std::vector<MultiPoly>& gens) {
    Vars v;
    for (const auto& g : gens) v = union_vars(v, g.vars());
    return v;
}

}  // namespace

Monomial IdealBasis::leading_monomial(std::size_t i) const {
    const auto& g = generators.at(i);
    Monomial best = g.terms().front().mono;
    for (const auto& t : g.terms())
        if (order.compare(t.mono, best, vars.size()) > 0) best = t.mono;
    return best;
}

IdealBasis buchberger(const std::vector<MultiPoly>& gens0, const MonomialOrder& order, const GroebnerOptions& options) {
    if (gens0.empty()) throw DomainError("buchberger needs at least one generator");
    Vars vars = common_ring(gens0);
    std::vector<MultiPoly> gens;
    for (const auto& g : gens0) gens.push_back(g.embed(vars));
    Engine e(vars, order, options, false, gens.size());
    e.run(gens);
    IdealBasis out;
    out.vars = vars;
    out.order = order;
    out.spairs_processed = e.processed();
    bool all_zero = std::all_of(gens.begin(), gens.end(), [](const MultiPoly& g) { return g.is_zero(); });
    if (all_zero) {
        out.reduced = true;
        return out;
    }
    out.generators = e.reduced_basis();
    out.reduced = true;
    if (options.verify && !out.is_unit()) {
        Engine check(vars, order, options, false, 0);
        check.load(out.generators);
        if (!check.criterion_holds()) throw InternalError("Groebner basis failed the Buchberger criterion check");
        for (const auto& g : gens)
            if (!ideal_contains(out, g)) throw InternalError("input generator not in computed ideal");
    }
    return out;
}

MultiPoly normal_form(const MultiPoly& p, const IdealBasis& basis) {
    MultiPoly q = p.embed(basis.vars);
    if (q.is_zero()) return q;
    Engine e(basis.vars, basis.order, GroebnerOptions{}, false, 0);
    e.load(basis.generators);
    BigRat scale;
    auto g = e.from_multipoly(q, &scale);
    g = e.reduce(std::move(g), e.active(), &scale, nullptr);
    return e.to_multipoly(g, BigRat(1) / scale);
}

bool ideal_contains(const IdealBasis& basis, const MultiPoly& p) { return normal_form(p, basis).is_zero(); }

IdealBasis eliminate(const std::vector<MultiPoly>& gens, const std::vector<std::string>& drop,
                     const GroebnerOptions& options) {
    Vars all = common_ring(gens);
    Vars ring = drop;
    Vars rest;
    for (const auto& v : all)
        if (std::find(drop.begin(), drop.end(), v) == drop.end()) rest.push_back(v);
    ring.insert(ring.end(), rest.begin(), rest.end());
    std::vector<MultiPoly> g;
    for (const auto& x : gens) g.push_back(x.embed(ring));
    IdealBasis gb = buchberger(g, MonomialOrder::block(drop.size()), options);
    IdealBasis out;
    out.vars = rest;
    out.order = MonomialOrder::grevlex();
    out.reduced = false;
    out.spairs_processed = gb.spairs_processed;
    for (const auto& x : gb.generators) {
        bool free = true;
        for (std::size_t i = 0; i < drop.size(); ++i)
            if (x.degree_in(i) > 0) free = false;
        if (free) out.generators.push_back(x.embed(rest));
    }
    return out;
}

IdealBasis saturate(const std::vector<MultiPoly>& gens, const MultiPoly& h, const GroebnerOptions& options) {
    if (h.is_zero()) throw DomainError("saturation by the zero polynomial");
    Vars all = union_vars(common_ring(gens), h.vars());
    std::string w = "_w";
    while (std::find(all.begin(), all.end(), w) != all.end()) w += "_";
    Vars ring = {w};
    ring.insert(ring.end(), all.begin(), all.end());
    std::vector<MultiPoly> g;
    for (const auto& x : gens) g.push_back(x.embed(ring));
    g.push_back(MultiPoly::variable(ring, w) * h.embed(ring) - MultiPoly::constant(ring, 1));
    IdealBasis e = eliminate(g, {w}, options);
    // Re-run to obtain the reduced grevlex basis of the saturation.
    if (e.generators.empty()) return e;
    return buchberger(e.generators, MonomialOrder::grevlex(), options);
}

bool has_common_zero(const std::vector<MultiPoly>& gens, const GroebnerOptions& options) {
    GroebnerOptions o = options;
    o.stop_on_unit = true;
    o.verify = false;
    Vars vars = common_ring(gens);
    std::vector<MultiPoly> g;
    for (const auto& x : gens) g.push_back(x.embed(vars));
    Engine e(vars, MonomialOrder::grevlex(), o, false, g.size());
    if (e.run(g)) return false;
    for (auto k : e.active())
        if (e.poly(k).front().m.deg == 0) return false;
    return true;
}

UnitCertificate unit_ideal_certificate(const std::vector<MultiPoly>& gens0, const GroebnerOptions& options) {
    Vars vars = common_ring(gens0);
    std::vector<MultiPoly> gens;
    for (const auto& g : gens0) {
        if (!g.has_integer_coefficients()) throw DomainError("certificate generators must have integer coefficients");
        gens.push_back(g.embed(vars));
    }
    Engine e(vars, MonomialOrder::grevlex(), options, true, gens.size());
    auto unit = e.run(gens);
    UnitCertificate out;
    out.spairs_processed = e.processed();
    if (!unit) return out;
    const GPoly& c = e.poly(*unit);
    BigRat constant(c.front().c);
    std::vector<MultiPoly> cof = e.cofactors(*unit);
    BigInt A = 1;
    for (auto& x : cof) {
        x *= BigRat(1) / constant;
        A = lcm(A, x.denominator_lcm());
    }
    for (auto& x : cof) x *= BigRat(A);
    MultiPoly check(vars);
    for (std::size_t s = 0; s < gens.size(); ++s) check += cof[s] * gens[s];
    if (check != MultiPoly::constant(vars, BigRat(A)))
        throw InternalError("unit-ideal certificate identity failed re-verification");
    out.found = true;
    out.A = A;
    for (const auto& x : cof) out.max_cofactor_degree = std::max(out.max_cofactor_degree, x.total_degree());
    out.cofactors = std::move(cof);
    return out;
}

UnitCertificate unit_certificate_by_inverse(const std::vector<MultiPoly>& base0, const MultiPoly& h0,
                                           const GroebnerOptions& options) {
    std::vector<MultiPoly> all = base0;
    all.push_back(h0);
    Vars vars = common_ring(all);
    for (auto& g : all) {
        if (!g.has_integer_coefficients()) throw DomainError("certificate generators must have integer coefficients");
        g = g.embed(vars);
    }
    const std::size_t n = base0.size();
    std::vector<MultiPoly> base(all.begin(), all.begin() + n);
    const MultiPoly& h = all[n];

    Engine e(vars, MonomialOrder::grevlex(), options, true, n + 1);
    UnitCertificate out;
    std::vector<MultiPoly> cof;
    BigRat kappa;
    if (auto unit = e.run(base)) {
        // The base alone is the unit ideal.
        cof = e.cofactors(*unit);
        kappa = BigRat(e.poly(*unit).front().c);
        for (auto& x : cof) x *= BigRat(1) / kappa;
    } else {
        IdealBasis J;
        J.vars = vars;
        J.order = MonomialOrder::grevlex();
        J.generators = e.reduced_basis();
        J.reduced = true;
        auto monos = standard_monomials(J);
        Matrix<BigRat> M = multiplication_matrix(J, h, monos);
        std::vector<BigRat> one = quotient_coordinates(J, MultiPoly::constant(vars, 1), monos);
        Matrix<BigInt> Mi(M.size(), std::vector<BigInt>(monos.size()));
        std::vector<BigInt> rhs(M.size());
        for (std::size_t r = 0; r < M.size(); ++r) {
            BigInt den = one[r].get_den();
            for (const auto& v : M[r]) den = lcm(den, BigInt(v.get_den()));
            for (std::size_t c = 0; c < monos.size(); ++c) Mi[r][c] = BigInt(M[r][c] * BigRat(den));
            rhs[r] = BigInt(one[r] * BigRat(den));
        }
        SolveResult sol = exact_solve(Mi, rhs);
        out.spairs_processed = e.processed();
        // A singular multiplication matrix means h vanishes on V(base).
        if (sol.status != SolveStatus::Unique) return out;
        std::vector<Term> terms;
        for (std::size_t t = 0; t < monos.size(); ++t)
            if (sol.x[t] != 0) terms.push_back({monos[t], sol.x[t]});
        MultiPoly hinv(vars, std::move(terms));
        MultiPoly r = hinv * h - MultiPoly::constant(vars, 1);
        if (r.is_zero()) {
            cof.assign(n + 1, MultiPoly(vars));
        } else {
            if (!e.reduce_tracked(r, n, &cof).empty())
                throw InternalError("inverse modulo a zero-dimensional ideal failed to reduce");
            // 0 = sum_s cof[s] base_s + cof[n] r with cof[n] a nonzero constant.
            kappa = cof[n].constant_term();
            if (kappa == 0 || !cof[n].is_constant()) throw InternalError("unexpected tracked cofactor");
            for (std::size_t s = 0; s < n; ++s) cof[s] *= BigRat(1) / kappa;
        }
        cof[n] = hinv;
    }
    BigInt A = 1;
    for (const auto& x : cof) A = lcm(A, x.denominator_lcm());
    for (auto& x : cof) x *= BigRat(A);
    MultiPoly check(vars);
    for (std::size_t s = 0; s <= n; ++s) check += cof[s] * all[s];
    if (check != MultiPoly::constant(vars, BigRat(A)))
        throw InternalError("unit-ideal certificate identity failed re-verification");
    out.found = true;
    out.A = A;
    out.spairs_processed = e.processed();
    for (const auto& x : cof) out.max_cofactor_degree = std::max(out.max_cofactor_degree, x.total_degree());
    out.cofactors = std::move(cof);
    return out;
}

std::vector<Monomial> standard_monomials(const IdealBasis& basis) {
    std::size_t n = basis.vars.size();
    if (basis.is_unit()) return {};
    std::vector<Monomial> lms;
    for (std::size_t i = 0; i < basis.generators.size(); ++i) lms.push_back(basis.leading_monomial(i));
    for (std::size_t v = 0; v < n; ++v) {
        bool pure = false;
        for (const auto& m : lms)
            if (m[v] > 0 && m.deg == m[v]) pure = true;
        if (!pure) throw DomainError("ideal is not zero-dimensional");
    }
    auto standard = [&](const Monomial& m) {
        for (const auto& l : lms)
            if (l.divides(m)) return false;
        return true;
    };
    auto less = [&](const Monomial& a, const Monomial& b) { return basis.order.compare(a, b, n) < 0; };
    std::set<Monomial, decltype(less)> seen(less);
    std::vector<Monomial> queue = {Monomial::one()};
    seen.insert(Monomial::one());
    while (!queue.empty()) {
        Monomial m = queue.back();
        queue.pop_back();
        for (std::size_t v = 0; v < n; ++v) {
            Monomial x = m * Monomial::var(v);
            if (standard(x) && seen.insert(x).second) queue.push_back(x);
        }
    }
    return {seen.begin(), seen.end()};
}

std::size_t quotient_dimension(const IdealBasis& basis) { return standard_monomials(basis).size(); }

std::vector<BigRat> quotient_coordinates(const IdealBasis& basis, const MultiPoly& p, const std::vector<Monomial>& monos) {
    MultiPoly r = normal_form(p, basis);
    std::vector<BigRat> v(monos.size(), BigRat(0));
    for (const auto& t : r.terms()) {
        auto it = std::find(monos.begin(), monos.end(), t.mono);
        if (it == monos.end()) throw InternalError("normal form term outside the standard monomials");
        v[it - monos.begin()] = t.coef;
    }
    return v;
}

Matrix<BigRat> multiplication_matrix(const IdealBasis& basis, const MultiPoly& f, const std::vector<Monomial>& monos) {
    std::size_t d = monos.size();
    Matrix<BigRat> M(d, std::vector<BigRat>(d, BigRat(0)));
    MultiPoly fe = f.embed(basis.vars);
    for (std::size_t j = 0; j < d; ++j) {
        auto col = quotient_coordinates(basis, fe * MultiPoly::monomial(basis.vars, monos[j], 1), monos);
        for (std::size_t i = 0; i < d; ++i) M[i][j] = col[i];
    }
    return M;
}

}  // namespace cw
