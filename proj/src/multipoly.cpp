#include "cw/multipoly.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace cw {

namespace {

bool grlex_greater(const Term& a, const Term& b) { return grlex_cmp(a.mono, b.mono) > 0; }

// Merges two sorted term lists, scaling the second by `sign`.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int c = (i == a.size()) ? -1 : (j == b.size()) ? 1 : grlex_cmp(a[i].mono, b[j].mono);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back({b[j].mono, sign > 0 ? b[j].coef : BigRat(-b[j].coef)});
            ++j;
        } else {
            BigRat s = sign > 0 ? BigRat(a[i].coef + b[j].coef) : BigRat(a[i].coef - b[j].coef);
            if (s != 0) out.push_back({a[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

MultiPoly::MultiPoly(Vars vars) : vars_(std::move(vars)) {
    if (vars_.size() > kMaxVars) throw DomainError("too many variables");
}

MultiPoly::MultiPoly(Vars vars, std::vector<Term> terms) : vars_(std::move(vars)), terms_(std::move(terms)) {
    if (vars_.size() > kMaxVars) throw DomainError("too many variables");
    normalize();
}

void MultiPoly::normalize() {
    std::sort(terms_.begin(), terms_.end(), grlex_greater);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().mono == t.mono) {
            out.back().coef += t.coef;
        } else {
            if (!out.empty() && out.back().coef == 0) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().coef == 0) out.pop_back();
    terms_ = std::move(out);
}

MultiPoly MultiPoly::constant(Vars vars, const BigRat& c) {
    MultiPoly p(std::move(vars));
    if (c != 0) p.terms_.push_back({Monomial::one(), c});
    return p;
}

MultiPoly MultiPoly::variable(Vars vars, const std::string& name) {
    MultiPoly p(std::move(vars));
    int idx = p.require_var(name);
    p.terms_.push_back({Monomial::var(idx), BigRat(1)});
    return p;
}

MultiPoly MultiPoly::monomial(Vars vars, const Monomial& m, const BigRat& c) {
    MultiPoly p(std::move(vars));
    if (c != 0) p.terms_.push_back({m, c});
    return p;
}

bool MultiPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.deg == 0); }

BigRat MultiPoly::constant_term() const {
    if (!terms_.empty() && terms_.back().mono.deg == 0) return terms_.back().coef;
    return 0;
}

const Term& MultiPoly::leading() const {
    if (terms_.empty()) throw DomainError("leading term of zero polynomial");
    return terms_.front();
}

int MultiPoly::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return static_cast<int>(i);
    return -1;
}

int MultiPoly::require_var(const std::string& name) const {
    int i = var_index(name);
    if (i < 0) throw DomainError("unknown variable '" + name + "'");
    return i;
}

int MultiPoly::total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().mono.deg); }

int MultiPoly::degree_in(std::size_t idx) const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono[idx]));
    return d;
}

int MultiPoly::degree_in(const std::string& var) const {
    int idx = var_index(var);
    if (idx < 0) return terms_.empty() ? -1 : 0;
    return degree_in(static_cast<std::size_t>(idx));
}

bool MultiPoly::is_homogeneous() const {
    for (const auto& t : terms_)
        if (t.mono.deg != terms_.front().mono.deg) return false;
    return true;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (vars_ != o.vars_) {
        auto [a, b] = unify(*this, o);
        return *this = a += b;
    }
    terms_ = merge_terms(terms_, o.terms_, 1);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (vars_ != o.vars_) {
        auto [a, b] = unify(*this, o);
        return *this = a -= b;
    }
    terms_ = merge_terms(terms_, o.terms_, -1);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ != b.vars_) {
        auto [x, y] = unify(a, b);
        return x * y;
    }
    MultiPoly r(a.vars_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (a.terms_.size() == 1 || b.terms_.size() == 1) {
        const auto& one = a.terms_.size() == 1 ? a.terms_[0] : b.terms_[0];
        const auto& many = a.terms_.size() == 1 ? b.terms_ : a.terms_;
        r.terms_.reserve(many.size());
        for (const auto& t : many) r.terms_.push_back({t.mono * one.mono, t.coef * one.coef});
        return r;  // order is preserved under multiplication by a monomial
    }
    std::unordered_map<Monomial, BigRat, MonomialHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size() / 2 + 1);
    BigRat prod;
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) {
            mpq_mul(prod.get_mpq_t(), s.coef.get_mpq_t(), t.coef.get_mpq_t());
            auto [it, fresh] = acc.try_emplace(s.mono * t.mono, prod);
            if (!fresh) it->second += prod;
        }
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) r.terms_.push_back({m, std::move(c)});
    std::sort(r.terms_.begin(), r.terms_.end(), grlex_greater);
    return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const BigRat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coef *= c;
    return *this;
}

MultiPoly MultiPoly::pow(unsigned n) const {
    MultiPoly result = constant(vars_, 1);
    MultiPoly base = *this;
    while (n) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    if (vars_ == o.vars_) {
        if (terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].mono != o.terms_[i].mono || terms_[i].coef != o.terms_[i].coef) return false;
        return true;
    }
    auto [a, b] = unify(*this, o);
    return a == b;
}

std::pair<MultiPoly, MultiPoly> MultiPoly::divide(const MultiPoly& d) const {
    if (vars_ != d.vars_) {
        auto [a, b] = unify(*this, d);
        return a.divide(b);
    }
    if (d.is_zero()) throw DomainError("division by zero polynomial");
    // Remainder kept in an ordered map so each reduction step costs O(|d| log).
    auto cmp = [](const Monomial& x, const Monomial& y) { return grlex_cmp(x, y) > 0; };
    std::map<Monomial, BigRat, decltype(cmp)> rem(cmp);
    for (const auto& t : terms_) rem.emplace(t.mono, t.coef);
    const Term& lt = d.leading();
    std::vector<Term> q, r;
    while (!rem.empty()) {
        auto it = rem.begin();
        if (lt.mono.divides(it->first)) {
            Monomial qm = lt.mono.quotient_of(it->first);
            BigRat qc = it->second / lt.coef;
            for (const auto& t : d.terms_) {
                Monomial m = t.mono * qm;
                auto [pos, fresh] = rem.try_emplace(m, -qc * t.coef);
                if (!fresh) {
                    pos->second -= qc * t.coef;
                    if (pos->second == 0) rem.erase(pos);
                }
            }
            q.push_back({qm, std::move(qc)});
        } else {
            r.push_back({it->first, it->second});
            rem.erase(it);
        }
    }
    MultiPoly Q(vars_), R(vars_);
    Q.terms_ = std::move(q);
    R.terms_ = std::move(r);
    return {Q, R};
}

MultiPoly MultiPoly::divide_exact(const MultiPoly& d) const {
    auto [q, r] = divide(d);
    if (!r.is_zero()) throw DomainError("exact division failed: nonzero remainder");
    return q;
}

BigRat MultiPoly::evaluate(const std::vector<BigRat>& point) const {
    if (point.size() != vars_.size()) throw DomainError("evaluation point has wrong dimension");
    // Cache powers per variable.
    std::vector<std::vector<BigRat>> powers(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        int d = degree_in(i);
        powers[i].resize(std::max(d, 0) + 1);
        powers[i][0] = 1;
        for (int k = 1; k <= d; ++k) powers[i][k] = powers[i][k - 1] * point[i];
    }
    BigRat sum = 0;
    for (const auto& t : terms_) {
        BigRat v = t.coef;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (t.mono[i]) v *= powers[i][t.mono[i]];
        sum += v;
    }
    return sum;
}

MultiPoly MultiPoly::substitute(const std::map<std::string, MultiPoly>& repl, const Vars& target) const {
    // Images of each source variable in the target ring.
    std::vector<MultiPoly> image(vars_.size());
    std::vector<bool> replaced(vars_.size(), false);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = repl.find(vars_[i]);
        if (it != repl.end()) {
            image[i] = it->second.embed(target);
            replaced[i] = true;
        } else if (degree_in(i) > 0) {
            image[i] = variable(target, vars_[i]);
        }
    }
    std::vector<std::vector<MultiPoly>> powers(vars_.size());
    auto power_of = [&](std::size_t i, unsigned k) -> const MultiPoly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(constant(target, 1));
        while (cache.size() <= k) cache.push_back(cache.back() * image[i]);
        return cache[k];
    };
    // Horner-free evaluation, accumulating in a hash map of target monomials.
    MultiPoly out(target);
    std::vector<Term> acc;
    for (const auto& t : terms_) {
        MultiPoly term = constant(target, t.coef);
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (t.mono[i]) term *= power_of(i, t.mono[i]);
        for (auto& tt : term.terms_) acc.push_back(std::move(tt));
    }
    return MultiPoly(target, std::move(acc));
}

MultiPoly MultiPoly::substitute(const std::map<std::string, MultiPoly>& repl) const {
    Vars target;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (!repl.count(vars_[i])) target.push_back(vars_[i]);
    for (const auto& [name, p] : repl) target = union_vars(target, p.vars());
    return substitute(repl, target);
}

MultiPoly MultiPoly::evaluate_partial(const std::map<std::string, BigRat>& values) const {
    std::vector<std::vector<BigRat>> powers(vars_.size());
    std::vector<const BigRat*> val(vars_.size(), nullptr);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = values.find(vars_[i]);
        if (it == values.end()) continue;
        val[i] = &it->second;
        int d = degree_in(i);
        powers[i].resize(std::max(d, 0) + 1);
        powers[i][0] = 1;
        for (int k = 1; k <= d; ++k) powers[i][k] = powers[i][k - 1] * it->second;
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term n{t.mono, t.coef};
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (val[i] && t.mono[i]) {
                n.coef *= powers[i][t.mono[i]];
                n.mono.set(i, 0);
            }
        if (n.coef != 0) out.push_back(std::move(n));
    }
    return MultiPoly(vars_, std::move(out));
}

MultiPoly MultiPoly::derivative(const std::string& var) const {
    int idx = var_index(var);
    MultiPoly r(vars_);
    if (idx < 0) return r;
    std::vector<Term> out;
    for (const auto& t : terms_) {
        unsigned e = t.mono[idx];
        if (!e) continue;
        Term n{t.mono, t.coef * e};
        n.mono.set(idx, e - 1);
        out.push_back(std::move(n));
    }
    return MultiPoly(vars_, std::move(out));
}

std::vector<MultiPoly> MultiPoly::coefficients_in(const std::string& var) const {
    int idx = var_index(var);
    if (idx < 0) return {*this};
    int d = degree_in(static_cast<std::size_t>(idx));
    std::vector<std::vector<Term>> buckets(std::max(d, 0) + 1);
    for (const auto& t : terms_) {
        Term n{t.mono, t.coef};
        unsigned e = t.mono[idx];
        n.mono.set(idx, 0);
        buckets[e].push_back(std::move(n));
    }
    std::vector<MultiPoly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.emplace_back(vars_, std::move(b));
    return out;
}

MultiPoly MultiPoly::leading_coefficient_in(const std::string& var) const {
    auto c = coefficients_in(var);
    return c.back();
}

MultiPoly MultiPoly::aligned(const Vars& target) const {
    if (target.size() > kMaxVars) throw DomainError("too many variables");
    std::vector<int> map(vars_.size(), -1);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        for (std::size_t j = 0; j < target.size(); ++j)
            if (target[j] == vars_[i]) map[i] = static_cast<int>(j);
        if (map[i] < 0 && degree_in(i) > 0)
            throw DomainError("variable '" + vars_[i] + "' missing from target ring");
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term n;
        n.coef = t.coef;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (t.mono[i]) n.mono.set(map[i], t.mono[i]);
        out.push_back(std::move(n));
    }
    return MultiPoly(target, std::move(out));
}

MultiPoly MultiPoly::embed(const Vars& target) const {
    if (target == vars_) return *this;
    return aligned(target);
}

MultiPoly MultiPoly::shrink() const {
    Vars keep;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (degree_in(i) > 0) keep.push_back(vars_[i]);
    return embed(keep);
}

MultiPoly MultiPoly::rename(const Vars& names) const {
    if (names.size() != vars_.size()) throw DomainError("rename needs one name per variable");
    MultiPoly r = *this;
    r.vars_ = names;
    return r;
}

BigInt MultiPoly::denominator_lcm() const {
    BigInt d = 1;
    for (const auto& t : terms_) d = lcm(d, BigInt(t.coef.get_den()));
    return d;
}

BigRat MultiPoly::content() const {
    if (terms_.empty()) return 0;
    BigInt den = denominator_lcm();
    BigInt g = 0;
    for (const auto& t : terms_) g = gcd(g, BigInt(t.coef.get_num() * (den / t.coef.get_den())));
    BigRat c = make_rat(g, den);
    if (terms_.front().coef < 0) c = -c;
    return c;
}

MultiPoly MultiPoly::primitive_part() const {
    if (terms_.empty()) return *this;
    BigRat c = content();
    MultiPoly r = *this;
    r *= BigRat(1 / c);
    return r;
}

MultiPoly MultiPoly::monic() const {
    if (terms_.empty()) return *this;
    MultiPoly r = *this;
    r *= BigRat(1 / terms_.front().coef);
    return r;
}

bool MultiPoly::has_integer_coefficients() const {
    for (const auto& t : terms_)
        if (t.coef.get_den() != 1) return false;
    return true;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        BigRat c = t.coef;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        bool unit = (c == 1);
        bool wrote = false;
        if (!unit || t.mono.deg == 0) {
            os << cw::to_string(c);
            wrote = true;
        }
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            unsigned e = t.mono[i];
            if (!e) continue;
            if (wrote) os << "*";
            os << vars_[i];
            if (e > 1) os << "^" << e;
            wrote = true;
        }
    }
    return os.str();
}

Vars union_vars(const Vars& a, const Vars& b) {
    Vars out = a;
    for (const auto& v : b)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    return out;
}

std::pair<MultiPoly, MultiPoly> unify(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars() == b.vars()) return {a, b};
    Vars u = union_vars(a.vars(), b.vars());
    return {a.embed(u), b.embed(u)};
}

namespace {

// Pseudo-remainder of a by b viewed as univariate in variable `idx`.
MultiPoly pseudo_remainder(MultiPoly a, const MultiPoly& b, const std::string& var) {
    int db = b.degree_in(var);
    MultiPoly lb = b.leading_coefficient_in(var);
    MultiPoly x = MultiPoly::variable(a.vars(), var);
    while (!a.is_zero() && a.degree_in(var) >= db) {
        int da = a.degree_in(var);
        MultiPoly la = a.leading_coefficient_in(var);
        a = a * lb - la * x.pow(da - db) * b;
    }
    return a;
}

MultiPoly content_in(const MultiPoly& p, const std::string& var) {
    MultiPoly g(p.vars());
    for (const auto& c : p.coefficients_in(var)) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.primitive_part() : gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

}  // namespace

MultiPoly gcd(const MultiPoly& a0, const MultiPoly& b0) {
    auto [a, b] = unify(a0, b0);
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    if (a.is_constant() || b.is_constant()) return MultiPoly::constant(a.vars(), 1);
    std::string var;
    for (std::size_t i = 0; i < a.nvars(); ++i)
        if (a.degree_in(i) > 0 || b.degree_in(i) > 0) {
            var = a.vars()[i];
            break;
        }
    if (a.degree_in(var) == 0) return gcd(a, content_in(b, var));
    if (b.degree_in(var) == 0) return gcd(content_in(a, var), b);
    MultiPoly ca = content_in(a, var), cb = content_in(b, var);
    MultiPoly cg = gcd(ca, cb);
    MultiPoly p = a.divide_exact(ca), q = b.divide_exact(cb);
    if (p.degree_in(var) < q.degree_in(var)) std::swap(p, q);
    while (!q.is_zero() && q.degree_in(var) > 0) {
        MultiPoly r = pseudo_remainder(p, q, var);
        p = q;
        if (r.is_zero()) {
            q = r;
            break;
        }
        q = r.divide_exact(content_in(r, var));
    }
    MultiPoly g = q.is_zero() ? p : MultiPoly::constant(a.vars(), 1);
    g = g.divide_exact(content_in(g, var));
    return (g * cg).primitive_part();
}

MultiPoly dehomogenize(const MultiPoly& f, int chart) {
    if (f.nvars() != 3) throw DomainError("dehomogenize expects a form in three variables");
    if (chart < 1 || chart > 3) throw DomainError("chart index must be 1, 2 or 3");
    if (!f.is_homogeneous()) throw DomainError("dehomogenize: polynomial is not homogeneous");
    const std::string& v = f.vars()[chart - 1];
    MultiPoly g = f.evaluate_partial({{v, BigRat(1)}});
    Vars rest;
    for (int i = 0; i < 3; ++i)
        if (i != chart - 1) rest.push_back(f.vars()[i]);
    return g.embed(rest);
}

MultiPoly homogenize(const MultiPoly& f, const Vars& target, const std::string& hvar, int degree) {
    MultiPoly g = f.embed(target);
    int h = g.require_var(hvar);
    std::vector<Term> out;
    for (const auto& t : g.terms()) {
        if (static_cast<int>(t.mono.deg) > degree) throw DomainError("homogenize: degree too small");
        Term n{t.mono, t.coef};
        n.mono.set(h, t.mono[h] + (degree - t.mono.deg));
        out.push_back(std::move(n));
    }
    return MultiPoly(target, std::move(out));
}

}  // namespace cw
