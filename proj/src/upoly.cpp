#include "cw/upoly.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "cw/errors.hpp"

namespace cw {

QPoly::QPoly(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) { trim(); }

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::constant(const BigRat& c) { return QPoly(std::vector<BigRat>{c}); }

QPoly QPoly::monomial(unsigned degree, const BigRat& c) {
    std::vector<BigRat> v(degree + 1, BigRat(0));
    v[degree] = c;
    return QPoly(std::move(v));
}

QPoly QPoly::from_integers(const std::vector<BigInt>& coeffs) {
    std::vector<BigRat> v;
    v.reserve(coeffs.size());
    for (const auto& c : coeffs) v.emplace_back(c);
    return QPoly(std::move(v));
}

const BigRat& QPoly::lc() const {
    if (c_.empty()) throw DomainError("leading coefficient of zero polynomial");
    return c_.back();
}

QPoly QPoly::operator-() const {
    QPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<BigRat> v(std::max(a.c_.size(), b.c_.size()), BigRat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigRat> v(a.c_.size() + b.c_.size() - 1, BigRat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return QPoly(std::move(v));
}

QPoly operator*(const QPoly& a, const BigRat& s) {
    if (s == 0) return {};
    QPoly r = a;
    for (auto& c : r.c_) c *= s;
    return r;
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& d) const {
    if (d.is_zero()) throw DomainError("polynomial division by zero");
    if (degree() < d.degree()) return {QPoly(), *this};
    std::vector<BigRat> r = c_;
    std::vector<BigRat> q(c_.size() - d.c_.size() + 1, BigRat(0));
    BigRat inv = 1 / d.lc();
    int dd = d.degree();
    for (int k = degree(); k >= dd; --k) {
        if (r[k] == 0) continue;
        BigRat f = r[k] * inv;
        q[k - dd] = f;
        for (int i = 0; i <= dd; ++i) r[k - dd + i] -= f * d.c_[i];
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly QPoly::divide_exact(const QPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw DomainError("exact division failed: nonzero remainder");
    return q;
}

QPoly QPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigRat> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * BigRat(static_cast<long>(i));
    return QPoly(std::move(v));
}

QPoly QPoly::monic() const {
    if (is_zero()) return *this;
    return *this * BigRat(1 / lc());
}

BigRat QPoly::evaluate(const BigRat& x) const {
    BigRat v = 0;
    for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
    return v;
}

QPoly QPoly::compose(const QPoly& inner) const {
    QPoly r;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * inner + QPoly::constant(c_[i]);
    return r;
}

QPoly QPoly::pow(unsigned n) const {
    QPoly r = constant(1), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

BigRat QPoly::content() const {
    if (is_zero()) return 0;
    BigInt den = common_denominator(c_);
    BigInt g = 0;
    for (const auto& c : c_) g = cw::gcd(g, BigInt(c.get_num() * (den / c.get_den())));
    BigRat r = make_rat(g, den);
    return lc() < 0 ? BigRat(-r) : r;
}

std::vector<BigInt> QPoly::primitive_integer() const {
    std::vector<BigInt> out;
    if (is_zero()) return out;
    BigRat k = 1 / content();
    for (const auto& c : c_) {
        BigRat v = c * k;
        out.push_back(v.get_num());
    }
    return out;
}

MultiPoly QPoly::to_multipoly(const Vars& vars, const std::string& var) const {
    MultiPoly probe(vars);
    int idx = probe.require_var(var);
    std::vector<Term> t;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) t.push_back({Monomial::var(idx, static_cast<unsigned>(i)), c_[i]});
    return MultiPoly(vars, std::move(t));
}

QPoly QPoly::from_multipoly(const MultiPoly& p, const std::string& var) {
    int idx = p.var_index(var);
    std::vector<BigRat> v;
    for (const auto& t : p.terms()) {
        if (t.mono.deg != (idx >= 0 ? t.mono[idx] : 0u))
            throw DomainError("polynomial is not univariate in '" + var + "'");
        unsigned e = idx >= 0 ? t.mono[idx] : 0;
        if (v.size() <= e) v.resize(e + 1, BigRat(0));
        v[e] = t.coef;
    }
    return QPoly(std::move(v));
}

std::string QPoly::to_string(const std::string& var) const { return to_multipoly({var}, var).to_string(); }

QPoly gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b;
    while (!y.is_zero()) {
        QPoly r = x % y;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

QXgcd xgcd(const QPoly& a, const QPoly& b) {
    QPoly r0 = a, r1 = b, s0 = QPoly::constant(1), s1, t0, t1 = QPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        QPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    BigRat k = 1 / r0.lc();
    return {r0 * k, s0 * k, t0 * k};
}

BigRat resultant(const QPoly& a0, const QPoly& b0) {
    if (a0.is_zero() || b0.is_zero()) return 0;
    QPoly a = a0, b = b0;
    BigRat res = 1;
    while (b.degree() > 0) {
        int da = a.degree(), db = b.degree();
        QPoly r = a % b;
        if (r.is_zero()) return 0;
        // Res(a, b) = (-1)^{da db} lc(b)^{da - dr} Res(b, r)
        if ((da & 1) && (db & 1)) res = -res;
        res *= pow(b.lc(), static_cast<unsigned long>(da - r.degree()));
        a = std::move(b);
        b = std::move(r);
    }
    // b is a nonzero constant: Res(a, c) = c^{deg a}
    return res * pow(b.lc(), static_cast<unsigned long>(a.degree()));
}

BigRat discriminant(const QPoly& f) {
    int n = f.degree();
    if (n < 1) throw DomainError("discriminant needs degree at least 1");
    if (n == 1) return 1;
    BigRat r = resultant(f, f.derivative()) / f.lc();
    if ((n * (n - 1) / 2) % 2) r = -r;
    return r;
}

std::vector<QPoly> squarefree_decomposition(const QPoly& f) {
    if (f.is_zero()) throw DomainError("squarefree decomposition of zero");
    std::vector<QPoly> out;
    QPoly a = f.monic();
    if (a.degree() == 0) return out;
    QPoly b = a.derivative();
    QPoly c = gcd(a, b);
    QPoly w = a.divide_exact(c);
    QPoly y = b.divide_exact(c);
    QPoly z = y - w.derivative();
    while (w.degree() > 0) {
        QPoly g = gcd(w, z);
        out.push_back(g);
        w = w.divide_exact(g);
        y = z.divide_exact(g);
        z = y - w.derivative();
    }
    while (!out.empty() && out.back().degree() == 0) out.pop_back();
    return out;
}

QPoly squarefree_part(const QPoly& f) {
    QPoly a = f.monic();
    if (a.degree() <= 0) return a;
    return a.divide_exact(gcd(a, a.derivative()));
}

void trim(ZVec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

ZVec zmul(const ZVec& a, const ZVec& b) {
    if (a.empty() || b.empty()) return {};
    ZVec v(a.size() + b.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) v[i + j] += a[i] * b[j];
    trim(v);
    return v;
}

BigInt zdiscriminant(const ZVec& f) {
    BigRat d = discriminant(QPoly::from_integers(f));
    return d.get_num();  // integral for integer input
}

std::string zvec_to_string(const ZVec& f, const std::string& var) { return QPoly::from_integers(f).to_string(var); }

namespace modp {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    // Extended Euclid on signed 128-bit values.
    __int128 t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        __int128 q = r / nr;
        __int128 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw DomainError("residue is not invertible");
    if (t < 0) t += p;
    return static_cast<std::uint64_t>(t);
}

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly reduce(const ZVec& f, std::uint64_t p) {
    Poly out(f.size());
    BigInt P = static_cast<unsigned long>(p);
    // mpz_fdiv_ui would truncate on 32-bit long; use BigInt arithmetic.
    for (std::size_t i = 0; i < f.size(); ++i) {
        BigInt r;
        mpz_fdiv_r(r.get_mpz_t(), f[i].get_mpz_t(), P.get_mpz_t());
        out[i] = r.get_ui();
    }
    trim(out);
    return out;
}

Poly add(const Poly& a, const Poly& b, std::uint64_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        std::uint64_t s = x + y;
        if (s >= p || s < x) s -= p;
        r[i] = s;
    }
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = x >= y ? x - y : x + (p - y);
    }
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
    Poly r(acc.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j] % p;
        }
    for (std::size_t k = 0; k < acc.size(); ++k) r[k] = static_cast<std::uint64_t>(acc[k] % p);
    trim(r);
    return r;
}

Poly scale(const Poly& a, std::uint64_t s, std::uint64_t p) {
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], s, p);
    trim(r);
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, std::uint64_t p) {
    if (b.empty()) throw DomainError("polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    Poly r = a, q(a.size() - b.size() + 1, 0);
    std::uint64_t inv = invmod(b.back(), p);
    std::size_t db = b.size() - 1;
    for (std::size_t k = a.size(); k-- > db;) {
        if (r[k] == 0) continue;
        std::uint64_t f = mulmod(r[k], inv, p);
        q[k - db] = f;
        for (std::size_t i = 0; i <= db; ++i) {
            std::uint64_t t = mulmod(f, b[i], p);
            std::uint64_t& x = r[k - db + i];
            x = x >= t ? x - t : x + (p - t);
        }
    }
    trim(q);
    trim(r);
    return {q, r};
}

Poly rem(const Poly& a, const Poly& b, std::uint64_t p) { return divmod(a, b, p).second; }

Poly monic(const Poly& a, std::uint64_t p) {
    if (a.empty()) return a;
    return scale(a, invmod(a.back(), p), p);
}

Poly gcd(Poly a, Poly b, std::uint64_t p) {
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

Poly inverse_mod(const Poly& a, const Poly& m, std::uint64_t p) {
    Poly r0 = m, r1 = rem(a, m, p), t0, t1 = {1};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1, p);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly t2 = sub(t0, mul(q, t1, p), p);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.size() != 1) throw DomainError("polynomial not invertible modulo m");
    return rem(scale(t0, invmod(r0[0], p), p), m, p);
}

Poly derivative(const Poly& a, std::uint64_t p) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mulmod(a[i], i % p, p);
    trim(r);
    return r;
}

Poly powmod(const Poly& base, const BigInt& e, const Poly& m, std::uint64_t p) {
    Poly r = rem(Poly{1}, m, p), b = rem(base, m, p);
    std::size_t bits = bit_length(e);
    for (std::size_t i = bits; i-- > 0;) {
        r = rem(mul(r, r, p), m, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, b, p), m, p);
    }
    return r;
}

bool is_squarefree(const Poly& f, std::uint64_t p) {
    if (f.size() <= 2) return true;
    Poly d = derivative(f, p);
    if (d.empty()) return false;
    return gcd(f, d, p).size() == 1;
}

Poly radical(const Poly& f0, std::uint64_t p) {
    Poly f = monic(f0, p);
    if (f.size() <= 2) return f;
    Poly d = derivative(f, p);
    if (d.empty()) {
        // f(T) = h(T^p) = h(T)^p over F_p.
        Poly h;
        for (std::size_t i = 0; i < f.size(); i += p) h.push_back(f[i]);
        return radical(h, p);
    }
    Poly g = gcd(f, d, p);
    if (g.size() == 1) return f;
    Poly w = divmod(f, g, p).first;
    Poly rg = radical(g, p);
    Poly common = gcd(w, rg, p);
    return monic(divmod(mul(w, rg, p), common, p).first, p);
}

namespace {

void equal_degree(const Poly& f, std::size_t d, std::uint64_t p, std::mt19937_64& rng, std::vector<Poly>& out) {
    std::size_t n = f.size() - 1;
    if (n == d) {
        out.push_back(f);
        return;
    }
    BigInt P = static_cast<unsigned long>(p);
    BigInt e = (pow(P, d) - 1) / 2;
    for (;;) {
        Poly a(n);
        for (auto& c : a) c = rng() % p;
        trim(a);
        if (a.size() <= 1) continue;
        Poly b;
        if (p == 2) {
            Poly t = a, acc = a;
            for (std::size_t i = 1; i < d; ++i) {
                t = rem(mul(t, t, p), f, p);
                acc = add(acc, t, p);
            }
            b = acc;
        } else {
            b = sub(powmod(a, e, f, p), Poly{1}, p);
        }
        Poly g = gcd(f, b, p);
        if (g.size() > 1 && g.size() < f.size()) {
            equal_degree(g, d, p, rng, out);
            equal_degree(divmod(f, g, p).first, d, p, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<Poly> factor_squarefree(const Poly& f0, std::uint64_t p, std::uint64_t seed) {
    Poly f = monic(f0, p);
    std::vector<Poly> out;
    if (f.size() <= 1) return out;
    std::mt19937_64 rng(seed);
    BigInt P = static_cast<unsigned long>(p);
    Poly x = {0, 1};
    Poly h = x;
    for (std::size_t d = 1; f.size() > 1; ++d) {
        if (2 * d > f.size() - 1) {
            out.push_back(f);
            break;
        }
        h = powmod(h, P, f, p);
        Poly g = gcd(f, sub(h, x, p), p);
        if (g.size() > 1) {
            equal_degree(g, d, p, rng, out);
            f = divmod(f, g, p).first;
            h = rem(h, f, p);
        }
    }
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
}

}  // namespace modp

}  // namespace cw
