#pragma once

#include <memory>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "cw/errors.hpp"
#include "cw/multipoly.hpp"
#include "cw/upoly.hpp"

namespace cw {

// Coefficient fields. Each provides Elem, zero/one/from_int, arithmetic,
// inverse, equality and canonical printing. Elements are kept canonical so
// that structural equality is field equality.

struct RationalField {
    using Elem = BigRat;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long v) const { return v; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw DomainError("inverse of zero");
        return 1 / a;
    }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::string str(const Elem& a) const { return to_string(a); }
};

// Q(x): reduced fractions num/den with den monic.
struct RationalFunction {
    QPoly num;
    QPoly den = QPoly::constant(1);
};

struct RationalFunctionField {
    using Elem = RationalFunction;
    std::string var = "x";

    Elem zero() const { return {}; }
    Elem one() const { return {QPoly::constant(1), QPoly::constant(1)}; }
    Elem from_int(long v) const { return {QPoly::constant(v), QPoly::constant(1)}; }
    Elem make(const QPoly& num, const QPoly& den) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const { return {-a.num, a.den}; }
    Elem inv(const Elem& a) const;
    bool is_zero(const Elem& a) const { return a.num.is_zero(); }
    bool eq(const Elem& a, const Elem& b) const { return a.num == b.num && a.den == b.den; }
    std::string str(const Elem& a) const;
};

template <class Field>
class UniPolyOverField {
public:
    using Elem = typename Field::Elem;

    explicit UniPolyOverField(std::shared_ptr<const Field> field) : field_(std::move(field)) {}
    UniPolyOverField(std::shared_ptr<const Field> field, std::vector<Elem> coeffs)
        : field_(std::move(field)), c_(std::move(coeffs)) {
        trim();
    }

    const Field& field() const { return *field_; }
    const std::shared_ptr<const Field>& field_ptr() const { return field_; }
    const std::vector<Elem>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Elem& lc() const {
        if (c_.empty()) throw DomainError("leading coefficient of zero polynomial");
        return c_.back();
    }

    UniPolyOverField constant(const Elem& e) const { return UniPolyOverField(field_, {e}); }

    friend UniPolyOverField operator+(const UniPolyOverField& a, const UniPolyOverField& b) {
        const Field& F = *a.field_;
        std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()), F.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = F.add(v[i], a.c_[i]);
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] = F.add(v[i], b.c_[i]);
        return UniPolyOverField(a.field_, std::move(v));
    }
    friend UniPolyOverField operator-(const UniPolyOverField& a, const UniPolyOverField& b) {
        const Field& F = *a.field_;
        std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()), F.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = F.add(v[i], a.c_[i]);
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] = F.sub(v[i], b.c_[i]);
        return UniPolyOverField(a.field_, std::move(v));
    }
    friend UniPolyOverField operator*(const UniPolyOverField& a, const UniPolyOverField& b) {
        const Field& F = *a.field_;
        if (a.is_zero() || b.is_zero()) return UniPolyOverField(a.field_);
        std::vector<Elem> v(a.c_.size() + b.c_.size() - 1, F.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = F.add(v[i + j], F.mul(a.c_[i], b.c_[j]));
        return UniPolyOverField(a.field_, std::move(v));
    }
    UniPolyOverField scaled(const Elem& s) const {
        std::vector<Elem> v;
        for (const auto& c : c_) v.push_back(field_->mul(c, s));
        return UniPolyOverField(field_, std::move(v));
    }

    bool operator==(const UniPolyOverField& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!field_->eq(c_[i], o.c_[i])) return false;
        return true;
    }

    std::pair<UniPolyOverField, UniPolyOverField> divmod(const UniPolyOverField& d) const {
        const Field& F = *field_;
        if (d.is_zero()) throw DomainError("polynomial division by zero");
        if (degree() < d.degree()) return {UniPolyOverField(field_), *this};
        std::vector<Elem> r = c_;
        std::vector<Elem> q(c_.size() - d.c_.size() + 1, F.zero());
        Elem inv = F.inv(d.lc());
        int dd = d.degree();
        for (int k = degree(); k >= dd; --k) {
            if (F.is_zero(r[k])) continue;
            Elem f = F.mul(r[k], inv);
            for (int i = 0; i <= dd; ++i) r[k - dd + i] = F.sub(r[k - dd + i], F.mul(f, d.c_[i]));
            q[k - dd] = std::move(f);
        }
        return {UniPolyOverField(field_, std::move(q)), UniPolyOverField(field_, std::move(r))};
    }

    UniPolyOverField monic() const {
        if (is_zero()) return *this;
        return scaled(field_->inv(lc()));
    }

    UniPolyOverField derivative() const {
        std::vector<Elem> v;
        for (std::size_t i = 1; i < c_.size(); ++i)
            v.push_back(field_->mul(c_[i], field_->from_int(static_cast<long>(i))));
        return UniPolyOverField(field_, std::move(v));
    }

    std::string to_string(const std::string& var = "U") const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (field_->is_zero(c_[i])) continue;
            if (!out.empty()) out += " + ";
            out += "(" + field_->str(c_[i]) + ")";
            if (i > 0) out += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && field_->is_zero(c_.back())) c_.pop_back();
    }

    std::shared_ptr<const Field> field_;
    std::vector<Elem> c_;
};

template <class Field>
UniPolyOverField<Field> gcd(UniPolyOverField<Field> a, UniPolyOverField<Field> b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
template <class Field>
std::tuple<UniPolyOverField<Field>, UniPolyOverField<Field>, UniPolyOverField<Field>> xgcd(
    const UniPolyOverField<Field>& a, const UniPolyOverField<Field>& b) {
    using P = UniPolyOverField<Field>;
    const auto& fp = a.field_ptr();
    P r0 = a, r1 = b, s0 = P(fp, {fp->one()}), s1(fp), t0(fp), t1 = P(fp, {fp->one()});
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        P s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    auto k = fp->inv(r0.lc());
    return {r0.scaled(k), s0.scaled(k), t0.scaled(k)};
}

// f / gcd(f, f'), monic. Requires characteristic zero.
template <class Field>
UniPolyOverField<Field> squarefree_part(const UniPolyOverField<Field>& f) {
    if (f.is_zero()) throw DomainError("squarefree part of zero");
    auto g = gcd(f, f.derivative());
    return f.divmod(g).first.monic();
}

// The function field Q(x)[y]/(F) of an irreducible plane curve F(x, y).
// Elements are polynomials in y of degree < deg_y F over Q(x).
class CurveFunctionField {
public:
    using Base = UniPolyOverField<RationalFunctionField>;
    using Elem = std::vector<RationalFunction>;  // coefficients in y, trimmed

    CurveFunctionField(const MultiPoly& F, std::string x, std::string y);

    Elem zero() const { return {}; }
    Elem one() const;
    Elem from_int(long v) const;
    Elem from_poly(const MultiPoly& p) const;  // p in Q[x, y]
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem inv(const Elem& a) const;
    bool is_zero(const Elem& a) const { return a.empty(); }
    bool eq(const Elem& a, const Elem& b) const;
    std::string str(const Elem& a) const;

    // Representative num(x, y) / den(x) with den monic.
    std::pair<MultiPoly, QPoly> to_fraction(const Elem& a) const;

private:
    Base wrap(const Elem& a) const;
    Elem unwrap(const Base& p) const;
    Elem reduce(const Base& p) const;

    std::shared_ptr<const RationalFunctionField> base_;
    Base modulus_;  // F as a monic polynomial in y over Q(x)
    std::string x_, y_;
};

}  // namespace cw
