#include "cw/unipoly_field.hpp"

namespace cw {

RationalFunction RationalFunctionField::make(const QPoly& num, const QPoly& den) const {
    if (den.is_zero()) throw DomainError("rational function with zero denominator");
    if (num.is_zero()) return {};
    QPoly g = gcd(num, den);
    QPoly n = num.divide_exact(g), d = den.divide_exact(g);
    BigRat k = 1 / d.lc();
    return {n * k, d * k};
}

RationalFunction RationalFunctionField::add(const Elem& a, const Elem& b) const {
    if (a.den == b.den) return make(a.num + b.num, a.den);
    return make(a.num * b.den + b.num * a.den, a.den * b.den);
}

RationalFunction RationalFunctionField::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

RationalFunction RationalFunctionField::mul(const Elem& a, const Elem& b) const {
    if (a.num.is_zero() || b.num.is_zero()) return {};
    return make(a.num * b.num, a.den * b.den);
}

RationalFunction RationalFunctionField::inv(const Elem& a) const {
    if (a.num.is_zero()) throw DomainError("inverse of zero");
    return make(a.den, a.num);
}

std::string RationalFunctionField::str(const Elem& a) const {
    if (a.den.degree() == 0) return a.num.to_string(var);
    return "(" + a.num.to_string(var) + ")/(" + a.den.to_string(var) + ")";
}

CurveFunctionField::CurveFunctionField(const MultiPoly& F, std::string x, std::string y)
    : base_(std::make_shared<RationalFunctionField>(RationalFunctionField{x})),
      modulus_(base_),
      x_(std::move(x)),
      y_(std::move(y)) {
    auto cs = F.embed({x_, y_}).coefficients_in(y_);
    std::vector<RationalFunction> v;
    for (const auto& c : cs) v.push_back(base_->make(QPoly::from_multipoly(c, x_), QPoly::constant(1)));
    modulus_ = Base(base_, std::move(v)).monic();
    if (modulus_.degree() < 1) throw DomainError("curve equation must involve " + y_);
}

CurveFunctionField::Base CurveFunctionField::wrap(const Elem& a) const { return Base(base_, a); }

CurveFunctionField::Elem CurveFunctionField::unwrap(const Base& p) const { return p.coeffs(); }

CurveFunctionField::Elem CurveFunctionField::reduce(const Base& p) const { return unwrap(p.divmod(modulus_).second); }

CurveFunctionField::Elem CurveFunctionField::one() const { return {base_->one()}; }

CurveFunctionField::Elem CurveFunctionField::from_int(long v) const {
    if (v == 0) return {};
    return {base_->from_int(v)};
}

CurveFunctionField::Elem CurveFunctionField::from_poly(const MultiPoly& p) const {
    auto cs = p.embed({x_, y_}).coefficients_in(y_);
    std::vector<RationalFunction> v;
    for (const auto& c : cs) v.push_back(base_->make(QPoly::from_multipoly(c, x_), QPoly::constant(1)));
    return reduce(Base(base_, std::move(v)));
}

CurveFunctionField::Elem CurveFunctionField::add(const Elem& a, const Elem& b) const { return unwrap(wrap(a) + wrap(b)); }

CurveFunctionField::Elem CurveFunctionField::sub(const Elem& a, const Elem& b) const { return unwrap(wrap(a) - wrap(b)); }

CurveFunctionField::Elem CurveFunctionField::neg(const Elem& a) const { return sub({}, a); }

CurveFunctionField::Elem CurveFunctionField::mul(const Elem& a, const Elem& b) const { return reduce(wrap(a) * wrap(b)); }

CurveFunctionField::Elem CurveFunctionField::inv(const Elem& a) const {
    if (a.empty()) throw DomainError("inverse of zero");
    auto [g, s, t] = xgcd(wrap(a), modulus_);
    if (g.degree() != 0) throw DomainError("element is a zero divisor: curve equation is reducible");
    return reduce(s);
}

bool CurveFunctionField::eq(const Elem& a, const Elem& b) const { return wrap(a) == wrap(b); }

std::string CurveFunctionField::str(const Elem& a) const {
    auto [num, den] = to_fraction(a);
    if (den.degree() == 0) return num.to_string();
    return "(" + num.to_string() + ")/(" + den.to_string(x_) + ")";
}

std::pair<MultiPoly, QPoly> CurveFunctionField::to_fraction(const Elem& a) const {
    QPoly den = QPoly::constant(1);
    for (const auto& c : a) den = den.divide_exact(gcd(den, c.den)) * c.den;
    den = den.monic();
    Vars vars{x_, y_};
    MultiPoly num(vars);
    MultiPoly yv = MultiPoly::variable(vars, y_);
    for (std::size_t i = 0; i < a.size(); ++i) {
        QPoly c = a[i].num * den.divide_exact(a[i].den);
        num += c.to_multipoly(vars, x_) * yv.pow(static_cast<unsigned>(i));
    }
    return {num, den};
}

}  // namespace cw
