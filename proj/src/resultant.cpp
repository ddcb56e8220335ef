#include "cw/resultant.hpp"

#include "cw/errors.hpp"

namespace cw {

namespace {

Vars without(const Vars& vars, const std::string& var) {
    Vars out;
    for (const auto& v : vars)
        if (v != var) out.push_back(v);
    return out;
}

// Pseudo-remainder of a by b in `var`: lc(b)^(da-db+1) a mod b.
MultiPoly prem(const MultiPoly& a, const MultiPoly& b, const std::string& var) {
    int da = a.degree_in(var), db = b.degree_in(var);
    MultiPoly lb = b.leading_coefficient_in(var);
    MultiPoly r = a;
    MultiPoly x = MultiPoly::variable(a.vars(), var);
    int steps = da - db + 1;
    while (!r.is_zero() && r.degree_in(var) >= db) {
        int dr = r.degree_in(var);
        MultiPoly lr = r.leading_coefficient_in(var);
        r = r * lb - lr * x.pow(dr - db) * b;
        --steps;
    }
    if (steps > 0) r *= lb.pow(steps);
    return r;
}

void check_inputs(const MultiPoly& f, const MultiPoly& g, const std::string& var) {
    if (f.degree_in(var) < 1 || g.degree_in(var) < 1)
        throw DomainError("resultant needs positive degree in '" + var + "' for both inputs");
}

}  // namespace

Matrix<MultiPoly> sylvester_matrix(const MultiPoly& f0, const MultiPoly& g0, const std::string& var) {
    auto [f, g] = unify(f0, g0);
    Vars rest = without(f.vars(), var);
    auto fc = f.coefficients_in(var), gc = g.coefficients_in(var);
    std::size_t m = fc.size() - 1, n = gc.size() - 1;
    std::size_t dim = m + n;
    MultiPoly zero(rest);
    Matrix<MultiPoly> S(dim, std::vector<MultiPoly>(dim, zero));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k <= m; ++k) S[r][r + k] = fc[m - k].embed(rest);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k <= n; ++k) S[n + r][r + k] = gc[n - k].embed(rest);
    return S;
}

MultiPoly resultant_bareiss(const MultiPoly& f, const MultiPoly& g, const std::string& var) {
    check_inputs(f, g, var);
    auto S = sylvester_matrix(f, g, var);
    Vars rest = S[0][0].vars();
    return bareiss_determinant(S, MultiPoly::constant(rest, 1), MultiPoly(rest));
}

MultiPoly resultant_subresultant(const MultiPoly& f0, const MultiPoly& g0, const std::string& var) {
    check_inputs(f0, g0, var);
    auto [A, B] = unify(f0, g0);
    Vars rest = without(A.vars(), var);
    int sign = 1;
    if (A.degree_in(var) < B.degree_in(var)) {
        std::swap(A, B);
        if ((A.degree_in(var) & 1) && (B.degree_in(var) & 1)) sign = -sign;
    }
    MultiPoly g = MultiPoly::constant(A.vars(), 1), h = g;
    for (;;) {
        int da = A.degree_in(var), db = B.degree_in(var);
        int delta = da - db;
        if ((da & 1) && (db & 1)) sign = -sign;
        MultiPoly R = prem(A, B, var);
        A = B;
        if (R.is_zero()) return MultiPoly(rest);
        B = R.divide_exact(g * h.pow(delta));
        g = A.leading_coefficient_in(var);
        if (delta == 1) {
            h = g;
        } else if (delta > 1) {
            h = g.pow(delta).divide_exact(h.pow(delta - 1));
        }
        if (B.degree_in(var) == 0) break;
    }
    int d = A.degree_in(var);
    MultiPoly lb = B;  // constant in var
    MultiPoly res = d == 0 ? MultiPoly::constant(A.vars(), 1) : lb.pow(d).divide_exact(h.pow(d - 1));
    if (sign < 0) res = -res;
    return res.embed(rest);
}

namespace {

// Resultant with the formal degrees df, dg kept fixed under specialization.
MultiPoly interpolated(const MultiPoly& f, const MultiPoly& g, const std::string& var, int df, int dg,
                       const Vars& rest, std::size_t level) {
    Vars ring = rest;
    if (level == rest.size()) {
        auto fc = f.coefficients_in(var), gc = g.coefficients_in(var);
        std::size_t dim = df + dg;
        Matrix<BigRat> S(dim, std::vector<BigRat>(dim, BigRat(0)));
        auto coef = [&](const std::vector<MultiPoly>& c, int k) {
            return k < static_cast<int>(c.size()) ? c[k].constant_term() : BigRat(0);
        };
        for (int r = 0; r < dg; ++r)
            for (int k = 0; k <= df; ++k) S[r][r + k] = coef(fc, df - k);
        for (int r = 0; r < df; ++r)
            for (int k = 0; k <= dg; ++k) S[dg + r][r + k] = coef(gc, dg - k);
        return MultiPoly::constant(ring, bareiss_determinant(S, BigRat(1), BigRat(0)));
    }
    const std::string& y = rest[level];
    int fy = std::max(f.degree_in(y), 0), gy = std::max(g.degree_in(y), 0);
    int bound = fy * dg + gy * df;
    std::vector<BigRat> xs;
    std::vector<MultiPoly> ys;
    for (int p = 0; p <= bound; ++p) {
        BigRat v(p - bound / 2);
        xs.push_back(v);
        ys.push_back(interpolated(f.evaluate_partial({{y, v}}), g.evaluate_partial({{y, v}}), var, df, dg, rest,
                                  level + 1));
    }
    // Newton divided differences, then Horner back to the monomial basis.
    std::vector<MultiPoly> c = ys;
    for (std::size_t k = 1; k < xs.size(); ++k)
        for (std::size_t t = xs.size() - 1; t >= k; --t) {
            c[t] = (c[t] - c[t - 1]) * (BigRat(1) / (xs[t] - xs[t - k]));
            if (t == k) break;
        }
    MultiPoly Y = MultiPoly::variable(ring, y);
    MultiPoly acc = c.back();
    for (std::size_t t = c.size() - 1; t-- > 0;) acc = acc * (Y - MultiPoly::constant(ring, xs[t])) + c[t];
    return acc;
}

}  // namespace

MultiPoly resultant_interpolation(const MultiPoly& f0, const MultiPoly& g0, const std::string& var) {
    check_inputs(f0, g0, var);
    auto [f, g] = unify(f0, g0);
    Vars rest = without(f.vars(), var);
    return interpolated(f, g, var, f.degree_in(var), g.degree_in(var), rest, 0);
}

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, const std::string& var, const ResultantOptions& options) {
    check_inputs(f, g, var);
    std::size_t dim = static_cast<std::size_t>(f.degree_in(var) + g.degree_in(var));
    if (dim <= options.bareiss_max_dimension) return resultant_bareiss(f, g, var);
    return resultant_subresultant(f, g, var);
}

MultiPoly discriminant(const MultiPoly& f, const std::string& var, const ResultantOptions& options) {
    int n = f.degree_in(var);
    if (n < 2) throw DomainError("discriminant needs degree at least 2 in '" + var + "'");
    MultiPoly r = resultant(f, f.derivative(var), var, options);
    MultiPoly lc = f.leading_coefficient_in(var).embed(r.vars());
    MultiPoly d = r.divide_exact(lc);
    if ((n * (n - 1) / 2) % 2) d = -d;
    return d;
}

}  // namespace cw
