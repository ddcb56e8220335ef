#pragma once

#include <random>
#include <string>

#include "cw/multipoly.hpp"

namespace cwtest {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// Random polynomial with up to `terms` terms of total degree <= max_degree.
inline cw::MultiPoly random_poly(Rng& rng, const cw::Vars& vars, int max_degree, int terms, long coef = 5) {
    std::vector<cw::Term> out;
    for (int t = 0; t < terms; ++t) {
        cw::Monomial m{};
        int budget = static_cast<int>(uniform(rng, 0, max_degree));
        for (std::size_t v = 0; v < vars.size() && budget > 0; ++v) {
            int e = static_cast<int>(uniform(rng, 0, budget));
            m.set(v, static_cast<unsigned>(e));
            budget -= e;
        }
        long c = uniform(rng, -coef, coef);
        if (c != 0) out.push_back({m, cw::BigRat(c)});
    }
    return cw::MultiPoly(vars, out);
}

// Random polynomial of exact degree `deg` in vars[0] with constant leading coefficient.
inline cw::MultiPoly random_monic_in_first(Rng& rng, const cw::Vars& vars, int deg, int max_degree, int terms) {
    cw::MultiPoly lead = cw::MultiPoly::variable(vars, vars[0]).pow(deg);
    cw::MultiPoly rest(vars);
    cw::MultiPoly tail = random_poly(rng, vars, max_degree, terms);
    for (const auto& t : tail.terms())
        if (t.mono[0] < deg) rest += cw::MultiPoly::monomial(vars, t.mono, t.coef);
    return lead + rest;
}

}  // namespace cwtest
