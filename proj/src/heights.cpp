#include "cw/heights.hpp"

#include "cw/errors.hpp"

namespace cw {

HeightValue make_height(const BigInt& h) { return {h, log2_abs(h)}; }

HeightValue height_point(const std::vector<BigRat>& coords) {
    BigInt den = common_denominator(coords);
    std::vector<BigInt> ints;
    ints.reserve(coords.size());
    for (const auto& c : coords) ints.push_back(BigInt(c.get_num() * (den / c.get_den())));
    return height_point(ints);
}

HeightValue height_point(const std::vector<BigInt>& coords) {
    BigInt g = 0;
    for (const auto& c : coords) g = gcd(g, c);
    if (g == 0) throw DomainError("height of the all-zero tuple is undefined");
    BigInt best = 0;
    for (const auto& c : coords) {
        BigInt a = abs(c) / g;
        if (a > best) best = a;
    }
    return make_height(best);
}

HeightValue height_poly(const MultiPoly& g) {
    if (g.is_zero()) throw DomainError("height of the zero polynomial is undefined");
    return height_forms({g});
}

HeightValue height_rational(const BigRat& x) {
    BigInt n = abs(x.get_num());
    return make_height(n > x.get_den() ? n : BigInt(x.get_den()));
}

HeightValue height_forms(const std::vector<MultiPoly>& forms) {
    std::vector<BigRat> coefs;
    for (const auto& f : forms)
        for (const auto& t : f.terms()) coefs.push_back(t.coef);
    if (coefs.empty()) throw DomainError("height of zero forms is undefined");
    return height_point(coefs);
}

}  // namespace cw
