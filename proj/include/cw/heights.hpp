#pragma once

#include <vector>

#include "cw/bigrat.hpp"
#include "cw/multipoly.hpp"

namespace cw {

// Height over Q (d = 1): an integer >= 1 with its log2 mirror.
struct HeightValue {
    BigInt exact;
    LogFloat log2;
};

HeightValue make_height(const BigInt& h);

// max |c_i| after clearing denominators and removing the common factor.
HeightValue height_point(const std::vector<BigRat>& coords);
HeightValue height_point(const std::vector<BigInt>& coords);
HeightValue height_poly(const MultiPoly& g);
// H(x) = H(1 : x) = max(|num|, den).
HeightValue height_rational(const BigRat& x);
// Height of the point formed by all coefficients of several polynomials.
HeightValue height_forms(const std::vector<MultiPoly>& forms);

}  // namespace cw
