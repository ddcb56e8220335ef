#pragma once

#include <string>

#include "cw/linalg.hpp"
#include "cw/multipoly.hpp"

namespace cw {

struct ResultantOptions {
    // Sylvester dimensions up to this size use Bareiss elimination; larger
    // ones use the subresultant remainder sequence.
    std::size_t bareiss_max_dimension = 8;
};

// Sylvester matrix of f and g in `var` using their actual degrees.
Matrix<MultiPoly> sylvester_matrix(const MultiPoly& f, const MultiPoly& g, const std::string& var);

// Res_var(f, g) over the union ring with `var` removed. Both inputs must have
// positive degree in var.
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, const std::string& var,
                    const ResultantOptions& options = {});

MultiPoly resultant_bareiss(const MultiPoly& f, const MultiPoly& g, const std::string& var);
MultiPoly resultant_subresultant(const MultiPoly& f, const MultiPoly& g, const std::string& var);
// Evaluation at integer points of the remaining variables (one at a time),
// Sylvester determinants over Q at the leaves and Newton interpolation back.
// Degree bounds come from deg_y(Res) <= deg_y(f) deg(g) + deg_y(g) deg(f).
MultiPoly resultant_interpolation(const MultiPoly& f, const MultiPoly& g, const std::string& var);

// (-1)^{n(n-1)/2} Res_var(f, df/dvar) / lc_var(f); requires degree >= 2.
MultiPoly discriminant(const MultiPoly& f, const std::string& var, const ResultantOptions& options = {});

}  // namespace cw
