#pragma once

#include <utility>
#include <vector>

#include "fabkit/ring/laurent.hpp"

namespace fabkit {

struct Factorization {
    Coeff content = 1;  // signed integer content
    Monomial unit;      // monomial part
    std::vector<std::pair<LaurentPoly, int>> factors;  // canonical irreducibles

    LaurentPoly expand(const Registry& reg) const;
    int count_with_multiplicity() const;
};

// p = content * unit * prod f_i^m_i. Variables whose exponents are all even
// are factored in the integral ring; a variable with odd doubled exponents is
// factored in its square root.
Factorization factor(const LaurentPoly& p);

namespace detail {
// Univariate factorization over Z of a primitive polynomial (coefficients
// from degree 0 up). Returns (factor, multiplicity) pairs, factors
// primitive with positive leading coefficient.
std::vector<std::pair<std::vector<long long>, int>> factor_univariate(const std::vector<long long>& f);
}  // namespace detail

}  // namespace fabkit
