#pragma once

#include <string>
#include <vector>

#include "fabkit/ring/laurent.hpp"
#include "fabkit/ring/ops.hpp"

namespace fabkit {

// Laurent polynomial with rational coefficients, kept as an integer
// numerator over a common positive denominator in lowest terms.
class RationalPoly {
public:
    explicit RationalPoly(LaurentPoly num, Coeff den = 1);

    const LaurentPoly& numerator() const noexcept { return num_; }
    Coeff denominator() const noexcept { return den_; }
    const Registry& registry() const noexcept { return num_.registry(); }
    bool is_zero() const noexcept { return num_.is_zero(); }

    friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b);
    friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b);
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
    RationalPoly scaled(Coeff num, Coeff den) const;
    friend bool operator==(const RationalPoly& a, const RationalPoly& b);

private:
    LaurentPoly num_;
    Coeff den_;
};

std::string to_string(const RationalPoly& p, const RenderOptions& opts = {});

// Coefficients a_0..a_N of p(x, y, e^h) = sum a_r h^r, with every yarn
// variable t set to e^h (so s = t^(1/2) becomes e^(h/2)).
struct SeriesPoly {
    Registry registry;  // the non-yarn variables
    std::vector<RationalPoly> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

SeriesPoly series_expand(const LaurentPoly& p, const std::vector<std::size_t>& yarn_vars, int N);

}  // namespace fabkit
