#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fabkit/ring/laurent.hpp"

namespace fabkit {

// p / q when q divides p in the Laurent ring; throws NotDivisible otherwise.
LaurentPoly exact_div(const LaurentPoly& p, const LaurentPoly& q);
std::optional<LaurentPoly> try_exact_div(const LaurentPoly& p, const LaurentPoly& q);

// Ring map sending variable i of p's registry to images[i], a signed monomial
// over `target`. Half-integer powers of an image must stay on the half grid.
LaurentPoly substitute(const LaurentPoly& p, const Registry& target, const std::vector<SignedMonomial>& images);
LaurentPoly substitute_monomial(const LaurentPoly& p, std::size_t var, const SignedMonomial& m);
LaurentPoly substitute_monomial(const LaurentPoly& p, std::string_view var, const SignedMonomial& m);

// Identity images for every variable of `from` that also exists (by name) in `to`.
std::vector<SignedMonomial> identity_images(const Registry& from, const Registry& to);

// Moves p onto a registry containing every variable p actually uses.
LaurentPoly embed(const LaurentPoly& p, const Registry& target);

Registry drop_variables(const Registry& reg, const std::vector<std::size_t>& vars);
LaurentPoly evaluate_at_one(const LaurentPoly& p, const std::vector<std::size_t>& vars);
LaurentPoly evaluate_at_one(const LaurentPoly& p, const std::vector<std::string>& names);

LaurentPoly mirror(const LaurentPoly& p);

// Minimum exponent of every variable shifted to zero, leading coefficient positive.
LaurentPoly canonical(const LaurentPoly& p);
bool unit_equivalent(const LaurentPoly& p, const LaurentPoly& q);
// Equal, or equal after negation.
bool equal_up_to_sign(const LaurentPoly& p, const LaurentPoly& q);

// Symmetrized representative q = p * m^(1/2) with mirror(q) = (-1)^r q.
LaurentPoly torres_normalize(const LaurentPoly& p, int r);
bool torres_symmetric(const LaurentPoly& p, int r);

// Product of p(zeta * var) over the r-th roots of unity, written in w = var^r;
// the result's registry renames var to `w_name`.
LaurentPoly norm_over_roots(const LaurentPoly& p, std::size_t var, int r, const std::string& w_name);

Registry rename_variable(const Registry& reg, std::size_t var, const std::string& name);

// Coefficients of p as a polynomial in one variable, keyed by doubled exponent.
std::map<int, LaurentPoly> collect(const LaurentPoly& p, std::size_t var);

Coeff content(const LaurentPoly& p);

struct RenderOptions {
    // Print yarn variables through their half symbol (t^(3/2) as s^3).
    bool half_symbols = false;
};

std::string to_string(const LaurentPoly& p, const RenderOptions& opts = {});
std::string to_string(const Monomial& m, const VariableRegistry& reg, const RenderOptions& opts = {});

// Accepts sums and products of integers, variable powers (x^2, x^-1,
// x^(3/2)), parentheses, unary minus, and exact division by '/'.
// Half symbols of the registry are understood as square roots.
LaurentPoly parse_poly(const Registry& reg, std::string_view text);

}  // namespace fabkit
