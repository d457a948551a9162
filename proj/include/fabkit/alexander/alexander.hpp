#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fabkit/diagram/kernel.hpp"
#include "fabkit/diagram/wirtinger.hpp"
#include "fabkit/ring/matrix.hpp"

namespace fabkit {

// Abelianized free derivative dw/dg.
LaurentPoly fox_derivative(const Word& w, int g, const GroupPresentation& p);

struct AlexanderMatrix {
    PolyMatrix m;                  // rows = relators, columns = generators
    std::vector<Monomial> column;  // abelianized generator per column
};

AlexanderMatrix alexander_matrix(const GroupPresentation& p);

// Sum over j of M[i][j] * (g_j - 1) for every row; all zero for a genuine
// presentation.
std::vector<LaurentPoly> fox_row_identity(const AlexanderMatrix& a);

// Free reduction, dropping trivial relators, and elimination of generators
// set equal to another by a relator of length two.
GroupPresentation simplify(const GroupPresentation& p);

struct MinorChoice {
    std::optional<std::size_t> dropped_relator;  // default: the last one
    std::optional<std::size_t> deleted_column;   // default: first yarn generator
};

// Canonical representative of the multivariable Alexander polynomial. For a
// one-component link this is the classical polynomial instead (the minor
// itself, without the division).
LaurentPoly multivariable_alexander(const Link& link, const MinorChoice& choice = {});
LaurentPoly multivariable_alexander(const Kernel& k, const MinorChoice& choice = {});
// Same, from an already simplified presentation of `link`.
LaurentPoly alexander_from_presentation(const GroupPresentation& p, std::size_t components,
                                        const MinorChoice& choice = {});

// Torres deletion identity for component c of the link: Delta at x_c = 1
// against (1 - <c>) times the polynomial of the link without c. Component c
// must be the only one on its variable.
bool verify_torres(const Link& link, const LaurentPoly& delta, int c);

// The remaining kernel condition: without the yarns, X and Y form a link
// whose polynomial is a unit. Throws DegenerateDiagram otherwise.
void check_hopf_sublink(const Kernel& k);

}  // namespace fabkit
