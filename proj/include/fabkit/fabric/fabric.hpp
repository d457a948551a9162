#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fabkit/diagram/kernel.hpp"
#include "fabkit/ring/factor.hpp"
#include "fabkit/ring/laurent.hpp"
#include "fabkit/ring/series.hpp"

namespace fabkit {

struct YarnAxis {
    int component = -1;
    std::size_t variable = 0;  // kernel registry index of the meridian
    int a = 0;                 // lk(T, X)
    int b = 0;                 // lk(T, Y)

    bool closed() const { return a == 0 && b == 0; }
};

struct AxialProfile {
    Registry registry;  // the kernel's registry
    std::size_t x_var = 0;
    std::size_t y_var = 1;
    int components = 2;
    std::vector<YarnAxis> yarns;

    bool has_closed() const;
    // Distinct yarn variables in registry order.
    std::vector<std::size_t> yarn_variables() const;
    // prod over yarns of (1 - x^a y^b) on the kernel registry without the yarn variables.
    LaurentPoly axial_product() const;
};

// Linking numbers only; no polynomial check.
AxialProfile axial_profile(const Kernel& k);
// Profile plus the check Delta(x, y, 1, ..., 1) = prod (1 - x^a y^b) up to a
// unit; zero when a strand is closed. Throws AxialMismatch.
AxialProfile axial_analysis(const Kernel& k, const LaurentPoly& delta);
void check_axial(const AxialProfile& prof, const LaurentPoly& delta);

// Sum of T_(alpha, beta) U^alpha V^beta. The registry holds U, V and one
// variable per yarn named after its half symbol, so a meridian t appears as
// s^2 and quarter powers of t are representable.
struct AlexanderData {
    LaurentPoly poly;
    bool normalized = false;

    const Registry& registry() const { return poly.registry(); }
    // Entries keyed by doubled (alpha, beta); entries live on the same registry.
    std::map<std::pair<int, int>, LaurentPoly> entries() const;
};

Registry data_registry(const AxialProfile& prof);
// Throws ExponentOffGrid when the Torres centre is not representable.
AlexanderData to_data_form(const LaurentPoly& delta, const AxialProfile& prof, bool normalize = true);
LaurentPoly from_data_form(const AlexanderData& d, const AxialProfile& prof);

struct BasisChange {
    int p = 1, q = 0, r = 0, s = 1;  // U' = U^p V^q, V' = U^r V^s

    int det() const { return p * s - q * r; }
    bool operator==(const BasisChange&) const = default;
};

// Data in the basis u' = p u + q v, v' = r u + s v. Throws ValidationError
// unless the determinant is 1.
AlexanderData change_basis(const AlexanderData& d, const BasisChange& c);

enum class Direction { U, V };

// Covering fabric for the cell stretched r times along the direction, written
// in W = U^r or W = V^r. Canonical representative.
LaurentPoly salkeld_cover(const AlexanderData& d, Direction dir, int r);
LaurentPoly salkeld_cover(const LaurentPoly& delta, const AxialProfile& prof, Direction dir, int r);

struct Glued {
    LaurentPoly delta;
    AxialProfile profile;
};

// Layer M placed behind layer L. Yarn variables of M whose names clash with
// those of L get a trailing prime.
Glued fox_glue(const LaurentPoly& dl, const AxialProfile& pl, const LaurentPoly& dm, const AxialProfile& pm);

struct LayerBound {
    int bound = 0;
    Factorization factors;
    std::vector<bool> surviving;  // per factor: non-unit once the yarns are set to 1
};

// Throws ClosedComponents.
LayerBound layer_bound(const LaurentPoly& delta, const AxialProfile& prof);

struct StripResult {
    bool strip = false;
    std::string diagnostic;
};

StripResult strip_test(const LaurentPoly& delta, const AxialProfile& prof);

// a_0..a_N of the Torres-normalized Delta(x, y, e^h). Throws MultipleYarns.
SeriesPoly vassiliev_coeffs(const LaurentPoly& delta, const AxialProfile& prof, int N);

struct EquivalenceWitness {
    BasisChange change;
    std::pair<int, int> translation{0, 0};  // doubled
    SignedMonomial unit;                    // in the half symbols
    bool inverted_yarns = false;            // only from the reflected search
};

// Smallest witness with change_basis(d1, w.change) = +-m U^g V^h d2 up to the
// unit; nullopt means none with entries bounded by `bound`.
std::optional<EquivalenceWitness> data_equivalence(const AlexanderData& d1, const AlexanderData& d2, int bound);
// Diagnostic beyond the determinant one search: determinant -1 changes,
// optionally with every half symbol inverted.
std::optional<EquivalenceWitness> reflected_equivalence(const AlexanderData& d1, const AlexanderData& d2, int bound);

// Integer matrix sending lattice offsets to display offsets, for showing
// data on a finer or coarser lattice.
struct DisplayMap {
    int m11 = 1, m12 = 0, m21 = 0, m22 = 1;
};

// Aligned grid: alpha left to right, beta bottom up; "." marks display
// points off the image lattice.
std::string render_grid(const AlexanderData& d, const DisplayMap& map = {});
// One "(alpha, beta, entry)" line per nonzero entry, beta then alpha ascending.
std::string render_triples(const AlexanderData& d);
std::string format_half(int twice);

}  // namespace fabkit
