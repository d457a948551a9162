#include "fabkit/alexander/alexander.hpp"

#include <algorithm>

#include "fabkit/error.hpp"
#include "fabkit/ring/ops.hpp"

namespace fabkit {

LaurentPoly fox_derivative(const Word& w, int g, const GroupPresentation& p) {
    std::vector<Term> terms;
    Monomial prefix(p.registry->size());
    for (const auto& l : w) {
        const Monomial& a = p.abelian.at(l.gen);
        if (l.gen == g) {
            if (l.exp > 0)
                terms.push_back({prefix, 1});
            else
                terms.push_back({prefix * a.inverse(), -1});
        }
        prefix *= l.exp > 0 ? a : a.inverse();
    }
    return LaurentPoly(p.registry, std::move(terms));
}

AlexanderMatrix alexander_matrix(const GroupPresentation& p) {
    AlexanderMatrix a{PolyMatrix(p.registry, p.relators.size(), p.generator_count()), p.abelian};
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
        if (!p.abelianize(p.relators[i]).is_one()) throw ValidationError("relator does not abelianize to 1");
        for (const auto& l : p.relators[i]) {
            auto& cell = a.m.at(i, l.gen);
            if (cell.is_zero()) cell = fox_derivative(p.relators[i], l.gen, p);
        }
    }
    return a;
}

std::vector<LaurentPoly> fox_row_identity(const AlexanderMatrix& a) {
    std::vector<LaurentPoly> out;
    const auto& reg = a.m.registry();
    for (std::size_t i = 0; i < a.m.rows(); ++i) {
        LaurentPoly s(reg);
        for (std::size_t j = 0; j < a.m.cols(); ++j)
            s += a.m.at(i, j) * (LaurentPoly::monomial(reg, a.column[j]) - LaurentPoly::constant(reg, 1));
        out.push_back(s);
    }
    return out;
}

namespace {

Word free_reduce(const Word& w) {
    Word out;
    for (const auto& l : w) {
        if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

}  // namespace

GroupPresentation simplify(const GroupPresentation& p) {
    std::vector<int> alias(p.generator_count());
    for (std::size_t g = 0; g < alias.size(); ++g) alias[g] = static_cast<int>(g);
    auto resolve = [&](int g) {
        while (alias[g] != g) g = alias[g];
        return g;
    };
    std::vector<Word> rels = p.relators;
    std::vector<char> alive(rels.size(), 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < rels.size(); ++i) {
            if (!alive[i]) continue;
            for (auto& l : rels[i]) l.gen = resolve(l.gen);
            rels[i] = free_reduce(rels[i]);
            if (rels[i].empty()) {
                alive[i] = 0;
                changed = true;
            } else if (rels[i].size() == 2 && rels[i][0].gen != rels[i][1].gen && rels[i][0].exp == -rels[i][1].exp) {
                int keep = std::min(rels[i][0].gen, rels[i][1].gen), drop = std::max(rels[i][0].gen, rels[i][1].gen);
                alias[drop] = keep;
                alive[i] = 0;
                changed = true;
            }
        }
    }
    std::vector<int> id(p.generator_count(), -1);
    GroupPresentation out;
    out.registry = p.registry;
    for (std::size_t g = 0; g < id.size(); ++g)
        if (resolve(static_cast<int>(g)) == static_cast<int>(g)) {
            id[g] = static_cast<int>(out.abelian.size());
            out.abelian.push_back(p.abelian[g]);
        }
    for (std::size_t i = 0; i < rels.size(); ++i) {
        if (!alive[i]) continue;
        Word w = rels[i];
        for (auto& l : w) l.gen = id[resolve(l.gen)];
        out.relators.push_back(std::move(w));
    }
    return out;
}

LaurentPoly alexander_from_presentation(const GroupPresentation& p, std::size_t components, const MinorChoice& choice) {
    const std::size_t n = p.generator_count(), m = p.relators.size();
    const Registry& reg = p.registry;
    if (n == 0) throw DegenerateDiagram("presentation without generators");
    if (m > n) throw DegenerateDiagram("more relators than generators");
    std::size_t col = n;
    if (choice.deleted_column) {
        col = *choice.deleted_column;
        if (col >= n) throw DegenerateDiagram("deleted column out of range");
    } else {
        for (std::size_t j = 0; j < n && col == n; ++j)
            for (std::size_t v = 0; v < reg->size(); ++v)
                if (p.abelian[j].twice(v) != 0 && (*reg)[v].role == Role::Yarn) col = j;
        for (std::size_t j = 0; j < n && col == n; ++j)
            if (!p.abelian[j].is_one()) col = j;
    }
    if (col == n || (components >= 2 && p.abelian[col].is_one()))
        throw DegenerateDiagram("no generator column can be deleted");
    if (m + 1 < n) return LaurentPoly(reg);  // deficiency at least two
    auto a = alexander_matrix(p);
    PolyMatrix minor = a.m.without_col(col);
    if (m == n) {
        std::size_t row = choice.dropped_relator.value_or(m - 1);
        if (row >= m) throw DegenerateDiagram("dropped relator out of range");
        minor = minor.without_row(row);
    }
    LaurentPoly det = determinant(minor);
    if (components >= 2) {
        LaurentPoly g = LaurentPoly::monomial(reg, p.abelian[col]) - LaurentPoly::constant(reg, 1);
        det = exact_div(det, g);
    }
    return canonical(det);
}

LaurentPoly multivariable_alexander(const Link& link, const MinorChoice& choice) {
    return alexander_from_presentation(simplify(wirtinger(link)), link.component_count(), choice);
}

LaurentPoly multivariable_alexander(const Kernel& k, const MinorChoice& choice) {
    return multivariable_alexander(k.link, choice);
}

bool verify_torres(const Link& link, const LaurentPoly& delta, int c) {
    const std::size_t var = link.variable.at(c);
    for (std::size_t j = 0; j < link.component_count(); ++j)
        if (static_cast<int>(j) != c && link.variable[j] == var)
            throw ValidationError("Torres check needs a component with its own variable");
    const Registry& reg = link.registry;
    auto lk = linking_matrix(link.pd);
    Monomial curve = curve_monomial(link, lk, c);
    LaurentPoly lhs = substitute_monomial(delta, var, {1, Monomial(reg->size())});
    if (curve.is_one()) return lhs.is_zero();
    Link rest = delete_component(link, c);
    LaurentPoly rhs = (LaurentPoly::constant(reg, 1) - LaurentPoly::monomial(reg, curve)) * multivariable_alexander(rest);
    if (rest.component_count() == 1) {
        Monomial t(reg->size());
        t.set_twice(rest.variable[0], 2);
        lhs *= LaurentPoly::constant(reg, 1) - LaurentPoly::monomial(reg, t);
    }
    if (lhs.is_zero() || rhs.is_zero()) return lhs.is_zero() && rhs.is_zero();
    return unit_equivalent(lhs, rhs);
}

void check_hopf_sublink(const Kernel& k) {
    Link l = k.link;
    std::vector<int> yarns = k.yarn_comps;
    std::sort(yarns.rbegin(), yarns.rend());
    for (int c : yarns) l = delete_component(l, c);
    if (!multivariable_alexander(l).is_unit())
        throw DegenerateDiagram("X and Y do not form a Hopf link once the yarns are removed");
}

}  // namespace fabkit
