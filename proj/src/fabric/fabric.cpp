#include "fabkit/fabric/fabric.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <tuple>

#include "fabkit/error.hpp"
#include "fabkit/ring/ops.hpp"

namespace fabkit {

bool AxialProfile::has_closed() const {
    return std::any_of(yarns.begin(), yarns.end(), [](const YarnAxis& y) { return y.closed(); });
}

std::vector<std::size_t> AxialProfile::yarn_variables() const {
    std::vector<std::size_t> out;
    for (const auto& y : yarns) out.push_back(y.variable);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

LaurentPoly AxialProfile::axial_product() const {
    Registry target = drop_variables(registry, yarn_variables());
    const std::size_t xv = target->index_of((*registry)[x_var].name);
    const std::size_t yv = target->index_of((*registry)[y_var].name);
    LaurentPoly out = LaurentPoly::constant(target, 1);
    for (const auto& y : yarns) {
        Monomial m(target->size());
        m.set_twice(xv, 2L * y.a);
        m.set_twice(yv, 2L * y.b);
        out *= LaurentPoly::constant(target, 1) - LaurentPoly::monomial(target, m);
    }
    return out;
}

AxialProfile axial_profile(const Kernel& k) {
    AxialProfile prof;
    prof.registry = k.link.registry;
    prof.x_var = k.link.variable.at(k.x_comp);
    prof.y_var = k.link.variable.at(k.y_comp);
    prof.components = static_cast<int>(k.component_count());
    auto lk = linking_matrix(k.link.pd);
    for (int c : k.yarn_comps)
        prof.yarns.push_back({c, k.link.variable.at(c), lk[c][k.x_comp], lk[c][k.y_comp]});
    return prof;
}

void check_axial(const AxialProfile& prof, const LaurentPoly& delta) {
    LaurentPoly lhs = evaluate_at_one(delta, prof.yarn_variables());
    LaurentPoly rhs = prof.axial_product();
    bool ok = rhs.is_zero() ? lhs.is_zero() : (!lhs.is_zero() && unit_equivalent(lhs, rhs));
    if (!ok)
        throw AxialMismatch("Delta at the yarn variables = 1 is " + to_string(lhs) + ", expected " +
                            to_string(rhs) + " up to a unit");
}

AxialProfile axial_analysis(const Kernel& k, const LaurentPoly& delta) {
    AxialProfile prof = axial_profile(k);
    check_axial(prof, delta);
    return prof;
}

std::map<std::pair<int, int>, LaurentPoly> AlexanderData::entries() const {
    std::map<std::pair<int, int>, LaurentPoly> out;
    for (const auto& [a, rest] : collect(poly, 0))
        for (const auto& [b, e] : collect(rest, 1)) out.emplace(std::make_pair(a, b), e);
    return out;
}

Registry data_registry(const AxialProfile& prof) {
    std::vector<Variable> vars{{"U", Role::Axis, ""}, {"V", Role::Axis, ""}};
    for (std::size_t v : prof.yarn_variables()) {
        const Variable& t = (*prof.registry)[v];
        vars.push_back({t.half.empty() ? default_half(t.name) : t.half, Role::Yarn, ""});
    }
    return make_registry(std::move(vars));
}

namespace {

// Position of each kernel yarn variable in the data registry.
std::map<std::size_t, std::size_t> half_slots(const AxialProfile& prof) {
    std::map<std::size_t, std::size_t> out;
    std::size_t k = 2;
    for (std::size_t v : prof.yarn_variables()) out[v] = k++;
    return out;
}

SignedMonomial mono_of(std::size_t n, std::initializer_list<std::pair<std::size_t, long>> twice) {
    SignedMonomial m{1, Monomial(n)};
    for (auto [i, e] : twice) m.mono.add_twice(i, e);
    return m;
}

}  // namespace

AlexanderData to_data_form(const LaurentPoly& delta, const AxialProfile& prof, bool normalize) {
    Registry dreg = data_registry(prof);
    auto slot = half_slots(prof);
    const std::size_t n = dreg->size();
    std::vector<SignedMonomial> images(prof.registry->size(), SignedMonomial{1, Monomial(n)});
    SignedMonomial& x = images[prof.x_var];
    SignedMonomial& y = images[prof.y_var];
    y.mono.add_twice(0, 2);
    x.mono.add_twice(1, 2);
    for (const auto& yarn : prof.yarns) {
        y.mono.add_twice(slot[yarn.variable], -2L * yarn.a);
        x.mono.add_twice(slot[yarn.variable], -2L * yarn.b);
    }
    for (auto [v, k] : slot) images[v] = mono_of(n, {{k, 4}});
    for (std::size_t i = 0; i < images.size(); ++i)
        if (i != prof.x_var && i != prof.y_var && !slot.count(i) && delta.depends_on(i))
            throw ValidationError("Delta uses " + (*prof.registry)[i].name + ", which is not a kernel variable");
    LaurentPoly p = substitute(delta, dreg, images);
    if (normalize) p = torres_normalize(p, prof.components);
    return {p, normalize};
}

LaurentPoly from_data_form(const AlexanderData& d, const AxialProfile& prof) {
    const Registry& reg = prof.registry;
    auto slot = half_slots(prof);
    const std::size_t n = reg->size();
    std::vector<SignedMonomial> images(d.registry()->size(), SignedMonomial{1, Monomial(n)});
    images[0].mono.add_twice(prof.y_var, 2);
    images[1].mono.add_twice(prof.x_var, 2);
    for (const auto& yarn : prof.yarns) {
        images[0].mono.add_twice(yarn.variable, yarn.a);
        images[1].mono.add_twice(yarn.variable, yarn.b);
    }
    for (auto [v, k] : slot) images.at(k) = mono_of(n, {{v, 1}});
    return substitute(canonical(d.poly), reg, images);
}

namespace {

// Data in the basis given by c (determinant +-1), optionally inverting every
// half symbol.
LaurentPoly transform(const LaurentPoly& p, const BasisChange& c, bool invert) {
    const int det = c.det();
    if (det != 1 && det != -1) throw ValidationError("basis change must be unimodular");
    const Registry& reg = p.registry();
    const std::size_t n = reg->size();
    std::vector<SignedMonomial> images(n, SignedMonomial{1, Monomial(n)});
    images[0] = mono_of(n, {{0, 2L * det * c.s}, {1, -2L * det * c.q}});
    images[1] = mono_of(n, {{0, -2L * det * c.r}, {1, 2L * det * c.p}});
    for (std::size_t i = 2; i < n; ++i) images[i] = mono_of(n, {{i, invert ? -2 : 2}});
    return substitute(p, reg, images);
}

}  // namespace

AlexanderData change_basis(const AlexanderData& d, const BasisChange& c) {
    if (c.det() != 1) throw ValidationError("basis change needs ps - qr = 1");
    return {transform(d.poly, c, false), d.normalized};
}

LaurentPoly salkeld_cover(const AlexanderData& d, Direction dir, int r) {
    const std::size_t var = dir == Direction::U ? 0 : 1;
    return canonical(norm_over_roots(canonical(d.poly), var, r, "W"));
}

LaurentPoly salkeld_cover(const LaurentPoly& delta, const AxialProfile& prof, Direction dir, int r) {
    return salkeld_cover(to_data_form(delta, prof, false), dir, r);
}

Glued fox_glue(const LaurentPoly& dl, const AxialProfile& pl, const LaurentPoly& dm, const AxialProfile& pm) {
    std::vector<Variable> vars{(*pl.registry)[pl.x_var], (*pm.registry)[pm.y_var]};
    std::map<std::size_t, std::size_t> lmap, mmap;
    for (std::size_t v : pl.yarn_variables()) {
        lmap[v] = vars.size();
        vars.push_back((*pl.registry)[v]);
    }
    for (std::size_t v : pm.yarn_variables()) {
        Variable w = (*pm.registry)[v];
        auto taken = [&](const std::string& name) {
            return std::any_of(vars.begin(), vars.end(), [&](const Variable& u) { return u.name == name; });
        };
        while (taken(w.name)) {
            w.name += "'";
            if (!w.half.empty()) w.half += "'";
        }
        mmap[v] = vars.size();
        vars.push_back(w);
    }
    Registry reg = make_registry(std::move(vars));
    const std::size_t n = reg->size();

    std::vector<SignedMonomial> li(pl.registry->size(), SignedMonomial{1, Monomial(n)});
    li[pl.x_var].mono.add_twice(0, 2);
    li[pl.y_var].mono.add_twice(1, 2);
    for (const auto& w : pm.yarns) li[pl.y_var].mono.add_twice(mmap[w.variable], 2L * w.a);
    for (auto [v, k] : lmap) li[v].mono.add_twice(k, 2);

    std::vector<SignedMonomial> mi(pm.registry->size(), SignedMonomial{1, Monomial(n)});
    mi[pm.x_var].mono.add_twice(0, 2);
    mi[pm.y_var].mono.add_twice(1, 2);
    for (const auto& t : pl.yarns) mi[pm.x_var].mono.add_twice(lmap[t.variable], 2L * t.b);
    for (auto [v, k] : mmap) mi[v].mono.add_twice(k, 2);

    Glued g;
    g.delta = canonical(substitute(dl, reg, li) * substitute(dm, reg, mi));
    g.profile.registry = reg;
    g.profile.x_var = 0;
    g.profile.y_var = 1;
    g.profile.components = pl.components + pm.components - 2;
    int comp = 2;
    for (const auto& t : pl.yarns) g.profile.yarns.push_back({comp++, lmap[t.variable], t.a, t.b});
    for (const auto& w : pm.yarns) g.profile.yarns.push_back({comp++, mmap[w.variable], w.a, w.b});
    return g;
}

LayerBound layer_bound(const LaurentPoly& delta, const AxialProfile& prof) {
    if (prof.has_closed()) throw ClosedComponents("the fabric has a closed strand; no layer bound");
    LayerBound out;
    out.factors = factor(delta);
    const auto vars = prof.yarn_variables();
    for (const auto& [f, mult] : out.factors.factors) {
        bool keep = !evaluate_at_one(f, vars).is_unit();
        out.surviving.push_back(keep);
        if (keep) out.bound += mult;
    }
    return out;
}

namespace {

// g = gcd(a, b) = a * u + b * v.
long ext_gcd(long a, long b, long& u, long& v) {
    if (b == 0) {
        u = a >= 0 ? 1 : -1;
        v = 0;
        return std::abs(a);
    }
    long u1, v1;
    long g = ext_gcd(b, a % b, u1, v1);
    u = v1;
    v = u1 - (a / b) * v1;
    return g;
}

}  // namespace

StripResult strip_test(const LaurentPoly& delta, const AxialProfile& prof) {
    if (prof.yarns.empty()) return {false, "no yarn strands"};
    if (prof.has_closed()) return {false, "a strand is closed"};
    std::vector<std::pair<long, long>> dirs;
    for (const auto& y : prof.yarns) {
        long g = std::gcd(static_cast<long>(y.a), static_cast<long>(y.b));
        long a = y.a / g, b = y.b / g;
        if (a < 0 || (a == 0 && b < 0)) a = -a, b = -b;
        if (std::find(dirs.begin(), dirs.end(), std::make_pair(a, b)) == dirs.end()) dirs.emplace_back(a, b);
    }
    if (dirs.size() > 1) return {false, "strands run in more than one axial direction"};
    const auto [a, b] = dirs[0];
    // x = x'^b y'^q, y = x'^-a y'^s with q a + s b = 1 makes x^a y^b = y'.
    long q, s;
    ext_gcd(a, b, q, s);
    const Registry& reg = delta.registry();
    const std::size_t n = reg->size();
    auto images = identity_images(reg, reg);
    images[prof.x_var] = mono_of(n, {{prof.x_var, 2 * b}, {prof.y_var, 2 * q}});
    images[prof.y_var] = mono_of(n, {{prof.x_var, -2 * a}, {prof.y_var, 2 * s}});
    LaurentPoly d = canonical(substitute(delta, reg, images));
    const std::string along = a == 0 ? "y" : b == 0 ? "x" : "x^" + std::to_string(a) + " y^" + std::to_string(b);
    const std::string across = a == 0 ? "x" : b == 0 ? "y" : "the transverse variable";
    if (d.depends_on(prof.x_var)) return {false, "depends on " + across};
    LaurentPoly axis = LaurentPoly::constant(reg, 1) - LaurentPoly::variable(reg, (*reg)[prof.y_var].name);
    if (!try_exact_div(d, axis)) return {false, "no factor 1 - " + along};
    return {true, "independent of " + across + " with a factor 1 - " + along};
}

SeriesPoly vassiliev_coeffs(const LaurentPoly& delta, const AxialProfile& prof, int N) {
    const auto vars = prof.yarn_variables();
    if (vars.size() != 1) throw MultipleYarns("Vassiliev coefficients need exactly one yarn variable");
    return series_expand(torres_normalize(delta, prof.components), vars, N);
}

namespace {

std::vector<BasisChange> search_order(int bound, int det) {
    std::vector<BasisChange> out;
    for (int p = -bound; p <= bound; ++p)
        for (int q = -bound; q <= bound; ++q)
            for (int r = -bound; r <= bound; ++r)
                for (int s = -bound; s <= bound; ++s)
                    if (p * s - q * r == det) out.push_back({p, q, r, s});
    auto key = [](const BasisChange& c) {
        std::array<int, 4> e{c.p, c.q, c.r, c.s};
        int mx = 0, sum = 0;
        std::array<std::pair<int, bool>, 4> lex;
        for (int i = 0; i < 4; ++i) {
            mx = std::max(mx, std::abs(e[i]));
            sum += std::abs(e[i]);
            // Identity-like entries first: 1 on the diagonal, 0 off it.
            int ideal = (i == 0 || i == 3) ? 1 : 0;
            lex[i] = {std::abs(e[i] - ideal), e[i] < ideal};
        }
        return std::make_tuple(mx, sum, lex);
    };
    std::stable_sort(out.begin(), out.end(), [&](const BasisChange& x, const BasisChange& y) { return key(x) < key(y); });
    return out;
}

std::optional<EquivalenceWitness> match(const LaurentPoly& t, const LaurentPoly& target) {
    if (t.size() != target.size() || t.is_zero()) return std::nullopt;
    const Term& a = t.leading();
    const Term& b = target.leading();
    if (b.coeff != a.coeff && b.coeff != -a.coeff) return std::nullopt;
    const int sign = b.coeff == a.coeff ? 1 : -1;
    Monomial m = b.mono * a.mono.inverse();
    if (!(t.times(m, sign) == target)) return std::nullopt;
    EquivalenceWitness w;
    w.translation = {m.twice(0), m.twice(1)};
    m.set_twice(0, 0);
    m.set_twice(1, 0);
    w.unit = {sign, m};
    return w;
}

std::optional<EquivalenceWitness> search(const AlexanderData& d1, const AlexanderData& d2, int bound, int det,
                                         bool try_invert) {
    if (!same_registry(d1.registry(), d2.registry())) return std::nullopt;
    if (d1.poly.size() != d2.poly.size()) return std::nullopt;
    for (const auto& c : search_order(bound, det))
        for (bool inv : {false, true}) {
            if (inv && !try_invert) continue;
            if (auto w = match(transform(d1.poly, c, inv), d2.poly)) {
                w->change = c;
                w->inverted_yarns = inv;
                return w;
            }
        }
    return std::nullopt;
}

}  // namespace

std::optional<EquivalenceWitness> data_equivalence(const AlexanderData& d1, const AlexanderData& d2, int bound) {
    return search(d1, d2, bound, 1, false);
}

std::optional<EquivalenceWitness> reflected_equivalence(const AlexanderData& d1, const AlexanderData& d2, int bound) {
    return search(d1, d2, bound, -1, true);
}

std::string format_half(int twice) {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

std::string render_grid(const AlexanderData& d, const DisplayMap& map) {
    const long det = static_cast<long>(map.m11) * map.m22 - static_cast<long>(map.m12) * map.m21;
    if (det == 0) throw ValidationError("display map must be invertible");
    auto entries = d.entries();
    if (entries.empty()) return "0\n";
    const auto [a0, b0] = entries.begin()->first;
    std::map<std::pair<long, long>, std::string> cells;
    long xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (const auto& [key, e] : entries) {
        long i = (key.first - a0) / 2, j = (key.second - b0) / 2;
        long X = map.m11 * i + map.m12 * j, Y = map.m21 * i + map.m22 * j;
        cells[{X, Y}] = to_string(e);
        if (first) xmin = xmax = X, ymin = ymax = Y, first = false;
        xmin = std::min(xmin, X), xmax = std::max(xmax, X);
        ymin = std::min(ymin, Y), ymax = std::max(ymax, Y);
    }
    auto cell = [&](long X, long Y) -> std::string {
        auto it = cells.find({X, Y});
        if (it != cells.end()) return it->second;
        const long i = map.m22 * X - map.m12 * Y, j = -map.m21 * X + map.m11 * Y;
        return (i % det == 0 && j % det == 0) ? "0" : ".";
    };
    std::vector<std::size_t> width(xmax - xmin + 1, 0);
    for (long Y = ymin; Y <= ymax; ++Y)
        for (long X = xmin; X <= xmax; ++X) width[X - xmin] = std::max(width[X - xmin], cell(X, Y).size());
    std::ostringstream out;
    for (long Y = ymax; Y >= ymin; --Y) {
        std::string line;
        for (long X = xmin; X <= xmax; ++X) {
            std::string c = cell(X, Y);
            if (X > xmin) line += "  ";
            line += c;
            if (X < xmax) line += std::string(width[X - xmin] - c.size(), ' ');
        }
        out << line << '\n';
    }
    return out.str();
}

std::string render_triples(const AlexanderData& d) {
    auto entries = d.entries();
    std::vector<std::pair<std::pair<int, int>, const LaurentPoly*>> rows;
    for (const auto& [k, e] : entries) rows.push_back({k, &e});
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
        return std::make_pair(x.first.second, x.first.first) < std::make_pair(y.first.second, y.first.first);
    });
    std::ostringstream out;
    for (const auto& [k, e] : rows)
        out << "(" << format_half(k.first) << ", " << format_half(k.second) << ", " << to_string(*e) << ")\n";
    return out.str();
}

}  // namespace fabkit
