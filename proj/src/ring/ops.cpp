#include "fabkit/ring/ops.hpp"

#include <algorithm>
#include <numeric>

#include "fabkit/error.hpp"
#include "fabkit/ring/matrix.hpp"

namespace fabkit {

std::optional<LaurentPoly> try_exact_div(const LaurentPoly& p, const LaurentPoly& q) {
    if (!same_registry(p.registry(), q.registry())) throw RegistryMismatch();
    if (q.is_zero()) throw Error("division by zero polynomial");
    const Registry& reg = p.registry();
    if (p.is_zero()) return LaurentPoly(reg);
    const std::size_t n = reg->size();

    // Work on genuine polynomials: both shifted so every minimum exponent is 0.
    Monomial mp = p.min_exponents(), mq = q.min_exponents();
    LaurentPoly rem = p.times(mp.inverse());
    LaurentPoly den = q.times(mq.inverse());
    const Term lead = den.leading();

    std::vector<Term> quotient;
    while (!rem.is_zero()) {
        const Term& top = rem.leading();
        if (top.coeff % lead.coeff != 0) return std::nullopt;
        Monomial m(n);
        for (std::size_t i = 0; i < n; ++i) {
            int d = top.mono.twice(i) - lead.mono.twice(i);
            if (d < 0) return std::nullopt;
            m.set_twice(i, d);
        }
        Coeff c = top.coeff / lead.coeff;
        quotient.push_back({m, c});
        rem -= den.times(m, c);
    }
    LaurentPoly d(reg, std::move(quotient));
    return d.times(mp * mq.inverse());
}

LaurentPoly exact_div(const LaurentPoly& p, const LaurentPoly& q) {
    auto d = try_exact_div(p, q);
    if (!d) throw NotDivisible("(" + to_string(p) + ") is not divisible by (" + to_string(q) + ")");
    return *d;
}

LaurentPoly substitute(const LaurentPoly& p, const Registry& target, const std::vector<SignedMonomial>& images) {
    const Registry& src = p.registry();
    if (images.size() != src->size()) throw Error("substitution needs one image per variable");
    for (const auto& im : images)
        if (im.mono.size() != target->size()) throw RegistryMismatch();
    std::vector<Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
        Monomial m(target->size());
        Coeff sign = 1;
        for (std::size_t i = 0; i < src->size(); ++i) {
            int e = t.mono.twice(i);
            if (e == 0) continue;
            const SignedMonomial& im = images[i];
            for (std::size_t j = 0; j < target->size(); ++j) {
                long prod = static_cast<long>(im.mono.twice(j)) * e;
                if (prod % 2 != 0)
                    throw ExponentOffGrid("substituting into " + (*src)[i].name + " leaves the half-integer grid");
                m.add_twice(j, prod / 2);
            }
            if (im.sign < 0) {
                if (e % 2 != 0)
                    throw ExponentOffGrid("half power of a negative image for " + (*src)[i].name);
                if ((e / 2) % 2 != 0) sign = -sign;
            }
        }
        out.push_back({m, checked_mul(sign, t.coeff)});
    }
    return LaurentPoly(target, std::move(out));
}

LaurentPoly substitute_monomial(const LaurentPoly& p, std::size_t var, const SignedMonomial& m) {
    const Registry& reg = p.registry();
    auto images = identity_images(reg, reg);
    images.at(var) = m;
    return substitute(p, reg, images);
}

LaurentPoly substitute_monomial(const LaurentPoly& p, std::string_view var, const SignedMonomial& m) {
    return substitute_monomial(p, p.registry()->index_of(var), m);
}

std::vector<SignedMonomial> identity_images(const Registry& from, const Registry& to) {
    std::vector<SignedMonomial> images(from->size(), SignedMonomial{1, Monomial(to->size())});
    for (std::size_t i = 0; i < from->size(); ++i)
        if (auto j = to->find((*from)[i].name)) images[i].mono.set_twice(*j, 2);
    return images;
}

LaurentPoly embed(const LaurentPoly& p, const Registry& target) {
    if (same_registry(p.registry(), target)) return p;
    const Registry& src = p.registry();
    for (std::size_t i = 0; i < src->size(); ++i)
        if (!target->find((*src)[i].name) && (p.min_twice(i) != 0 || p.max_twice(i) != 0))
            throw Error("variable " + (*src)[i].name + " missing from target registry");
    return substitute(p, target, identity_images(src, target));
}

Registry drop_variables(const Registry& reg, const std::vector<std::size_t>& vars) {
    std::vector<Variable> kept;
    for (std::size_t i = 0; i < reg->size(); ++i)
        if (std::find(vars.begin(), vars.end(), i) == vars.end()) kept.push_back((*reg)[i]);
    return make_registry(std::move(kept));
}

LaurentPoly evaluate_at_one(const LaurentPoly& p, const std::vector<std::size_t>& vars) {
    Registry target = drop_variables(p.registry(), vars);
    return substitute(p, target, identity_images(p.registry(), target));
}

LaurentPoly evaluate_at_one(const LaurentPoly& p, const std::vector<std::string>& names) {
    std::vector<std::size_t> vars;
    for (const auto& n : names) vars.push_back(p.registry()->index_of(n));
    return evaluate_at_one(p, vars);
}

LaurentPoly mirror(const LaurentPoly& p) {
    std::vector<Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) out.push_back({t.mono.inverse(), t.coeff});
    return LaurentPoly(p.registry(), std::move(out));
}

LaurentPoly canonical(const LaurentPoly& p) {
    if (p.is_zero()) return p;
    LaurentPoly q = p.times(p.min_exponents().inverse());
    if (q.leading().coeff < 0) q = -q;
    return q;
}

bool unit_equivalent(const LaurentPoly& p, const LaurentPoly& q) {
    if (!same_registry(p.registry(), q.registry())) return false;
    return canonical(p) == canonical(q);
}

bool equal_up_to_sign(const LaurentPoly& p, const LaurentPoly& q) { return p == q || p == -q; }

namespace {

Monomial torres_center(const LaurentPoly& p) {
    const std::size_t n = p.registry()->size();
    Monomial m(n);
    for (std::size_t i = 0; i < n; ++i) m.set_twice(i, -(p.min_twice(i) + p.max_twice(i)));
    return m;
}

}  // namespace

bool torres_symmetric(const LaurentPoly& p, int r) {
    Coeff eps = (r % 2 == 0) ? 1 : -1;
    return mirror(p) == p.times(Monomial(p.registry()->size()), eps);
}

LaurentPoly torres_normalize(const LaurentPoly& p, int r) {
    if (p.is_zero()) return p;
    const Coeff eps = (r % 2 == 0) ? 1 : -1;
    Monomial m = torres_center(p);
    if (!(mirror(p) == p.times(m, eps)))
        throw NotSymmetric("polynomial " + to_string(p) + " has no Torres symmetry for r = " + std::to_string(r));
    Monomial half(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m.twice(i) % 2 != 0) throw ExponentOffGrid("Torres centre is off the half-integer grid");
        half.set_twice(i, m.twice(i) / 2);
    }
    LaurentPoly q = p.times(half);
    if (q.leading().coeff < 0) q = -q;
    return q;
}

Registry rename_variable(const Registry& reg, std::size_t var, const std::string& name) {
    std::vector<Variable> vars = reg->variables();
    vars.at(var).name = name;
    vars.at(var).half.clear();
    return make_registry(std::move(vars));
}

LaurentPoly norm_over_roots(const LaurentPoly& p, std::size_t var, int r, const std::string& w_name) {
    if (r < 1) throw Error("norm_over_roots needs r >= 1");
    const Registry& reg = p.registry();
    Registry wreg = rename_variable(reg, var, w_name);
    if (p.is_zero()) return LaurentPoly(wreg);
    for (const auto& t : p.terms())
        if (t.mono.twice(var) % 2 != 0)
            throw ExponentOffGrid("norm over roots needs integral powers of " + (*reg)[var].name);

    const int k = p.min_twice(var) / 2;
    PolyMatrix mat(wreg, r, r);
    for (std::size_t i = 0; i < static_cast<std::size_t>(r); ++i)
        for (std::size_t j = 0; j < static_cast<std::size_t>(r); ++j) mat.at(i, j) = LaurentPoly(wreg);

    for (const auto& t : p.terms()) {
        const int e = t.mono.twice(var) / 2 - k;
        for (int j = 0; j < r; ++j) {
            const int total = e + j;
            const int c = total % r, q = total / r;
            Monomial m = t.mono;
            m.set_twice(var, 2L * q);
            mat.at(c, j) += LaurentPoly::monomial(wreg, m, t.coeff);
        }
    }
    LaurentPoly det = determinant(mat);
    // norm of var^k is ((-1)^(r-1))^k w^k
    Monomial shift(wreg->size());
    shift.set_twice(var, 2L * k);
    const Coeff sign = ((r - 1) % 2 != 0 && k % 2 != 0) ? -1 : 1;
    return det.times(shift, sign);
}

std::map<int, LaurentPoly> collect(const LaurentPoly& p, std::size_t var) {
    std::map<int, std::vector<Term>> buckets;
    for (const auto& t : p.terms()) {
        Monomial m = t.mono;
        m.set_twice(var, 0);
        buckets[t.mono.twice(var)].push_back({m, t.coeff});
    }
    std::map<int, LaurentPoly> out;
    for (auto& [e, terms] : buckets) out.emplace(e, LaurentPoly(p.registry(), std::move(terms)));
    return out;
}

Coeff content(const LaurentPoly& p) {
    Coeff g = 0;
    for (const auto& t : p.terms()) g = std::gcd(g, t.coeff);
    return g;
}

}  // namespace fabkit
