#include "fabkit/ring/laurent.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "fabkit/error.hpp"

namespace fabkit {

VariableRegistry::VariableRegistry(std::vector<Variable> vars) : vars_(std::move(vars)) {
    if (vars_.size() > Monomial::capacity)
        throw Error("too many variables in one registry (max " + std::to_string(Monomial::capacity) + ")");
    std::unordered_set<std::string> seen;
    bool face = false, back = false;
    for (const auto& v : vars_) {
        if (v.name.empty()) throw Error("empty variable name");
        if (!seen.insert(v.name).second) throw Error("duplicate variable name '" + v.name + "'");
        if (v.role == Role::Face) {
            if (face) throw Error("registry has two face-meridian variables");
            face = true;
        }
        if (v.role == Role::Back) {
            if (back) throw Error("registry has two back-meridian variables");
            back = true;
        }
    }
}

std::optional<std::size_t> VariableRegistry::find(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    return std::nullopt;
}

std::size_t VariableRegistry::index_of(std::string_view name) const {
    auto i = find(name);
    if (!i) throw Error("unknown variable '" + std::string(name) + "'");
    return *i;
}

std::optional<std::size_t> VariableRegistry::find_role(Role role) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].role == role) return i;
    return std::nullopt;
}

Registry make_registry(std::vector<Variable> vars) {
    return std::make_shared<const VariableRegistry>(std::move(vars));
}

Registry make_registry(std::initializer_list<const char*> names) {
    std::vector<Variable> vars;
    for (const char* n : names) vars.push_back({n, Role::Other, {}});
    return make_registry(std::move(vars));
}

bool same_registry(const Registry& a, const Registry& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

Monomial::Monomial(std::size_t n) : n_(static_cast<std::uint8_t>(n)) {
    if (n > capacity) throw Error("monomial too long");
}

Monomial Monomial::from_twice(const std::vector<int>& twice) {
    Monomial m(twice.size());
    for (std::size_t i = 0; i < twice.size(); ++i) m.set_twice(i, twice[i]);
    return m;
}

void Monomial::set_twice(std::size_t i, long v) {
    if (v > std::numeric_limits<std::int16_t>::max() || v < std::numeric_limits<std::int16_t>::min())
        throw Error("exponent out of range");
    e_[i] = static_cast<std::int16_t>(v);
}

bool Monomial::is_one() const noexcept {
    for (std::size_t i = 0; i < n_; ++i)
        if (e_[i] != 0) return false;
    return true;
}

long Monomial::total_twice() const noexcept {
    long s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += e_[i];
    return s;
}

bool Monomial::integral() const noexcept {
    for (std::size_t i = 0; i < n_; ++i)
        if (e_[i] % 2 != 0) return false;
    return true;
}

Monomial& Monomial::operator*=(const Monomial& o) {
    if (o.n_ != n_) throw RegistryMismatch();
    for (std::size_t i = 0; i < n_; ++i) set_twice(i, static_cast<long>(e_[i]) + o.e_[i]);
    return *this;
}

Monomial Monomial::inverse() const {
    Monomial m(n_);
    for (std::size_t i = 0; i < n_; ++i) m.set_twice(i, -static_cast<long>(e_[i]));
    return m;
}

Monomial Monomial::pow(int k) const {
    Monomial m(n_);
    for (std::size_t i = 0; i < n_; ++i) m.set_twice(i, static_cast<long>(e_[i]) * k);
    return m;
}

bool operator==(const Monomial& a, const Monomial& b) noexcept {
    if (a.n_ != b.n_) return false;
    for (std::size_t i = 0; i < a.n_; ++i)
        if (a.e_[i] != b.e_[i]) return false;
    return true;
}

bool operator<(const Monomial& a, const Monomial& b) noexcept {
    for (std::size_t i = 0; i < a.n_; ++i)
        if (a.e_[i] != b.e_[i]) return a.e_[i] < b.e_[i];
    return false;
}

bool grlex_before(const Monomial& a, const Monomial& b) noexcept {
    long da = a.total_twice(), db = b.total_twice();
    if (da != db) return da > db;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.twice(i) != b.twice(i)) return a.twice(i) > b.twice(i);
    return false;
}

Coeff checked_add(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_add_overflow(a, b, &r)) throw CoefficientOverflow();
    return r;
}

Coeff checked_mul(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_mul_overflow(a, b, &r)) throw CoefficientOverflow();
    return r;
}

namespace {

bool term_before(const Term& a, const Term& b) { return grlex_before(a.mono, b.mono); }

// Merge two sorted term lists, sign applied to the second.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, Coeff sign) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && grlex_before(a[i].mono, b[j].mono))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || grlex_before(b[j].mono, a[i].mono)) {
            out.push_back({b[j].mono, checked_mul(sign, b[j].coeff)});
            ++j;
        } else {
            Coeff c = checked_add(a[i].coeff, checked_mul(sign, b[j].coeff));
            if (c != 0) out.push_back({a[i].mono, c});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

LaurentPoly::LaurentPoly(Registry reg) : reg_(std::move(reg)) {
    if (!reg_) throw Error("null registry");
}

LaurentPoly::LaurentPoly(Registry reg, std::vector<Term> terms) : reg_(std::move(reg)), terms_(std::move(terms)) {
    if (!reg_) throw Error("null registry");
    for (const auto& t : terms_)
        if (t.mono.size() != reg_->size()) throw RegistryMismatch();
    normalize();
}

void LaurentPoly::normalize() {
    std::sort(terms_.begin(), terms_.end(), term_before);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (!out.empty() && out.back().mono == t.mono)
            out.back().coeff = checked_add(out.back().coeff, t.coeff);
        else
            out.push_back(t);
    }
    std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
    terms_ = std::move(out);
}

LaurentPoly LaurentPoly::constant(Registry reg, Coeff c) {
    LaurentPoly p(std::move(reg));
    if (c != 0) p.terms_.push_back({Monomial(p.reg_->size()), c});
    return p;
}

LaurentPoly LaurentPoly::monomial(Registry reg, const Monomial& m, Coeff c) {
    LaurentPoly p(std::move(reg));
    if (m.size() != p.reg_->size()) throw RegistryMismatch();
    if (c != 0) p.terms_.push_back({m, c});
    return p;
}

LaurentPoly LaurentPoly::monomial(Registry reg, const SignedMonomial& m) {
    return monomial(std::move(reg), m.mono, m.sign);
}

LaurentPoly LaurentPoly::variable(Registry reg, std::string_view name, int power) {
    Monomial m(reg->size());
    m.set_twice(reg->index_of(name), 2L * power);
    return monomial(std::move(reg), m, 1);
}

bool LaurentPoly::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Coeff LaurentPoly::constant_term() const {
    for (const auto& t : terms_)
        if (t.mono.is_one()) return t.coeff;
    return 0;
}

bool LaurentPoly::is_unit() const noexcept {
    return terms_.size() == 1 && (terms_[0].coeff == 1 || terms_[0].coeff == -1);
}

const Term& LaurentPoly::leading() const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    return terms_.front();
}

int LaurentPoly::min_twice(std::size_t var) const {
    if (terms_.empty()) return 0;
    int m = terms_[0].mono.twice(var);
    for (const auto& t : terms_) m = std::min(m, t.mono.twice(var));
    return m;
}

int LaurentPoly::max_twice(std::size_t var) const {
    if (terms_.empty()) return 0;
    int m = terms_[0].mono.twice(var);
    for (const auto& t : terms_) m = std::max(m, t.mono.twice(var));
    return m;
}

Monomial LaurentPoly::min_exponents() const {
    Monomial m(reg_->size());
    for (std::size_t i = 0; i < reg_->size(); ++i) m.set_twice(i, min_twice(i));
    return m;
}

bool LaurentPoly::depends_on(std::size_t var) const {
    for (const auto& t : terms_)
        if (t.mono.twice(var) != terms_[0].mono.twice(var)) return true;
    return false;
}

void LaurentPoly::check_same(const LaurentPoly& o) const {
    if (!same_registry(reg_, o.reg_)) throw RegistryMismatch();
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    check_same(o);
    terms_ = merge_terms(terms_, o.terms_, 1);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    check_same(o);
    terms_ = merge_terms(terms_, o.terms_, -1);
    return *this;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly p = *this;
    for (auto& t : p.terms_) t.coeff = checked_mul(-1, t.coeff);
    return p;
}

LaurentPoly LaurentPoly::times(const Monomial& m, Coeff c) const {
    LaurentPoly p(reg_);
    if (c == 0) return p;
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.mono * m, checked_mul(t.coeff, c)});
    return p;  // multiplying by a monomial preserves the order
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_same(b);
    if (a.terms_.empty() || b.terms_.empty()) return LaurentPoly(a.reg_);
    const LaurentPoly& big = a.size() >= b.size() ? a : b;
    const LaurentPoly& small = a.size() >= b.size() ? b : a;
    if (small.size() == 1) return big.times(small.terms_[0].mono, small.terms_[0].coeff);
    std::vector<Term> all;
    all.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) all.push_back({s.mono * t.mono, checked_mul(s.coeff, t.coeff)});
    return LaurentPoly(a.reg_, std::move(all));
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
}

LaurentPoly operator*(Coeff c, const LaurentPoly& p) {
    return p.times(Monomial(p.reg_->size()), c);
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (!same_registry(a.reg_, b.reg_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
    LaurentPoly result = constant(reg_, 1);
    LaurentPoly base = *this;
    while (k) {
        if (k & 1u) result *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return result;
}

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q) { return p + q; }
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q) { return p * q; }

}  // namespace fabkit
