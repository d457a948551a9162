#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fabkit {

enum class Role { Face, Back, Yarn, Axis, Other };

struct Variable {
    std::string name;
    Role role = Role::Other;
    // Display name of the square root (s for t = s^2); empty when none.
    std::string half;

    bool operator==(const Variable&) const = default;
};

class VariableRegistry {
public:
    explicit VariableRegistry(std::vector<Variable> vars);

    std::size_t size() const noexcept { return vars_.size(); }
    const Variable& operator[](std::size_t i) const { return vars_.at(i); }
    const std::vector<Variable>& variables() const noexcept { return vars_; }

    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index_of(std::string_view name) const;
    std::optional<std::size_t> find_role(Role role) const;

    bool operator==(const VariableRegistry&) const = default;

private:
    std::vector<Variable> vars_;
};

using Registry = std::shared_ptr<const VariableRegistry>;

Registry make_registry(std::vector<Variable> vars);
// Convenience for tests and ad-hoc rings; every variable gets Role::Other.
Registry make_registry(std::initializer_list<const char*> names);
bool same_registry(const Registry& a, const Registry& b);

// Exponent vector with every exponent stored doubled, so x^(1/2) has entry 1.
class Monomial {
public:
    static constexpr std::size_t capacity = 16;

    Monomial() = default;
    explicit Monomial(std::size_t n);
    static Monomial from_twice(const std::vector<int>& twice);

    std::size_t size() const noexcept { return n_; }
    int twice(std::size_t i) const { return e_[i]; }
    void set_twice(std::size_t i, long v);
    void add_twice(std::size_t i, long v) { set_twice(i, static_cast<long>(e_[i]) + v); }

    bool is_one() const noexcept;
    long total_twice() const noexcept;
    bool integral() const noexcept;

    Monomial& operator*=(const Monomial& o);
    friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
    Monomial inverse() const;
    Monomial pow(int k) const;

    friend bool operator==(const Monomial& a, const Monomial& b) noexcept;
    // Strict lexicographic order on the raw exponent vector.
    friend bool operator<(const Monomial& a, const Monomial& b) noexcept;

private:
    std::array<std::int16_t, capacity> e_{};
    std::uint8_t n_ = 0;
};

// True when a precedes b in descending graded-lex order.
bool grlex_before(const Monomial& a, const Monomial& b) noexcept;

using Coeff = std::int64_t;

Coeff checked_add(Coeff a, Coeff b);
Coeff checked_mul(Coeff a, Coeff b);

struct Term {
    Monomial mono;
    Coeff coeff = 0;
};

struct SignedMonomial {
    int sign = 1;
    Monomial mono;
};

class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(Registry reg);
    LaurentPoly(Registry reg, std::vector<Term> terms);

    static LaurentPoly constant(Registry reg, Coeff c);
    static LaurentPoly monomial(Registry reg, const Monomial& m, Coeff c = 1);
    static LaurentPoly monomial(Registry reg, const SignedMonomial& m);
    static LaurentPoly variable(Registry reg, std::string_view name, int power = 1);

    const Registry& registry() const noexcept { return reg_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    Coeff constant_term() const;
    bool is_monomial() const noexcept { return terms_.size() == 1; }
    bool is_unit() const noexcept;
    const Term& leading() const;

    int min_twice(std::size_t var) const;
    int max_twice(std::size_t var) const;
    Monomial min_exponents() const;
    bool depends_on(std::size_t var) const;

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly operator-() const;
    LaurentPoly times(const Monomial& m, Coeff c = 1) const;
    LaurentPoly pow(unsigned k) const;

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(Coeff c, const LaurentPoly& p);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

private:
    void check_same(const LaurentPoly& o) const;
    void normalize();

    Registry reg_;
    std::vector<Term> terms_;  // descending graded-lex, no zero coefficients
};

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q);

}  // namespace fabkit
