#include <cctype>
#include <sstream>

#include "fabkit/error.hpp"
#include "fabkit/ring/ops.hpp"

namespace fabkit {

namespace {

void put_power(std::ostringstream& os, const std::string& name, long e2, bool doubled) {
    os << name;
    if (doubled) {
        if (e2 != 1) os << '^' << e2;
        return;
    }
    if (e2 == 2) return;
    if (e2 % 2 == 0)
        os << '^' << e2 / 2;
    else
        os << "^(" << e2 << "/2)";
}

}  // namespace

std::string to_string(const Monomial& m, const VariableRegistry& reg, const RenderOptions& opts) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m.twice(i) == 0) continue;
        if (!first) os << '*';
        first = false;
        const Variable& v = reg[i];
        if (opts.half_symbols && !v.half.empty())
            put_power(os, v.half, m.twice(i), true);
        else
            put_power(os, v.name, m.twice(i), false);
    }
    return first ? "1" : os.str();
}

std::string to_string(const LaurentPoly& p, const RenderOptions& opts) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        Coeff c = t.coeff;
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        unsigned long long mag = c < 0 ? 0ULL - static_cast<unsigned long long>(c) : static_cast<unsigned long long>(c);
        if (t.mono.is_one()) {
            os << mag;
        } else {
            if (mag != 1) os << mag << '*';
            os << to_string(t.mono, *p.registry(), opts);
        }
    }
    return os.str();
}

namespace {

class PolyParser {
public:
    PolyParser(const Registry& reg, std::string_view text) : reg_(reg), s_(text) {}

    LaurentPoly parse() {
        LaurentPoly p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw Error("polynomial syntax error at offset " + std::to_string(pos_) + ": " + what + " in '" +
                    std::string(s_) + "'");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    long integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stol(std::string(s_.substr(start, pos_ - start)));
    }

    LaurentPoly expr() {
        LaurentPoly acc(reg_);
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        LaurentPoly t = term();
        acc = neg ? -t : t;
        for (;;) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                break;
        }
        return acc;
    }

    LaurentPoly term() {
        LaurentPoly acc = power();
        for (;;) {
            if (eat('*'))
                acc *= power();
            else if (eat('/'))
                acc = exact_div(acc, power());
            else
                break;
        }
        return acc;
    }

    // Exponent in doubled units.
    long exponent() {
        if (eat('(')) {
            bool neg = eat('-');
            long num = integer();
            long twice = 2 * num;
            if (eat('/')) {
                long den = integer();
                if (den == 1)
                    twice = 2 * num;
                else if (den == 2)
                    twice = num;
                else
                    fail("exponent denominator must be 1 or 2");
            }
            if (!eat(')')) fail("expected ')'");
            return neg ? -twice : twice;
        }
        bool neg = eat('-');
        long v = 2 * integer();
        return neg ? -v : v;
    }

    LaurentPoly power() {
        LaurentPoly base = atom();
        if (!eat('^')) return base;
        long e2 = exponent();
        if (base.is_monomial()) {
            const Term& t = base.leading();
            if (e2 % 2 != 0 && (t.coeff != 1)) fail("half power of a non-monic monomial");
            Monomial m(reg_->size());
            for (std::size_t i = 0; i < m.size(); ++i) {
                long prod = static_cast<long>(t.mono.twice(i)) * e2;
                if (prod % 2 != 0) fail("power leaves the half-integer grid");
                m.set_twice(i, prod / 2);
            }
            Coeff c = 1;
            if (e2 % 2 == 0) {
                long k = e2 / 2;
                if (k < 0 && t.coeff != 1 && t.coeff != -1) fail("negative power of a non-unit");
                for (long i = 0; i < (k < 0 ? -k : k); ++i) c = checked_mul(c, t.coeff);
            }
            return LaurentPoly::monomial(reg_, m, c);
        }
        if (e2 < 0 || e2 % 2 != 0) fail("only non-negative integer powers of sums");
        return base.pow(static_cast<unsigned>(e2 / 2));
    }

    LaurentPoly atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            LaurentPoly p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return LaurentPoly::constant(reg_, integer());
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            Monomial m(reg_->size());
            if (auto i = reg_->find(name)) {
                m.set_twice(*i, 2);
                return LaurentPoly::monomial(reg_, m);
            }
            for (std::size_t i = 0; i < reg_->size(); ++i) {
                if ((*reg_)[i].half == name) {
                    m.set_twice(i, 1);
                    return LaurentPoly::monomial(reg_, m);
                }
            }
            pos_ = start;
            fail("unknown variable '" + name + "'");
        }
        fail("unexpected character");
    }

    const Registry& reg_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_poly(const Registry& reg, std::string_view text) { return PolyParser(reg, text).parse(); }

}  // namespace fabkit
