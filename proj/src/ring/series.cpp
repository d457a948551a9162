#include "fabkit/ring/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fabkit/error.hpp"

namespace fabkit {

RationalPoly::RationalPoly(LaurentPoly num, Coeff den) : num_(std::move(num)), den_(den) {
    if (den_ == 0) throw Error("zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    Coeff g = std::gcd(content(num_), den_);
    if (num_.is_zero()) g = den_;
    if (g > 1) {
        std::vector<Term> terms;
        for (const auto& t : num_.terms()) terms.push_back({t.mono, t.coeff / g});
        num_ = LaurentPoly(num_.registry(), std::move(terms));
        den_ /= g;
    }
}

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
    Coeff l = std::lcm(a.den_, b.den_);
    return RationalPoly((l / a.den_) * a.num_ + (l / b.den_) * b.num_, l);
}

RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
    Coeff l = std::lcm(a.den_, b.den_);
    return RationalPoly((l / a.den_) * a.num_ - (l / b.den_) * b.num_, l);
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    return RationalPoly(a.num_ * b.num_, checked_mul(a.den_, b.den_));
}

RationalPoly RationalPoly::scaled(Coeff num, Coeff den) const {
    return RationalPoly(num * num_, checked_mul(den_, den));
}

bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.den_ == b.den_ && a.num_ == b.num_; }

std::string to_string(const RationalPoly& p, const RenderOptions& opts) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const Coeff den = p.denominator();
    for (const auto& t : p.numerator().terms()) {
        Coeff n = t.coeff, d = den;
        Coeff g = std::gcd(n, d);
        n /= g;
        d /= g;
        if (first)
            os << (n < 0 ? "-" : "");
        else
            os << (n < 0 ? " - " : " + ");
        first = false;
        Coeff mag = n < 0 ? -n : n;
        std::string mono = to_string(t.mono, *p.registry(), opts);
        if (t.mono.is_one()) {
            os << mag;
            if (d != 1) os << '/' << d;
        } else {
            if (mag != 1 || d != 1) {
                os << mag;
                if (d != 1) os << '/' << d;
                os << '*';
            }
            os << mono;
        }
    }
    return os.str();
}

SeriesPoly series_expand(const LaurentPoly& p, const std::vector<std::size_t>& yarn_vars, int N) {
    if (N < 0) throw Error("series truncation degree must be non-negative");
    SeriesPoly out;
    out.registry = drop_variables(p.registry(), yarn_vars);
    std::vector<std::vector<Term>> nums(N + 1);
    for (const auto& t : p.terms()) {
        long k = 0;  // exponent of e^(h/2)
        for (std::size_t v : yarn_vars) k += t.mono.twice(v);
        Monomial m(out.registry->size());
        for (std::size_t i = 0; i < p.registry()->size(); ++i) {
            if (std::find(yarn_vars.begin(), yarn_vars.end(), i) != yarn_vars.end()) continue;
            m.set_twice(*out.registry->find((*p.registry())[i].name), t.mono.twice(i));
        }
        Coeff c = t.coeff;
        for (int n = 0; n <= N; ++n) {
            if (c != 0) nums[n].push_back({m, c});
            c = checked_mul(c, k);
        }
    }
    Coeff den = 1;
    for (int n = 0; n <= N; ++n) {
        if (n > 0) den = checked_mul(den, 2L * n);  // 2^n n!
        out.coeffs.emplace_back(LaurentPoly(out.registry, std::move(nums[n])), den);
    }
    return out;
}

}  // namespace fabkit
