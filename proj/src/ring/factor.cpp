#include "fabkit/ring/factor.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>

#include "fabkit/error.hpp"
#include "fabkit/ring/ops.hpp"

namespace fabkit {

namespace {

using boost::multiprecision::cpp_int;
using ZPoly = std::vector<cpp_int>;  // coefficient i is the degree-i coefficient
using u64 = std::uint64_t;
using FPoly = std::vector<u64>;

// ---------- integer polynomials ----------

void trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    trim(c);
    return c;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

ZPoly zderiv(const ZPoly& a) {
    ZPoly d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<long>(i));
    trim(d);
    return d;
}

cpp_int zcontent(const ZPoly& a) {
    cpp_int g = 0;
    for (const auto& c : a) g = boost::multiprecision::gcd(g, c);
    return boost::multiprecision::abs(g);
}

// Primitive part with positive leading coefficient.
ZPoly zprimitive(ZPoly a) {
    trim(a);
    if (a.empty()) return a;
    cpp_int g = zcontent(a);
    if (a.back() < 0) g = -g;
    for (auto& c : a) c /= g;
    return a;
}

cpp_int zmax_abs(const ZPoly& a) {
    cpp_int m = 0;
    for (const auto& c : a) m = std::max(m, cpp_int(boost::multiprecision::abs(c)));
    return m;
}

cpp_int zeval(const ZPoly& a, const cpp_int& x) {
    cpp_int v = 0;
    for (std::size_t i = a.size(); i-- > 0;) v = v * x + a[i];
    return v;
}

std::optional<ZPoly> zdiv_exact(ZPoly a, const ZPoly& b) {
    trim(a);
    if (b.empty()) throw Error("division by zero polynomial");
    if (a.empty()) return ZPoly{};
    if (deg(a) < deg(b)) return std::nullopt;
    ZPoly q(a.size() - b.size() + 1);
    const cpp_int& lb = b.back();
    for (int k = deg(a) - deg(b); k >= 0; --k) {
        const cpp_int& top = a[k + b.size() - 1];
        if (top == 0) continue;
        if (top % lb != 0) return std::nullopt;
        cpp_int c = top / lb;
        q[k] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
    }
    trim(a);
    if (!a.empty()) return std::nullopt;
    trim(q);
    return q;
}

ZPoly zgcd_prs(ZPoly a, ZPoly b) {
    a = zprimitive(a);
    b = zprimitive(b);
    if (deg(a) < deg(b)) std::swap(a, b);
    while (!b.empty()) {
        // primitive pseudo-remainder of a by b
        ZPoly r = a;
        const cpp_int lb = b.back();
        while (!r.empty() && deg(r) >= deg(b)) {
            cpp_int lr = r.back();
            int shift = deg(r) - deg(b);
            for (auto& c : r) c *= lb;
            for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= lr * b[j];
            trim(r);
        }
        a = std::move(b);
        b = zprimitive(r);
    }
    return zprimitive(a);
}

// Heuristic gcd by evaluation at a large point, with a PRS fallback.
ZPoly zgcd(const ZPoly& a0, const ZPoly& b0) {
    ZPoly a = zprimitive(a0), b = zprimitive(b0);
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (deg(a) == 0 || deg(b) == 0) return ZPoly{1};
    cpp_int xi = 2 * std::min(zmax_abs(a), zmax_abs(b)) + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
        cpp_int h = boost::multiprecision::gcd(zeval(a, xi), zeval(b, xi));
        h = boost::multiprecision::abs(h);
        ZPoly g;
        while (h != 0) {
            cpp_int r = h % xi;
            if (r < 0) r += xi;
            if (2 * r > xi) r -= xi;
            g.push_back(r);
            h = (h - r) / xi;
        }
        g = zprimitive(g);
        if (!g.empty() && zdiv_exact(a, g) && zdiv_exact(b, g)) return g;
        xi = xi * 73794 / 27011;
    }
    return zgcd_prs(a, b);
}

// Yun's square-free decomposition; result[i] is the part of multiplicity i+1.
std::vector<ZPoly> squarefree(const ZPoly& f) {
    std::vector<ZPoly> out;
    ZPoly fp = zderiv(f);
    ZPoly a = zgcd(f, fp);
    ZPoly b = *zdiv_exact(f, a);
    ZPoly c = *zdiv_exact(fp, a);
    ZPoly d = zsub(c, zderiv(b));
    while (deg(b) > 0) {
        ZPoly ai = d.empty() ? zprimitive(b) : zgcd(b, d);
        out.push_back(ai);
        ZPoly nb = *zdiv_exact(b, ai);
        ZPoly nc = d.empty() ? ZPoly{} : *zdiv_exact(d, ai);
        b = std::move(nb);
        d = zsub(nc, zderiv(b));
    }
    return out;
}

// ---------- polynomials over F_p ----------

struct Field {
    u64 p;

    u64 add(u64 a, u64 b) const { return (a + b) % p; }
    u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
    u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }
    u64 pow(u64 a, u64 e) const {
        u64 r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a, p - 2); }

    void trim(FPoly& a) const {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }

    FPoly reduce(const ZPoly& a) const {
        FPoly r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            cpp_int v = a[i] % p;
            if (v < 0) v += p;
            r[i] = static_cast<u64>(v);
        }
        trim(r);
        return r;
    }

    FPoly mulp(const FPoly& a, const FPoly& b) const {
        if (a.empty() || b.empty()) return {};
        std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
        }
        FPoly c(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i) c[i] = static_cast<u64>(acc[i] % p);
        trim(c);
        return c;
    }

    FPoly subp(FPoly a, const FPoly& b) const {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i] = sub(a[i], b[i]);
        trim(a);
        return a;
    }

    // a = q b + r
    void divmod(FPoly a, const FPoly& b, FPoly* q, FPoly* r) const {
        trim(a);
        if (b.empty()) throw Error("division by zero mod p");
        const std::size_t db = b.size() - 1;
        u64 linv = inv(b.back());
        FPoly quo;
        if (a.size() >= b.size()) quo.assign(a.size() - db, 0);
        while (!a.empty() && a.size() >= b.size()) {
            std::size_t k = a.size() - b.size();
            u64 c = mul(a.back(), linv);
            quo[k] = c;
            for (std::size_t j = 0; j < b.size(); ++j) a[k + j] = sub(a[k + j], mul(c, b[j]));
            trim(a);
        }
        trim(quo);
        if (q) *q = std::move(quo);
        if (r) *r = std::move(a);
    }

    FPoly mod(const FPoly& a, const FPoly& b) const {
        FPoly r;
        divmod(a, b, nullptr, &r);
        return r;
    }

    FPoly monic(FPoly a) const {
        trim(a);
        if (a.empty()) return a;
        u64 li = inv(a.back());
        for (auto& c : a) c = mul(c, li);
        return a;
    }

    FPoly gcd(FPoly a, FPoly b) const {
        trim(a);
        trim(b);
        while (!b.empty()) {
            FPoly r = mod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }

    // s a + t b = g (monic gcd)
    void xgcd(const FPoly& a, const FPoly& b, FPoly& g, FPoly& s, FPoly& t) const {
        FPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
        trim(r0);
        trim(r1);
        while (!r1.empty()) {
            FPoly q, r;
            divmod(r0, r1, &q, &r);
            FPoly s2 = subp(s0, mulp(q, s1));
            FPoly t2 = subp(t0, mulp(q, t1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        u64 li = inv(r0.back());
        for (auto& c : r0) c = mul(c, li);
        for (auto& c : s0) c = mul(c, li);
        for (auto& c : t0) c = mul(c, li);
        g = r0;
        s = s0;
        t = t0;
    }

    FPoly deriv(const FPoly& a) const {
        FPoly d;
        for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mul(a[i], i % p));
        trim(d);
        return d;
    }

    FPoly powmod(FPoly base, u64 e, const FPoly& m) const {
        FPoly r{1};
        base = mod(base, m);
        while (e) {
            if (e & 1) r = mod(mulp(r, base), m);
            e >>= 1;
            if (e) base = mod(mulp(base, base), m);
        }
        return r;
    }
};

bool squarefree_mod(const Field& F, const FPoly& f) {
    FPoly g = F.gcd(f, F.deriv(f));
    return g.size() == 1;
}

// Berlekamp basis of {v : v^p = v mod f} for monic square-free f.
std::vector<FPoly> berlekamp_basis(const Field& F, const FPoly& f) {
    const std::size_t n = f.size() - 1;
    std::vector<FPoly> rows(n);
    FPoly xp = F.powmod(FPoly{0, 1}, F.p, f);
    rows[0] = FPoly{1};
    for (std::size_t i = 1; i < n; ++i) rows[i] = F.mod(F.mulp(rows[i - 1], xp), f);
    // Matrix A with A[j][i] = Q[i][j] - delta; solve A v = 0.
    std::vector<std::vector<u64>> a(n, std::vector<u64>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) a[j][i] = rows[i][j];
        a[i][i] = F.sub(a[i][i], 1);
    }
    std::vector<int> pivot_col_of_row;
    std::vector<int> is_pivot(n, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < n; ++c) {
        std::size_t piv = r;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) continue;
        std::swap(a[piv], a[r]);
        u64 inv = F.inv(a[r][c]);
        for (auto& v : a[r]) v = F.mul(v, inv);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || a[i][c] == 0) continue;
            u64 m = a[i][c];
            for (std::size_t j = 0; j < n; ++j) a[i][j] = F.sub(a[i][j], F.mul(m, a[r][j]));
        }
        is_pivot[c] = static_cast<int>(r);
        ++r;
    }
    std::vector<FPoly> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free] >= 0) continue;
        FPoly v(n, 0);
        v[free] = 1;
        for (std::size_t c = 0; c < n; ++c)
            if (is_pivot[c] >= 0) v[c] = F.sub(0, a[is_pivot[c]][free]);
        F.trim(v);
        basis.push_back(v);
    }
    return basis;
}

std::vector<FPoly> berlekamp_split(const Field& F, const FPoly& f, const std::vector<FPoly>& basis) {
    std::vector<FPoly> factors{f};
    const std::size_t k = basis.size();
    for (const auto& v : basis) {
        if (factors.size() == k) break;
        if (v.size() <= 1) continue;
        std::vector<FPoly> next;
        for (const auto& g : factors) {
            FPoly rest = g;
            // prod over s of gcd(g, v - s) is g, the pieces pairwise coprime
            for (u64 s = 0; s < F.p && rest.size() > 2; ++s) {
                FPoly vs = v;
                vs[0] = F.sub(vs[0], s);
                F.trim(vs);
                FPoly h = F.gcd(rest, vs);
                if (h.size() > 1 && h.size() < rest.size()) {
                    next.push_back(h);
                    F.divmod(rest, h, &rest, nullptr);
                    rest = F.monic(rest);
                }
            }
            next.push_back(rest);
        }
        factors = std::move(next);
    }
    return factors;
}

const std::vector<u64>& small_primes() {
    static const std::vector<u64> primes = [] {
        std::vector<u64> ps;
        for (u64 n = 3; ps.size() < 60; n += 2) {
            bool prime = true;
            for (u64 d = 3; d * d <= n; d += 2)
                if (n % d == 0) {
                    prime = false;
                    break;
                }
            if (prime) ps.push_back(n);
        }
        return ps;
    }();
    return primes;
}

// ---------- Hensel lifting ----------

cpp_int modm(const cpp_int& a, const cpp_int& m) {
    cpp_int r = a % m;
    if (r < 0) r += m;
    return r;
}

ZPoly zmodm(ZPoly a, const cpp_int& m) {
    for (auto& c : a) c = modm(c, m);
    trim(a);
    return a;
}

ZPoly zmulm(const ZPoly& a, const ZPoly& b, const cpp_int& m) { return zmodm(zmul(a, b), m); }

ZPoly zaddm(ZPoly a, const ZPoly& b, const cpp_int& m) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return zmodm(a, m);
}

ZPoly zsubm(ZPoly a, const ZPoly& b, const cpp_int& m) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return zmodm(a, m);
}

// Division by a monic polynomial modulo m.
void divmod_monic(ZPoly a, const ZPoly& b, const cpp_int& m, ZPoly& q, ZPoly& r) {
    a = zmodm(a, m);
    q.clear();
    if (deg(a) >= deg(b)) q.assign(a.size() - b.size() + 1, 0);
    for (int k = deg(a) - deg(b); k >= 0; --k) {
        cpp_int c = modm(a[k + b.size() - 1], m);
        if (c == 0) continue;
        q[k] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
    }
    r = zmodm(a, m);
    trim(q);
    q = zmodm(q, m);
}

ZPoly lift_poly(const FPoly& a) {
    ZPoly z(a.begin(), a.end());
    trim(z);
    return z;
}

// One quadratic Hensel step: f = g h mod m, s g + t h = 1 mod m, h monic.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const cpp_int& m) {
    const cpp_int m2 = m * m;
    ZPoly e = zsubm(f, zmul(g, h), m2);
    ZPoly q, r;
    divmod_monic(zmul(s, e), h, m2, q, r);
    ZPoly g2 = zaddm(zaddm(g, zmul(t, e), m2), zmul(q, g), m2);
    ZPoly h2 = zaddm(h, r, m2);
    ZPoly b = zsubm(zaddm(zmul(s, g2), zmul(t, h2), m2), ZPoly{1}, m2);
    ZPoly c, d;
    divmod_monic(zmul(s, b), h2, m2, c, d);
    ZPoly s2 = zsubm(s, d, m2);
    ZPoly t2 = zsubm(zsubm(t, zmul(t, b), m2), zmul(c, g2), m2);
    g = std::move(g2);
    h = std::move(h2);
    s = std::move(s2);
    t = std::move(t2);
}

// Lifts f = lc * prod u_i (monic mod p) to a factorization modulo some
// modulus >= bound. Returns the lifted monic factors and the modulus.
std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<FPoly>& us, const Field& F, const cpp_int& bound,
                               cpp_int& modulus) {
    modulus = F.p;
    int steps = 0;
    while (modulus < bound) {
        modulus *= modulus;
        ++steps;
    }
    std::vector<ZPoly> out;
    ZPoly target = f;
    for (std::size_t i = us.size(); i-- > 1;) {
        // target = g * h with h = us[i] monic, g = lc * prod of the rest
        FPoly gbar = F.reduce(ZPoly{target.back()});
        for (std::size_t j = 0; j < i; ++j) gbar = F.mulp(gbar, us[j]);
        FPoly gg, s, t;
        F.xgcd(gbar, us[i], gg, s, t);
        ZPoly g = lift_poly(gbar), h = lift_poly(us[i]), sz = lift_poly(s), tz = lift_poly(t);
        cpp_int m = F.p;
        for (int k = 0; k < steps; ++k) {
            hensel_step(target, g, h, sz, tz, m);
            m *= m;
        }
        out.push_back(h);
        target = g;  // lc(target) stays lc(f) mod modulus
    }
    // remaining target = lc * u_0 (mod modulus)
    cpp_int lc = target.back();
    cpp_int lcinv;
    {
        // modular inverse via extended Euclid
        cpp_int a = modm(lc, modulus), b = modulus, x0 = 1, x1 = 0;
        while (b != 0) {
            cpp_int q = a / b;
            cpp_int tmp = a - q * b;
            a = b;
            b = tmp;
            tmp = x0 - q * x1;
            x0 = x1;
            x1 = tmp;
        }
        lcinv = modm(x0, modulus);
    }
    ZPoly u0 = target;
    for (auto& c : u0) c = modm(c * lcinv, modulus);
    out.push_back(u0);
    std::reverse(out.begin(), out.end());
    return out;
}

ZPoly symmetric(ZPoly a, const cpp_int& m) {
    for (auto& c : a) {
        c = modm(c, m);
        if (2 * c > m) c -= m;
    }
    trim(a);
    return a;
}

// Zassenhaus factorization of a primitive square-free polynomial with f(0) != 0.
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
    if (deg(f) <= 1) return {f};
    // Pick the prime with the fewest modular factors among a few good ones.
    std::optional<Field> best;
    std::vector<FPoly> best_factors;
    int good = 0;
    for (u64 p : small_primes()) {
        if (f.back() % p == 0) continue;
        Field F{p};
        FPoly fb = F.reduce(f);
        if (static_cast<int>(fb.size()) - 1 != deg(f) || !squarefree_mod(F, fb)) continue;
        FPoly fm = F.monic(fb);
        std::vector<FPoly> basis = berlekamp_basis(F, fm);
        if (!best || basis.size() < best_factors.size()) {
            best = F;
            best_factors = berlekamp_split(F, fm, basis);
            if (best_factors.size() != basis.size()) throw Error("Berlekamp splitting incomplete");
        }
        if (best_factors.size() == 1) return {f};
        if (++good >= 5) break;
    }
    if (!best) throw Error("no suitable prime for univariate factorization");

    const int n = deg(f);
    cpp_int norm = 0;
    for (const auto& c : f) norm += c * c;
    cpp_int root = boost::multiprecision::sqrt(norm) + 1;
    cpp_int bound = 2 * boost::multiprecision::abs(f.back()) * (cpp_int(1) << n) * root + 1;
    cpp_int M;
    std::vector<ZPoly> lifted = hensel_lift(f, best_factors, *best, bound, M);

    std::vector<ZPoly> found;
    ZPoly rest = f;
    std::vector<std::size_t> live(lifted.size());
    std::iota(live.begin(), live.end(), 0);
    std::size_t size = 1;
    while (2 * size <= live.size()) {
        bool hit = false;
        std::vector<std::size_t> pick(size);
        std::iota(pick.begin(), pick.end(), 0);
        for (;;) {
            ZPoly cand{rest.back()};
            for (std::size_t i : pick) cand = zmulm(cand, lifted[live[i]], M);
            cand = zprimitive(symmetric(cand, M));
            bool ok = !cand.empty() && deg(cand) > 0;
            if (ok && (cand[0] == 0 || rest[0] % cand[0] != 0)) ok = false;
            if (ok) {
                if (auto q = zdiv_exact(rest, cand)) {
                    found.push_back(cand);
                    rest = *q;
                    std::vector<std::size_t> keep;
                    for (std::size_t i = 0; i < live.size(); ++i)
                        if (std::find(pick.begin(), pick.end(), i) == pick.end()) keep.push_back(live[i]);
                    live = std::move(keep);
                    hit = true;
                    break;
                }
            }
            // next combination
            int i = static_cast<int>(size) - 1;
            while (i >= 0 && pick[i] == live.size() - size + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (std::size_t j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
        if (!hit) ++size;
    }
    if (deg(rest) > 0) found.push_back(zprimitive(rest));
    return found;
}

// Full factorization of a primitive polynomial with positive leading coefficient.
std::vector<std::pair<ZPoly, int>> factor_z(ZPoly f) {
    std::vector<std::pair<ZPoly, int>> out;
    trim(f);
    int zpow = 0;
    while (!f.empty() && f[0] == 0) {
        f.erase(f.begin());
        ++zpow;
    }
    if (zpow) out.push_back({ZPoly{0, 1}, zpow});
    if (deg(f) <= 0) return out;
    std::vector<ZPoly> parts = squarefree(zprimitive(f));
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (deg(parts[i]) <= 0) continue;
        for (auto& g : zassenhaus(zprimitive(parts[i]))) out.push_back({zprimitive(g), static_cast<int>(i + 1)});
    }
    return out;
}

// ---------- multivariate by Kronecker substitution ----------

struct Kron {
    std::vector<std::size_t> vars;   // variables in use
    std::vector<long> base;          // weight of each
    std::vector<long> bound;         // degree + 1
};

ZPoly kronecker(const LaurentPoly& p, const Kron& k) {
    long top = 0;
    for (std::size_t i = 0; i < k.vars.size(); ++i) top += (k.bound[i] - 1) * k.base[i];
    ZPoly z(top + 1);
    for (const auto& t : p.terms()) {
        long e = 0;
        for (std::size_t i = 0; i < k.vars.size(); ++i) e += (t.mono.twice(k.vars[i]) / 2) * k.base[i];
        z[e] += t.coeff;
    }
    trim(z);
    return z;
}

std::optional<LaurentPoly> unkronecker(const ZPoly& z, const Kron& k, const Registry& reg) {
    std::vector<Term> terms;
    for (std::size_t e = 0; e < z.size(); ++e) {
        if (z[e] == 0) continue;
        if (z[e] > std::numeric_limits<Coeff>::max() || z[e] < std::numeric_limits<Coeff>::min()) return std::nullopt;
        Monomial m(reg->size());
        long rest = static_cast<long>(e);
        for (std::size_t i = k.vars.size(); i-- > 0;) {
            long d = rest / k.base[i];
            if (d >= k.bound[i]) return std::nullopt;
            m.set_twice(k.vars[i], 2 * d);
            rest -= d * k.base[i];
        }
        terms.push_back({m, static_cast<Coeff>(z[e])});
    }
    return LaurentPoly(reg, std::move(terms));
}

// Longest univariate image accepted; beyond it Berlekamp and the Hensel
// lift take minutes.
constexpr long kron_limit = 512;

// Factors a primitive polynomial with even doubled exponents, all minima 0.
std::vector<std::pair<LaurentPoly, int>> factor_multivariate(LaurentPoly p) {
    const Registry& reg = p.registry();
    std::vector<std::pair<LaurentPoly, int>> out;
    Kron k;
    long base = 1;
    for (std::size_t i = 0; i < reg->size(); ++i) {
        if (!p.depends_on(i)) continue;
        long d = p.max_twice(i) / 2 + 1;
        k.vars.push_back(i);
        k.base.push_back(base);
        k.bound.push_back(d);
        if (base > kron_limit / d) throw FactorLimit("polynomial too large to factor");
        base *= d;
    }
    if (k.vars.empty()) return out;

    std::vector<std::pair<ZPoly, int>> uni = factor_z(zprimitive(kronecker(p, k)));
    std::vector<int> avail;
    for (auto& [g, m] : uni) avail.push_back(m);

    const std::size_t nf = uni.size();
    int total = std::accumulate(avail.begin(), avail.end(), 0);
    for (int size = 1; size <= total;) {
        bool hit = false;
        std::vector<int> pick(nf, 0);
        std::function<bool(std::size_t, int)> search = [&](std::size_t j, int left) -> bool {
            if (left == 0) {
                for (std::size_t i = j; i < nf; ++i) pick[i] = 0;
                ZPoly g{1};
                for (std::size_t i = 0; i < nf; ++i)
                    for (int c = 0; c < pick[i]; ++c) g = zmul(g, uni[i].first);
                auto cand = unkronecker(g, k, reg);
                // monomials are units; a genuine factor has no monomial content
                if (!cand || cand->size() < 2 || !cand->min_exponents().is_one()) return false;
                auto q = try_exact_div(p, *cand);
                if (!q) return false;
                int mult = 0;
                while (q) {
                    p = *q;
                    ++mult;
                    for (std::size_t i = 0; i < nf; ++i) avail[i] -= pick[i];
                    q = std::nullopt;
                    bool room = true;
                    for (std::size_t i = 0; i < nf; ++i)
                        if (avail[i] < pick[i]) room = false;
                    if (room) q = try_exact_div(p, *cand);
                }
                out.push_back({canonical(*cand), mult});
                return true;
            }
            if (j == nf) return false;
            for (int c = std::min(left, avail[j]); c >= 0; --c) {
                pick[j] = c;
                if (search(j + 1, left - c)) return true;
            }
            pick[j] = 0;
            return false;
        };
        hit = search(0, size);
        total = std::accumulate(avail.begin(), avail.end(), 0);
        if (!hit) ++size;
    }
    if (!p.is_constant()) throw Error("multivariate recombination left an unfactored remainder");
    return out;
}

LaurentPoly rescale(const LaurentPoly& p, const Registry& reg, const std::vector<int>& num, const std::vector<int>& den) {
    std::vector<Term> terms;
    for (const auto& t : p.terms()) {
        Monomial m(reg->size());
        for (std::size_t i = 0; i < reg->size(); ++i) m.set_twice(i, t.mono.twice(i) * num[i] / den[i]);
        terms.push_back({m, t.coeff});
    }
    return LaurentPoly(reg, std::move(terms));
}

}  // namespace

LaurentPoly Factorization::expand(const Registry& reg) const {
    LaurentPoly r = LaurentPoly::monomial(reg, unit.size() ? unit : Monomial(reg->size()), content);
    for (const auto& [f, m] : factors) r *= f.pow(static_cast<unsigned>(m));
    return r;
}

int Factorization::count_with_multiplicity() const {
    int n = 0;
    for (const auto& f : factors) n += f.second;
    return n;
}

Factorization factor(const LaurentPoly& p) {
    if (p.is_zero()) throw Error("factor of the zero polynomial");
    const Registry& reg = p.registry();
    const std::size_t n = reg->size();
    Factorization out;
    out.unit = p.min_exponents();
    LaurentPoly q = p.times(out.unit.inverse());

    // Variables with odd doubled exponents are factored in their square root.
    std::vector<int> scale(n, 2);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& t : q.terms())
            if (t.mono.twice(i) % 2 != 0) scale[i] = 1;
    std::vector<int> two(n, 2);
    LaurentPoly w = rescale(q, reg, two, scale);  // integral exponent e stored as 2e

    Coeff c = content(w);
    if (w.leading().coeff < 0) c = -c;
    std::vector<Term> prim;
    for (const auto& t : w.terms()) prim.push_back({t.mono, t.coeff / c});
    LaurentPoly primitive(reg, std::move(prim));

    for (auto& [f, m] : factor_multivariate(primitive)) out.factors.push_back({canonical(rescale(f, reg, scale, two)), m});
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        const auto& x = a.first;
        const auto& y = b.first;
        if (x.size() != y.size()) return x.size() < y.size();
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!(x.terms()[i].mono == y.terms()[i].mono)) return grlex_before(x.terms()[i].mono, y.terms()[i].mono);
            if (x.terms()[i].coeff != y.terms()[i].coeff) return x.terms()[i].coeff < y.terms()[i].coeff;
        }
        return false;
    });

    out.content = 1;
    LaurentPoly back = out.expand(reg);
    Coeff ratio = p.leading().coeff / back.leading().coeff;
    out.content = ratio;
    if (!(out.expand(reg) == p)) throw Error("factorization does not reassemble its input");
    return out;
}

namespace detail {

std::vector<std::pair<std::vector<long long>, int>> factor_univariate(const std::vector<long long>& f) {
    ZPoly z(f.begin(), f.end());
    std::vector<std::pair<std::vector<long long>, int>> out;
    for (auto& [g, m] : factor_z(zprimitive(z))) {
        std::vector<long long> v;
        for (const auto& c : g) v.push_back(static_cast<long long>(c));
        out.push_back({v, m});
    }
    return out;
}

}  // namespace detail

}  // namespace fabkit
