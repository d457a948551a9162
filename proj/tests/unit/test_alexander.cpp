#include <doctest.h>

#include <algorithm>

#include "checks.hpp"
#include "fabkit/diagram/braid.hpp"
#include "fabkit/error.hpp"
#include "fabkit/fabric/fabric.hpp"

using namespace fabkit;
using namespace fabkit::testing;

namespace {

void golden(const std::string& file, const std::string& poly) {
    auto k = load_kernel(file);
    auto d = multivariable_alexander(k);
    CHECK_MESSAGE(unit_equivalent(d, P(d.registry(), poly)), file, " gave ", to_string(d));
}

const char* FACE = "(t*x-t-x)*(t+x-1)";
const char* BACK = "(t^2*x-t*x+1)*(t^2*x-t+1)";

std::string rib(int m, int n) {
    return "((" + std::string(FACE) + ")^" + std::to_string(m) + ")*((" + BACK + ")^" + std::to_string(n) + ")*(y-1)";
}

}  // namespace

TEST_CASE("free derivatives") {
    auto reg = make_registry({{"x", Role::Face, ""}, {"y", Role::Back, ""}});
    GroupPresentation p;
    p.registry = reg;
    Monomial gx(2), gy(2);
    gx.set_twice(0, 2);
    gy.set_twice(1, 2);
    p.abelian = {gx, gy, gx};  // g, h, and a second generator on x
    Word gh{{0, 1}, {1, 1}};
    CHECK(fox_derivative(gh, 0, p) == P(reg, "1"));
    CHECK(fox_derivative(gh, 1, p) == P(reg, "x"));
    Word ginv{{0, -1}};
    CHECK(fox_derivative(ginv, 0, p) == P(reg, "-x^-1"));
    CHECK(fox_derivative(ginv, 1, p).is_zero());
    // o a o^-1 b^-1 with o = h on y, a = g and b = generator 2 on x:
    // d/da = o, d/db = -o a o^-1 b^-1 = -1, d/do = 1 - o a o^-1 = 1 - x.
    Word w{{1, 1}, {0, 1}, {1, -1}, {2, -1}};
    CHECK(fox_derivative(w, 0, p) == P(reg, "y"));
    CHECK(fox_derivative(w, 2, p) == P(reg, "-1"));
    CHECK(fox_derivative(w, 1, p) == P(reg, "1-x"));
}

TEST_CASE("Alexander matrices") {
    auto unknot = make_link(braid_to_pd(BraidWord{1, {}, {"t"}}), kernel_registry({"t"}, {}));
    auto a0 = alexander_matrix(wirtinger(unknot));
    CHECK(a0.m.rows() == 0);
    CHECK(a0.m.cols() == 1);

    auto hopf = load_kernel("hopf.braid");
    auto ah = alexander_matrix(wirtinger(hopf.link));
    CHECK(ah.m.rows() == 2);
    for (const auto& r : fox_row_identity(ah)) CHECK(r.is_zero());

    for (const auto& f : corpus_files()) {
        auto k = load_kernel(f);
        auto a = alexander_matrix(simplify(wirtinger(k.link)));
        for (const auto& r : fox_row_identity(a)) CHECK_MESSAGE(r.is_zero(), f);
    }
}

TEST_CASE("Hopf link") {
    for (const char* f : {"hopf.braid", "empty.cell"}) {
        auto k = load_kernel(f);
        CHECK(multivariable_alexander(k).is_unit());
    }
}

TEST_CASE("golden polynomials") {
    golden("jersey_face.cell", "(1-y)*(1-x-t)*(x+t-t*x)");
    golden("jersey_back.cell", "(1-y)*(t^2*x-t*x+1)*(t^2*x-t+1)");
    golden("chainmail.cell", "(x-y)*(1-x*y)*(1-t)");
    golden("plainweave.cell",
           "-1+2*p*x+2*e*y-p^2*x^2-e^2*y^2+((1-e)^2*(1-p)^2-4*e*p)*x*y+2*p^2*e*x^2*y+2*p*e^2*x*y^2-e^2*p^2*x^2*y^2");
    golden("warpchain.cell", "(x-1)*(x*t+1-t)*(x*t-x+1)");
    golden("fishnet.cell", "t^2*x-t^3*x+t^2*y-t^3*y-4*t^3*x*y+2*t^2*x*y-t*x*y-t^5*x*y+3*t^4*x*y+t^4-2*t^3+4*t^2-3*t+1");
    golden("jersey_inlays.cell", "(t+x-1)*(t*x-t-x)*(p*x-1)*(e*y-1)*(y-1)");
    golden("jersey_loop.cell", "(t*x-t-x)*(t+x-1)*(t-1)*(y-1)");
    golden("jersey_trefoil.cell", "(t*x-t-x)*(t+x-1)*(t^2-t+1)*(y-1)");
    golden("rib_1x1.cell", rib(1, 1));
    golden("rib_2x0.cell", rib(2, 0));
    golden("rib_0x2.cell", rib(0, 2));
    golden("rib_2x2.cell", rib(2, 2));
    golden("rib_2x1.cell", rib(2, 1));
    golden("garter.cell", "(1+(1-t1)*(1-t2)*x)*((1-t1)*(1-t2)+t1*t2*x)*(y-1)^2");
    golden("jersey_face_rows.cell", "(t1*t2-(1-t1)*(1-t2)*x)*((1-t1)*(1-t2)-x)*(y-1)^2");
    golden("jersey_two_layer.cell", "(1-y)*(1-x-t)*(x+t-t*x)*(1-y)*(1-x*t-w)*(x*t+w-w*x*t)");
}

TEST_CASE("two back rows: sign of the t1 t2 x term") {
    // The x -> 1/(t1 t2 x) substitution taking purl rows to knit rows fixes
    // the sign; the form with -t1 t2 x in the second bracket is not equivalent.
    const std::string fixed = "(t1^2*t2^2*x-t1*t2+t1+t2-1)*(t1^2*t2^2*x-t1^2*t2*x-t2^2*t1*x+t1*t2*x-1)*(y-1)^2";
    const std::string flipped = "(t1^2*t2^2*x-t1*t2+t1+t2-1)*(t1^2*t2^2*x-t1^2*t2*x-t2^2*t1*x-t1*t2*x-1)*(y-1)^2";
    golden("jersey_back_rows.cell", fixed);
    auto k = load_kernel("jersey_back_rows.cell");
    auto d = multivariable_alexander(k);
    CHECK_FALSE(unit_equivalent(d, P(d.registry(), flipped)));
    auto face = multivariable_alexander(load_kernel("jersey_face_rows.cell"));
    SignedMonomial inv{1, Monomial(d.registry()->size())};
    inv.mono.set_twice(0, -2);
    inv.mono.set_twice(d.registry()->index_of("t1"), -2);
    inv.mono.set_twice(d.registry()->index_of("t2"), -2);
    CHECK(unit_equivalent(substitute_monomial(d, "x", inv), face));
}

TEST_CASE("choice independence") {
    for (const auto& f : corpus_files()) {
        auto k = load_kernel(f);
        auto p = simplify(wirtinger(k.link));
        if (p.relators.empty()) continue;
        auto base = alexander_from_presentation(p, k.component_count());
        std::vector<MinorChoice> choices;
        for (std::size_t r : {std::size_t{0}, p.relators.size() - 1}) {
            std::size_t found = 0;
            for (std::size_t c = 0; c < p.generator_count() && found < 2; ++c)
                if (!p.abelian[c].is_one()) {
                    choices.push_back({r, c});
                    ++found;
                }
        }
        CHECK(choices.size() >= 2);
        for (const auto& ch : choices) CHECK_MESSAGE(alexander_from_presentation(p, k.component_count(), ch) == base, f);
    }
}

TEST_CASE("Torres symmetry and deletion") {
    for (const auto& f : corpus_files()) {
        auto k = load_kernel(f);
        auto d = multivariable_alexander(k);
        const int r = static_cast<int>(k.component_count());
        if (!d.is_zero()) CHECK_MESSAGE(torres_symmetric(torres_normalize(d, r), r), f);
        for (std::size_t c = 0; c < k.component_count(); ++c) {
            const auto var = k.link.variable[c];
            if (std::count(k.link.variable.begin(), k.link.variable.end(), var) > 1) continue;
            CHECK_MESSAGE(verify_torres(k.link, d, static_cast<int>(c)), f, " component ", c);
        }
    }
}

TEST_CASE("Torres deletion, individual cases") {
    auto j = load_kernel("jersey_face.cell");
    CHECK(verify_torres(j.link, multivariable_alexander(j), j.y_comp));
    auto h = load_kernel("hopf.braid");
    CHECK(verify_torres(h.link, multivariable_alexander(h), h.x_comp));
    // The chain-mail ring links neither core curve: <T> = 1, so Delta must
    // vanish at t = 1.
    auto cm = load_kernel("chainmail.cell");
    auto d = multivariable_alexander(cm);
    auto lk = linking_matrix(cm.link.pd);
    CHECK(curve_monomial(cm.link, lk, cm.yarn_comps[0]).is_one());
    CHECK(verify_torres(cm.link, d, cm.yarn_comps[0]));
    CHECK(evaluate_at_one(d, std::vector<std::string>{"t"}).is_zero());
}

TEST_CASE("trefoil in the yarn multiplies by the trefoil factor") {
    auto with = multivariable_alexander(load_kernel("jersey_trefoil.cell"));
    auto plain = multivariable_alexander(load_kernel("jersey_face.cell"));
    auto t = embed(plain, with.registry());
    CHECK(unit_equivalent(with, t * P(with.registry(), "t^2-t+1")));
}

TEST_CASE("degenerate inputs") {
    GroupPresentation p;
    p.registry = kernel_registry({"t"}, {});
    CHECK_THROWS_AS(alexander_from_presentation(p, 1), DegenerateDiagram);
}
