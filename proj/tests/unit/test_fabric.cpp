#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "checks.hpp"
#include "fabkit/diagram/cell.hpp"
#include "fabkit/error.hpp"
#include "fabkit/fabric/fabric.hpp"

using namespace fabkit;
using namespace fabkit::testing;

namespace {

Kernel straight_strand_kernel() {
    std::istringstream in("fabcell 1\nyarn t a1\nedge L 0 a1 in\nedge R 0 a1 out\n");
    return cell_to_kernel(parse_cell(in));
}

}  // namespace

TEST_CASE("axial profiles") {
    auto j = load("jersey_face.cell");
    REQUIRE(j.profile.yarns.size() == 1);
    CHECK(j.profile.yarns[0].a == 0);
    CHECK(j.profile.yarns[0].b == 1);
    CHECK_FALSE(j.profile.has_closed());

    auto cm = load("chainmail.cell");
    CHECK(cm.profile.yarns[0].closed());
    CHECK(cm.profile.has_closed());
    CHECK(evaluate_at_one(cm.delta, cm.profile.yarn_variables()).is_zero());

    auto pw = load("plainweave.cell");
    std::vector<std::pair<int, int>> ab;
    for (const auto& y : pw.profile.yarns) ab.emplace_back(y.a, y.b);
    std::sort(ab.begin(), ab.end());
    CHECK(ab == std::vector<std::pair<int, int>>{{0, 1}, {0, 1}, {1, 0}, {1, 0}});
    auto at1 = evaluate_at_one(pw.delta, pw.profile.yarn_variables());
    CHECK(unit_equivalent(at1, P(at1.registry(), "(1-x)^2*(1-y)^2")));

    auto bad = j.delta * P(j.delta.registry(), "1+x");
    CHECK_THROWS_AS(axial_analysis(j.kernel, bad), AxialMismatch);
}

TEST_CASE("axial identity on the whole corpus") {
    for (const auto& f : corpus_files()) {
        auto k = load_kernel(f);
        auto d = multivariable_alexander(k);
        AxialProfile prof;
        CHECK_NOTHROW_MESSAGE(prof = axial_analysis(k, d), f);
        auto at1 = evaluate_at_one(d, prof.yarn_variables());
        CHECK_MESSAGE(at1.is_zero() == prof.has_closed(), f);
    }
}

TEST_CASE("data matrices") {
    SUBCASE("single jersey") {
        CHECK(same_data(load("jersey_face.cell").data, {{"s^-3-s^-1", "s^-1-s^-3"},
                                                         {"-s^2+3-s^-2", "s^2-3+s^-2"},
                                                         {"s^3-s", "s-s^3"}}));
        CHECK(same_data(load("jersey_back.cell").data, {{"s^3-s", "s-s^3"},
                                                         {"-s^2+3-s^-2", "s^2-3+s^-2"},
                                                         {"s^-3-s^-1", "s^-1-s^-3"}}));
    }
    SUBCASE("plain weave") {
        CHECK(same_data(load("plainweave.cell").data,
                        {{"-1", "2", "-1"}, {"2", "(a-a^-1)^2*(b-b^-1)^2-4", "2"}, {"-1", "2", "-1"}}));
    }
    SUBCASE("chain mail") {
        CHECK(same_data(load("chainmail.cell").data,
                        {{"0", "s-s^-1", "0"}, {"s^-1-s", "0", "s^-1-s"}, {"0", "s-s^-1", "0"}}));
    }
    SUBCASE("fishing net") {
        CHECK(same_data(load("fishnet.cell").data, {{"s^-1-s", "-s^4+3*s^2-4+2*s^-2-s^-4"},
                                                     {"s^4-2*s^2+4-3*s^-2+s^-4", "s^-1-s"}}));
    }
    SUBCASE("1/2 twill minimal cell") {
        CHECK(same_data(load("twill_min.cell").data,
                        {{"a^(1/2)*b^(1/2)", "-b^(1/2)*a^(-1/2)", "0"},
                         {"0", "b^(1/2)*a^(-1/2)*(a^-1-a)*(b^-1-b)", "0"},
                         {"0", "a^(1/2)*b^(-1/2)*(a^-1-a)*(b^-1-b)", "0"},
                         {"0", "-a^(1/2)*b^(-1/2)", "a^(-1/2)*b^(-1/2)"}}));
    }
    SUBCASE("Leno weave") {
        // The naive centre breaks the axial identity; the computed one
        // differs from it by an explicit term.
        const std::string p = "(a^-2-1+a^2)*(b^-1-b)^2+2";
        const std::string q_naive = "2*(a^-1-a)^2*(b^-1-b)^2+2*(a^-2-a^2)^2-(a^-2*b^-1+a^2*b)^2+2";
        const std::string q = q_naive + "-(a^-2*b+a^2*b^-1)^2+2";
        auto d = load("leno.cell").data;
        CHECK(same_data(d, {{"-1", "2", "-1"}, {p, q, p}, {"-1", "2", "-1"}}));
        CHECK_FALSE(same_data(d, {{"-1", "2", "-1"}, {p, q_naive, p}, {"-1", "2", "-1"}}));
        // At a = b = 1 the data must sum to zero, which needs a centre of -4.
        auto at1 = [&](const std::string& e) { return evaluate_at_one(P(d.registry(), e), std::vector<std::string>{"a", "b"}); };
        CHECK(at1(q).constant_term() == -4);
        CHECK(at1(q_naive).constant_term() == -2);
    }
    SUBCASE("triaxial weave") {
        auto f = load("triaxial.cell");
        auto& d = f.data;
        const auto& reg = d.registry();
        std::vector<LaurentPoly> outer;
        LaurentPoly centre(reg);
        for (const auto& [k, e] : d.entries()) (k == std::make_pair(0, 0) ? centre : outer.emplace_back(reg)) = e;
        auto sign = outer.empty() ? 1 : (std::count_if(outer.begin(), outer.end(), [&](const LaurentPoly& e) {
                                             return e == P(reg, "a") || e == P(reg, "b") || e == P(reg, "c");
                                         }) == 3
                                             ? 1
                                             : -1);
        std::vector<std::string> want{"a", "b", "c", "-a^-1", "-b^-1", "-c^-1"};
        REQUIRE(outer.size() == want.size());
        for (const auto& w : want)
            CHECK(std::count(outer.begin(), outer.end(), sign * P(reg, w)) == 1);
        const std::string product = "(a-a^-1)*(b-b^-1)*(c-c^-1)";
        CHECK(centre == sign * P(reg, product + "-a*b*c+a^-1*b^-1*c^-1"));
        // The computed centre is the one compatible with Torres deletion.
        for (int c = 0; c < static_cast<int>(f.kernel.component_count()); ++c)
            if (c != f.kernel.x_comp && c != f.kernel.y_comp) CHECK(verify_torres(f.kernel.link, f.delta, c));
    }
}

TEST_CASE("data form round trips") {
    for (const char* f : {"jersey_face.cell", "plainweave.cell", "chainmail.cell", "twill_min.cell", "leno.cell", "garter.cell"}) {
        auto fab = load(f);
        CHECK_MESSAGE(unit_equivalent(from_data_form(fab.data, fab.profile), fab.delta), f);
        auto raw = to_data_form(fab.delta, fab.profile, false);
        CHECK_FALSE(raw.normalized);
        CHECK(unit_equivalent(from_data_form(raw, fab.profile), fab.delta));
    }
    SUBCASE("chain mail from its data matrix") {
        auto cm = load("chainmail.cell");
        AlexanderData d{grid_poly(cm.data.registry(), {{"0", "s-s^-1", "0"}, {"s^-1-s", "0", "s^-1-s"}, {"0", "s-s^-1", "0"}}), true};
        auto back = from_data_form(d, cm.profile);
        CHECK(unit_equivalent(back, P(back.registry(), "(x-y)*(1-x*y)*(1-t)")));
    }
    SUBCASE("Hopf link") {
        auto h = load("hopf.braid");
        auto e = h.data.entries();
        REQUIRE(e.size() == 1);
        CHECK(e.begin()->first == std::make_pair(0, 0));
        CHECK(e.begin()->second.is_unit());
    }
}

TEST_CASE("basis changes") {
    auto face = load("jersey_face.cell");
    auto skew = load("jersey_skew.cell");
    CHECK(change_basis(face.data, {}).poly == face.data.poly);

    auto moved = change_basis(face.data, {1, 0, 1, 1});
    CHECK(unit_equivalent(moved.poly, skew.data.poly));
    // As raw polynomials: the skew data at U' = U, V' = U V is U^2 times the original.
    auto raw_face = to_data_form(face.delta, face.profile, false).poly;
    auto raw_skew = to_data_form(skew.delta, skew.profile, false).poly;
    const auto& reg = raw_skew.registry();
    std::vector<SignedMonomial> im = identity_images(reg, reg);
    im[1].mono.set_twice(0, 2);
    CHECK(unit_equivalent(substitute(raw_skew, reg, im), raw_face));

    BasisChange c{2, 1, 1, 1}, inv{1, -1, -1, 2};
    auto round = change_basis(change_basis(face.data, c), inv);
    CHECK(unit_equivalent(round.poly, face.data.poly));
    CHECK_THROWS_AS(change_basis(face.data, {1, 1, 1, 1}), ValidationError);
    CHECK_THROWS_AS(change_basis(face.data, {0, 1, 1, 0}), ValidationError);
}

TEST_CASE("Salkeld covers") {
    auto jf = load("jersey_face.cell");
    auto cell = load_cell("jersey_face.cell");
    CHECK(rename_to(salkeld_cover(jf.data, Direction::V, 1), 1, "V") == canonical(jf.data.poly));

    SUBCASE("jersey against closed formulas") {
        auto q = salkeld_cover(jf.data, Direction::V, 2);
        CHECK(unit_equivalent(q, P(q.registry(), "(1-U)^2*((1-s^2)^2-W*s^-2)*(s^4-(1-s^2)^2*W*s^-2)")));
        auto p = salkeld_cover(jf.data, Direction::U, 2);
        CHECK(unit_equivalent(p, P(p.registry(), "(1-W)*(1-s^2-V*s^-1)^2*(s^2+(s^-1-s)*V)^2")));
        CHECK(salkeld_cover(jf.delta, jf.profile, Direction::U, 2) == p);
    }
    SUBCASE("covers against tiled cells") {
        for (const char* f : {"jersey_face.cell", "plainweave.cell"})
            for (int r : {2, 3}) {
                if (r == 3 && std::string(f) != "jersey_face.cell") continue;
                auto base = load(f);
                auto c = load_cell(f);
                for (auto dir : {Direction::U, Direction::V}) {
                    auto tiled = from_kernel(cell_to_kernel(tile_cell(c, dir == Direction::U ? r : 1, dir == Direction::V ? r : 1)));
                    const std::size_t var = dir == Direction::U ? 0 : 1;
                    auto cover = rename_to(salkeld_cover(base.data, dir, r), var, var == 0 ? "U" : "V");
                    CHECK_MESSAGE(unit_equivalent(cover, tiled.data.poly), f, " r = ", r);
                }
            }
    }
    SUBCASE("plain weave doubled in v") {
        auto pw = load("plainweave.cell");
        // The middle coefficient keeps the -4 of the centre entry; without it
        // the product is not the cover.
        auto q = salkeld_cover(pw.data, Direction::V, 2);
        const auto& reg = q.registry();
        CHECK(unit_equivalent(q, P(reg, "(1-U)^4*(1+W)^2-(2+((1-a^2)^2*(1-b^2)^2*a^-2*b^-2-4)*U+2*U^2)^2*W")));
        CHECK_FALSE(unit_equivalent(q, P(reg, "(1-U)^4*(1+W)^2-(2+(1-a^2)^2*(1-b^2)^2*U*a^-2*b^-2+2*U^2)^2*W")));
    }
    SUBCASE("finer lattices factor out of the traditional cell") {
        // u + v = k v' for the minimal cell: the traditional data at
        // V = V'^k / U is divisible by the minimal data.
        for (auto [trad, min, k] : {std::tuple{"plainweave.cell", "plainweave_min.cell", 2}, {"twill.cell", "twill_min.cell", 3}}) {
            auto t = load(trad).data.poly;
            auto m = load(min).data.poly;
            REQUIRE(same_registry(t.registry(), m.registry()));
            const auto& reg = t.registry();
            auto im = identity_images(reg, reg);
            im[1].mono.set_twice(0, -2);
            im[1].mono.set_twice(1, 2L * k);
            auto folded = substitute(canonical(t), reg, im);
            CHECK_MESSAGE(try_exact_div(folded.times(folded.min_exponents().inverse()), canonical(m)).has_value(), trad);
        }
    }
}

TEST_CASE("layered fabrics") {
    auto jf = load("jersey_face.cell");
    auto two = load("jersey_two_layer.cell");
    auto g = fox_glue(jf.delta, jf.profile, jf.delta, jf.profile);
    // The second layer's t is renamed t'; the hand-built kernel calls it w.
    auto glued = rename_to(g.delta, g.delta.registry()->index_of("t'"), "w");
    CHECK(unit_equivalent(embed(glued, two.delta.registry()), two.delta));
    CHECK_NOTHROW(check_axial(g.profile, g.delta));

    CHECK(layer_bound(jf.delta, jf.profile).bound == 1);
    CHECK(layer_bound(g.delta, g.profile).bound == 2);
    CHECK(layer_bound(two.delta, two.profile).bound == 2);
    auto cm = load("chainmail.cell");
    CHECK_THROWS_AS(layer_bound(cm.delta, cm.profile), ClosedComponents);

    SUBCASE("a straight strand behind") {
        auto s = from_kernel(straight_strand_kernel());
        auto gs = fox_glue(jf.delta, jf.profile, s.delta, s.profile);
        auto expect = embed(jf.delta, gs.delta.registry()) * P(gs.delta.registry(), "1-y");
        CHECK(unit_equivalent(gs.delta, expect));
        CHECK(layer_bound(gs.delta, gs.profile).bound >= 2);
    }
    SUBCASE("no linking gives the plain product") {
        auto pl = jf.profile, pm = jf.profile;
        for (auto& y : pl.yarns) y.a = y.b = 0;
        for (auto& y : pm.yarns) y.a = y.b = 0;
        auto gp = fox_glue(jf.delta, pl, jf.delta, pm);
        const auto& reg = gp.delta.registry();
        auto second = substitute(jf.delta, reg, identity_images(jf.delta.registry(), reg));
        std::vector<SignedMonomial> im(jf.delta.registry()->size(), SignedMonomial{1, Monomial(reg->size())});
        im[0].mono.set_twice(0, 2);
        im[1].mono.set_twice(1, 2);
        im[2].mono.set_twice(reg->index_of("t'"), 2);
        CHECK(gp.delta == canonical(second * substitute(jf.delta, reg, im)));
    }
}

TEST_CASE("strip-like fabrics") {
    auto strip = [](const Fabric& f) { return strip_test(f.delta, f.profile); };
    CHECK(strip(load("warpchain.cell")).strip);
    CHECK_FALSE(strip(load("fishnet.cell")).strip);
    auto doubled = from_kernel(cell_to_kernel(tile_cell(load_cell("jersey_face.cell"), 2, 1)));
    for (const auto& f : {load("jersey_face.cell"), load("jersey_back.cell"), doubled, load("rib_1x1.cell"), load("garter.cell")}) {
        auto r = strip(f);
        CHECK_FALSE(r.strip);
        CHECK(r.diagnostic == "depends on x");
    }
    CHECK_FALSE(strip(load("plainweave.cell")).strip);
    CHECK_FALSE(strip(load("chainmail.cell")).strip);
}

TEST_CASE("Vassiliev coefficients") {
    auto row = [](const char* f) {
        auto fab = load(f);
        return vassiliev_coeffs(fab.delta, fab.profile, 1);
    };
    CHECK(same_row(row("chainmail.cell"), "0", "x+x^-1-y-y^-1"));
    CHECK(same_row(row("jersey_face.cell"), "1-y", "(1-y)*(x^-1-x)"));
    CHECK(same_row(row("jersey_back.cell"), "1-y", "(1-y)*(x-x^-1)"));
    CHECK(same_row(row("rib_1x1.cell"), "1-y", "0"));
    CHECK(same_row(row("rib_2x1.cell"), "1-y", "(1-y)*(1-2)*(x-x^-1)"));
    CHECK(same_row(row("rib_2x2.cell"), "1-y", "0"));
    CHECK(same_row(row("fishnet.cell"), "1-x*y", "1-2*x-2*y+x*y", 2));

    // Warp-knitted chain: a_0 (x + 1 - x^-1) is the expansion of the
    // polynomial before centring in t; the centred one is a_0 (x - x^-1).
    auto wc = load("warpchain.cell");
    CHECK(same_row(vassiliev_coeffs(wc.delta, wc.profile, 1), "1-x", "(1-x)*(x-x^-1)"));
    auto raw = series_expand(wc.delta, wc.profile.yarn_variables(), 1);
    CHECK(same_row(raw, "1-x", "(1-x)*(x+1-x^-1)"));

    auto pw = load("plainweave.cell");
    CHECK_THROWS_AS(vassiliev_coeffs(pw.delta, pw.profile, 1), MultipleYarns);

    SUBCASE("parity and the constant term") {
        for (const auto& f : corpus_files()) {
            auto fab = load(f);
            if (fab.profile.yarn_variables().size() != 1) continue;
            auto s = vassiliev_coeffs(fab.delta, fab.profile, 3);
            const int eps = fab.profile.components % 2 == 0 ? 1 : -1;
            for (int r = 0; r <= 3; ++r) {
                const auto& c = s.coeffs[r];
                RationalPoly m(mirror(c.numerator()), c.denominator());
                CHECK_MESSAGE(m == c.scaled(r % 2 == 0 ? eps : -eps, 1), f, " a_", r);
            }
            LaurentPoly a0 = fab.profile.axial_product();
            auto norm = a0.is_zero() ? a0 : torres_normalize(a0, 3);
            auto c0 = s.coeffs[0].numerator();
            CHECK_MESSAGE(s.coeffs[0].denominator() == 1, f);
            CHECK_MESSAGE(equal_up_to_sign(embed(c0, norm.registry()), norm), f);
        }
    }
}

TEST_CASE("bounded equivalence search") {
    auto face = load("jersey_face.cell");
    auto skew = load("jersey_skew.cell");
    auto back = load("jersey_back.cell");

    auto self = data_equivalence(face.data, face.data, 3);
    REQUIRE(self);
    CHECK(self->change == BasisChange{});
    CHECK(self->unit.sign == 1);
    CHECK(self->unit.mono.is_one());

    auto w = data_equivalence(face.data, skew.data, 3);
    REQUIRE(w);
    CHECK(w->change == BasisChange{1, 0, 1, 1});
    auto mapped = change_basis(face.data, w->change).poly;
    Monomial m = w->unit.mono;
    m.set_twice(0, w->translation.first);
    m.set_twice(1, w->translation.second);
    CHECK(mapped.times(m, w->unit.sign) == skew.data.poly);

    // Face and back: the half turn u, v -> -u, -v carries one onto the other
    // up to sign, since every column of the data is antisymmetric.
    auto fb = data_equivalence(face.data, back.data, 3);
    REQUIRE(fb);
    CHECK(fb->change == BasisChange{-1, 0, 0, -1});
    auto refl = reflected_equivalence(face.data, back.data, 3);
    REQUIRE(refl);
    CHECK(refl->change.det() == -1);

    CHECK_FALSE(data_equivalence(face.data, load("plainweave.cell").data, 3));
    CHECK_FALSE(data_equivalence(face.data, load("fishnet.cell").data, 3));
}

TEST_CASE("rib order does not matter") {
    auto r22 = load("rib_2x2.cell");
    auto r11x2 = from_kernel(cell_to_kernel(tile_cell(load_cell("rib_1x1.cell"), 2, 1)));
    CHECK(r22.delta == r11x2.delta);
    auto w = data_equivalence(r22.data, r11x2.data, 1);
    REQUIRE(w);
    CHECK(w->change == BasisChange{});
}

TEST_CASE("rendering") {
    auto face = load("jersey_face.cell");
    CHECK(render_grid(face.data) ==
          "-s^-1 + s^-3     s^-1 - s^-3\n"
          "-s^2 + 3 - s^-2  s^2 - 3 + s^-2\n"
          "s^3 - s          -s^3 + s\n");
    CHECK(render_triples(face.data) ==
          "(-1/2, -1, s^3 - s)\n(1/2, -1, -s^3 + s)\n(-1/2, 0, -s^2 + 3 - s^-2)\n(1/2, 0, s^2 - 3 + s^-2)\n"
          "(-1/2, 1, -s^-1 + s^-3)\n(1/2, 1, s^-1 - s^-3)\n");
    auto pm = load("plainweave_min.cell");
    CHECK(render_grid(pm.data, {2, 1, 0, 1}) ==
          "-1  .                                  1\n"
          ".   a*b - a*b^-1 - a^-1*b + a^-1*b^-1  .\n"
          "1   .                                  -1\n");
    auto tw = load("twill_min.cell");
    auto grid = render_grid(tw.data, {3, 1, 0, 1});
    std::vector<std::string> pattern;
    std::istringstream lines(grid);
    for (std::string l; std::getline(lines, l);) {
        std::string p;
        std::istringstream cells(l);
        for (std::string c; cells >> c;) p += c == "." ? '.' : 'x';
        pattern.push_back(p);
    }
    CHECK(pattern.size() == 4);
    CHECK(pattern[0] == "x..x");
    CHECK(pattern[3] == "x..x");
    CHECK(format_half(3) == "3/2");
    CHECK(format_half(-1) == "-1/2");
    CHECK(format_half(-4) == "-2");
    CHECK(render_grid(AlexanderData{LaurentPoly(face.data.registry()), true}) == "0\n");
}
