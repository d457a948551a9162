#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

#include "fabkit/alexander/alexander.hpp"
#include "fabkit/diagram/io.hpp"
#include "fabkit/error.hpp"
#include "fabkit/fabric/fabric.hpp"
#include "fabkit/ring/factor.hpp"
#include "fabkit/ring/ops.hpp"

namespace fabkit::cli {

namespace {

struct Loaded {
    std::string name;
    Kernel kernel;
    LaurentPoly delta;
    AxialProfile profile;
};

Loaded load(const std::string& path) {
    Loaded l{path, input_kernel(parse_input_file(path)), {}, {}};
    l.delta = multivariable_alexander(l.kernel);
    l.profile = axial_analysis(l.kernel, l.delta);
    return l;
}

const RenderOptions halves{true};

std::string yarn_names(const AxialProfile& prof) {
    std::string out;
    for (auto v : prof.yarn_variables()) out += (out.empty() ? "" : " ") + (*prof.registry)[v].name;
    return out.empty() ? "none" : out;
}

std::string monomial_text(const SignedMonomial& m, const VariableRegistry& reg) {
    std::string body = m.mono.is_one() ? "1" : to_string(m.mono, reg);
    return (m.sign < 0 ? "-" : "") + body;
}

std::string change_text(const BasisChange& c) {
    std::ostringstream os;
    os << "p=" << c.p << " q=" << c.q << " r=" << c.r << " s=" << c.s;
    return os.str();
}

void print_profile(std::ostream& out, const AxialProfile& prof) {
    for (const auto& y : prof.yarns)
        out << "axis: component " << y.component << " (" << (*prof.registry)[y.variable].name << ") a=" << y.a
            << " b=" << y.b << (y.closed() ? " closed" : "") << "\n";
    out << "axial: " << to_string(prof.axial_product()) << "\n";
}

void print_layers(std::ostream& out, const LaurentPoly& delta, const AxialProfile& prof) {
    if (prof.has_closed()) {
        out << "layers: undefined (closed components)\n";
        return;
    }
    LayerBound lb;
    try {
        lb = layer_bound(delta, prof);
    } catch (const FactorLimit& e) {
        out << "layers: not computed (" << e.what() << ")\n";
        return;
    }
    out << "layers: " << lb.bound << "\n";
    for (std::size_t i = 0; i < lb.factors.factors.size(); ++i) {
        const auto& [f, m] = lb.factors.factors[i];
        out << "factor: (" << to_string(f) << ")^" << m << (lb.surviving[i] ? " surviving" : "") << "\n";
    }
}

void analyze(std::ostream& out, const Loaded& l) {
    const int r = static_cast<int>(l.kernel.component_count());
    out << "file: " << l.name << "\n";
    out << "components: " << r << "\n";
    out << "yarns: " << yarn_names(l.profile) << "\n";
    out << "delta: " << to_string(canonical(l.delta)) << "\n";
    out << "torres: " << (l.delta.is_zero() ? "0" : to_string(torres_normalize(l.delta, r), halves)) << "\n";
    print_profile(out, l.profile);
    out << "closed: " << (l.profile.has_closed() ? "yes" : "no") << "\n";
    auto st = strip_test(l.delta, l.profile);
    out << "strip: " << (st.strip ? "yes" : "no") << " (" << st.diagnostic << ")\n";
    print_layers(out, l.delta, l.profile);
}

DisplayMap display_map(const std::vector<int>& v) {
    if (v.empty()) return {};
    if (v[0] * v[3] - v[1] * v[2] == 0) throw ValidationError("display map must be invertible");
    return {v[0], v[1], v[2], v[3]};
}

int code_for(const Error& e) {
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e) ||
        dynamic_cast<const MultipleYarns*>(&e))
        return BadInput;
    return BadKernel;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Alexander invariants of fabric kernels", "fabkit"};
    app.require_subcommand(1);

    std::vector<std::string> files;
    auto* a = app.add_subcommand("analyze", "Polynomial, axial profile, closed, strip and layer findings");
    a->add_option("files", files, "Cell or braid files ('-' for stdin)")->required();

    std::string file, other;
    bool triples = false, raw = false;
    std::vector<int> map;
    auto* d = app.add_subcommand("data", "Alexander data matrix");
    d->add_option("file", file)->required();
    d->add_flag("--triples", triples, "One (alpha, beta, entry) line per entry");
    d->add_flag("--raw", raw, "Skip the Torres centring");
    d->add_option("--map", map, "Display map m11,m12,m21,m22")->expected(4)->delimiter(',');

    int ru = 0, rv = 0;
    auto* c = app.add_subcommand("cover", "Cover of the cell repeated r times along u or v");
    c->add_option("file", file)->required();
    auto* ou = c->add_option("--u", ru, "Repeats along u")->check(CLI::PositiveNumber);
    auto* ov = c->add_option("--v", rv, "Repeats along v")->check(CLI::PositiveNumber);
    ou->excludes(ov);

    int degree = 1;
    auto* v = app.add_subcommand("vassiliev", "Coefficients of the expansion in h with t = e^h");
    v->add_option("file", file)->required();
    v->add_option("--degree", degree, "Highest coefficient")->check(CLI::NonNegativeNumber);

    auto* g = app.add_subcommand("glue", "Layer B placed behind layer A");
    g->add_option("a", file)->required();
    g->add_option("b", other)->required();

    int bound = 3;
    auto* m = app.add_subcommand("compare", "Search for a change of cell relating two fabrics");
    m->add_option("a", file)->required();
    m->add_option("b", other)->required();
    m->add_option("--bound", bound, "Largest basis entry")->check(CLI::NonNegativeNumber);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? Ok : BadInput;
    }

    try {
        if (*a) {
            for (std::size_t i = 0; i < files.size(); ++i) {
                if (i) out << "\n";
                analyze(out, load(files[i]));
            }
        } else if (*d) {
            auto l = load(file);
            auto data = to_data_form(l.delta, l.profile, !raw);
            out << (triples ? render_triples(data) : render_grid(data, display_map(map)));
        } else if (*c) {
            if (ru == 0 && rv == 0) {
                err << "cover needs --u or --v\n";
                return BadInput;
            }
            auto l = load(file);
            const bool along_u = ru > 0;
            const int r = along_u ? ru : rv;
            out << "W = " << (along_u ? "U" : "V") << "^" << r << "\n";
            out << to_string(salkeld_cover(l.delta, l.profile, along_u ? Direction::U : Direction::V, r)) << "\n";
        } else if (*v) {
            auto l = load(file);
            auto s = vassiliev_coeffs(l.delta, l.profile, degree);
            for (int i = 0; i <= s.degree(); ++i) out << "a_" << i << " = " << to_string(s.coeffs[i]) << "\n";
        } else if (*g) {
            auto la = load(file), lb = load(other);
            auto glued = fox_glue(la.delta, la.profile, lb.delta, lb.profile);
            out << "yarns: " << yarn_names(glued.profile) << "\n";
            out << "delta: " << to_string(canonical(glued.delta)) << "\n";
            print_profile(out, glued.profile);
            print_layers(out, glued.delta, glued.profile);
        } else if (*m) {
            auto la = load(file), lb = load(other);
            auto da = to_data_form(la.delta, la.profile), db = to_data_form(lb.delta, lb.profile);
            auto w = data_equivalence(da, db, bound);
            if (w) {
                out << "witness: " << change_text(w->change) << "\n";
                out << "translation: (" << format_half(w->translation.first) << ", "
                    << format_half(w->translation.second) << ")\n";
                out << "unit: " << monomial_text(w->unit, *da.registry()) << "\n";
                return Ok;
            }
            out << "witness: none with entries bounded by " << bound << "\n";
            auto rw = reflected_equivalence(da, db, bound);
            if (rw)
                out << "reflected: " << change_text(rw->change) << (rw->inverted_yarns ? " with yarns inverted" : "")
                    << "\n";
            else
                out << "reflected: none\n";
            return NoWitness;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return code_for(e);
    }
    return Ok;
}

}  // namespace fabkit::cli
