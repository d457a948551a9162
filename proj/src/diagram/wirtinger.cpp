#include "fabkit/diagram/wirtinger.hpp"

#include <numeric>

namespace fabkit {

Monomial GroupPresentation::abelianize(const Word& w) const {
    Monomial m(registry->size());
    for (const auto& l : w) m *= l.exp > 0 ? abelian.at(l.gen) : abelian.at(l.gen).inverse();
    return m;
}

std::vector<int> wirtinger_arcs(const PDCode& d) {
    std::vector<int> parent(d.edge_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (const auto& x : d.crossings()) {
        int a = find(x.over_in()), b = find(x.over_out());
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int> arc(d.edge_count(), -1), id(d.edge_count(), -1);
    int next = 0;
    for (std::size_t e = 0; e < d.edge_count(); ++e) {
        int r = find(static_cast<int>(e));
        if (id[r] < 0) id[r] = next++;
        arc[e] = id[r];
    }
    return arc;
}

GroupPresentation wirtinger(const Link& link) {
    const PDCode& d = link.pd;
    auto arc = wirtinger_arcs(d);
    int n = 0;
    for (int a : arc) n = std::max(n, a + 1);
    GroupPresentation g;
    g.registry = link.registry;
    g.abelian.assign(n, Monomial(link.registry->size()));
    for (std::size_t e = 0; e < d.edge_count(); ++e) {
        Monomial m(link.registry->size());
        m.set_twice(link.variable[d.component_of(static_cast<int>(e))], 2);
        g.abelian[arc[e]] = m;
    }
    for (const auto& x : d.crossings()) {
        int o = arc[x.over_in()], a = arc[x.under_in()], b = arc[x.under_out()];
        if (x.sign > 0)
            g.relators.push_back({{o, -1}, {a, 1}, {o, 1}, {b, -1}});
        else
            g.relators.push_back({{o, 1}, {a, 1}, {o, -1}, {b, -1}});
    }
    return g;
}

}  // namespace fabkit
