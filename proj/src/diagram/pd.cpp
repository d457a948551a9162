#include "fabkit/diagram/pd.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "fabkit/error.hpp"

namespace fabkit {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

PDCode::PDCode(std::vector<Crossing> crossings, std::vector<int> edge_component, std::vector<std::string> component_names)
    : crossings_(std::move(crossings)), edge_component_(std::move(edge_component)), names_(std::move(component_names)) {
    validate();
}

void PDCode::validate() const {
    const int ne = static_cast<int>(edge_component_.size());
    std::vector<int> ins(ne, 0), outs(ne, 0);
    for (const auto& c : crossings_) {
        if (c.sign != 1 && c.sign != -1) throw ValidationError("crossing sign must be +1 or -1");
        for (int e : c.e)
            if (e < 0 || e >= ne) throw ValidationError("crossing refers to unknown edge " + std::to_string(e));
        ++ins[c.under_in()];
        ++ins[c.over_in()];
        ++outs[c.under_out()];
        ++outs[c.over_out()];
        if (edge_component_[c.under_in()] != edge_component_[c.under_out()] ||
            edge_component_[c.over_in()] != edge_component_[c.over_out()])
            throw ValidationError("strand changes component at a crossing");
    }
    std::vector<int> comp_edges(names_.size(), 0), comp_free(names_.size(), 0);
    for (int e = 0; e < ne; ++e) {
        int comp = edge_component_[e];
        if (comp < 0 || comp >= static_cast<int>(names_.size()))
            throw ValidationError("edge " + std::to_string(e) + " has no component");
        ++comp_edges[comp];
        if (ins[e] == 0 && outs[e] == 0)
            ++comp_free[comp];
        else if (ins[e] != 1 || outs[e] != 1)
            throw ValidationError("edge " + std::to_string(e) + " must have exactly one head and one tail");
    }
    for (std::size_t k = 0; k < names_.size(); ++k) {
        if (comp_edges[k] == 0) throw ValidationError("component " + names_[k] + " has no edges");
        if (comp_free[k] && comp_edges[k] != 1)
            throw ValidationError("component " + names_[k] + " mixes a free loop with crossings");
    }
    for (std::size_t k = 0; k < names_.size(); ++k) {
        auto cyc = component_edges(static_cast<int>(k));
        if (static_cast<int>(cyc.size()) != comp_edges[k])
            throw ValidationError("component " + names_[k] + " is not a single closed cycle");
    }
}

int PDCode::component_index(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw ValidationError("no component named " + name);
    return static_cast<int>(it - names_.begin());
}

std::vector<int> PDCode::component_edges(int comp) const {
    const int ne = static_cast<int>(edge_component_.size());
    std::vector<int> next(ne, -1);
    for (const auto& c : crossings_) {
        next[c.under_in()] = c.under_out();
        next[c.over_in()] = c.over_out();
    }
    int start = -1;
    for (int e = 0; e < ne; ++e)
        if (edge_component_[e] == comp) {
            start = e;
            break;
        }
    std::vector<int> out;
    if (start < 0) return out;
    int e = start;
    do {
        out.push_back(e);
        e = next[e];
        if (static_cast<int>(out.size()) > ne) break;
    } while (e >= 0 && e != start);
    return out;
}

LinkingMatrix linking_matrix(const PDCode& d) {
    const std::size_t n = d.component_count();
    LinkingMatrix twice(n, std::vector<int>(n, 0));
    for (const auto& c : d.crossings()) {
        int i = d.component_of(c.over_in()), j = d.component_of(c.under_in());
        if (i == j) continue;
        twice[i][j] += c.sign;
        twice[j][i] += c.sign;
    }
    for (auto& row : twice)
        for (int& v : row) {
            if (v % 2) throw ValidationError("odd signed crossing count between two components");
            v /= 2;
        }
    return twice;
}

PDCode delete_component(const PDCode& d, int c) {
    if (c < 0 || c >= static_cast<int>(d.component_count())) throw ValidationError("no such component");
    UnionFind uf(d.edge_count());
    std::vector<const Crossing*> kept;
    for (const auto& x : d.crossings()) {
        bool over = d.component_of(x.over_in()) == c, under = d.component_of(x.under_in()) == c;
        if (over && under) continue;
        if (over)
            uf.unite(x.under_in(), x.under_out());
        else if (under)
            uf.unite(x.over_in(), x.over_out());
        else
            kept.push_back(&x);
    }
    std::map<int, int> edge_id;
    std::vector<int> comp;
    std::vector<int> comp_map(d.component_count(), -1);
    std::vector<std::string> names;
    for (std::size_t k = 0, j = 0; k < d.component_count(); ++k)
        if (static_cast<int>(k) != c) {
            comp_map[k] = static_cast<int>(j++);
            names.push_back(d.component_names()[k]);
        }
    for (int e = 0; e < static_cast<int>(d.edge_count()); ++e) {
        if (d.component_of(e) == c) continue;
        int root = uf.find(e);
        if (edge_id.count(root)) continue;
        edge_id[root] = static_cast<int>(comp.size());
        comp.push_back(comp_map[d.component_of(e)]);
    }
    std::vector<Crossing> xs;
    for (const Crossing* x : kept) {
        Crossing y = *x;
        for (int& e : y.e) e = edge_id.at(uf.find(e));
        xs.push_back(y);
    }
    return PDCode(std::move(xs), std::move(comp), std::move(names));
}

bool is_planar(const PDCode& d) {
    const auto& xs = d.crossings();
    const int v = static_cast<int>(xs.size());
    if (v == 0) return true;
    // dart = 4 * crossing + slot
    std::vector<std::vector<int>> ends(d.edge_count());
    for (int c = 0; c < v; ++c)
        for (int s = 0; s < 4; ++s) ends[xs[c].e[s]].push_back(4 * c + s);
    std::vector<int> other(4 * v);
    UnionFind pieces(v);
    for (const auto& ds : ends) {
        if (ds.empty()) continue;
        other[ds[0]] = ds[1];
        other[ds[1]] = ds[0];
        pieces.unite(ds[0] / 4, ds[1] / 4);
    }
    std::vector<char> seen(4 * v, 0);
    int faces = 0;
    for (int start = 0; start < 4 * v; ++start) {
        if (seen[start]) continue;
        ++faces;
        int dart = start;
        while (!seen[dart]) {
            seen[dart] = 1;
            int o = other[dart];
            dart = 4 * (o / 4) + (o % 4 + 1) % 4;
        }
    }
    int npieces = 0;
    for (int c = 0; c < v; ++c)
        if (pieces.find(c) == c) ++npieces;
    return faces == v + 2 * npieces;
}

}  // namespace fabkit
