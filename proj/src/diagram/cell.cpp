#include "fabkit/diagram/cell.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "fabkit/diagram/braid.hpp"
#include "fabkit/error.hpp"

namespace fabkit {

char side_letter(Side s) {
    switch (s) {
        case Side::Left: return 'L';
        case Side::Right: return 'R';
        case Side::Top: return 'T';
        case Side::Bottom: return 'B';
    }
    return '?';
}

int CellDiagram::port_count(Side s) const {
    return static_cast<int>(std::count_if(ports.begin(), ports.end(), [s](const Port& p) { return p.side == s; }));
}

namespace {

Side opposite(Side s) {
    switch (s) {
        case Side::Left: return Side::Right;
        case Side::Right: return Side::Left;
        case Side::Top: return Side::Bottom;
        case Side::Bottom: return Side::Top;
    }
    return s;
}

// ports[side][index]
std::map<Side, std::vector<const Port*>> ports_by_side(const CellDiagram& c) {
    std::map<Side, std::vector<const Port*>> out;
    for (Side s : {Side::Left, Side::Right, Side::Top, Side::Bottom}) out[s].assign(c.port_count(s), nullptr);
    for (const auto& p : c.ports) {
        auto& v = out[p.side];
        if (p.index < 0 || p.index >= static_cast<int>(v.size()) || v[p.index])
            throw InvalidCell(std::string("edge indices on side ") + side_letter(p.side) + " must be 0..n-1, each once");
        v[p.index] = &p;
    }
    return out;
}

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

void validate_cell(const CellDiagram& c) {
    std::set<std::string> names;
    for (const auto& y : c.yarns) {
        if (y.empty() || y == "X" || y == "Y" || y == "x" || y == "y" || y.find('#') != std::string::npos)
            throw InvalidCell("invalid yarn name '" + y + "'");
        if (!names.insert(y).second) throw InvalidCell("yarn " + y + " declared twice");
    }
    if (c.halves.size() != c.yarns.size()) throw InvalidCell("half symbols do not match the yarn list");
    const int na = static_cast<int>(c.arc_count());
    if (static_cast<int>(c.arc_yarn.size()) != na) throw InvalidCell("every arc needs a yarn");
    std::set<std::string> labels(c.arc_labels.begin(), c.arc_labels.end());
    if (static_cast<int>(labels.size()) != na) throw InvalidCell("arc labels must be unique");
    std::vector<int> owned(c.yarns.size(), 0);
    for (int y : c.arc_yarn) {
        if (y < 0 || y >= static_cast<int>(c.yarns.size())) throw InvalidCell("arc on an undeclared yarn");
        ++owned[y];
    }
    for (std::size_t y = 0; y < c.yarns.size(); ++y)
        if (!owned[y]) throw InvalidCell("yarn " + c.yarns[y] + " has no arcs");

    std::vector<int> heads(na, 0), tails(na, 0);
    auto arc_ok = [&](int a) {
        if (a < 0 || a >= na) throw InvalidCell("reference to an unknown arc");
    };
    for (const auto& x : c.crossings) {
        if (x.sign != 1 && x.sign != -1) throw InvalidCell("crossing sign must be +1 or -1");
        for (int a : x.e) arc_ok(a);
        ++heads[x.under_in()];
        ++heads[x.over_in()];
        ++tails[x.under_out()];
        ++tails[x.over_out()];
        if (c.arc_yarn[x.under_in()] != c.arc_yarn[x.under_out()] || c.arc_yarn[x.over_in()] != c.arc_yarn[x.over_out()])
            throw InvalidCell("a strand changes yarn at a crossing");
    }
    for (const auto& p : c.ports) {
        arc_ok(p.arc);
        ++(p.out ? heads : tails)[p.arc];
    }
    for (int a = 0; a < na; ++a)
        if (heads[a] != 1 || tails[a] != 1)
            throw InvalidCell("arc " + c.arc_labels[a] + " must have exactly one start and one end");

    auto by_side = ports_by_side(c);
    for (Side s : {Side::Right, Side::Top}) {
        const auto& mine = by_side[s];
        const auto& theirs = by_side[opposite(s)];
        if (mine.size() != theirs.size())
            throw InvalidCell(std::string("sides ") + side_letter(s) + " and " + side_letter(opposite(s)) +
                              " have different endpoint counts");
        for (std::size_t k = 0; k < mine.size(); ++k) {
            if (mine[k]->out == theirs[k]->out)
                throw InvalidCell(std::string("matched endpoints ") + side_letter(s) + std::to_string(k) +
                                  " have incompatible directions");
            if (c.arc_yarn[mine[k]->arc] != c.arc_yarn[theirs[k]->arc])
                throw InvalidCell(std::string("matched endpoints ") + side_letter(s) + std::to_string(k) +
                                  " belong to different yarns");
        }
    }
}

std::vector<CellStrand> cell_strands(const CellDiagram& c) {
    validate_cell(c);
    const int na = static_cast<int>(c.arc_count());
    auto by_side = ports_by_side(c);
    std::vector<int> next(na, -1), da(na, 0), db(na, 0);
    for (const auto& x : c.crossings) {
        next[x.under_in()] = x.under_out();
        next[x.over_in()] = x.over_out();
    }
    for (const auto& p : c.ports) {
        if (!p.out) continue;
        next[p.arc] = by_side[opposite(p.side)][p.index]->arc;
        if (p.side == Side::Right) db[p.arc] = 1;
        if (p.side == Side::Left) db[p.arc] = -1;
        if (p.side == Side::Top) da[p.arc] = 1;
        if (p.side == Side::Bottom) da[p.arc] = -1;
    }
    std::vector<char> seen(na, 0);
    std::vector<CellStrand> out;
    for (int s = 0; s < na; ++s) {
        if (seen[s]) continue;
        CellStrand st;
        st.yarn = c.arc_yarn[s];
        for (int a = s; !seen[a]; a = next[a]) {
            seen[a] = 1;
            st.arcs.push_back(a);
            st.a += da[a];
            st.b += db[a];
        }
        out.push_back(std::move(st));
    }
    return out;
}

namespace {

// Closure geometry: axis-parallel polylines around the unit square with a
// height for every segment; the higher segment passes over.
struct Seg {
    double x0, y0, x1, y1, z;
};

struct Path {
    std::vector<Seg> segs;
    bool closed = false;
    int comp = 0;
    int first_arc = -1;  // open paths: arc leaving the cell at the start
    int last_arc = -1;   // open paths: arc entering the cell at the end
};

Path polyline(const std::vector<std::pair<double, double>>& pts, const std::vector<double>& z, bool closed) {
    Path p;
    p.closed = closed;
    std::size_t n = closed ? pts.size() : pts.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
        auto a = pts[i], b = pts[(i + 1) % pts.size()];
        p.segs.push_back({a.first, a.second, b.first, b.second, z[i]});
    }
    return p;
}

Path reversed(Path p) {
    std::reverse(p.segs.begin(), p.segs.end());
    for (auto& s : p.segs) {
        std::swap(s.x0, s.x1);
        std::swap(s.y0, s.y1);
    }
    return p;
}

struct Event {
    int seg;
    double t;
    int crossing;
    bool over;
};

int sgn(double v) { return (v > 0) - (v < 0); }

}  // namespace

Kernel cell_to_kernel(const CellDiagram& c) {
    auto strands = cell_strands(c);
    auto by_side = ports_by_side(c);
    const int na = static_cast<int>(c.arc_count());
    std::vector<int> arc_comp(na);
    for (std::size_t s = 0; s < strands.size(); ++s)
        for (int a : strands[s].arcs) arc_comp[a] = static_cast<int>(s) + 2;

    const int K = c.port_count(Side::Left), J = c.port_count(Side::Bottom);
    std::vector<Path> paths;
    // u-closures: Right_k around the bottom of the square to Left_k, nested
    // outward with k, behind everything.
    for (int k = 0; k < K; ++k) {
        double p = (k + 1.0) / (K + 1.0), e = 0.1 * (k + 1);
        Path path = polyline({{1, p}, {1 + e, p}, {1 + e, -e}, {-e, -e}, {-e, p}, {0, p}}, {-1, -1, -1, -1, -1}, false);
        const Port* r = by_side[Side::Right][k];
        const Port* l = by_side[Side::Left][k];
        if (!r->out) path = reversed(path);
        path.first_arc = r->out ? r->arc : l->arc;
        path.last_arc = r->out ? l->arc : r->arc;
        path.comp = arc_comp[r->arc];
        paths.push_back(path);
    }
    // v-closures: Top_j over the top, down the far left, along the very
    // bottom to Bottom_j, nested outward with j, in front of everything.
    const double reach = 0.1 * K + 0.3;
    for (int j = 0; j < J; ++j) {
        double q = (j + 1.0) / (J + 1.0), f = 0.1 * (j + 1), g = reach + 0.1 * j;
        Path path = polyline({{q, 1}, {q, 1 + f}, {-g, 1 + f}, {-g, -g}, {q, -g}, {q, 0}}, {1, 1, 1, 1, 1}, false);
        const Port* t = by_side[Side::Top][j];
        const Port* b = by_side[Side::Bottom][j];
        if (!t->out) path = reversed(path);
        path.first_arc = t->out ? t->arc : b->arc;
        path.last_arc = t->out ? b->arc : t->arc;
        path.comp = arc_comp[t->arc];
        paths.push_back(path);
    }
    // Y rings the u-closures just left of the square, X rings the
    // v-closures further left; the two rings overlap in one corner.
    const double c1 = -(0.1 * K + 0.1), c2 = -(0.1 * K + 0.05), xl = -(reach + 0.1 * J + 0.1);
    Path y = polyline({{c1, -0.07}, {c1, -0.03}, {-0.02, -0.03}, {-0.02, -0.07}}, {-0.5, 0, 0, -2}, true);
    y.comp = 1;
    Path x = polyline({{xl, -0.05}, {c2, -0.05}, {c2, -0.01}, {xl, -0.01}}, {0, -0.5, 2, 0}, true);
    x.comp = 0;
    paths.push_back(y);
    paths.push_back(x);

    struct Geo {
        int over_path, under_path;
        int over_dx, over_dy, under_dx, under_dy;
    };
    std::vector<std::vector<Event>> events(paths.size());
    std::vector<Geo> geo;
    for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t j = i + 1; j < paths.size(); ++j)
            for (std::size_t si = 0; si < paths[i].segs.size(); ++si)
                for (std::size_t sj = 0; sj < paths[j].segs.size(); ++sj) {
                    const Seg& a = paths[i].segs[si];
                    const Seg& b = paths[j].segs[sj];
                    bool ah = a.y0 == a.y1, bh = b.y0 == b.y1;
                    if (ah == bh) continue;
                    const Seg& h = ah ? a : b;
                    const Seg& v = ah ? b : a;
                    double px = v.x0, py = h.y0;
                    if (px <= std::min(h.x0, h.x1) || px >= std::max(h.x0, h.x1)) continue;
                    if (py <= std::min(v.y0, v.y1) || py >= std::max(v.y0, v.y1)) continue;
                    if (a.z == b.z) throw std::logic_error("closure segments at equal height cross");
                    double ta = ah ? (px - a.x0) / (a.x1 - a.x0) : (py - a.y0) / (a.y1 - a.y0);
                    double tb = bh ? (px - b.x0) / (b.x1 - b.x0) : (py - b.y0) / (b.y1 - b.y0);
                    bool a_over = a.z > b.z;
                    const Seg& o = a_over ? a : b;
                    const Seg& u = a_over ? b : a;
                    int id = static_cast<int>(geo.size());
                    geo.push_back({static_cast<int>(a_over ? i : j), static_cast<int>(a_over ? j : i), sgn(o.x1 - o.x0),
                                   sgn(o.y1 - o.y0), sgn(u.x1 - u.x0), sgn(u.y1 - u.y0)});
                    events[i].push_back({static_cast<int>(si), ta, id, a_over});
                    events[j].push_back({static_cast<int>(sj), tb, id, !a_over});
                }

    std::vector<int> edge_comp(na);
    for (int a = 0; a < na; ++a) edge_comp[a] = arc_comp[a];
    // in/out edge of each closure crossing for its over and under strand
    std::vector<std::array<int, 4>> ends(geo.size());  // over_in, over_out, under_in, under_out
    for (std::size_t pi = 0; pi < paths.size(); ++pi) {
        auto& ev = events[pi];
        std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) {
            return a.seg != b.seg ? a.seg < b.seg : a.t < b.t;
        });
        const Path& path = paths[pi];
        const int m = static_cast<int>(ev.size());
        if (m == 0) throw std::logic_error("closure path without crossings");
        std::vector<int> piece(path.closed ? m : m + 1);
        for (std::size_t k = 0; k < piece.size(); ++k) {
            if (!path.closed && k == 0)
                piece[k] = path.first_arc;
            else if (!path.closed && static_cast<int>(k) == m)
                piece[k] = path.last_arc;
            else {
                piece[k] = static_cast<int>(edge_comp.size());
                edge_comp.push_back(path.comp);
            }
        }
        for (int k = 0; k < m; ++k) {
            int in = piece[k], out = piece[path.closed ? (k + 1) % m : k + 1];
            auto& e = ends[ev[k].crossing];
            if (ev[k].over) {
                e[0] = in;
                e[1] = out;
            } else {
                e[2] = in;
                e[3] = out;
            }
        }
    }

    std::vector<Crossing> xs = c.crossings;
    for (std::size_t g = 0; g < geo.size(); ++g) {
        const auto& q = geo[g];
        const auto& e = ends[g];
        int sign = sgn(q.over_dx * q.under_dy - q.over_dy * q.under_dx);
        if (sign > 0)
            xs.push_back({{e[2], e[1], e[3], e[0]}, 1});
        else
            xs.push_back({{e[2], e[0], e[3], e[1]}, -1});
    }

    std::vector<std::string> labels = {"X", "Y"};
    for (const auto& s : strands) labels.push_back(c.yarns[s.yarn]);
    auto names = unique_component_names(labels);
    PDCode pd(std::move(xs), std::move(edge_comp), std::move(names));
    if (!is_planar(pd)) throw InvalidCell("cell crossings do not form a planar tangle");
    Registry reg = kernel_registry(c.yarns, c.halves);
    return make_kernel(make_link(std::move(pd), reg));
}

CellDiagram tile_cell(const CellDiagram& c, int ru, int rv) {
    if (ru < 1 || rv < 1) throw ValidationError("tiling factors must be positive");
    validate_cell(c);
    if (ru == 1 && rv == 1) return c;
    const int na = static_cast<int>(c.arc_count());
    const int copies = ru * rv;
    auto id = [&](int i, int j, int arc) { return (i + j * ru) * na + arc; };
    auto by_side = ports_by_side(c);
    UnionFind uf(static_cast<std::size_t>(copies) * na);
    for (int j = 0; j < rv; ++j)
        for (int i = 0; i < ru; ++i) {
            if (i + 1 < ru)
                for (std::size_t k = 0; k < by_side[Side::Right].size(); ++k)
                    uf.unite(id(i, j, by_side[Side::Right][k]->arc), id(i + 1, j, by_side[Side::Left][k]->arc));
            if (j + 1 < rv)
                for (std::size_t k = 0; k < by_side[Side::Top].size(); ++k)
                    uf.unite(id(i, j, by_side[Side::Top][k]->arc), id(i, j + 1, by_side[Side::Bottom][k]->arc));
        }
    CellDiagram out;
    out.yarns = c.yarns;
    out.halves = c.halves;
    std::vector<int> remap(static_cast<std::size_t>(copies) * na, -1);
    for (int g = 0; g < copies * na; ++g) {
        int root = uf.find(g);
        if (remap[root] < 0) {
            remap[root] = static_cast<int>(out.arc_labels.size());
            out.arc_labels.push_back(std::to_string(remap[root]));
            out.arc_yarn.push_back(c.arc_yarn[g % na]);
        }
        remap[g] = remap[root];
    }
    for (int j = 0; j < rv; ++j)
        for (int i = 0; i < ru; ++i)
            for (const auto& x : c.crossings) {
                Crossing y = x;
                for (int& a : y.e) a = remap[id(i, j, a)];
                out.crossings.push_back(y);
            }
    const int kl = static_cast<int>(by_side[Side::Left].size()), kb = static_cast<int>(by_side[Side::Bottom].size());
    for (int j = 0; j < rv; ++j)
        for (const auto& p : c.ports) {
            if (p.side == Side::Left) out.ports.push_back({p.side, j * kl + p.index, remap[id(0, j, p.arc)], p.out});
            if (p.side == Side::Right)
                out.ports.push_back({p.side, j * kl + p.index, remap[id(ru - 1, j, p.arc)], p.out});
        }
    for (int i = 0; i < ru; ++i)
        for (const auto& p : c.ports) {
            if (p.side == Side::Bottom) out.ports.push_back({p.side, i * kb + p.index, remap[id(i, 0, p.arc)], p.out});
            if (p.side == Side::Top) out.ports.push_back({p.side, i * kb + p.index, remap[id(i, rv - 1, p.arc)], p.out});
        }
    validate_cell(out);
    return out;
}

}  // namespace fabkit
