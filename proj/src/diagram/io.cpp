#include "fabkit/diagram/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fabkit/error.hpp"

namespace fabkit {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
    std::vector<Line> out;
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
        ++n;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ss(raw);
        Line l{n, {}};
        for (std::string t; ss >> t;) l.tokens.push_back(t);
        if (!l.tokens.empty()) out.push_back(std::move(l));
    }
    return out;
}

int to_int(const Line& l, const std::string& s) {
    int v = 0;
    const char* b = s.data();
    if (!s.empty() && s[0] == '+') ++b;
    auto [p, ec] = std::from_chars(b, s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(l.number, "expected an integer, got '" + s + "'");
    return v;
}

void expect_header(const std::vector<Line>& lines, const std::string& magic) {
    if (lines.empty() || lines[0].tokens[0] != magic)
        throw ParseError(lines.empty() ? 1 : lines[0].number, "missing '" + magic + " 1' header");
    if (lines[0].tokens.size() != 2 || lines[0].tokens[1] != "1")
        throw ParseError(lines[0].number, "unsupported " + magic + " version");
}

void arity(const Line& l, std::size_t lo, std::size_t hi) {
    if (l.tokens.size() < lo || l.tokens.size() > hi)
        throw ParseError(l.number, "wrong number of fields for '" + l.tokens[0] + "'");
}

Side parse_side(const Line& l, const std::string& s) {
    if (s == "L") return Side::Left;
    if (s == "R") return Side::Right;
    if (s == "T") return Side::Top;
    if (s == "B") return Side::Bottom;
    throw ParseError(l.number, "side must be L, R, T or B");
}

CellDiagram parse_cell_lines(const std::vector<Line>& lines) {
    expect_header(lines, "fabcell");
    CellDiagram c;
    std::map<std::string, int> arc_index;
    std::map<std::string, int> claimed;  // arc label -> yarn
    std::vector<std::size_t> arc_line;
    auto arc = [&](const Line& l, const std::string& label) {
        auto [it, fresh] = arc_index.try_emplace(label, static_cast<int>(c.arc_labels.size()));
        if (fresh) {
            c.arc_labels.push_back(label);
            arc_line.push_back(l.number);
        }
        return it->second;
    };
    std::map<std::string, std::string> halves;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        const std::string& kw = l.tokens[0];
        if (kw == "yarn") {
            arity(l, 2, static_cast<std::size_t>(-1));
            const std::string& name = l.tokens[1];
            auto pos = std::find(c.yarns.begin(), c.yarns.end(), name);
            int y = static_cast<int>(pos - c.yarns.begin());
            if (pos == c.yarns.end()) c.yarns.push_back(name);
            for (std::size_t t = 2; t < l.tokens.size(); ++t) {
                arc(l, l.tokens[t]);
                if (!claimed.try_emplace(l.tokens[t], y).second)
                    throw ParseError(l.number, "arc " + l.tokens[t] + " assigned to two yarns");
            }
        } else if (kw == "half") {
            arity(l, 3, 3);
            halves[l.tokens[1]] = l.tokens[2];
        } else if (kw == "cross") {
            arity(l, 6, 6);
            Crossing x;
            x.sign = to_int(l, l.tokens[1]);
            if (x.sign != 1 && x.sign != -1) throw ParseError(l.number, "crossing sign must be +1 or -1");
            for (int s = 0; s < 4; ++s) x.e[s] = arc(l, l.tokens[2 + s]);
            c.crossings.push_back(x);
        } else if (kw == "edge") {
            arity(l, 5, 5);
            Port p;
            p.side = parse_side(l, l.tokens[1]);
            p.index = to_int(l, l.tokens[2]);
            p.arc = arc(l, l.tokens[3]);
            if (l.tokens[4] == "in")
                p.out = false;
            else if (l.tokens[4] == "out")
                p.out = true;
            else
                throw ParseError(l.number, "edge direction must be 'in' or 'out'");
            c.ports.push_back(p);
        } else {
            throw ParseError(l.number, "unknown keyword '" + kw + "'");
        }
    }
    for (const auto& [name, sym] : halves)
        if (std::find(c.yarns.begin(), c.yarns.end(), name) == c.yarns.end())
            throw ValidationError("half symbol for undeclared yarn " + name);
    for (const auto& y : c.yarns) c.halves.push_back(halves.count(y) ? halves[y] : "");
    c.arc_yarn.assign(c.arc_labels.size(), -1);
    for (std::size_t a = 0; a < c.arc_labels.size(); ++a) {
        auto it = claimed.find(c.arc_labels[a]);
        if (it != claimed.end())
            c.arc_yarn[a] = it->second;
        else if (c.yarns.size() == 1)
            c.arc_yarn[a] = 0;
        else
            throw ValidationError("arc " + c.arc_labels[a] + " (line " + std::to_string(arc_line[a]) +
                                  ") belongs to no yarn");
    }
    // Canonical arc order: grouped by yarn, then by first appearance.
    std::vector<int> order(c.arc_labels.size());
    for (std::size_t a = 0; a < order.size(); ++a) order[a] = static_cast<int>(a);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return c.arc_yarn[a] < c.arc_yarn[b]; });
    std::vector<int> where(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) where[order[k]] = static_cast<int>(k);
    CellDiagram s = c;
    for (std::size_t k = 0; k < order.size(); ++k) {
        s.arc_labels[k] = c.arc_labels[order[k]];
        s.arc_yarn[k] = c.arc_yarn[order[k]];
    }
    for (auto& x : s.crossings)
        for (int& e : x.e) e = where[e];
    for (auto& p : s.ports) p.arc = where[p.arc];
    try {
        validate_cell(s);
    } catch (const InvalidCell& e) {
        throw ValidationError(e.what());
    }
    return s;
}

BraidFile parse_braid_lines(const std::vector<Line>& lines) {
    expect_header(lines, "fabbraid");
    BraidFile f;
    bool have_width = false;
    std::map<int, std::string> labels;
    std::size_t last = lines[0].number;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        last = l.number;
        const std::string& kw = l.tokens[0];
        if (kw == "width") {
            arity(l, 2, 2);
            f.braid.width = to_int(l, l.tokens[1]);
            if (f.braid.width < 1) throw ParseError(l.number, "width must be positive");
            have_width = true;
        } else if (kw == "word") {
            for (std::size_t t = 1; t < l.tokens.size(); ++t) f.braid.letters.push_back(to_int(l, l.tokens[t]));
        } else if (kw == "component") {
            arity(l, 3, 3);
            int idx = to_int(l, l.tokens[2]);
            if (!labels.try_emplace(idx, l.tokens[1]).second)
                throw ParseError(l.number, "closure cycle " + l.tokens[2] + " labelled twice");
        } else if (kw == "half") {
            arity(l, 3, 3);
            f.halves[l.tokens[1]] = l.tokens[2];
        } else {
            throw ParseError(l.number, "unknown keyword '" + kw + "'");
        }
    }
    if (!have_width) throw ParseError(last, "missing width");
    std::vector<std::vector<int>> cycles;
    try {
        cycles = closure_cycles(f.braid.width, f.braid.letters);
    } catch (const ValidationError& e) {
        throw ParseError(last, e.what());
    }
    for (std::size_t k = 0; k < cycles.size(); ++k) {
        auto it = labels.find(static_cast<int>(k));
        if (it == labels.end()) throw ValidationError("closure cycle " + std::to_string(k) + " has no component label");
        f.braid.labels.push_back(it->second);
    }
    if (labels.size() != cycles.size()) throw ValidationError("component label for a nonexistent closure cycle");
    return f;
}

}  // namespace

CellDiagram parse_cell(std::istream& in) { return parse_cell_lines(tokenize(in)); }

std::string serialize_cell(const CellDiagram& c) {
    std::ostringstream os;
    os << "fabcell 1\n";
    for (std::size_t y = 0; y < c.yarns.size(); ++y) {
        os << "yarn " << c.yarns[y];
        for (std::size_t a = 0; a < c.arc_count(); ++a)
            if (c.arc_yarn[a] == static_cast<int>(y)) os << ' ' << c.arc_labels[a];
        os << '\n';
    }
    for (std::size_t y = 0; y < c.yarns.size(); ++y)
        if (!c.halves[y].empty()) os << "half " << c.yarns[y] << ' ' << c.halves[y] << '\n';
    for (const auto& x : c.crossings) {
        os << "cross " << (x.sign > 0 ? "+1" : "-1");
        for (int e : x.e) os << ' ' << c.arc_labels[e];
        os << '\n';
    }
    for (const auto& p : c.ports)
        os << "edge " << side_letter(p.side) << ' ' << p.index << ' ' << c.arc_labels[p.arc] << ' '
           << (p.out ? "out" : "in") << '\n';
    return os.str();
}

BraidFile parse_braid(std::istream& in) { return parse_braid_lines(tokenize(in)); }

std::string serialize_braid(const BraidFile& b) {
    std::ostringstream os;
    os << "fabbraid 1\nwidth " << b.braid.width << "\nword";
    for (int l : b.braid.letters) os << ' ' << l;
    os << '\n';
    for (std::size_t k = 0; k < b.braid.labels.size(); ++k) os << "component " << b.braid.labels[k] << ' ' << k << '\n';
    for (const auto& [y, s] : b.halves) os << "half " << y << ' ' << s << '\n';
    return os.str();
}

Kernel braid_kernel(const BraidFile& b) {
    std::vector<std::string> yarns, halves;
    for (const auto& l : b.braid.labels)
        if (l != "X" && l != "Y" && std::find(yarns.begin(), yarns.end(), l) == yarns.end()) yarns.push_back(l);
    for (const auto& y : yarns) {
        auto it = b.halves.find(y);
        halves.push_back(it == b.halves.end() ? "" : it->second);
    }
    return make_kernel(make_link(braid_to_pd(b.braid), kernel_registry(yarns, halves)));
}

Input parse_input(std::istream& in) {
    auto lines = tokenize(in);
    if (lines.empty()) throw ParseError(1, "empty input");
    if (lines[0].tokens[0] == "fabcell") return parse_cell_lines(lines);
    if (lines[0].tokens[0] == "fabbraid") return parse_braid_lines(lines);
    throw ParseError(lines[0].number, "unknown file type '" + lines[0].tokens[0] + "'");
}

Input parse_input_file(const std::string& path) {
    if (path == "-") return parse_input(std::cin);
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    return parse_input(in);
}

Kernel input_kernel(const Input& in) {
    if (const auto* c = std::get_if<CellDiagram>(&in)) return cell_to_kernel(*c);
    return braid_kernel(std::get<BraidFile>(in));
}

}  // namespace fabkit
