#include "fabkit/diagram/braid.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "fabkit/error.hpp"

namespace fabkit {

namespace {

void check_letters(int width, const std::vector<int>& letters) {
    if (width < 1) throw ValidationError("braid width must be positive");
    for (int l : letters)
        if (l == 0 || std::abs(l) >= width)
            throw ValidationError("braid letter " + std::to_string(l) + " out of range for width " +
                                  std::to_string(width));
}

std::vector<int> closure_permutation(int width, const std::vector<int>& letters) {
    std::vector<int> at(width);  // at[pos] = start position of the strand now at pos
    std::iota(at.begin(), at.end(), 0);
    for (int l : letters) {
        int p = std::abs(l) - 1;
        std::swap(at[p], at[p + 1]);
    }
    std::vector<int> perm(width);  // start position -> end position
    for (int pos = 0; pos < width; ++pos) perm[at[pos]] = pos;
    return perm;
}

}  // namespace

std::vector<std::vector<int>> closure_cycles(int width, const std::vector<int>& letters) {
    check_letters(width, letters);
    auto perm = closure_permutation(width, letters);
    std::vector<char> seen(width, 0);
    std::vector<std::vector<int>> cycles;
    for (int s = 0; s < width; ++s) {
        if (seen[s]) continue;
        std::vector<int> cyc;
        for (int q = s; !seen[q]; q = perm[q]) {
            seen[q] = 1;
            cyc.push_back(q);
        }
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

std::vector<std::string> unique_component_names(const std::vector<std::string>& labels) {
    std::map<std::string, int> total, used;
    for (const auto& l : labels) {
        if (l.find('#') != std::string::npos) throw ValidationError("component label may not contain '#': " + l);
        ++total[l];
    }
    std::vector<std::string> out;
    for (const auto& l : labels)
        out.push_back(total[l] == 1 ? l : l + "#" + std::to_string(++used[l]));
    return out;
}

std::string label_of(const std::string& component_name) { return component_name.substr(0, component_name.find('#')); }

PDCode braid_to_pd(const BraidWord& b) {
    auto cycles = closure_cycles(b.width, b.letters);
    if (b.labels.size() != cycles.size())
        throw ValidationError("braid closure has " + std::to_string(cycles.size()) + " cycles but " +
                              std::to_string(b.labels.size()) + " labels");
    std::vector<int> cycle_of(b.width);
    for (std::size_t k = 0; k < cycles.size(); ++k)
        for (int q : cycles[k]) cycle_of[q] = static_cast<int>(k);

    const int n = b.width;
    std::vector<int> cur(n), origin(n), edge_origin;
    for (int p = 0; p < n; ++p) {
        cur[p] = p;
        origin[p] = p;
        edge_origin.push_back(p);
    }
    auto fresh = [&](int strand) {
        edge_origin.push_back(strand);
        return static_cast<int>(edge_origin.size()) - 1;
    };
    std::vector<Crossing> xs;
    for (int l : b.letters) {
        int p = std::abs(l) - 1;
        int left = cur[p], right = cur[p + 1];
        int top_left = fresh(origin[p + 1]), top_right = fresh(origin[p]);
        if (l > 0)  // left strand over, under runs SE -> NW
            xs.push_back({{right, top_right, top_left, left}, 1});
        else  // right strand over, under runs SW -> NE
            xs.push_back({{left, right, top_right, top_left}, -1});
        cur[p] = top_left;
        cur[p + 1] = top_right;
        std::swap(origin[p], origin[p + 1]);
    }
    // Close up: the edge leaving the top at position p is the edge entering at p.
    std::vector<int> id(edge_origin.size());
    std::iota(id.begin(), id.end(), 0);
    for (int p = 0; p < n; ++p) id[cur[p]] = p;
    std::vector<int> remap(edge_origin.size(), -1), comp;
    for (std::size_t e = 0; e < edge_origin.size(); ++e) {
        int root = id[e];
        if (remap[root] < 0) {
            remap[root] = static_cast<int>(comp.size());
            comp.push_back(cycle_of[edge_origin[root]]);
        }
    }
    for (auto& x : xs)
        for (int& e : x.e) e = remap[id[e]];
    return PDCode(std::move(xs), std::move(comp), unique_component_names(b.labels));
}

}  // namespace fabkit
