#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace fabkit {

// A crossing lists its four edge ends counterclockwise, starting from the
// incoming under-strand: e[0] under-in, e[2] under-out. The over-strand runs
// e[3] -> e[1] at a positive (right-handed) crossing and e[1] -> e[3] at a
// negative one.
struct Crossing {
    std::array<int, 4> e{};
    int sign = 1;

    int under_in() const { return e[0]; }
    int under_out() const { return e[2]; }
    int over_in() const { return sign > 0 ? e[3] : e[1]; }
    int over_out() const { return sign > 0 ? e[1] : e[3]; }

    bool operator==(const Crossing&) const = default;
};

// Oriented link diagram. Edges are numbered 0..edge_count()-1; every edge
// either joins two crossing slots or, with no slots at all, is a crossingless
// closed component.
class PDCode {
public:
    PDCode() = default;
    PDCode(std::vector<Crossing> crossings, std::vector<int> edge_component, std::vector<std::string> component_names);

    const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
    std::size_t edge_count() const noexcept { return edge_component_.size(); }
    int component_of(int edge) const { return edge_component_.at(edge); }
    const std::vector<int>& edge_components() const noexcept { return edge_component_; }
    const std::vector<std::string>& component_names() const noexcept { return names_; }
    std::size_t component_count() const noexcept { return names_.size(); }
    int component_index(const std::string& name) const;

    // Edges of one component in traversal order.
    std::vector<int> component_edges(int comp) const;

    bool operator==(const PDCode&) const = default;

private:
    void validate() const;

    std::vector<Crossing> crossings_;
    std::vector<int> edge_component_;
    std::vector<std::string> names_;
};

using LinkingMatrix = std::vector<std::vector<int>>;

// Half the signed count of crossings between each pair of components.
LinkingMatrix linking_matrix(const PDCode& d);

// Removes component c, splicing the surviving strand straight through every
// crossing c took part in.
PDCode delete_component(const PDCode& d, int c);

// True when the cyclic orders at the crossings describe a diagram on the
// sphere (Euler characteristic 2 for every connected piece).
bool is_planar(const PDCode& d);

}  // namespace fabkit
