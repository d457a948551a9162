#pragma once

#include <string>
#include <vector>

#include "fabkit/diagram/kernel.hpp"
#include "fabkit/diagram/pd.hpp"

namespace fabkit {

enum class Side { Left, Right, Top, Bottom };

char side_letter(Side s);

// Boundary endpoint of an arc. Indices count bottom to top on the left and
// right sides and left to right on the top and bottom; Left_k is glued to
// Right_k and Bottom_k to Top_k.
struct Port {
    Side side = Side::Left;
    int index = 0;
    int arc = 0;
    bool out = false;  // the arc leaves the cell here

    bool operator==(const Port&) const = default;
};

// Tangle in the unit square. Arcs play the role of PD edges: each runs
// between two crossing slots or ports.
struct CellDiagram {
    std::vector<std::string> yarns;
    std::vector<std::string> halves;  // per yarn, empty for the default symbol
    std::vector<std::string> arc_labels;
    std::vector<int> arc_yarn;
    std::vector<Crossing> crossings;
    std::vector<Port> ports;

    std::size_t arc_count() const { return arc_labels.size(); }
    int port_count(Side s) const;

    bool operator==(const CellDiagram&) const = default;
};

// Throws InvalidCell naming the first violated condition.
void validate_cell(const CellDiagram& c);

// One closed strand of the fabric on the torus.
struct CellStrand {
    int yarn = 0;
    std::vector<int> arcs;  // traversal order, starting from the smallest arc
    int a = 0;              // signed passages through the top edge
    int b = 0;              // signed passages through the right edge
};

// Strands ordered by their smallest arc.
std::vector<CellStrand> cell_strands(const CellDiagram& c);

Kernel cell_to_kernel(const CellDiagram& c);

CellDiagram tile_cell(const CellDiagram& c, int ru, int rv);

}  // namespace fabkit
