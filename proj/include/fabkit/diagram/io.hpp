#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <variant>

#include "fabkit/diagram/braid.hpp"
#include "fabkit/diagram/cell.hpp"
#include "fabkit/diagram/kernel.hpp"

namespace fabkit {

// Cell files:
//   fabcell 1
//   yarn <name> [arc ...]          arcs owned by the yarn; with a single
//                                  yarn, unlisted arcs default to it
//   half <yarn> <symbol>           optional square-root symbol
//   cross <+1|-1> <a> <b> <c> <d>  counterclockwise from the under-in arc
//   edge <L|R|T|B> <index> <arc> <in|out>
// '#' starts a comment.
CellDiagram parse_cell(std::istream& in);
std::string serialize_cell(const CellDiagram& c);

// Braid files:
//   fabbraid 1
//   width <n>
//   word <i1> <i2> ...
//   component <X|Y|yarn> <closure-cycle-index>
//   half <yarn> <symbol>
struct BraidFile {
    BraidWord braid;
    std::map<std::string, std::string> halves;

    bool operator==(const BraidFile&) const = default;
};

BraidFile parse_braid(std::istream& in);
std::string serialize_braid(const BraidFile& b);
Kernel braid_kernel(const BraidFile& b);

using Input = std::variant<CellDiagram, BraidFile>;

// Dispatches on the header line.
Input parse_input(std::istream& in);
Input parse_input_file(const std::string& path);  // "-" reads standard input
Kernel input_kernel(const Input& in);

}  // namespace fabkit
