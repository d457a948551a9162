#pragma once

#include <string>

#include "fabkit/alexander/alexander.hpp"
#include "fabkit/diagram/io.hpp"
#include "fabkit/ring/ops.hpp"

namespace fabkit::testing {

inline std::string corpus_path(const std::string& name) { return std::string(FABKIT_CORPUS_DIR) + "/" + name; }

inline Input load_input(const std::string& name) { return parse_input_file(corpus_path(name)); }

inline CellDiagram load_cell(const std::string& name) { return std::get<CellDiagram>(load_input(name)); }

inline Kernel load_kernel(const std::string& name) { return input_kernel(load_input(name)); }

inline LaurentPoly P(const Registry& r, const std::string& s) { return parse_poly(r, s); }

}  // namespace fabkit::testing
