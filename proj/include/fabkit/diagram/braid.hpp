#pragma once

#include <string>
#include <vector>

#include "fabkit/diagram/pd.hpp"

namespace fabkit {

// Letter i > 0 is sigma_i (strand i passes over strand i+1, a positive
// crossing), -i its inverse. Strands are numbered 1..width.
struct BraidWord {
    int width = 1;
    std::vector<int> letters;
    // One label per cycle of the closure permutation, cycles ordered by their
    // smallest strand position.
    std::vector<std::string> labels;

    bool operator==(const BraidWord&) const = default;
};

// Cycles of the closure permutation as lists of 0-based start positions.
std::vector<std::vector<int>> closure_cycles(int width, const std::vector<int>& letters);

PDCode braid_to_pd(const BraidWord& b);

// Component names from labels: a label used once stays as is, repeated
// labels become "label#1", "label#2", ...
std::vector<std::string> unique_component_names(const std::vector<std::string>& labels);
// Inverse of the above: the label a component name came from.
std::string label_of(const std::string& component_name);

}  // namespace fabkit
