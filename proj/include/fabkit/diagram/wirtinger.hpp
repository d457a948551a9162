#pragma once

#include <vector>

#include "fabkit/diagram/kernel.hpp"
#include "fabkit/ring/laurent.hpp"

namespace fabkit {

struct Letter {
    int gen = 0;
    int exp = 1;  // +1 or -1

    bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

struct GroupPresentation {
    Registry registry;
    std::vector<Monomial> abelian;  // image of each generator
    std::vector<Word> relators;

    std::size_t generator_count() const { return abelian.size(); }
    Monomial abelianize(const Word& w) const;
};

// One generator per arc of the diagram (edges joined through overpasses),
// one relator per crossing: o^-1 a o b^-1 at a positive crossing with
// over-arc o and under-strand a -> b, o a o^-1 b^-1 at a negative one.
GroupPresentation wirtinger(const Link& link);

// Wirtinger arc of every PD edge under the numbering used by wirtinger().
std::vector<int> wirtinger_arcs(const PDCode& d);

}  // namespace fabkit
