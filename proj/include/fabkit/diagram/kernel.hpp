#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fabkit/diagram/pd.hpp"
#include "fabkit/ring/laurent.hpp"

namespace fabkit {

// A diagram whose components carry meridian variables. Several components
// may share one variable.
struct Link {
    PDCode pd;
    Registry registry;
    std::vector<std::size_t> variable;  // registry index per component

    std::size_t component_count() const { return pd.component_count(); }
};

// Variable name for a component: the face and back curves X and Y use x and
// y, every other component the label its name was made from.
std::string variable_for_component(const std::string& component_name);

Link make_link(PDCode pd, const Registry& reg);

// Registry x, y, then the yarn variables with their half symbols.
Registry kernel_registry(const std::vector<std::string>& yarns, const std::vector<std::string>& halves);
// Half symbol used when none is declared: t -> s, t1 -> s1, otherwise s_<name>.
std::string default_half(const std::string& yarn);

struct Kernel {
    Link link;
    int x_comp = -1;
    int y_comp = -1;
    std::vector<int> yarn_comps;

    std::size_t component_count() const { return link.component_count(); }
};

// Checks the structural kernel conditions that need no polynomial: X and Y
// present and distinct, lk(X, Y) = +-1, yarn components on yarn variables.
Kernel make_kernel(Link link);

// <X_i> = prod over j != i of x_j^lk(i, j), one factor per other component.
Monomial curve_monomial(const Link& link, const LinkingMatrix& lk, int comp);

// The link with component c removed; the registry is unchanged.
Link delete_component(const Link& link, int c);

}  // namespace fabkit
