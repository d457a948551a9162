#include "fabkit/diagram/kernel.hpp"

#include <algorithm>

#include "fabkit/diagram/braid.hpp"
#include "fabkit/error.hpp"

namespace fabkit {

std::string variable_for_component(const std::string& component_name) {
    std::string label = label_of(component_name);
    if (label == "X") return "x";
    if (label == "Y") return "y";
    return label;
}

Link make_link(PDCode pd, const Registry& reg) {
    Link l{std::move(pd), reg, {}};
    for (const auto& name : l.pd.component_names()) {
        auto v = reg->find(variable_for_component(name));
        if (!v) throw ValidationError("no variable for component " + name);
        l.variable.push_back(*v);
    }
    return l;
}

std::string default_half(const std::string& yarn) {
    if (!yarn.empty() && yarn[0] == 't') return "s" + yarn.substr(1);
    return "s_" + yarn;
}

Registry kernel_registry(const std::vector<std::string>& yarns, const std::vector<std::string>& halves) {
    std::vector<Variable> vars = {{"x", Role::Face, ""}, {"y", Role::Back, ""}};
    for (std::size_t i = 0; i < yarns.size(); ++i) {
        std::string half = i < halves.size() && !halves[i].empty() ? halves[i] : default_half(yarns[i]);
        vars.push_back({yarns[i], Role::Yarn, half});
    }
    return make_registry(std::move(vars));
}

Kernel make_kernel(Link link) {
    Kernel k;
    const auto& names = link.pd.component_names();
    for (std::size_t c = 0; c < names.size(); ++c) {
        const std::string label = label_of(names[c]);
        if (label == "X") {
            if (k.x_comp >= 0) throw ValidationError("more than one X component");
            k.x_comp = static_cast<int>(c);
        } else if (label == "Y") {
            if (k.y_comp >= 0) throw ValidationError("more than one Y component");
            k.y_comp = static_cast<int>(c);
        } else {
            if ((*link.registry)[link.variable[c]].role != Role::Yarn)
                throw ValidationError("component " + names[c] + " is not on a yarn variable");
            k.yarn_comps.push_back(static_cast<int>(c));
        }
    }
    if (k.x_comp < 0 || k.y_comp < 0) throw ValidationError("kernel needs both X and Y components");
    if ((*link.registry)[link.variable[k.x_comp]].role != Role::Face ||
        (*link.registry)[link.variable[k.y_comp]].role != Role::Back)
        throw ValidationError("X and Y must carry the face and back variables");
    auto lk = linking_matrix(link.pd);
    if (std::abs(lk[k.x_comp][k.y_comp]) != 1) throw ValidationError("lk(X, Y) must be +1 or -1");
    k.link = std::move(link);
    return k;
}

Monomial curve_monomial(const Link& link, const LinkingMatrix& lk, int comp) {
    Monomial m(link.registry->size());
    for (std::size_t j = 0; j < link.component_count(); ++j)
        if (static_cast<int>(j) != comp) m.add_twice(link.variable[j], 2L * lk[comp][j]);
    return m;
}

Link delete_component(const Link& link, int c) {
    Link out{delete_component(link.pd, c), link.registry, link.variable};
    out.variable.erase(out.variable.begin() + c);
    return out;
}

}  // namespace fabkit
