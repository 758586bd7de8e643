#include "vdns/quadrature.hpp"

#include <stdexcept>

namespace vdns {

namespace {

void add_center(QuadratureRule& r, double w) {
    r.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    r.weights.push_back(w);
}

// Orbit (a, b, b) with a + 2b = 1: the three cyclic permutations.
void add_orbit3(QuadratureRule& r, double w, double a) {
    const double b = 0.5 * (1.0 - a);
    r.points.push_back({a, b, b});
    r.points.push_back({b, a, b});
    r.points.push_back({b, b, a});
    for (int i = 0; i < 3; ++i) r.weights.push_back(w);
}

// Orbit (a, b, c) with distinct entries: all six permutations.
void add_orbit6(QuadratureRule& r, double w, double a, double b) {
    const double c = 1.0 - a - b;
    r.points.push_back({a, b, c});
    r.points.push_back({a, c, b});
    r.points.push_back({b, a, c});
    r.points.push_back({b, c, a});
    r.points.push_back({c, a, b});
    r.points.push_back({c, b, a});
    for (int i = 0; i < 6; ++i) r.weights.push_back(w);
}

// Dunavant (1985) symmetric rules; weights normalized to sum to 1.
QuadratureRule make_rule(int degree) {
    QuadratureRule r;
    r.exact_degree = degree;
    switch (degree) {
        case 1:
            add_center(r, 1.0);
            break;
        case 2:
            add_orbit3(r, 1.0 / 3.0, 2.0 / 3.0);
            break;
        case 4:
            add_orbit3(r, 0.223381589678011, 0.108103018168070);
            add_orbit3(r, 0.109951743655322, 0.816847572980459);
            break;
        case 5:
            add_center(r, 0.225);
            add_orbit3(r, 0.132394152788506, 0.059715871789770);
            add_orbit3(r, 0.125939180544827, 0.797426985353087);
            break;
        case 6:
            add_orbit3(r, 0.050844906370207, 0.873821971016996);
            add_orbit3(r, 0.116786275726379, 0.501426509658179);
            add_orbit6(r, 0.082851075618374, 0.053145049844816, 0.310352451033785);
            break;
        case 8:
            add_center(r, 0.144315607677787);
            add_orbit3(r, 0.095091634413925, 0.081414823414554);
            add_orbit3(r, 0.103217370534718, 0.658861384496480);
            add_orbit3(r, 0.032458497623198, 0.898905543365938);
            add_orbit6(r, 0.027230314174435, 0.008394777409958, 0.263112829634638);
            break;
        default:
            throw std::logic_error("make_rule: no table for this degree");
    }
    return r;
}

}  // namespace

QuadratureRule triangle_quadrature(int min_degree) {
    if (min_degree < 1 || min_degree > 8)
        throw std::invalid_argument(
            "triangle_quadrature: min_degree must be in [1, 8] "
            "(available rule degrees: 1, 2, 4, 5, 6, 8)");
    static constexpr int available[] = {1, 2, 4, 5, 6, 8};
    for (int d : available)
        if (d >= min_degree) return make_rule(d);
    throw std::logic_error("triangle_quadrature: unreachable");
}

}  // namespace vdns
