#include "vdns/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace vdns {

void eval_reference_basis(ElementKind kind, const std::array<double, 3>& bary,
                          std::span<double> values, std::span<Vec2> gradients) {
    const double l0 = bary[0], l1 = bary[1], l2 = bary[2];
    if (l0 < -1e-12 || l1 < -1e-12 || l2 < -1e-12 || std::abs(l0 + l1 + l2 - 1.0) > 1e-12)
        throw std::invalid_argument("eval_reference_basis: invalid barycentric point");

    const std::size_t n = static_cast<std::size_t>(local_dof_count(kind));
    if (values.size() != n || gradients.size() != n)
        throw std::invalid_argument("eval_reference_basis: output span size mismatch");

    // Barycentric gradients w.r.t. reference (x, y).
    static const Vec2 dl[3] = {Vec2(-1.0, -1.0), Vec2(1.0, 0.0), Vec2(0.0, 1.0)};

    if (kind == ElementKind::P1) {
        values[0] = l0;
        values[1] = l1;
        values[2] = l2;
        for (int i = 0; i < 3; ++i) gradients[i] = dl[i];
        return;
    }

    const double l[3] = {l0, l1, l2};
    for (int i = 0; i < 3; ++i) {
        values[i] = l[i] * (2.0 * l[i] - 1.0);
        gradients[i] = (4.0 * l[i] - 1.0) * dl[i];
    }
    // Edge bubbles on local edges (0,1), (1,2), (2,0).
    static constexpr int ea[3] = {0, 1, 2};
    static constexpr int eb[3] = {1, 2, 0};
    for (int k = 0; k < 3; ++k) {
        const int a = ea[k], b = eb[k];
        values[3 + k] = 4.0 * l[a] * l[b];
        gradients[3 + k] = 4.0 * (l[b] * dl[a] + l[a] * dl[b]);
    }
}

}  // namespace vdns
