#pragma once

#include <array>
#include <span>

#include "vdns/geometry.hpp"

namespace vdns {

enum class ElementKind { P1, P2 };

constexpr int local_dof_count(ElementKind kind) {
    return kind == ElementKind::P1 ? 3 : 6;
}

/// Nodal Lagrange basis on the reference triangle with vertices
/// v0=(0,0), v1=(1,0), v2=(0,1) and barycentric coordinates
/// (l0, l1, l2) = (1-x-y, x, y).
///
/// Local DOF order: vertices 0,1,2, then (for P2) the midpoints of local
/// edges (0,1), (1,2), (2,0). Reference gradients are with respect to the
/// reference (x, y).
///
/// The barycentric point must be nonnegative and sum to 1 within 1e-12;
/// otherwise std::invalid_argument is thrown. `values` and `gradients` must
/// have length local_dof_count(kind).
void eval_reference_basis(ElementKind kind, const std::array<double, 3>& bary,
                          std::span<double> values, std::span<Vec2> gradients);

}  // namespace vdns
