#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vdns/basis.hpp"
#include "vdns/mesh.hpp"

namespace vdns {

enum class SpaceKind { P1Scalar, P2Scalar, P2Vector2 };

/// DOF management for Lagrange spaces on a triangulation.
///
/// Scalar DOFs are numbered vertices first, then (for P2) edge nodes, in mesh
/// order. The vector space uses a block layout: all x-component DOFs first,
/// then all y-component DOFs, so vector DOF d = c * scalar_dof_count + s for
/// component c and scalar node s. Per-element DOFs follow the reference basis
/// order (see basis.hpp), components blocked for vector spaces.
struct FunctionSpace {
    SpaceKind kind;
    const Mesh* mesh = nullptr;
    ElementKind element = ElementKind::P1;
    int components = 1;
    int scalar_dof_count = 0;
    int dof_count = 0;
    int dofs_per_element = 0;
    std::vector<int> element_dofs;       // flat, triangle-major
    std::vector<int> boundary_dofs;      // ascending
    std::vector<Vec2> node_coordinates;  // per scalar DOF

    std::span<const int> element_dof_map(int t) const {
        return {element_dofs.data() + static_cast<std::size_t>(t) * dofs_per_element,
                static_cast<std::size_t>(dofs_per_element)};
    }
    int scalar_dofs_per_element() const { return local_dof_count(element); }
};

FunctionSpace build_space(const Mesh& mesh, SpaceKind kind);

/// Coefficient vector on a function space.
struct Field {
    const FunctionSpace* space = nullptr;
    Eigen::VectorXd coefficients;

    Field() = default;
    explicit Field(const FunctionSpace& s)
        : space(&s), coefficients(Eigen::VectorXd::Zero(s.dof_count)) {}
    Field(const FunctionSpace& s, Eigen::VectorXd coeffs);
};

}  // namespace vdns
