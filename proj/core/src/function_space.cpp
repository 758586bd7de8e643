#include "vdns/function_space.hpp"

#include <stdexcept>

namespace vdns {

FunctionSpace build_space(const Mesh& mesh, SpaceKind kind) {
    FunctionSpace s;
    s.kind = kind;
    s.mesh = &mesh;
    s.element = (kind == SpaceKind::P1Scalar) ? ElementKind::P1 : ElementKind::P2;
    s.components = (kind == SpaceKind::P2Vector2) ? 2 : 1;

    const int nv = mesh.vertex_count();
    const int ne = mesh.edge_count();
    s.scalar_dof_count = (s.element == ElementKind::P1) ? nv : nv + ne;
    s.dof_count = s.components * s.scalar_dof_count;
    const int nloc_scalar = local_dof_count(s.element);
    s.dofs_per_element = s.components * nloc_scalar;

    s.node_coordinates.resize(s.scalar_dof_count);
    for (int v = 0; v < nv; ++v) s.node_coordinates[v] = mesh.vertices[v];
    if (s.element == ElementKind::P2)
        for (int e = 0; e < ne; ++e) s.node_coordinates[nv + e] = mesh.edge_midpoint(e);

    s.element_dofs.resize(static_cast<std::size_t>(mesh.triangle_count()) * s.dofs_per_element);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        int scalar_dofs[6];
        for (int k = 0; k < 3; ++k) scalar_dofs[k] = mesh.triangles[t][k];
        if (s.element == ElementKind::P2)
            for (int k = 0; k < 3; ++k) scalar_dofs[3 + k] = nv + mesh.triangle_edges[t][k];
        int* out = s.element_dofs.data() + static_cast<std::size_t>(t) * s.dofs_per_element;
        for (int c = 0; c < s.components; ++c)
            for (int k = 0; k < nloc_scalar; ++k)
                out[c * nloc_scalar + k] = c * s.scalar_dof_count + scalar_dofs[k];
    }

    std::vector<int> boundary_scalar;
    for (int v = 0; v < nv; ++v)
        if (mesh.boundary_vertex[v]) boundary_scalar.push_back(v);
    if (s.element == ElementKind::P2)
        for (int e = 0; e < ne; ++e)
            if (mesh.boundary_edge[e]) boundary_scalar.push_back(nv + e);
    for (int c = 0; c < s.components; ++c)
        for (int d : boundary_scalar) s.boundary_dofs.push_back(c * s.scalar_dof_count + d);

    return s;
}

Field::Field(const FunctionSpace& s, Eigen::VectorXd coeffs)
    : space(&s), coefficients(std::move(coeffs)) {
    if (coefficients.size() != s.dof_count)
        throw std::invalid_argument("Field: coefficient length does not match space dof_count");
}

}  // namespace vdns
