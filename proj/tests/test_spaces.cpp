#include <doctest.h>

#include <set>

#include "vdns/function_space.hpp"

using namespace vdns;

TEST_CASE("DOF counts") {
    const Mesh m1 = build_unit_square_mesh(1);
    CHECK(build_space(m1, SpaceKind::P1Scalar).dof_count == 4);

    const Mesh m2 = build_unit_square_mesh(2);
    const FunctionSpace p2 = build_space(m2, SpaceKind::P2Scalar);
    CHECK(p2.dof_count == 25);  // 9 vertices + 16 edges = (2*2+1)^2
    CHECK(build_space(m2, SpaceKind::P2Vector2).dof_count == 50);
}

TEST_CASE("every DOF appears in some element map; maps consistent across elements") {
    const Mesh m = build_unit_square_mesh(3);
    for (SpaceKind kind : {SpaceKind::P1Scalar, SpaceKind::P2Scalar, SpaceKind::P2Vector2}) {
        const FunctionSpace s = build_space(m, kind);
        std::set<int> seen;
        for (int t = 0; t < m.triangle_count(); ++t)
            for (int d : s.element_dof_map(t)) {
                CHECK(d >= 0);
                CHECK(d < s.dof_count);
                seen.insert(d);
            }
        CHECK(static_cast<int>(seen.size()) == s.dof_count);
    }
}

TEST_CASE("node coordinates agree across shared element boundaries") {
    const Mesh m = build_unit_square_mesh(3);
    const FunctionSpace s = build_space(m, SpaceKind::P2Scalar);
    // Scalar DOF d has one global coordinate; local node positions must match:
    // vertices 0..2, then midpoints of local edges (0,1),(1,2),(2,0).
    for (int t = 0; t < m.triangle_count(); ++t) {
        const auto dofs = s.element_dof_map(t);
        const auto& tri = m.triangles[t];
        for (int k = 0; k < 3; ++k) {
            CHECK((s.node_coordinates[dofs[k]] - m.vertices[tri[k]]).norm() == 0.0);
            const Vec2 mid = 0.5 * (m.vertices[tri[k]] + m.vertices[tri[(k + 1) % 3]]);
            CHECK((s.node_coordinates[dofs[3 + k]] - mid).norm() <= 1e-16);
        }
    }
}

TEST_CASE("boundary DOFs lie on the boundary; vector space has both components") {
    const Mesh m = build_unit_square_mesh(4);
    const FunctionSpace v = build_space(m, SpaceKind::P2Vector2);
    CHECK(v.scalar_dof_count == m.vertex_count() + m.edge_count());
    const int per_component = static_cast<int>(v.boundary_dofs.size()) / 2;
    CHECK(2 * per_component == static_cast<int>(v.boundary_dofs.size()));
    for (int d : v.boundary_dofs) {
        const Vec2& x = v.node_coordinates[d % v.scalar_dof_count];
        const bool on_boundary = x.x() == 0.0 || x.x() == 1.0 || x.y() == 0.0 || x.y() == 1.0;
        CHECK(on_boundary);
    }
    // 4n boundary vertices + 4n boundary edges per component
    CHECK(per_component == 4 * 4 + 4 * 4);
}

TEST_CASE("field coefficient length must match the space") {
    const Mesh m = build_unit_square_mesh(2);
    const FunctionSpace s = build_space(m, SpaceKind::P2Scalar);
    CHECK_THROWS_AS(Field(s, Eigen::VectorXd::Zero(s.dof_count - 1)), std::invalid_argument);
    CHECK_NOTHROW(Field(s, Eigen::VectorXd::Zero(s.dof_count)));
}
