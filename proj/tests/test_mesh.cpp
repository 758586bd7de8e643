#include <doctest.h>

#include <cmath>

#include "vdns/mesh.hpp"

using namespace vdns;

namespace {

double total_area(const Mesh& m) {
    double a = 0.0;
    for (int t = 0; t < m.triangle_count(); ++t) a += m.triangle_area(t);
    return a;
}

}  // namespace

TEST_CASE("smallest mesh: n=1") {
    const Mesh m = build_unit_square_mesh(1);
    CHECK(m.vertex_count() == 4);
    CHECK(m.triangle_count() == 2);
    CHECK(total_area(m) == doctest::Approx(1.0).epsilon(1e-14));
    for (int v = 0; v < 4; ++v) CHECK(m.boundary_vertex[v]);
}

TEST_CASE("closed-form counts: n=2") {
    const Mesh m = build_unit_square_mesh(2);
    CHECK(m.vertex_count() == 9);
    CHECK(m.triangle_count() == 8);
    CHECK(m.edge_count() == 16);
    CHECK(m.vertex_count() - m.edge_count() + m.triangle_count() == 1);

    int boundary = 0;
    for (int v = 0; v < 9; ++v) boundary += m.boundary_vertex[v] ? 1 : 0;
    CHECK(boundary == 8);
    CHECK_FALSE(m.boundary_vertex[4]);  // center vertex of the row-major grid
}

TEST_CASE("n=8 counts and P2 node total") {
    const Mesh m = build_unit_square_mesh(8);
    CHECK(m.vertex_count() == 81);
    CHECK(m.triangle_count() == 128);
    CHECK(m.edge_count() == 208);  // V + F - 1
    CHECK(m.vertex_count() + m.edge_count() == 289);
    CHECK(m.h == doctest::Approx(std::sqrt(2.0) / 8.0).epsilon(1e-15));
}

TEST_CASE("counts, areas and orientation for a range of n") {
    for (int n : {1, 2, 3, 4, 7, 16}) {
        CAPTURE(n);
        const Mesh m = build_unit_square_mesh(n);
        CHECK(m.triangle_count() == 2 * n * n);
        CHECK(m.vertex_count() == (n + 1) * (n + 1));
        CHECK(m.edge_count() == m.vertex_count() + m.triangle_count() - 1);
        CHECK(total_area(m) == doctest::Approx(1.0).epsilon(1e-14));
        const double cell = 1.0 / (2.0 * n * n);
        for (int t = 0; t < m.triangle_count(); ++t)
            CHECK(std::abs(m.triangle_area(t) - cell) <= 1e-15);
    }
}

TEST_CASE("boundary classification matches geometry") {
    const Mesh m = build_unit_square_mesh(4);
    int boundary = 0, interior = 0;
    for (int v = 0; v < m.vertex_count(); ++v) {
        const Vec2& x = m.vertices[v];
        const bool on_edge = x.x() == 0.0 || x.x() == 1.0 || x.y() == 0.0 || x.y() == 1.0;
        CHECK(m.boundary_vertex[v] == on_edge);
        (m.boundary_vertex[v] ? boundary : interior)++;
    }
    CHECK(boundary == 16);
    CHECK(interior == 9);

    // Every boundary edge has boundary endpoints and exactly one triangle.
    std::vector<int> incidence(m.edge_count(), 0);
    for (int t = 0; t < m.triangle_count(); ++t)
        for (int k = 0; k < 3; ++k) incidence[m.triangle_edges[t][k]]++;
    for (int e = 0; e < m.edge_count(); ++e) {
        CHECK(incidence[e] == (m.boundary_edge[e] ? 1 : 2));
        if (m.boundary_edge[e]) {
            CHECK(m.boundary_vertex[m.edges[e][0]]);
            CHECK(m.boundary_vertex[m.edges[e][1]]);
        }
    }
}

TEST_CASE("invalid argument") {
    CHECK_THROWS_AS(build_unit_square_mesh(0), std::invalid_argument);
    CHECK_THROWS_AS(build_unit_square_mesh(-3), std::invalid_argument);
}

TEST_CASE("finalize_topology rejects clockwise triangles") {
    Mesh m;
    m.vertices = {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
    m.triangles = {{0, 2, 1}};
    CHECK_THROWS_AS(finalize_topology(m), std::runtime_error);
}
