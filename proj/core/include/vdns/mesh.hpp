#pragma once

#include <array>
#include <vector>

#include "vdns/geometry.hpp"

namespace vdns {

/// Conforming triangulation of the unit square.
///
/// Triangles are stored with counter-clockwise vertex order. Edges are
/// undirected vertex pairs (lo, hi); triangle_edges[t][k] is the edge index of
/// the local edge connecting local vertices (k, (k+1)%3). Boundary flags are
/// derived from edge incidence: an edge is boundary iff it belongs to exactly
/// one triangle, a vertex iff it lies on a boundary edge.
struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::array<int, 2>> edges;
    std::vector<std::array<int, 3>> triangle_edges;
    std::vector<bool> boundary_vertex;
    std::vector<bool> boundary_edge;
    double h = 0.0;  // max triangle diameter

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    double triangle_area(int t) const {
        const auto& tri = triangles[t];
        return signed_area(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
    }

    Vec2 edge_midpoint(int e) const {
        return 0.5 * (vertices[edges[e][0]] + vertices[edges[e][1]]);
    }
};

/// Uniform triangulation of [0,1]^2: (n+1)^2 vertices in row-major grid order,
/// each cell split along its lower-left-to-upper-right diagonal. Throws
/// std::invalid_argument for n < 1.
Mesh build_unit_square_mesh(int n);

/// Rebuilds edges, incidence and boundary flags from the triangle list and
/// computes h. Used by the generator and by mesh import. Throws
/// std::runtime_error for non-manifold or inverted triangles.
void finalize_topology(Mesh& mesh);

}  // namespace vdns
