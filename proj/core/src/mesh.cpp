#include "vdns/mesh.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace vdns {

namespace {

uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<uint64_t>(a) << 32) | static_cast<uint64_t>(b);
}

}  // namespace

void finalize_topology(Mesh& mesh) {
    mesh.edges.clear();
    mesh.triangle_edges.assign(mesh.triangles.size(), {-1, -1, -1});

    std::unordered_map<uint64_t, int> edge_index;
    std::vector<int> incidence;

    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        if (signed_area(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]) <= 0.0)
            throw std::runtime_error("finalize_topology: triangle " + std::to_string(t) +
                                     " is degenerate or clockwise");
        for (int k = 0; k < 3; ++k) {
            const int a = tri[k];
            const int b = tri[(k + 1) % 3];
            const uint64_t key = edge_key(a, b);
            auto it = edge_index.find(key);
            if (it == edge_index.end()) {
                const int idx = static_cast<int>(mesh.edges.size());
                edge_index.emplace(key, idx);
                mesh.edges.push_back({std::min(a, b), std::max(a, b)});
                incidence.push_back(1);
                mesh.triangle_edges[t][k] = idx;
            } else {
                mesh.triangle_edges[t][k] = it->second;
                if (++incidence[it->second] > 2)
                    throw std::runtime_error("finalize_topology: edge shared by more than 2 triangles");
            }
        }
    }

    mesh.boundary_edge.assign(mesh.edges.size(), false);
    mesh.boundary_vertex.assign(mesh.vertices.size(), false);
    for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
        if (incidence[e] == 1) {
            mesh.boundary_edge[e] = true;
            mesh.boundary_vertex[mesh.edges[e][0]] = true;
            mesh.boundary_vertex[mesh.edges[e][1]] = true;
        }
    }

    mesh.h = 0.0;
    for (const auto& tri : mesh.triangles) {
        for (int k = 0; k < 3; ++k) {
            const double len = (mesh.vertices[tri[k]] - mesh.vertices[tri[(k + 1) % 3]]).norm();
            mesh.h = std::max(mesh.h, len);
        }
    }
}

Mesh build_unit_square_mesh(int n) {
    if (n < 1) throw std::invalid_argument("build_unit_square_mesh: n must be >= 1");

    Mesh mesh;
    mesh.vertices.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            mesh.vertices.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);

    // Cell (i,j) is split along the diagonal from (i,j) to (i+1,j+1).
    auto vid = [n](int i, int j) { return j * (n + 1) + i; };
    mesh.triangles.reserve(2u * n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            mesh.triangles.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
            mesh.triangles.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
        }
    }

    finalize_topology(mesh);
    return mesh;
}

}  // namespace vdns
