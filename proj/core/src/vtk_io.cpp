#include "vdns/vtk_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vdns {

void write_mesh_vtk(const Mesh& mesh, const std::filesystem::path& path) {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (!f) throw std::runtime_error("write_mesh_vtk: cannot open " + path.string());
    std::fprintf(f, "# vtk DataFile Version 3.0\n");
    std::fprintf(f, "triangulation\n");
    std::fprintf(f, "ASCII\nDATASET UNSTRUCTURED_GRID\n");
    std::fprintf(f, "POINTS %d double\n", mesh.vertex_count());
    for (const Vec2& v : mesh.vertices) std::fprintf(f, "%.17g %.17g 0\n", v.x(), v.y());
    std::fprintf(f, "CELLS %d %d\n", mesh.triangle_count(), 4 * mesh.triangle_count());
    for (const auto& t : mesh.triangles) std::fprintf(f, "3 %d %d %d\n", t[0], t[1], t[2]);
    std::fprintf(f, "CELL_TYPES %d\n", mesh.triangle_count());
    for (int t = 0; t < mesh.triangle_count(); ++t) std::fprintf(f, "5\n");
    std::fclose(f);
}

Mesh read_mesh_vtk(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_mesh_vtk: cannot open " + path.string());

    Mesh mesh;
    std::string token;
    while (in >> token) {
        if (token == "POINTS") {
            int n = 0;
            std::string type;
            in >> n >> type;
            mesh.vertices.resize(n);
            for (int i = 0; i < n; ++i) {
                double x, y, z;
                in >> x >> y >> z;
                mesh.vertices[i] = Vec2(x, y);
            }
        } else if (token == "CELLS") {
            int n = 0, total = 0;
            in >> n >> total;
            mesh.triangles.reserve(n);
            for (int i = 0; i < n; ++i) {
                int k;
                in >> k;
                if (k != 3) throw std::runtime_error("read_mesh_vtk: only triangle cells supported");
                std::array<int, 3> t{};
                in >> t[0] >> t[1] >> t[2];
                mesh.triangles.push_back(t);
            }
        } else if (token == "CELL_TYPES") {
            int n = 0;
            in >> n;
            for (int i = 0; i < n; ++i) {
                int type;
                in >> type;
                if (type != 5) throw std::runtime_error("read_mesh_vtk: cell type must be 5");
            }
        }
    }
    if (mesh.vertices.empty() || mesh.triangles.empty())
        throw std::runtime_error("read_mesh_vtk: no POINTS/CELLS section in " + path.string());
    finalize_topology(mesh);
    return mesh;
}

void write_fields_vtk(const std::filesystem::path& path, const Mesh& mesh,
                      const std::vector<std::pair<std::string, const Field*>>& fields) {
    const int nv = mesh.vertex_count();
    const int ne = mesh.edge_count();
    const int n_nodes = nv + ne;  // P2 node set = refined P1 vertex set

    // Values of a field at every refined node: P2 coefficients map directly,
    // P1 fields are linear so edge values are endpoint means.
    auto node_values = [&](const Field& f, int comp) {
        std::vector<double> vals(n_nodes);
        const FunctionSpace& s = *f.space;
        const int off = comp * s.scalar_dof_count;
        if (s.element == ElementKind::P2) {
            for (int i = 0; i < n_nodes; ++i) vals[i] = f.coefficients[off + i];
        } else {
            for (int v = 0; v < nv; ++v) vals[v] = f.coefficients[off + v];
            for (int e = 0; e < ne; ++e)
                vals[nv + e] = 0.5 * (f.coefficients[off + mesh.edges[e][0]] +
                                      f.coefficients[off + mesh.edges[e][1]]);
        }
        return vals;
    };

    for (const auto& [name, f] : fields) {
        if (!f || !f->space || f->space->mesh != &mesh)
            throw std::invalid_argument("write_fields_vtk: field '" + name +
                                        "' does not live on the given mesh");
    }

    std::FILE* out = std::fopen(path.string().c_str(), "w");
    if (!out) throw std::runtime_error("write_fields_vtk: cannot open " + path.string());
    std::fprintf(out, "# vtk DataFile Version 3.0\n");
    std::fprintf(out, "fields at P2 nodes on the midpoint-refined P1 triangulation\n");
    std::fprintf(out, "ASCII\nDATASET UNSTRUCTURED_GRID\n");
    std::fprintf(out, "POINTS %d double\n", n_nodes);
    for (const Vec2& v : mesh.vertices) std::fprintf(out, "%.17g %.17g 0\n", v.x(), v.y());
    for (int e = 0; e < ne; ++e) {
        const Vec2 m = mesh.edge_midpoint(e);
        std::fprintf(out, "%.17g %.17g 0\n", m.x(), m.y());
    }

    const int n_children = 4 * mesh.triangle_count();
    std::fprintf(out, "CELLS %d %d\n", n_children, 4 * n_children);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tri = mesh.triangles[t];
        const int m01 = nv + mesh.triangle_edges[t][0];
        const int m12 = nv + mesh.triangle_edges[t][1];
        const int m20 = nv + mesh.triangle_edges[t][2];
        std::fprintf(out, "3 %d %d %d\n", tri[0], m01, m20);
        std::fprintf(out, "3 %d %d %d\n", tri[1], m12, m01);
        std::fprintf(out, "3 %d %d %d\n", tri[2], m20, m12);
        std::fprintf(out, "3 %d %d %d\n", m01, m12, m20);
    }
    std::fprintf(out, "CELL_TYPES %d\n", n_children);
    for (int t = 0; t < n_children; ++t) std::fprintf(out, "5\n");

    std::fprintf(out, "POINT_DATA %d\n", n_nodes);
    for (const auto& [name, f] : fields) {
        if (f->space->components == 1) {
            std::fprintf(out, "SCALARS %s double 1\nLOOKUP_TABLE default\n", name.c_str());
            const auto vals = node_values(*f, 0);
            for (double v : vals) std::fprintf(out, "%.17g\n", v);
        } else {
            std::fprintf(out, "VECTORS %s double\n", name.c_str());
            const auto vx = node_values(*f, 0);
            const auto vy = node_values(*f, 1);
            for (int i = 0; i < n_nodes; ++i) std::fprintf(out, "%.17g %.17g 0\n", vx[i], vy[i]);
        }
    }
    std::fclose(out);
}

}  // namespace vdns
