#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "vdns/function_space.hpp"
#include "vdns/mesh.hpp"

namespace vdns {

/// ASCII legacy VTK export (POINTS / CELLS, cell type 5). Coordinates are
/// printed with 17 significant digits so re-import is bit-exact.
void write_mesh_vtk(const Mesh& mesh, const std::filesystem::path& path);

/// Reads a triangle mesh written by write_mesh_vtk (or any ASCII legacy VTK
/// unstructured grid of type-5 cells) and rebuilds the topology.
Mesh read_mesh_vtk(const std::filesystem::path& path);

/// Field export as VTK point data. P2 fields are written at their nodes on
/// the midpoint-refined P1 triangulation (each triangle split into four);
/// P1 fields are evaluated at the same nodes. The file header comment records
/// the representation. Scalar fields become SCALARS, two-component fields
/// VECTORS with zero z.
void write_fields_vtk(const std::filesystem::path& path, const Mesh& mesh,
                      const std::vector<std::pair<std::string, const Field*>>& fields);

}  // namespace vdns
