#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Sparse>

namespace vdns {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/// Compressed matrix from a triplet list (duplicates summed in order).
/// Throws std::runtime_error if any accumulated value is non-finite.
SparseMatrix matrix_from_triplets(int rows, int cols, std::span<const Triplet> triplets);

bool all_finite(const SparseMatrix& m);

/// max_ij |A_ij| over stored entries.
double max_abs(const SparseMatrix& m);

/// Writes the matrix in MatrixMarket coordinate format (1-based indices,
/// 17 significant digits).
void write_matrix_market(const SparseMatrix& m, const std::filesystem::path& path);

}  // namespace vdns
