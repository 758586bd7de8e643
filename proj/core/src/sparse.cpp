#include "vdns/sparse.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace vdns {

SparseMatrix matrix_from_triplets(int rows, int cols, std::span<const Triplet> triplets) {
    SparseMatrix m(rows, cols);
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.makeCompressed();
    if (!all_finite(m)) throw std::runtime_error("matrix_from_triplets: non-finite entry");
    return m;
}

bool all_finite(const SparseMatrix& m) {
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(m, k); it; ++it)
            if (!std::isfinite(it.value())) return false;
    return true;
}

double max_abs(const SparseMatrix& m) {
    double r = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(m, k); it; ++it)
            r = std::max(r, std::abs(it.value()));
    return r;
}

void write_matrix_market(const SparseMatrix& m, const std::filesystem::path& path) {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (!f) throw std::runtime_error("write_matrix_market: cannot open " + path.string());
    std::fprintf(f, "%%%%MatrixMarket matrix coordinate real general\n");
    std::fprintf(f, "%d %d %ld\n", static_cast<int>(m.rows()), static_cast<int>(m.cols()),
                 static_cast<long>(m.nonZeros()));
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(m, k); it; ++it)
            std::fprintf(f, "%ld %ld %.17g\n", static_cast<long>(it.row()) + 1,
                         static_cast<long>(it.col()) + 1, it.value());
    std::fclose(f);
}

}  // namespace vdns
