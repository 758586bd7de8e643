#include "vdns/linear_system.hpp"

#include <Eigen/SparseLU>
#ifdef VDNS_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#endif

#include <cctype>
#include <vector>

namespace vdns {

void apply_dirichlet(LinearSystem& system, std::span<const int> dofs,
                     std::span<const double> values) {
    const int n = static_cast<int>(system.matrix.rows());
    if (system.rhs.size() != n)
        throw std::invalid_argument("apply_dirichlet: rhs length mismatch");
    if (dofs.size() != values.size())
        throw std::invalid_argument("apply_dirichlet: dofs/values length mismatch");

    std::vector<char> constrained(n, 0);
    Eigen::VectorXd prescribed = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < dofs.size(); ++k) {
        const int d = dofs[k];
        if (d < 0 || d >= n) throw std::out_of_range("apply_dirichlet: DOF index out of range");
        constrained[d] = 1;
        prescribed[d] = values[k];
    }

    std::vector<Triplet> kept;
    kept.reserve(static_cast<std::size_t>(system.matrix.nonZeros()) + dofs.size());
    for (int col = 0; col < system.matrix.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(system.matrix, col); it; ++it) {
            const int row = static_cast<int>(it.row());
            if (constrained[row]) continue;  // row replaced by identity
            if (constrained[col])
                system.rhs[row] -= it.value() * prescribed[col];  // column to rhs
            else
                kept.emplace_back(row, col, it.value());
        }
    }
    for (int d = 0; d < n; ++d) {
        if (constrained[d]) {
            kept.emplace_back(d, d, 1.0);
            system.rhs[d] = prescribed[d];
        }
    }
    system.matrix = matrix_from_triplets(n, n, kept);
}

struct LuFactorization::Impl {
#ifdef VDNS_HAVE_UMFPACK
    Eigen::UmfPackLU<SparseMatrix> lu;
#else
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
#endif
    SparseMatrix matrix;  // kept for residual checks
};

namespace {

// Eigen reports singular pivots in its message text only; pull the column out.
int parse_pivot_index(const std::string& message) {
    for (std::size_t i = 0; i + 6 < message.size(); ++i) {
        if (message.compare(i, 6, "COLUMN") == 0 || message.compare(i, 6, "column") == 0) {
            std::size_t j = i + 6;
            while (j < message.size() && !std::isdigit(static_cast<unsigned char>(message[j]))) ++j;
            if (j < message.size()) return std::stoi(message.substr(j));
        }
    }
    return -1;
}

// Failure path: refactor with Eigen's own LU, whose error message names the
// offending pivot column.
[[noreturn]] void throw_factorization_error(const SparseMatrix& matrix) {
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(matrix);
    lu.factorize(matrix);
    const std::string msg =
        lu.info() == Eigen::Success ? "numerically singular" : lu.lastErrorMessage();
    throw FactorizationError("sparse LU factorization failed: " + msg, parse_pivot_index(msg));
}

}  // namespace

LuFactorization::LuFactorization(SparseMatrix matrix) : impl_(std::make_unique<Impl>()) {
    if (matrix.rows() != matrix.cols())
        throw std::invalid_argument("LuFactorization: matrix must be square");
    matrix.makeCompressed();
    impl_->matrix = std::move(matrix);
#ifdef VDNS_HAVE_UMFPACK
    // All systems here have structurally symmetric patterns (FE coupling plus
    // the pressure-mean border); AMD keeps the dense border out of the way,
    // where the unsymmetric strategy fills in catastrophically.
    impl_->lu.umfpackControl()[UMFPACK_STRATEGY] = UMFPACK_STRATEGY_SYMMETRIC;
#endif
    impl_->lu.analyzePattern(impl_->matrix);
    impl_->lu.factorize(impl_->matrix);
    if (impl_->lu.info() != Eigen::Success) throw_factorization_error(impl_->matrix);
}

LuFactorization::~LuFactorization() = default;
LuFactorization::LuFactorization(LuFactorization&&) noexcept = default;
LuFactorization& LuFactorization::operator=(LuFactorization&&) noexcept = default;

Eigen::VectorXd LuFactorization::solve(const Eigen::VectorXd& rhs, double* residual_out,
                                       double tolerance) const {
    if (rhs.size() != impl_->matrix.rows())
        throw std::invalid_argument("LuFactorization::solve: rhs length mismatch");
    Eigen::VectorXd x = impl_->lu.solve(rhs);
    if (impl_->lu.info() != Eigen::Success)
        throw AccuracyError("sparse LU solve failed", -1.0);
    const double bnorm = rhs.norm();
    const double residual =
        bnorm > 0.0 ? (impl_->matrix * x - rhs).norm() / bnorm : (impl_->matrix * x).norm();
    if (residual_out) *residual_out = residual;
    if (!(residual <= tolerance))
        throw AccuracyError("linear solve residual " + std::to_string(residual) +
                                " exceeds tolerance",
                            residual);
    return x;
}

Eigen::VectorXd solve_direct(const LinearSystem& system, double* residual_out) {
    LuFactorization lu(system.matrix);
    return lu.solve(system.rhs, residual_out);
}

LinearSystem build_saddle_system(const SparseMatrix& a, const SparseMatrix& b,
                                 const Eigen::VectorXd& f,
                                 const Eigen::VectorXd& pressure_integrals) {
    const int nu = static_cast<int>(a.rows());
    const int np = static_cast<int>(b.rows());
    if (a.cols() != nu || b.cols() != nu || f.size() != nu || pressure_integrals.size() != np)
        throw std::invalid_argument("build_saddle_system: block dimension mismatch");

    const int n = nu + np + 1;
    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(a.nonZeros()) + 2u * b.nonZeros() + 2u * np);

    for (int col = 0; col < a.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(a, col); it; ++it)
            triplets.emplace_back(static_cast<int>(it.row()), col, it.value());
    for (int col = 0; col < b.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(b, col); it; ++it) {
            const int p_row = nu + static_cast<int>(it.row());
            triplets.emplace_back(p_row, col, it.value());          // B
            triplets.emplace_back(col, p_row, it.value());          // B^T
        }
    }
    for (int q = 0; q < np; ++q) {
        triplets.emplace_back(nu + q, n - 1, pressure_integrals[q]);  // m
        triplets.emplace_back(n - 1, nu + q, pressure_integrals[q]);  // m^T
    }

    LinearSystem sys;
    sys.matrix = matrix_from_triplets(n, n, triplets);
    sys.rhs = Eigen::VectorXd::Zero(n);
    sys.rhs.head(nu) = f;
    return sys;
}

}  // namespace vdns
