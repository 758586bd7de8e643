#pragma once

#include <memory>
#include <span>
#include <stdexcept>

#include "vdns/sparse.hpp"

namespace vdns {

struct LinearSystem {
    SparseMatrix matrix;
    Eigen::VectorXd rhs;
};

struct FactorizationError : std::runtime_error {
    int pivot_index;
    FactorizationError(const std::string& what, int pivot)
        : std::runtime_error(what), pivot_index(pivot) {}
};

struct AccuracyError : std::runtime_error {
    double residual;
    AccuracyError(const std::string& what, double r) : std::runtime_error(what), residual(r) {}
};

/// Symmetric elimination of Dirichlet constraints: constrained rows become
/// identity rows with the prescribed value on the rhs, constrained columns are
/// moved to the rhs. The solution attains the prescribed values exactly.
/// `dofs` must be in range and is paired index-wise with `values`.
void apply_dirichlet(LinearSystem& system, std::span<const int> dofs,
                     std::span<const double> values);

/// Reusable sparse LU factorization (fill-reducing column ordering).
/// solve() checks the relative residual ||Ax-b||/||b|| against `tolerance`
/// and throws AccuracyError on failure; FactorizationError (with the
/// offending pivot column when known) is thrown at construction for
/// singular-to-working-precision matrices. Solves are deterministic.
class LuFactorization {
public:
    explicit LuFactorization(SparseMatrix matrix);
    ~LuFactorization();
    LuFactorization(LuFactorization&&) noexcept;
    LuFactorization& operator=(LuFactorization&&) noexcept;

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs, double* residual_out = nullptr,
                          double tolerance = 1e-10) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

Eigen::VectorXd solve_direct(const LinearSystem& system, double* residual_out = nullptr);

/// Assembles the constrained saddle-point system
///
///   [ A    B^T  0 ] [u]   [f]
///   [ B    0    m ] [p] = [0]
///   [ 0    m^T  0 ] [s]   [0]
///
/// where m holds the pressure-basis integrals; the scalar multiplier s
/// enforces a zero pressure mean exactly. B is the (pressure x velocity)
/// coupling block as it appears in this layout (the caller folds any sign
/// convention into B).
LinearSystem build_saddle_system(const SparseMatrix& a, const SparseMatrix& b,
                                 const Eigen::VectorXd& f,
                                 const Eigen::VectorXd& pressure_integrals);

}  // namespace vdns
