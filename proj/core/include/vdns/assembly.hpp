#pragma once

#include <functional>
#include <span>
#include <vector>

#include "vdns/function_space.hpp"
#include "vdns/quadrature.hpp"
#include "vdns/sparse.hpp"

namespace vdns {

/// Value and gradient of a coefficient field at a quadrature point
/// (two entries used for vector fields).
struct CoeffSample {
    int components = 0;
    double value[2] = {0.0, 0.0};
    Vec2 gradient[2] = {Vec2::Zero(), Vec2::Zero()};
};

/// Per-quadrature-point data handed to element kernels. Basis values and
/// physical gradients are the *scalar* basis of the space; kernels on
/// P2Vector2 spaces address local vector DOF j as component j/6, scalar
/// function j%6 (block layout, see FunctionSpace).
struct QuadPoint {
    Vec2 x = Vec2::Zero();
    double w = 0.0;  // quadrature weight scaled by triangle area
    std::span<const double> trial;
    std::span<const Vec2> trial_grad;
    std::span<const double> test;
    std::span<const Vec2> test_grad;
    std::span<const CoeffSample> coeff;
};

/// Adds the w-scaled integrand contribution at one quadrature point to the
/// local (test x trial) matrix block.
using MatrixKernel = std::function<void(const QuadPoint&, Eigen::MatrixXd&)>;
/// Same for linear functionals (local test vector).
using VectorKernel = std::function<void(const QuadPoint&, Eigen::VectorXd&)>;

/// Element-loop assembly of a bilinear form into a compressed sparse matrix
/// (rows = test DOFs, cols = trial DOFs). Elements are visited in mesh order
/// and triplets accumulated deterministically, so results are bit-reproducible.
/// Both spaces and all coefficient fields must live on the same mesh.
SparseMatrix assemble_form(const FunctionSpace& trial, const FunctionSpace& test,
                           const MatrixKernel& kernel, const QuadratureRule& rule,
                           std::span<const Field* const> coefficients = {});

Eigen::VectorXd assemble_functional(const FunctionSpace& test, const VectorKernel& kernel,
                                    const QuadratureRule& rule,
                                    std::span<const Field* const> coefficients = {});

/// Quadrature of a plain spatial function over the whole mesh.
double integrate(const Mesh& mesh, const QuadratureRule& rule,
                 const std::function<double(const Vec2&)>& f);

/// Evaluates one Field at the quadrature points of a mesh traversal.
/// bind(t) gathers the local element data; value/gradient then read point q.
class FieldSampler {
public:
    FieldSampler(const Field& field, const QuadratureRule& rule);

    void bind(int triangle);

    double value(int q) const;      // scalar spaces
    Vec2 gradient(int q) const;
    Vec2 vector_value(int q) const;  // P2Vector2
    Mat2 vector_gradient(int q) const;  // (i,j) = d u_i / d x_j

private:
    const Field* field_;
    const FunctionSpace* space_;
    const QuadratureRule* rule_;
    int nloc_;  // scalar basis size
    std::vector<double> ref_values_;  // [q*nloc + i]
    std::vector<Vec2> ref_grads_;
    Mat2 jinv_t_ = Mat2::Zero();
    std::vector<double> local_;  // gathered coefficients, [component*nloc + i]
};

}  // namespace vdns
