#pragma once

#include <functional>

#include "vdns/assembly.hpp"
#include "vdns/function_space.hpp"
#include "vdns/quadrature.hpp"

namespace vdns {

/// Analytic space-time functions.
using ScalarFn = std::function<double(double x, double y, double t)>;
using VectorFn = std::function<Vec2(double x, double y, double t)>;

/// Lagrange interpolant: coefficients are nodal values of f at time t.
Field interpolate_lagrange(const ScalarFn& f, const FunctionSpace& space, double t);
Field interpolate_lagrange(const VectorFn& f, const FunctionSpace& space, double t);

/// L2 projection onto the space: solves (P f, w) = (f, w) for all basis
/// functions w with the given quadrature rule.
Field project_l2(const ScalarFn& f, const FunctionSpace& space, double t,
                 const QuadratureRule& rule);
Field project_l2(const VectorFn& f, const FunctionSpace& space, double t,
                 const QuadratureRule& rule);
/// Projection of a field living on another space over the same mesh.
Field project_l2(const Field& f, const FunctionSpace& space, const QuadratureRule& rule);

/// Quadrature approximation of ||field - exact(.,t)||_{L2}.
double l2_error(const Field& field, const ScalarFn& exact, double t, const QuadratureRule& rule);
double l2_error(const Field& field, const VectorFn& exact, double t, const QuadratureRule& rule);
double l2_norm(const Field& field, const QuadratureRule& rule);

/// ||grad(field) - grad_exact(.,t)||_{L2} for scalar fields.
double h1_seminorm_error(const Field& field, const VectorFn& grad_exact, double t,
                         const QuadratureRule& rule);
double h1_seminorm(const Field& field, const QuadratureRule& rule);

}  // namespace vdns
