#pragma once

#include <functional>
#include <string>

#include "vdns/operators.hpp"

namespace vdns {

enum class BoundaryTrace { Homogeneous, InterpolatedExact };

/// Manufactured-solution case: exact fields sigma (square root of density),
/// u, p, their analytic derivatives, and the forcing terms g, f that make
/// (sigma, u, p) solve the forced transport / momentum system with viscosity
/// mu. All evaluators are pure functions of (x, y, t).
struct AnalyticCase {
    std::string name;
    double mu = 1.0;
    BoundaryTrace boundary_trace = BoundaryTrace::Homogeneous;

    ScalarFn sigma;
    ScalarFn dt_sigma;
    VectorFn grad_sigma;

    VectorFn u;
    VectorFn dt_u;
    std::function<Mat2(double, double, double)> grad_u;  // (i,j) = d u_i / d x_j
    VectorFn laplace_u;

    ScalarFn p;
    VectorFn grad_p;

    ScalarFn g;  // density forcing
    VectorFn f;  // momentum forcing
};

/// sigma = 2 + x(x-1)cos(sin t) + y(y-1)sin(sin t),
/// u = t^3 (y^2(y-1), x^2(x-1)), p = tx + y - (t+1)/2.
/// The exact velocity does not vanish on the whole boundary, so the case
/// prescribes interpolated exact Dirichlet traces.
AnalyticCase case_ex41(double mu);

/// sigma = 2 + x(1-x)cos(sin t) + y(1-y)sin(sin t),
/// u = curl of 5x^2(x-1)^2 y^2(y-1)^2 cos t, p = sin(x)sin(y)sin(t).
/// u vanishes identically on the boundary (homogeneous trace).
AnalyticCase case_ex42(double mu);

struct ForcingCheckReport {
    double max_forcing_residual = 0.0;     // g and f defining identities
    double max_derivative_residual = 0.0;  // analytic derivatives vs centered differences
    double max_divergence = 0.0;           // |div u| at the sample points
};

/// Evaluates the defining identities
///   g = dt_sigma + u . grad_sigma + (sigma/2) div u,
///   f = sigma d_t(sigma u) + rho (u . grad) u + (u/2) div(rho u) - mu lap u + grad p
/// at `samples` quasi-random interior points and 10 times in (0, 1], and
/// cross-checks every analytic derivative against centered finite differences
/// (step 1e-5; the Laplacian is differenced from the gradient evaluator).
/// Returns the maxima; callers assert.
ForcingCheckReport forcing_residual_check(const AnalyticCase& c, int samples);

}  // namespace vdns
