#include <doctest.h>

#include <cmath>

#include "vdns/analytic_case.hpp"
#include "vdns/linear_system.hpp"
#include "vdns/operators.hpp"

using namespace vdns;

namespace {

// One Taylor-Hood Stokes solve of -mu lap(u) + grad p = f, div u = 0 with
// zero velocity trace and the zero-mean pressure multiplier.
struct StokesSolution {
    Field u, p;
    double pressure_mean;
};

StokesSolution solve_stokes(int n, double mu, const VectorFn& f) {
    const Mesh mesh = build_unit_square_mesh(n);
    const FunctionSpace v = build_space(mesh, SpaceKind::P2Vector2);
    const FunctionSpace q = build_space(mesh, SpaceKind::P1Scalar);
    const QuadratureRule rule = triangle_quadrature(6);

    const SparseMatrix a = assemble_form(
        v, v,
        [mu](const QuadPoint& qp, Eigen::MatrixXd& local) {
            const int ns = static_cast<int>(qp.test.size());
            for (int c = 0; c < 2; ++c)
                for (int i = 0; i < ns; ++i)
                    for (int j = 0; j < ns; ++j)
                        local(c * ns + i, c * ns + j) +=
                            qp.w * mu * qp.test_grad[i].dot(qp.trial_grad[j]);
        },
        rule);
    const SparseMatrix b = assemble_form(
        v, q,
        [](const QuadPoint& qp, Eigen::MatrixXd& local) {
            const int ns = static_cast<int>(qp.trial.size());
            for (int i = 0; i < static_cast<int>(qp.test.size()); ++i)
                for (int j = 0; j < 2 * ns; ++j)
                    local(i, j) -= qp.w * qp.test[i] * qp.trial_grad[j % ns][j / ns];
        },
        rule);
    const Eigen::VectorXd m = assemble_functional(
        q,
        [](const QuadPoint& qp, Eigen::VectorXd& local) {
            for (int i = 0; i < 3; ++i) local[i] += qp.w * qp.test[i];
        },
        rule);
    const Eigen::VectorXd load = assemble_functional(
        v,
        [&f](const QuadPoint& qp, Eigen::VectorXd& local) {
            const Vec2 fv = f(qp.x.x(), qp.x.y(), 0.0);
            const int ns = static_cast<int>(qp.test.size());
            for (int c = 0; c < 2; ++c)
                for (int i = 0; i < ns; ++i) local[c * ns + i] += qp.w * fv[c] * qp.test[i];
        },
        rule);

    LinearSystem sys = build_saddle_system(a, b, load, m);
    const std::vector<double> zeros(v.boundary_dofs.size(), 0.0);
    apply_dirichlet(sys, v.boundary_dofs, zeros);
    const Eigen::VectorXd x = solve_direct(sys);

    StokesSolution out{Field(v, x.head(v.dof_count)),
                       Field(q, x.segment(v.dof_count, q.dof_count)), 0.0};
    out.pressure_mean = m.dot(out.p.coefficients);
    return out;
}

}  // namespace

TEST_CASE("saddle builder rejects inconsistent blocks") {
    SparseMatrix a(4, 4), b(2, 3);
    a.setIdentity();
    CHECK_THROWS_AS(
        build_saddle_system(a, b, Eigen::VectorXd::Zero(4), Eigen::VectorXd::Zero(2)),
        std::invalid_argument);
}

TEST_CASE("zero data gives the zero solution") {
    const auto sol = solve_stokes(4, 1.0, [](double, double, double) { return Vec2(0.0, 0.0); });
    CHECK(sol.u.coefficients.lpNorm<Eigen::Infinity>() == 0.0);
    CHECK(sol.p.coefficients.lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("stokes MMS: stream function 5x^2(x-1)^2y^2(y-1)^2, p = x - 1/2") {
    const double mu = 1.0;
    // The ex42 velocity at t = 0 is exactly the curl of this stream function.
    const AnalyticCase c = case_ex42(mu);
    const VectorFn exact_u = [&c](double x, double y, double) { return c.u(x, y, 0.0); };
    const VectorFn f = [&c, mu](double x, double y, double) {
        return Vec2(-mu * c.laplace_u(x, y, 0.0) + Vec2(1.0, 0.0));
    };

    const QuadratureRule rule = triangle_quadrature(6);
    std::vector<double> errors;
    for (int n : {4, 8, 16}) {
        const auto sol = solve_stokes(n, mu, f);
        CHECK(std::abs(sol.pressure_mean) <= 1e-12);
        errors.push_back(l2_error(sol.u, exact_u, 0.0, rule));

        // pressure reproduces x - 1/2 up to discretization error
        const ScalarFn exact_p = [](double x, double, double) { return x - 0.5; };
        CHECK(l2_error(sol.p, exact_p, 0.0, rule) < 0.5 / n);
    }
    CHECK(std::log2(errors[0] / errors[1]) == doctest::Approx(3.0).epsilon(0.15));
    CHECK(std::log2(errors[1] / errors[2]) == doctest::Approx(3.0).epsilon(0.15));
}
