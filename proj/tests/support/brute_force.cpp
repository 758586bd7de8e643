#include "brute_force.hpp"

namespace vdns::testsupport {

namespace {

double tri_area(const Vec2& a, const Vec2& b, const Vec2& c) {
    return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

// P2 basis values and gradients at a physical point, from area coordinates:
// lambda_k(x) = area(x, v_{k+1}, v_{k+2}) / area(v_0, v_1, v_2) and
// grad lambda_k = perp(v_{k+2} - v_{k+1}) / (2 area).
struct P2AtPoint {
    double value[6];
    Vec2 grad[6];
};

P2AtPoint p2_at(const Vec2 v[3], const Vec2& x) {
    const double area = tri_area(v[0], v[1], v[2]);
    double lambda[3];
    Vec2 dlambda[3];
    for (int k = 0; k < 3; ++k) {
        const Vec2& p = v[(k + 1) % 3];
        const Vec2& q = v[(k + 2) % 3];
        lambda[k] = tri_area(x, p, q) / area;
        dlambda[k] = Vec2(p.y() - q.y(), q.x() - p.x()) / (2.0 * area);
    }
    P2AtPoint out;
    for (int k = 0; k < 3; ++k) {
        out.value[k] = lambda[k] * (2.0 * lambda[k] - 1.0);
        out.grad[k] = (4.0 * lambda[k] - 1.0) * dlambda[k];
    }
    for (int k = 0; k < 3; ++k) {  // midpoints of edges (0,1), (1,2), (2,0)
        const int a = k, b = (k + 1) % 3;
        out.value[3 + k] = 4.0 * lambda[a] * lambda[b];
        out.grad[3 + k] = 4.0 * (lambda[b] * dlambda[a] + lambda[a] * dlambda[b]);
    }
    return out;
}

struct P1AtPoint {
    double value[3];
    Vec2 grad[3];
};

P1AtPoint p1_at(const Vec2 v[3], const Vec2& x) {
    const double area = tri_area(v[0], v[1], v[2]);
    P1AtPoint out;
    for (int k = 0; k < 3; ++k) {
        const Vec2& p = v[(k + 1) % 3];
        const Vec2& q = v[(k + 2) % 3];
        out.value[k] = tri_area(x, p, q) / area;
        out.grad[k] = Vec2(p.y() - q.y(), q.x() - p.x()) / (2.0 * area);
    }
    return out;
}

double eval_scalar(const Field& f, std::span<const int> dofs, const P2AtPoint& basis) {
    double s = 0.0;
    for (int k = 0; k < 6; ++k) s += f.coefficients[dofs[k]] * basis.value[k];
    return s;
}

Vec2 eval_vector(const Field& f, std::span<const int> dofs, const P2AtPoint& basis) {
    Vec2 s = Vec2::Zero();
    for (int k = 0; k < 6; ++k) {
        s[0] += f.coefficients[dofs[k]] * basis.value[k];
        s[1] += f.coefficients[dofs[6 + k]] * basis.value[k];
    }
    return s;
}

Mat2 eval_vector_gradient(const Field& f, std::span<const int> dofs, const P2AtPoint& basis) {
    Mat2 g = Mat2::Zero();
    for (int k = 0; k < 6; ++k) {
        g.row(0) += f.coefficients[dofs[k]] * basis.grad[k].transpose();
        g.row(1) += f.coefficients[dofs[6 + k]] * basis.grad[k].transpose();
    }
    return g;
}

}  // namespace

DenseSystem dense_density_system(const Bdf2Scheme& scheme, const TimeState& state,
                                 const AnalyticCase* c) {
    const Mesh& mesh = scheme.mesh();
    const FunctionSpace& s2 = scheme.sigma_space();
    const FunctionSpace& vspace = scheme.velocity_space();
    const QuadratureRule& rule = scheme.quadrature();
    const double tau = scheme.config().tau;
    const double t_next = state.time + tau;
    const bool forced = c && scheme.config().forcing_enabled;

    const Field u_hat(vspace, 2.0 * state.u_curr.coefficients - state.u_prev.coefficients);

    DenseSystem out;
    out.matrix = Eigen::MatrixXd::Zero(s2.dof_count, s2.dof_count);
    out.rhs = Eigen::VectorXd::Zero(s2.dof_count);

    for (int t = 0; t < mesh.triangle_count(); ++t) {
        Vec2 v[3];
        for (int k = 0; k < 3; ++k) v[k] = mesh.vertices[mesh.triangles[t][k]];
        const double area = tri_area(v[0], v[1], v[2]);
        const auto dofs = s2.element_dof_map(t);
        const auto udofs = vspace.element_dof_map(t);

        for (int q = 0; q < rule.size(); ++q) {
            const auto& bary = rule.points[q];
            const Vec2 x = bary[0] * v[0] + bary[1] * v[1] + bary[2] * v[2];
            const double w = rule.weights[q] * area;
            const P2AtPoint basis = p2_at(v, x);

            const Vec2 b = eval_vector(u_hat, udofs, basis);
            const double div_b = eval_vector_gradient(u_hat, udofs, basis).trace();

            for (int i = 0; i < 6; ++i) {
                for (int j = 0; j < 6; ++j) {
                    double entry = 1.5 / tau * basis.value[j] * basis.value[i];
                    entry += (b.dot(basis.grad[j]) + 0.5 * div_b * basis.value[j]) * basis.value[i];
                    out.matrix(dofs[i], dofs[j]) += w * entry;
                }
                const double hist = (4.0 * eval_scalar(state.sigma_curr, dofs, basis) -
                                     eval_scalar(state.sigma_prev, dofs, basis)) /
                                    (2.0 * tau);
                double load = hist;
                if (forced) load += c->g(x.x(), x.y(), t_next);
                out.rhs[dofs[i]] += w * load * basis.value[i];
            }
        }
    }
    return out;
}

DenseSystem dense_momentum_system(const Bdf2Scheme& scheme, const TimeState& state,
                                  const Field& sigma_next, const AnalyticCase* c) {
    const Mesh& mesh = scheme.mesh();
    const FunctionSpace& s2 = scheme.sigma_space();
    const FunctionSpace& vspace = scheme.velocity_space();
    const FunctionSpace& pspace = scheme.pressure_space();
    const QuadratureRule& rule = scheme.quadrature();
    const double tau = scheme.config().tau;
    const double mu = scheme.config().mu;
    const double t_next = state.time + tau;
    const bool forced = c && scheme.config().forcing_enabled;

    const Field u_hat(vspace, 2.0 * state.u_curr.coefficients - state.u_prev.coefficients);

    const int nu = vspace.dof_count;
    const int np = pspace.dof_count;
    const int n = nu + np + 1;
    DenseSystem out;
    out.matrix = Eigen::MatrixXd::Zero(n, n);
    out.rhs = Eigen::VectorXd::Zero(n);

    const int ns = vspace.scalar_dof_count;  // component offset in velocity DOFs

    for (int t = 0; t < mesh.triangle_count(); ++t) {
        Vec2 v[3];
        for (int k = 0; k < 3; ++k) v[k] = mesh.vertices[mesh.triangles[t][k]];
        const double area = tri_area(v[0], v[1], v[2]);
        const auto sdofs = s2.element_dof_map(t);
        const auto udofs = vspace.element_dof_map(t);
        const auto pdofs = pspace.element_dof_map(t);

        for (int q = 0; q < rule.size(); ++q) {
            const auto& bary = rule.points[q];
            const Vec2 x = bary[0] * v[0] + bary[1] * v[1] + bary[2] * v[2];
            const double w = rule.weights[q] * area;
            const P2AtPoint basis = p2_at(v, x);
            const P1AtPoint pbasis = p1_at(v, x);

            const double sn = eval_scalar(sigma_next, sdofs, basis);
            const double rho = sn * sn;
            const Vec2 b = eval_vector(u_hat, udofs, basis);
            const double sc = eval_scalar(state.sigma_curr, sdofs, basis);
            const double sp = eval_scalar(state.sigma_prev, sdofs, basis);
            const Vec2 uc = eval_vector(state.u_curr, udofs, basis);
            const Vec2 up = eval_vector(state.u_prev, udofs, basis);

            // velocity-velocity block, identical for both components
            for (int comp = 0; comp < 2; ++comp) {
                for (int i = 0; i < 6; ++i) {
                    const int gi = comp * 6 + i;
                    for (int j = 0; j < 6; ++j) {
                        const int gj = comp * 6 + j;
                        double entry = 1.5 / tau * rho * basis.value[j] * basis.value[i];
                        entry += 0.5 * rho *
                                 (b.dot(basis.grad[j]) * basis.value[i] -
                                  b.dot(basis.grad[i]) * basis.value[j]);
                        entry += mu * basis.grad[i].dot(basis.grad[j]);
                        out.matrix(udofs[gi], udofs[gj]) += w * entry;
                    }
                    // velocity load: forcing + sigma^{n+1}(4 sigma^n u^n
                    // - sigma^{n-1} u^{n-1}) / (2 tau)
                    double load = sn * (4.0 * sc * uc[comp] - sp * up[comp]) / (2.0 * tau);
                    if (forced) load += c->f(x.x(), x.y(), t_next)[comp];
                    out.rhs[udofs[gi]] += w * load * basis.value[i];
                }
            }

            // pressure coupling: -(p, div v) and its transpose row
            for (int pi = 0; pi < 3; ++pi) {
                const int gp = nu + pdofs[pi];
                for (int comp = 0; comp < 2; ++comp) {
                    for (int j = 0; j < 6; ++j) {
                        const int gu = udofs[comp * 6 + j];
                        const double entry = -w * pbasis.value[pi] * basis.grad[j][comp];
                        out.matrix(gu, gp) += entry;
                        out.matrix(gp, gu) += entry;
                    }
                }
                // pressure-mean multiplier column/row
                out.matrix(gp, n - 1) += w * pbasis.value[pi];
                out.matrix(n - 1, gp) += w * pbasis.value[pi];
            }
        }
    }
    (void)ns;
    return out;
}

}  // namespace vdns::testsupport
