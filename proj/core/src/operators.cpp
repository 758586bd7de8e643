#include "vdns/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "vdns/linear_system.hpp"

namespace vdns {

Field interpolate_lagrange(const ScalarFn& f, const FunctionSpace& space, double t) {
    if (space.components != 1)
        throw std::invalid_argument("interpolate_lagrange: scalar function on a vector space");
    Field out(space);
    for (int i = 0; i < space.scalar_dof_count; ++i) {
        const Vec2& x = space.node_coordinates[i];
        out.coefficients[i] = f(x.x(), x.y(), t);
    }
    return out;
}

Field interpolate_lagrange(const VectorFn& f, const FunctionSpace& space, double t) {
    if (space.components != 2)
        throw std::invalid_argument("interpolate_lagrange: vector function on a scalar space");
    Field out(space);
    for (int i = 0; i < space.scalar_dof_count; ++i) {
        const Vec2& x = space.node_coordinates[i];
        const Vec2 v = f(x.x(), x.y(), t);
        out.coefficients[i] = v[0];
        out.coefficients[space.scalar_dof_count + i] = v[1];
    }
    return out;
}

namespace {

// Mass kernel valid for scalar and block-layout vector spaces alike.
void mass_kernel(const QuadPoint& qp, Eigen::MatrixXd& local) {
    const int ns = static_cast<int>(qp.test.size());
    const int comps = static_cast<int>(local.rows()) / ns;
    for (int c = 0; c < comps; ++c)
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < ns; ++j)
                local(c * ns + i, c * ns + j) += qp.w * qp.test[i] * qp.trial[j];
}

Field solve_mass_system(const FunctionSpace& space, const QuadratureRule& rule,
                        const Eigen::VectorXd& load) {
    const SparseMatrix mass = assemble_form(space, space, mass_kernel, rule);
    LuFactorization lu(mass);
    return Field(space, lu.solve(load));
}

}  // namespace

Field project_l2(const ScalarFn& f, const FunctionSpace& space, double t,
                 const QuadratureRule& rule) {
    if (space.components != 1)
        throw std::invalid_argument("project_l2: scalar function on a vector space");
    Eigen::VectorXd load = assemble_functional(
        space,
        [&](const QuadPoint& qp, Eigen::VectorXd& local) {
            const double v = f(qp.x.x(), qp.x.y(), t);
            for (int i = 0; i < static_cast<int>(qp.test.size()); ++i)
                local[i] += qp.w * v * qp.test[i];
        },
        rule);
    return solve_mass_system(space, rule, load);
}

Field project_l2(const VectorFn& f, const FunctionSpace& space, double t,
                 const QuadratureRule& rule) {
    if (space.components != 2)
        throw std::invalid_argument("project_l2: vector function on a scalar space");
    Eigen::VectorXd load = assemble_functional(
        space,
        [&](const QuadPoint& qp, Eigen::VectorXd& local) {
            const Vec2 v = f(qp.x.x(), qp.x.y(), t);
            const int ns = static_cast<int>(qp.test.size());
            for (int c = 0; c < 2; ++c)
                for (int i = 0; i < ns; ++i)
                    local[c * ns + i] += qp.w * v[c] * qp.test[i];
        },
        rule);
    return solve_mass_system(space, rule, load);
}

Field project_l2(const Field& f, const FunctionSpace& space, const QuadratureRule& rule) {
    if (!f.space || f.space->mesh != space.mesh)
        throw std::invalid_argument("project_l2: field must live on the same mesh");
    if (f.space->components != space.components)
        throw std::invalid_argument("project_l2: component count mismatch");
    const Field* coeff[] = {&f};
    Eigen::VectorXd load = assemble_functional(
        space,
        [&](const QuadPoint& qp, Eigen::VectorXd& local) {
            const int ns = static_cast<int>(qp.test.size());
            for (int c = 0; c < qp.coeff[0].components; ++c)
                for (int i = 0; i < ns; ++i)
                    local[c * ns + i] += qp.w * qp.coeff[0].value[c] * qp.test[i];
        },
        rule, coeff);
    return solve_mass_system(space, rule, load);
}

namespace {

double sqrt_nonneg(double s) { return std::sqrt(std::max(s, 0.0)); }

}  // namespace

double l2_error(const Field& field, const ScalarFn& exact, double t, const QuadratureRule& rule) {
    if (field.space->components != 1)
        throw std::invalid_argument("l2_error: scalar exact function on a vector field");
    FieldSampler sampler(field, rule);
    const Mesh& mesh = *field.space->mesh;
    double sum = 0.0;
    for (int tri = 0; tri < mesh.triangle_count(); ++tri) {
        sampler.bind(tri);
        const double area = mesh.triangle_area(tri);
        for (int q = 0; q < rule.size(); ++q) {
            const auto& bary = rule.points[q];
            const auto& tv = mesh.triangles[tri];
            const Vec2 x = bary[0] * mesh.vertices[tv[0]] + bary[1] * mesh.vertices[tv[1]] +
                           bary[2] * mesh.vertices[tv[2]];
            const double d = sampler.value(q) - exact(x.x(), x.y(), t);
            sum += rule.weights[q] * area * d * d;
        }
    }
    return sqrt_nonneg(sum);
}

double l2_error(const Field& field, const VectorFn& exact, double t, const QuadratureRule& rule) {
    if (field.space->components != 2)
        throw std::invalid_argument("l2_error: vector exact function on a scalar field");
    FieldSampler sampler(field, rule);
    const Mesh& mesh = *field.space->mesh;
    double sum = 0.0;
    for (int tri = 0; tri < mesh.triangle_count(); ++tri) {
        sampler.bind(tri);
        const double area = mesh.triangle_area(tri);
        for (int q = 0; q < rule.size(); ++q) {
            const auto& bary = rule.points[q];
            const auto& tv = mesh.triangles[tri];
            const Vec2 x = bary[0] * mesh.vertices[tv[0]] + bary[1] * mesh.vertices[tv[1]] +
                           bary[2] * mesh.vertices[tv[2]];
            const Vec2 d = sampler.vector_value(q) - exact(x.x(), x.y(), t);
            sum += rule.weights[q] * area * d.squaredNorm();
        }
    }
    return sqrt_nonneg(sum);
}

double l2_norm(const Field& field, const QuadratureRule& rule) {
    if (field.space->components == 1)
        return l2_error(field, [](double, double, double) { return 0.0; }, 0.0, rule);
    return l2_error(field, [](double, double, double) { return Vec2(0.0, 0.0); }, 0.0, rule);
}

double h1_seminorm_error(const Field& field, const VectorFn& grad_exact, double t,
                         const QuadratureRule& rule) {
    if (field.space->components != 1)
        throw std::invalid_argument("h1_seminorm_error: implemented for scalar fields");
    FieldSampler sampler(field, rule);
    const Mesh& mesh = *field.space->mesh;
    double sum = 0.0;
    for (int tri = 0; tri < mesh.triangle_count(); ++tri) {
        sampler.bind(tri);
        const double area = mesh.triangle_area(tri);
        for (int q = 0; q < rule.size(); ++q) {
            const auto& bary = rule.points[q];
            const auto& tv = mesh.triangles[tri];
            const Vec2 x = bary[0] * mesh.vertices[tv[0]] + bary[1] * mesh.vertices[tv[1]] +
                           bary[2] * mesh.vertices[tv[2]];
            const Vec2 d = sampler.gradient(q) - grad_exact(x.x(), x.y(), t);
            sum += rule.weights[q] * area * d.squaredNorm();
        }
    }
    return sqrt_nonneg(sum);
}

double h1_seminorm(const Field& field, const QuadratureRule& rule) {
    return h1_seminorm_error(field, [](double, double, double) { return Vec2(0.0, 0.0); }, 0.0,
                             rule);
}

}  // namespace vdns
