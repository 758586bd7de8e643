#include "vdns/scheme.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vdns/operators.hpp"

namespace vdns {

int SchemeConfig::step_count() const {
    validate();
    return static_cast<int>(std::llround(final_time / tau));
}

void SchemeConfig::validate() const {
    if (!(tau > 0.0)) throw std::invalid_argument("SchemeConfig: tau must be positive");
    if (!(mu > 0.0)) throw std::invalid_argument("SchemeConfig: mu must be positive");
    if (mesh_n < 1) throw std::invalid_argument("SchemeConfig: mesh_n must be >= 1");
    // Degree >= 5 makes the convection antisymmetry identities exact under
    // quadrature (integrands of degree 5), which the energy law relies on.
    if (quadrature_degree < 5 || quadrature_degree > 8)
        throw std::invalid_argument("SchemeConfig: quadrature_degree must be in [5, 8]");
    if (!(final_time >= 2.0 * tau))
        throw std::invalid_argument("SchemeConfig: final_time must be >= 2 tau");
    const double q = final_time / tau;
    const auto n = std::llround(q);
    if (q != static_cast<double>(n))
        throw std::invalid_argument("SchemeConfig: final_time / tau must be an integer");
}

Bdf2Scheme::Bdf2Scheme(SchemeConfig cfg) : cfg_(cfg) {
    cfg_.validate();
    mesh_ = build_unit_square_mesh(cfg_.mesh_n);
    space_sigma_ = build_space(mesh_, SpaceKind::P2Scalar);
    space_u_ = build_space(mesh_, SpaceKind::P2Vector2);
    space_p_ = build_space(mesh_, SpaceKind::P1Scalar);
    rule_ = triangle_quadrature(cfg_.quadrature_degree);

    mass_sigma_ = assemble_form(
        space_sigma_, space_sigma_,
        [](const QuadPoint& qp, Eigen::MatrixXd& local) {
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) local(i, j) += qp.w * qp.test[i] * qp.trial[j];
        },
        rule_);

    stiffness_scalar_ = assemble_form(
        space_sigma_, space_sigma_,
        [](const QuadPoint& qp, Eigen::MatrixXd& local) {
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j)
                    local(i, j) += qp.w * qp.test_grad[i].dot(qp.trial_grad[j]);
        },
        rule_);

    // -(div u, q): pressure test x velocity trial, folded sign for the
    // symmetric saddle layout [[A, B^T],[B, 0]].
    divergence_neg_ = assemble_form(
        space_u_, space_p_,
        [](const QuadPoint& qp, Eigen::MatrixXd& local) {
            const int ns = static_cast<int>(qp.trial.size());
            for (int i = 0; i < static_cast<int>(qp.test.size()); ++i)
                for (int j = 0; j < 2 * ns; ++j) {
                    const int c = j / ns, s = j % ns;
                    local(i, j) -= qp.w * qp.test[i] * qp.trial_grad[s][c];
                }
        },
        rule_);

    pressure_integrals_ = assemble_functional(
        space_p_,
        [](const QuadPoint& qp, Eigen::VectorXd& local) {
            for (int i = 0; i < static_cast<int>(qp.test.size()); ++i)
                local[i] += qp.w * qp.test[i];
        },
        rule_);
}

Field Bdf2Scheme::extrapolant(const TimeState& state) const {
    return Field(space_u_, 2.0 * state.u_curr.coefficients - state.u_prev.coefficients);
}

SparseMatrix Bdf2Scheme::weighted_scalar_mass(const Field& sigma) const {
    const Field* coeff[] = {&sigma};
    return assemble_form(
        space_sigma_, space_sigma_,
        [](const QuadPoint& qp, Eigen::MatrixXd& local) {
            const double rho = qp.coeff[0].value[0] * qp.coeff[0].value[0];
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) local(i, j) += qp.w * rho * qp.test[i] * qp.trial[j];
        },
        rule_, coeff);
}

SparseMatrix Bdf2Scheme::assemble_density_convection(const Field& u_hat) const {
    // (u_hat . grad sigma, phi) + 1/2 ((div u_hat) sigma, phi). Density test
    // functions do not vanish on the boundary, so this divergence form is the
    // one consistent with inhomogeneous velocity traces; when u_hat has zero
    // trace it coincides exactly with the skew form under quadrature of
    // degree >= 5 (all integrands are degree 5) and is antisymmetric-acting.
    const Field* coeff[] = {&u_hat};
    return assemble_form(
        space_sigma_, space_sigma_,
        [](const QuadPoint& qp, Eigen::MatrixXd& local) {
            const Vec2 b(qp.coeff[0].value[0], qp.coeff[0].value[1]);
            const double div_b = qp.coeff[0].gradient[0].x() + qp.coeff[0].gradient[1].y();
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j)
                    local(i, j) += qp.w *
                                   (b.dot(qp.trial_grad[j]) + 0.5 * div_b * qp.trial[j]) *
                                   qp.test[i];
        },
        rule_, coeff);
}

SparseMatrix Bdf2Scheme::assemble_weighted_skew_convection(const Field& sigma,
                                                           const Field& u_hat) const {
    const Field* coeff[] = {&sigma, &u_hat};
    return assemble_form(
        space_sigma_, space_sigma_,
        [](const QuadPoint& qp, Eigen::MatrixXd& local) {
            const double rho = qp.coeff[0].value[0] * qp.coeff[0].value[0];
            const Vec2 b(qp.coeff[1].value[0], qp.coeff[1].value[1]);
            for (int i = 0; i < 6; ++i) {
                const double adv_i = b.dot(qp.test_grad[i]);
                for (int j = 0; j < 6; ++j)
                    local(i, j) += qp.w * 0.5 * rho *
                                   (b.dot(qp.trial_grad[j]) * qp.test[i] - qp.trial[j] * adv_i);
            }
        },
        rule_, coeff);
}

SparseMatrix Bdf2Scheme::expand_block_diag(const SparseMatrix& scalar_block) const {
    const int ns = space_u_.scalar_dof_count;
    std::vector<Triplet> triplets;
    triplets.reserve(2u * scalar_block.nonZeros());
    for (int off : {0, ns})
        for (int col = 0; col < scalar_block.outerSize(); ++col)
            for (SparseMatrix::InnerIterator it(scalar_block, col); it; ++it)
                triplets.emplace_back(static_cast<int>(it.row()) + off, col + off, it.value());
    return matrix_from_triplets(space_u_.dof_count, space_u_.dof_count, triplets);
}

Eigen::VectorXd Bdf2Scheme::momentum_history_rhs(const Field& sigma_next, double a_curr,
                                                 const Field& sigma_curr, const Field& u_curr,
                                                 double a_prev, const Field& sigma_prev,
                                                 const Field& u_prev) const {
    const Field* coeff[] = {&sigma_next, &sigma_curr, &u_curr, &sigma_prev, &u_prev};
    return assemble_functional(
        space_u_,
        [a_curr, a_prev](const QuadPoint& qp, Eigen::VectorXd& local) {
            const double sn = qp.coeff[0].value[0];
            const double sc = qp.coeff[1].value[0];
            const double sp = qp.coeff[3].value[0];
            const int ns = static_cast<int>(qp.test.size());
            for (int c = 0; c < 2; ++c) {
                const double hist = sn * (a_curr * sc * qp.coeff[2].value[c] +
                                          a_prev * sp * qp.coeff[4].value[c]);
                for (int i = 0; i < ns; ++i) local[c * ns + i] += qp.w * hist * qp.test[i];
            }
        },
        rule_, coeff);
}

Eigen::VectorXd Bdf2Scheme::forcing_rhs_density(const AnalyticCase& c, double t) const {
    return assemble_functional(
        space_sigma_,
        [&c, t](const QuadPoint& qp, Eigen::VectorXd& local) {
            const double g = c.g(qp.x.x(), qp.x.y(), t);
            for (int i = 0; i < 6; ++i) local[i] += qp.w * g * qp.test[i];
        },
        rule_);
}

Eigen::VectorXd Bdf2Scheme::forcing_rhs_momentum(const AnalyticCase& c, double t) const {
    return assemble_functional(
        space_u_,
        [&c, t](const QuadPoint& qp, Eigen::VectorXd& local) {
            const Vec2 f = c.f(qp.x.x(), qp.x.y(), t);
            const int ns = static_cast<int>(qp.test.size());
            for (int comp = 0; comp < 2; ++comp)
                for (int i = 0; i < ns; ++i) local[comp * ns + i] += qp.w * f[comp] * qp.test[i];
        },
        rule_);
}

std::vector<double> Bdf2Scheme::boundary_values(const AnalyticCase* c, double t) const {
    std::vector<double> values(space_u_.boundary_dofs.size(), 0.0);
    if (c && c->boundary_trace == BoundaryTrace::InterpolatedExact) {
        const int ns = space_u_.scalar_dof_count;
        for (std::size_t k = 0; k < values.size(); ++k) {
            const int dof = space_u_.boundary_dofs[k];
            const int comp = dof / ns;
            const Vec2& x = space_u_.node_coordinates[dof % ns];
            values[k] = c->u(x.x(), x.y(), t)[comp];
        }
    }
    return values;
}

LinearSystem Bdf2Scheme::momentum_saddle(const Field& sigma_next, const Field& u_hat,
                                         double mass_factor, Eigen::VectorXd rhs) const {
    SparseMatrix scalar_block = mass_factor * weighted_scalar_mass(sigma_next);
    scalar_block += assemble_weighted_skew_convection(sigma_next, u_hat);
    scalar_block += cfg_.mu * stiffness_scalar_;
    const SparseMatrix a = expand_block_diag(scalar_block);
    return build_saddle_system(a, divergence_neg_, rhs, pressure_integrals_);
}

LinearSystem Bdf2Scheme::assemble_density_system(const TimeState& state,
                                                 const AnalyticCase* c) const {
    if (state.step_index < 1)
        throw std::invalid_argument("density_step: state must hold two levels (n >= 1)");
    const Field u_hat = extrapolant(state);
    LinearSystem sys;
    sys.matrix = (1.5 / cfg_.tau) * mass_sigma_;
    sys.matrix += assemble_density_convection(u_hat);
    const Eigen::VectorXd history =
        (2.0 / cfg_.tau) * state.sigma_curr.coefficients -
        (0.5 / cfg_.tau) * state.sigma_prev.coefficients;
    sys.rhs = mass_sigma_ * history;
    if (c && cfg_.forcing_enabled) sys.rhs += forcing_rhs_density(*c, state.time + cfg_.tau);
    return sys;
}

Field Bdf2Scheme::density_step(const TimeState& state, const AnalyticCase* c,
                               double* residual) const {
    LinearSystem sys = assemble_density_system(state, c);
    return Field(space_sigma_, solve_direct(sys, residual));
}

LinearSystem Bdf2Scheme::assemble_momentum_system(const TimeState& state, const Field& sigma_next,
                                                  const AnalyticCase* c) const {
    if (state.step_index < 1)
        throw std::invalid_argument("momentum_step: state must hold two levels (n >= 1)");
    const double t_next = state.time + cfg_.tau;
    const Field u_hat = extrapolant(state);
    // (1/(2 tau)) (sigma^{n+1} (4 sigma^n u^n - sigma^{n-1} u^{n-1}), v)
    Eigen::VectorXd rhs =
        momentum_history_rhs(sigma_next, 2.0 / cfg_.tau, state.sigma_curr, state.u_curr,
                             -0.5 / cfg_.tau, state.sigma_prev, state.u_prev);
    if (c && cfg_.forcing_enabled) rhs += forcing_rhs_momentum(*c, t_next);
    return momentum_saddle(sigma_next, u_hat, 1.5 / cfg_.tau, std::move(rhs));
}

std::pair<Field, Field> Bdf2Scheme::solve_momentum(LinearSystem system, const AnalyticCase* c,
                                                   double bc_time, double* residual,
                                                   double* pressure_mean) const {
    const std::vector<double> values = boundary_values(c, bc_time);
    apply_dirichlet(system, space_u_.boundary_dofs, values);
    const Eigen::VectorXd x = solve_direct(system, residual);
    const int nu = space_u_.dof_count;
    const int np = space_p_.dof_count;
    Field u(space_u_, x.head(nu));
    Field p(space_p_, x.segment(nu, np));
    if (pressure_mean) *pressure_mean = pressure_integrals_.dot(p.coefficients);
    return {std::move(u), std::move(p)};
}

std::pair<Field, Field> Bdf2Scheme::momentum_step(const TimeState& state, const Field& sigma_next,
                                                  const AnalyticCase* c, double* residual,
                                                  double* pressure_mean) const {
    LinearSystem sys = assemble_momentum_system(state, sigma_next, c);
    return solve_momentum(std::move(sys), c, state.time + cfg_.tau, residual, pressure_mean);
}

double Bdf2Scheme::discrete_energy(const TimeState& state) const {
    FieldSampler sc(state.sigma_curr, rule_), sp(state.sigma_prev, rule_);
    FieldSampler uc(state.u_curr, rule_), up(state.u_prev, rule_);
    double e = 0.0;
    for (int t = 0; t < mesh_.triangle_count(); ++t) {
        sc.bind(t);
        sp.bind(t);
        uc.bind(t);
        up.bind(t);
        const double area = mesh_.triangle_area(t);
        for (int q = 0; q < rule_.size(); ++q) {
            const double s_c = sc.value(q), s_p = sp.value(q);
            const Vec2 u_c = uc.vector_value(q), u_p = up.vector_value(q);
            const Vec2 su_c = s_c * u_c, su_p = s_p * u_p;
            const double w = rule_.weights[q] * area;
            e += w * (s_c * s_c + su_c.squaredNorm());
            const double s_hat = 2.0 * s_c - s_p;
            e += w * (s_hat * s_hat + (2.0 * su_c - su_p).squaredNorm());
        }
    }
    return e;
}

std::pair<double, double> Bdf2Scheme::sigma_range(const Field& sigma) const {
    FieldSampler s(sigma, rule_);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int t = 0; t < mesh_.triangle_count(); ++t) {
        s.bind(t);
        for (int q = 0; q < rule_.size(); ++q) {
            const double v = s.value(q);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return {lo, hi};
}

double Bdf2Scheme::pressure_integral(const Field& p) const {
    return pressure_integrals_.dot(p.coefficients);
}

double Bdf2Scheme::rho_error(const Field& sigma, const ScalarFn& sigma_exact, double t) const {
    FieldSampler s(sigma, rule_);
    double sum = 0.0;
    for (int tri = 0; tri < mesh_.triangle_count(); ++tri) {
        s.bind(tri);
        const double area = mesh_.triangle_area(tri);
        for (int q = 0; q < rule_.size(); ++q) {
            const auto& bary = rule_.points[q];
            const auto& tv = mesh_.triangles[tri];
            const Vec2 x = bary[0] * mesh_.vertices[tv[0]] + bary[1] * mesh_.vertices[tv[1]] +
                           bary[2] * mesh_.vertices[tv[2]];
            const double se = sigma_exact(x.x(), x.y(), t);
            const double sh = s.value(q);
            const double d = se * se - sh * sh;
            sum += rule_.weights[q] * area * d * d;
        }
    }
    return std::sqrt(std::max(sum, 0.0));
}

TimeState Bdf2Scheme::start_from(Field sigma0, Field u0, const AnalyticCase* c,
                                 StepReport* report) const {
    const auto t_start = std::chrono::steady_clock::now();
    const double tau = cfg_.tau;

    // Backward-Euler transport for sigma^1 with convection u^0.
    LinearSystem density;
    density.matrix = (1.0 / tau) * mass_sigma_;
    density.matrix += assemble_density_convection(u0);
    density.rhs = mass_sigma_ * ((1.0 / tau) * sigma0.coefficients);
    if (c && cfg_.forcing_enabled) density.rhs += forcing_rhs_density(*c, tau);
    double residual_density = 0.0;
    Field sigma1(space_sigma_, solve_direct(density, &residual_density));

    // First-order momentum system: time term (1/tau)((sigma^1)^2 u^1
    // - sigma^1 sigma^0 u^0, v), convection extrapolant u^0.
    Eigen::VectorXd rhs =
        momentum_history_rhs(sigma1, 1.0 / tau, sigma0, u0, 0.0, sigma0, u0);
    if (c && cfg_.forcing_enabled) rhs += forcing_rhs_momentum(*c, tau);
    LinearSystem momentum = momentum_saddle(sigma1, u0, 1.0 / tau, std::move(rhs));
    double residual_momentum = 0.0, pressure_mean = 0.0;
    auto [u1, p1] = solve_momentum(std::move(momentum), c, tau, &residual_momentum,
                                   &pressure_mean);

    TimeState state;
    state.sigma_curr = std::move(sigma1);
    state.sigma_prev = std::move(sigma0);
    state.u_curr = std::move(u1);
    state.u_prev = std::move(u0);
    state.p_curr = std::move(p1);
    state.step_index = 1;
    state.time = tau;

    if (report) {
        const auto [lo, hi] = sigma_range(state.sigma_curr);
        report->step_index = 1;
        report->time = tau;
        report->wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        report->residual_density = residual_density;
        report->residual_momentum = residual_momentum;
        report->energy = discrete_energy(state);
        report->min_sigma = lo;
        report->max_sigma = hi;
        report->pressure_mean = pressure_mean;
        report->sigma_positivity_lost = !(lo > 0.0);
    }
    return state;
}

TimeState Bdf2Scheme::initialize_first_step(const AnalyticCase& c, StepReport* report) const {
    Field sigma0 = interpolate_lagrange(c.sigma, space_sigma_, 0.0);
    Field u0 = interpolate_lagrange(c.u, space_u_, 0.0);
    return start_from(std::move(sigma0), std::move(u0), &c, report);
}

TimeState Bdf2Scheme::initialize_from_fields(const Field& sigma0, const Field& u0,
                                             StepReport* report) const {
    if (sigma0.space != &space_sigma_ || u0.space != &space_u_)
        throw std::invalid_argument("initialize_from_fields: fields must live on scheme spaces");
    return start_from(sigma0, u0, nullptr, report);
}

namespace {

RunResult run_loop(const Bdf2Scheme& scheme, TimeState state, StepReport first,
                   const AnalyticCase* c, const Bdf2Scheme::Observer& observer) {
    RunResult result;
    result.reports.push_back(first);
    if (observer) observer(first, state);

    const int n_levels = scheme.config().step_count();
    for (int n = 1; n < n_levels; ++n) {
        const auto t0 = std::chrono::steady_clock::now();
        StepReport rep;
        Field sigma_next = scheme.density_step(state, c, &rep.residual_density);
        auto [u_next, p_next] = scheme.momentum_step(state, sigma_next, c,
                                                     &rep.residual_momentum, &rep.pressure_mean);

        state.sigma_prev = std::move(state.sigma_curr);
        state.sigma_curr = std::move(sigma_next);
        state.u_prev = std::move(state.u_curr);
        state.u_curr = std::move(u_next);
        state.p_curr = std::move(p_next);
        state.step_index = n + 1;
        state.time = (n + 1) * scheme.config().tau;

        const auto [lo, hi] = scheme.sigma_range(state.sigma_curr);
        rep.step_index = state.step_index;
        rep.time = state.time;
        rep.energy = scheme.discrete_energy(state);
        rep.min_sigma = lo;
        rep.max_sigma = hi;
        rep.sigma_positivity_lost = !(lo > 0.0);
        rep.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        result.reports.push_back(rep);
        if (observer) observer(rep, state);
    }
    result.final_state = std::move(state);
    return result;
}

}  // namespace

RunResult Bdf2Scheme::run_simulation(const AnalyticCase& c, const Observer& observer) const {
    StepReport first;
    TimeState state = initialize_first_step(c, &first);
    return run_loop(*this, std::move(state), first, &c, observer);
}

RunResult Bdf2Scheme::run_free_decay(const Field& sigma0, const Field& u0,
                                     const Observer& observer) const {
    StepReport first;
    TimeState state = initialize_from_fields(sigma0, u0, &first);
    return run_loop(*this, std::move(state), first, nullptr, observer);
}

}  // namespace vdns
